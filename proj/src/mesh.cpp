#include "esdg/mesh.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace esdg::mesh {

Mesh1D build_interval_mesh(double a, double b, int K) {
  if (!(b > a)) throw std::invalid_argument("interval mesh requires b > a");
  if (K < 1) throw std::invalid_argument("interval mesh requires K >= 1");
  Mesh1D m;
  m.a = a;
  m.b = b;
  m.K = K;
  return m;
}

QuadMesh build_parallelogram_channel(const std::array<double, 2>& origin,
                                     const std::array<double, 2>& edge_u,
                                     const std::array<double, 2>& edge_v,
                                     int nx, int ny,
                                     const std::array<std::string, 4>& tags) {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("channel mesh requires nx, ny >= 1");
  double cross = edge_u[0] * edge_v[1] - edge_u[1] * edge_v[0];
  double scale = std::hypot(edge_u[0], edge_u[1]) * std::hypot(edge_v[0], edge_v[1]);
  if (!(std::abs(cross) > 1e-14 * std::max(1.0, scale)))
    throw std::invalid_argument("channel mesh edges are degenerate");

  bool per_u = tags[1] == "periodic" || tags[3] == "periodic";
  bool per_v = tags[0] == "periodic" || tags[2] == "periodic";
  if (per_u && tags[1] != tags[3])
    throw std::invalid_argument("periodic tag must appear on both east and west");
  if (per_v && tags[0] != tags[2])
    throw std::invalid_argument("periodic tag must appear on both south and north");

  QuadMesh m;
  m.nx = nx;
  m.ny = ny;
  m.side_tags = tags;
  m.elems.resize(static_cast<size_t>(nx) * ny);
  auto eid = [nx](int i, int j) { return j * nx + i; };
  auto point = [&](double s, double t) {
    return std::array<double, 2>{origin[0] + s * edge_u[0] + t * edge_v[0],
                                 origin[1] + s * edge_u[1] + t * edge_v[1]};
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double s0 = double(i) / nx, s1 = double(i + 1) / nx;
      double t0 = double(j) / ny, t1 = double(j + 1) / ny;
      QuadElement& e = m.elems[eid(i, j)];
      e.corner[0] = point(s0, t0);
      e.corner[1] = point(s1, t0);
      e.corner[2] = point(s1, t1);
      e.corner[3] = point(s0, t1);
    }

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i)
      m.interior.push_back({eid(i, j), 1, eid(i + 1, j), 3});
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i < nx; ++i)
      m.interior.push_back({eid(i, j), 2, eid(i, j + 1), 0});
  if (per_u)
    for (int j = 0; j < ny; ++j)
      m.interior.push_back({eid(nx - 1, j), 1, eid(0, j), 3});
  if (per_v)
    for (int i = 0; i < nx; ++i)
      m.interior.push_back({eid(i, ny - 1), 2, eid(i, 0), 0});

  for (int i = 0; i < nx; ++i) {
    if (!per_v) {
      m.boundary.push_back({eid(i, 0), 0, tags[0]});
      m.boundary.push_back({eid(i, ny - 1), 2, tags[2]});
    }
  }
  for (int j = 0; j < ny; ++j) {
    if (!per_u) {
      m.boundary.push_back({eid(0, j), 3, tags[3]});
      m.boundary.push_back({eid(nx - 1, j), 1, tags[1]});
    }
  }
  return m;
}

namespace {

struct MapDeriv {
  double x, y, x_xi, x_eta, y_xi, y_eta;
};

MapDeriv bilinear(const QuadElement& e, double xi, double eta) {
  static const double sx[4] = {-1, 1, 1, -1};
  static const double sy[4] = {-1, -1, 1, 1};
  const auto& p = e.corner;
  MapDeriv d;
  d.x = d.y = d.x_xi = d.x_eta = d.y_xi = d.y_eta = 0.0;
  for (int c = 0; c < 4; ++c) {
    double b = 0.25 * (1.0 + sx[c] * xi) * (1.0 + sy[c] * eta);
    double bx = 0.25 * sx[c] * (1.0 + sy[c] * eta);
    double by = 0.25 * sy[c] * (1.0 + sx[c] * xi);
    d.x += b * p[c][0];
    d.y += b * p[c][1];
    d.x_xi += bx * p[c][0];
    d.x_eta += by * p[c][0];
    d.y_xi += bx * p[c][1];
    d.y_eta += by * p[c][1];
  }
  return d;
}

}  // namespace

MetricTerms compute_metrics(const QuadMesh& mesh,
                            const sbp_basis::NodalBasis& basis) {
  MetricTerms mt;
  int np = basis.N + 1;
  mt.np = np;
  size_t nvol = mesh.elems.size() * np * np;
  mt.J.resize(nvol);
  mt.Ja1_1.resize(nvol);
  mt.Ja1_2.resize(nvol);
  mt.Ja2_1.resize(nvol);
  mt.Ja2_2.resize(nvol);
  mt.x.resize(nvol);
  mt.y.resize(nvol);
  mt.face.resize(mesh.elems.size());
  mt.min_edge.resize(mesh.elems.size());

  for (size_t e = 0; e < mesh.elems.size(); ++e) {
    const QuadElement& el = mesh.elems[e];
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) {
        MapDeriv d = bilinear(el, basis.nodes[i], basis.nodes[j]);
        double J = d.x_xi * d.y_eta - d.x_eta * d.y_xi;
        if (!(J > 0.0)) {
          std::ostringstream os;
          os << "nonpositive mapping Jacobian (" << J << ") in element " << e;
          throw std::invalid_argument(os.str());
        }
        int v = mt.vid(int(e), i, j);
        mt.J[v] = J;
        mt.Ja1_1[v] = d.y_eta;
        mt.Ja1_2[v] = -d.x_eta;
        mt.Ja2_1[v] = -d.y_xi;
        mt.Ja2_2[v] = d.x_xi;
        mt.x[v] = d.x;
        mt.y[v] = d.y;
      }

    for (int side = 0; side < 4; ++side) {
      auto& fg = mt.face[e][side];
      fg.resize(np);
      for (int k = 0; k < np; ++k) {
        int i, j;
        face_node(side, k, basis.N, i, j);
        int v = mt.vid(int(e), i, j);
        double s1 = 0, s2 = 0;
        switch (side) {
          case 0: s1 = -mt.Ja2_1[v]; s2 = -mt.Ja2_2[v]; break;
          case 1: s1 = mt.Ja1_1[v]; s2 = mt.Ja1_2[v]; break;
          case 2: s1 = mt.Ja2_1[v]; s2 = mt.Ja2_2[v]; break;
          default: s1 = -mt.Ja1_1[v]; s2 = -mt.Ja1_2[v]; break;
        }
        double sd = std::hypot(s1, s2);
        fg[k] = {s1 / sd, s2 / sd, sd};
      }
    }

    double me = std::numeric_limits<double>::max();
    for (int c = 0; c < 4; ++c) {
      const auto& p = el.corner[c];
      const auto& q = el.corner[(c + 1) % 4];
      me = std::min(me, std::hypot(q[0] - p[0], q[1] - p[1]));
    }
    mt.min_edge[e] = me;
  }

  // explicit node matching across interior faces
  mt.interior_perm.resize(mesh.interior.size());
  for (size_t f = 0; f < mesh.interior.size(); ++f) {
    const InteriorFace& fc = mesh.interior[f];
    std::vector<int>& perm = mt.interior_perm[f];
    perm.assign(np, -1);
    // periodic wrap faces carry a constant coordinate offset; measure it from
    // the face midpoints so node matching still applies
    auto fcoord = [&](int elem, int side, int k) {
      int i, j;
      face_node(side, k, basis.N, i, j);
      int v = mt.vid(elem, i, j);
      return std::array<double, 2>{mt.x[v], mt.y[v]};
    };
    std::array<double, 2> mid_l{0, 0}, mid_r{0, 0};
    for (int k = 0; k < np; ++k) {
      auto a = fcoord(fc.elem_l, fc.side_l, k);
      auto b = fcoord(fc.elem_r, fc.side_r, k);
      mid_l[0] += a[0] / np;
      mid_l[1] += a[1] / np;
      mid_r[0] += b[0] / np;
      mid_r[1] += b[1] / np;
    }
    double off1 = mid_r[0] - mid_l[0], off2 = mid_r[1] - mid_l[1];
    double tol = 1e-8 * std::max(1.0, std::abs(off1) + std::abs(off2));
    for (int k = 0; k < np; ++k) {
      auto a = fcoord(fc.elem_l, fc.side_l, k);
      for (int k2 = 0; k2 < np; ++k2) {
        auto b = fcoord(fc.elem_r, fc.side_r, k2);
        if (std::abs(b[0] - off1 - a[0]) < tol &&
            std::abs(b[1] - off2 - a[1]) < tol) {
          perm[k] = k2;
          break;
        }
      }
      if (perm[k] < 0) {
        std::ostringstream os;
        os << "interior face " << f << " between elements " << fc.elem_l
           << " and " << fc.elem_r << ": no matching node for face index " << k;
        throw std::invalid_argument(os.str());
      }
    }
  }
  return mt;
}

}  // namespace esdg::mesh
