#ifndef ESDG_MESH_HPP
#define ESDG_MESH_HPP

#include <array>
#include <string>
#include <vector>

#include "esdg/nodal_basis.hpp"

namespace esdg::mesh {

//! Uniform interval mesh on [a, b] with K elements.  The two boundary points
//! carry the fixed tags "left" and "right"; periodic coupling is requested by
//! assigning both the treatment "periodic" at solver build time.
struct Mesh1D {
  double a = -1.0, b = 1.0;
  int K = 1;

  double dx() const { return (b - a) / K; }
  double jacobian() const { return 0.5 * dx(); }
  double x_of(int e, double xi) const { return a + (e + 0.5 * (xi + 1.0)) * dx(); }
};

Mesh1D build_interval_mesh(double a, double b, int K);

//! Straight-sided quadrilateral, corners counterclockwise starting at the
//! parameter-space southwest corner.
struct QuadElement {
  std::array<std::array<double, 2>, 4> corner;
};

// Side numbering: 0 south (eta = -1), 1 east (xi = +1), 2 north (eta = +1),
// 3 west (xi = -1).  Face nodes run with increasing xi resp. eta.
struct InteriorFace {
  int elem_l, side_l, elem_r, side_r;
};

struct BoundaryFace {
  int elem, side;
  std::string tag;
};

struct QuadMesh {
  int nx = 0, ny = 0;
  std::vector<QuadElement> elems;
  std::vector<InteriorFace> interior;
  std::vector<BoundaryFace> boundary;
  std::array<std::string, 4> side_tags;  //!< south, east, north, west
};

//! Structured nx-by-ny subdivision of the parallelogram spanned by edge_u and
//! edge_v from origin.  Tags are assigned per outer side in the order south,
//! east, north, west; the tag "periodic" on an opposing pair turns those
//! outer faces into interior coupling instead.  Degenerate geometry is
//! rejected here, orientation problems when metric terms are formed.
QuadMesh build_parallelogram_channel(const std::array<double, 2>& origin,
                                     const std::array<double, 2>& edge_u,
                                     const std::array<double, 2>& edge_v,
                                     int nx, int ny,
                                     const std::array<std::string, 4>& tags);

struct FaceGeom {
  double n1, n2;  //!< unit outward normal
  double sdet;    //!< surface Jacobian
};

//! Collocated geometric terms for a mesh and basis: volume Jacobian, the two
//! contravariant vectors scaled by J, outward face normals with surface
//! Jacobians, node coordinates, and an explicit node permutation for every
//! interior face obtained by matching physical coordinates.
struct MetricTerms {
  int np = 0;  //!< nodes per direction, N + 1

  // volume arrays, indexed vid(e, i, j)
  std::vector<double> J;
  std::vector<double> Ja1_1, Ja1_2, Ja2_1, Ja2_2;
  std::vector<double> x, y;

  std::vector<std::array<std::vector<FaceGeom>, 4>> face;  //!< [elem][side][k]
  std::vector<double> min_edge;                            //!< per element
  std::vector<std::vector<int>> interior_perm;             //!< per interior face

  int vid(int e, int i, int j) const { return (e * np + j) * np + i; }
};

//! Throws std::invalid_argument naming the element if the mapping Jacobian is
//! nonpositive anywhere, or if an interior face's nodes cannot be matched.
MetricTerms compute_metrics(const QuadMesh& mesh,
                            const sbp_basis::NodalBasis& basis);

//! Node index along a face: (i, j) for face node k of the given side.
inline void face_node(int side, int k, int N, int& i, int& j) {
  switch (side) {
    case 0: i = k; j = 0; break;
    case 1: i = N; j = k; break;
    case 2: i = k; j = N; break;
    default: i = 0; j = k; break;
  }
}

}  // namespace esdg::mesh

#endif
