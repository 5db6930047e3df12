#include "esdg/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace esdg::cli {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string section, key, value;
  int line;
};

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw ConfigError(os.str());
}

[[noreturn]] void fail(const Entry& e, const std::string& origin,
                       const std::string& msg) {
  fail(origin, e.line, msg + " (key '" + e.key + "')");
}

double to_double(const Entry& e, const std::string& origin) {
  const char* s = e.value.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0') fail(e, origin, "expected a number, got '" + e.value + "'");
  return v;
}

int to_int(const Entry& e, const std::string& origin) {
  const char* s = e.value.c_str();
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0')
    fail(e, origin, "expected an integer, got '" + e.value + "'");
  return int(v);
}

std::array<double, 2> to_pair(const Entry& e, const std::string& origin) {
  std::istringstream is(e.value);
  std::array<double, 2> p{};
  if (!(is >> p[0] >> p[1]))
    fail(e, origin, "expected two numbers, got '" + e.value + "'");
  std::string rest;
  if (is >> rest) fail(e, origin, "expected exactly two numbers");
  return p;
}

dgsem::BoundaryTreatment to_treatment(const Entry& e,
                                      const std::string& origin) {
  const std::string& v = e.value;
  if (v == "new_nonlinear") return dgsem::BoundaryTreatment::NewNonlinear;
  if (v == "riemann_invariant_llf")
    return dgsem::BoundaryTreatment::RiemannInvariantLLF;
  if (v == "riemann_invariant_hll")
    return dgsem::BoundaryTreatment::RiemannInvariantHLL;
  if (v == "ec") return dgsem::BoundaryTreatment::EC;
  if (v == "llf") return dgsem::BoundaryTreatment::LLF;
  if (v == "exact_data") return dgsem::BoundaryTreatment::ExactData;
  if (v == "periodic") return dgsem::BoundaryTreatment::Periodic;
  fail(e, origin, "unknown boundary treatment '" + v + "'");
}

class Entries {
 public:
  Entries(std::vector<Entry> list, std::string origin)
      : list_(std::move(list)), origin_(std::move(origin)) {}

  const Entry* find(const std::string& section, const std::string& key) const {
    for (const Entry& e : list_)
      if (e.section == section && e.key == key) {
        used_.insert(&e - list_.data());
        return &e;
      }
    return nullptr;
  }

  const Entry& require(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e)
      throw ConfigError(origin_ + ": missing required key '" + key +
                        "' in section [" + section + "]");
    return *e;
  }

  std::vector<const Entry*> section(const std::string& name) const {
    std::vector<const Entry*> out;
    for (const Entry& e : list_)
      if (e.section == name) out.push_back(&e);
    return out;
  }

  void mark_used(const Entry* e) const { used_.insert(e - list_.data()); }

  void reject_unused() const {
    for (size_t i = 0; i < list_.size(); ++i)
      if (!used_.count(long(i)))
        fail(origin_, list_[i].line,
             "unknown key '" + list_[i].key + "' in section [" +
                 list_[i].section + "]");
  }

  const std::string& origin() const { return origin_; }

 private:
  std::vector<Entry> list_;
  std::string origin_;
  mutable std::set<long> used_;
};

Entries tokenize(const std::string& text, const std::string& origin) {
  static const std::set<std::string> known_sections = {
      "run", "mesh", "boundary", "physics", "output"};
  std::vector<Entry> entries;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, lineno, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_sections.count(section))
        fail(origin, lineno, "unknown section [" + section + "]");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(origin, lineno, "expected 'key = value', got '" + line + "'");
    if (section.empty())
      fail(origin, lineno, "key outside of any section");
    Entry e;
    e.section = section;
    e.key = trim(line.substr(0, eq));
    e.value = trim(line.substr(eq + 1));
    e.line = lineno;
    if (e.key.empty()) fail(origin, lineno, "empty key");
    if (e.value.empty()) fail(origin, lineno, "empty value for '" + e.key + "'");
    for (const Entry& prev : entries)
      if (prev.section == e.section && prev.key == e.key)
        fail(origin, lineno, "duplicate key '" + e.key + "'");
    entries.push_back(std::move(e));
  }
  return Entries(std::move(entries), origin);
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& origin_name) {
  Entries in = tokenize(text, origin_name);
  const std::string& origin = in.origin();
  ScenarioConfig c;

  const Entry& eq = in.require("run", "equation");
  if (eq.value == "burgers")
    c.equation = ScenarioConfig::Equation::Burgers;
  else if (eq.value == "swe")
    c.equation = ScenarioConfig::Equation::Swe;
  else
    fail(eq, origin, "unknown equation '" + eq.value + "'");

  const Entry& sc = in.require("run", "scenario");
  if (sc.value == "burgers_mms")
    c.scenario = ScenarioConfig::Scenario::BurgersMms;
  else if (sc.value == "swe_channel")
    c.scenario = ScenarioConfig::Scenario::SweChannel;
  else if (sc.value == "geostrophic")
    c.scenario = ScenarioConfig::Scenario::Geostrophic;
  else
    fail(sc, origin, "unknown scenario '" + sc.value + "'");

  bool burgers = c.equation == ScenarioConfig::Equation::Burgers;
  if (burgers != (c.scenario == ScenarioConfig::Scenario::BurgersMms))
    throw ConfigError(origin + ": scenario '" + sc.value +
                      "' does not belong to equation '" + eq.value + "'");

  c.degree = to_int(in.require("run", "degree"), origin);
  if (c.degree < 1) fail(in.require("run", "degree"), origin, "degree must be >= 1");
  c.cfl = to_double(in.require("run", "cfl"), origin);
  if (!(c.cfl > 0)) fail(in.require("run", "cfl"), origin, "cfl must be positive");
  c.t_end = to_double(in.require("run", "t_end"), origin);
  if (!(c.t_end > 0))
    fail(in.require("run", "t_end"), origin, "t_end must be positive");
  if (const Entry* e = in.find("run", "dt_max")) {
    c.dt_max = to_double(*e, origin);
    if (!(c.dt_max > 0)) fail(*e, origin, "dt_max must be positive");
  }
  if (const Entry* e = in.find("run", "log_stride")) {
    c.log_stride = to_int(*e, origin);
    if (c.log_stride < 1) fail(*e, origin, "log_stride must be >= 1");
  }
  if (const Entry* e = in.find("run", "interior_flux")) {
    if (e->value == "ec")
      c.interior_flux = dgsem::InteriorFlux::EC;
    else if (e->value == "llf")
      c.interior_flux = dgsem::InteriorFlux::LLF;
    else if (e->value == "hll")
      c.interior_flux = dgsem::InteriorFlux::HLL;
    else
      fail(*e, origin, "unknown interior flux '" + e->value + "'");
  }
  if (burgers && c.interior_flux == dgsem::InteriorFlux::HLL)
    throw ConfigError(origin + ": hll interior flux is shallow-water only");

  std::set<std::string> tags;
  if (burgers) {
    c.mesh1d.a = to_double(in.require("mesh", "a"), origin);
    c.mesh1d.b = to_double(in.require("mesh", "b"), origin);
    if (!(c.mesh1d.b > c.mesh1d.a))
      throw ConfigError(origin + ": mesh requires b > a");
    c.mesh1d.elements = to_int(in.require("mesh", "elements"), origin);
    if (c.mesh1d.elements < 1)
      throw ConfigError(origin + ": mesh requires elements >= 1");
    tags = {"left", "right"};
  } else {
    c.mesh2d.origin = to_pair(in.require("mesh", "origin"), origin);
    c.mesh2d.edge_u = to_pair(in.require("mesh", "edge_u"), origin);
    c.mesh2d.edge_v = to_pair(in.require("mesh", "edge_v"), origin);
    c.mesh2d.nx = to_int(in.require("mesh", "nx"), origin);
    c.mesh2d.ny = to_int(in.require("mesh", "ny"), origin);
    if (c.mesh2d.nx < 1 || c.mesh2d.ny < 1)
      throw ConfigError(origin + ": mesh requires nx, ny >= 1");
    static const char* tag_keys[4] = {"tag_south", "tag_east", "tag_north",
                                      "tag_west"};
    for (int s = 0; s < 4; ++s) {
      c.mesh2d.tags[s] = in.require("mesh", tag_keys[s]).value;
      if (c.mesh2d.tags[s] != "periodic") tags.insert(c.mesh2d.tags[s]);
    }
  }

  double prescribed_h = 0.0;
  for (const Entry* e : in.section("boundary")) {
    in.mark_used(e);
    if (e->key == "prescribed_h") {
      prescribed_h = to_double(*e, origin);
      if (!(prescribed_h > 0))
        fail(*e, origin, "prescribed_h must be positive");
      continue;
    }
    if (!tags.count(e->key))
      fail(*e, origin, "'" + e->key + "' is not a boundary tag of this mesh");
    dgsem::BoundarySpec spec;
    spec.treatment = to_treatment(*e, origin);
    c.boundary[e->key] = spec;
  }
  for (const std::string& t : tags)
    if (!c.boundary.count(t))
      throw ConfigError(origin + ": no boundary treatment for tag '" + t + "'");
  for (auto& [tag, spec] : c.boundary) {
    if (prescribed_h > 0) spec.prescribed_h = prescribed_h;
    if ((spec.treatment == dgsem::BoundaryTreatment::RiemannInvariantLLF ||
         spec.treatment == dgsem::BoundaryTreatment::RiemannInvariantHLL)) {
      if (burgers)
        throw ConfigError(origin +
                          ": riemann invariant treatments are shallow-water "
                          "only (tag '" +
                          tag + "')");
      if (!(spec.prescribed_h > 0))
        throw ConfigError(origin + ": tag '" + tag +
                          "' needs prescribed_h for the riemann invariant "
                          "treatment");
    }
    if (spec.treatment == dgsem::BoundaryTreatment::Periodic && !burgers)
      throw ConfigError(origin +
                        ": periodic coupling is selected with mesh tags, not "
                        "a boundary treatment (tag '" +
                        tag + "')");
  }
  if (burgers) {
    bool pl = c.boundary["left"].treatment == dgsem::BoundaryTreatment::Periodic;
    bool pr = c.boundary["right"].treatment == dgsem::BoundaryTreatment::Periodic;
    if (pl != pr)
      throw ConfigError(origin +
                        ": periodic treatment must apply to both ends");
  }

  auto phys = [&](const char* key) { return in.find("physics", key); };
  auto phys_req = [&](const char* key) {
    return to_double(in.require("physics", key), origin);
  };
  switch (c.scenario) {
    case ScenarioConfig::Scenario::BurgersMms:
      break;
    case ScenarioConfig::Scenario::SweChannel:
      c.params.g = phys_req("g");
      c.h0 = phys_req("h0");
      break;
    case ScenarioConfig::Scenario::Geostrophic:
      c.params.g = phys_req("g");
      c.params.f0 = phys_req("f0");
      if (const Entry* e = phys("beta_cor")) c.params.beta_cor = to_double(*e, origin);
      c.A0 = phys_req("A0");
      c.lambda = phys_req("lambda");
      c.RE = phys_req("RE");
      c.Ri = phys_req("Ri");
      break;
  }
  if (!(c.params.g > 0) && c.equation == ScenarioConfig::Equation::Swe)
    throw ConfigError(origin + ": g must be positive");
  if (c.scenario == ScenarioConfig::Scenario::SweChannel && !(c.h0 > 0))
    throw ConfigError(origin + ": h0 must be positive");

  if (const Entry* e = in.find("output", "dir")) c.out_dir = e->value;
  if (const Entry* e = in.find("output", "entropy_series"))
    c.entropy_series = e->value;
  if (const Entry* e = in.find("output", "snapshot")) c.snapshot = e->value;

  in.reject_unused();
  return c;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return parse_config_text(os.str(), path);
}

}  // namespace esdg::cli
