#include "darboux/surfaces.hpp"

#include <algorithm>
#include <cmath>

#include "darboux/error.hpp"
#include "darboux/tolerances.hpp"

namespace darboux {

const char* pair_class_name(PairClass c) {
  switch (c) {
    case PairClass::generic: return "generic";
    case PairClass::trivial_displacement: return "trivial_displacement";
    case PairClass::planar_normal: return "planar_normal";
    case PairClass::ruled_rank1_plus: return "ruled_rank1_plus";
    case PairClass::developable_rank1_minus: return "developable_rank1_minus";
    case PairClass::ruled_developable_rank1_both: return "ruled_developable_rank1_both";
  }
  return "unknown";
}

namespace {

struct UV {
  Jet2 u, v;
};

UV vars(double u, double v, int k) {
  return {Jet2::variable(0, u, k), Jet2::variable(1, v, k)};
}

// Translation surface z = u^2 + v^2 + 1 with its classical bending field.
JV3 parab_f(double u, double v, int k) {
  auto [U, V] = vars(u, v, k);
  return {U, V, U * U + V * V + 1.0};
}

JV3 parab_g(double u, double v, int k) {
  auto [U, V] = vars(u, v, k);
  Jet2 u2 = U * U, v2 = V * V;
  return {-(V * u2) - (V * v2) / 3.0, -(U * u2) / 3.0 - U * v2, U * V};
}

JV3 parab_h(double u, double v, int k) {
  auto [U, V] = vars(u, v, k);
  return {U, -V, U * U - V * V};
}

const V3 triv_a{1, 2, 3};
const V3 triv_b{4, 5, 6};

JV3 trivial_g(double u, double v, int k) {
  JV3 f = parab_f(u, v, k);
  JV3 g = cross(const_jet_vec(triv_a, k), f);
  g += const_jet_vec(triv_b, k);
  return g;
}

JV3 planar_f(double u, double v, int k) {
  auto [U, V] = vars(u, v, k);
  return {U, V, Jet2::constant(1.0, k)};
}

JV3 planar_g(double u, double v, int k) {
  auto [U, V] = vars(u, v, k);
  return {Jet2::constant(0.0, k), Jet2::constant(0.0, k), sin(U) * cos(V)};
}

// h = (d2 w, -d1 w, 0) for the normal field w(u,v) = sin u cos v.
JV3 planar_h(double u, double v, int k) {
  auto [U, V] = vars(u, v, k);
  return {-(sin(U) * sin(V)), -(cos(U) * cos(V)), Jet2::constant(0.0, k)};
}

// Helix-directed ruled surface: rulings along the derivative of the rotation
// curve h(x2) = (cos x2, sin x2, x2).
JV3 ruled_f(double u, double v, int k) {
  auto [X1, X2] = vars(u, v, k);
  return {-(X1 * sin(X2)), X1 * cos(X2), X2 + X1};
}

JV3 ruled_g(double u, double v, int k) {
  auto [X1, X2] = vars(u, v, k);
  Jet2 s = sin(X2), c = cos(X2);
  return {-c + X1 * (s - X2 * c), -s + X1 * (-c - X2 * s), X1};
}

JV3 ruled_h(double u, double v, int k) {
  auto [X1, X2] = vars(u, v, k);
  (void)X1;
  return {cos(X2), sin(X2), X2};
}

JV3 cylinder_f(double u, double v, int k) {
  auto [U, V] = vars(u, v, k);
  return {cos(U), sin(U), V};
}

JV3 cylinder_g(double u, double v, int k) {
  auto [U, V] = vars(u, v, k);
  (void)V;
  Jet2 two_u = U * 2.0;
  return {U * 0.5 + sin(two_u) * 0.25, (1.0 - cos(two_u)) * 0.25,
          Jet2::constant(0.0, k)};
}

JV3 cylinder_h(double u, double v, int k) {
  auto [U, V] = vars(u, v, k);
  (void)V;
  return {Jet2::constant(0.0, k), Jet2::constant(0.0, k), -cos(U)};
}

// Normal of ruled_f; nu.h = 1 + x1 x2 and nu.f = x1 x2 in closed form.
JV3 ruled_nu(double u, double v, int k) {
  auto [X1, X2] = vars(u, v, k);
  Jet2 s = sin(X2), c = cos(X2);
  return {c + X1 * s, s - X1 * c, X1};
}

// The conjugated counterpart of the ruled pair: swapping f and g turns the
// rank-1-plus example into a rank-1-minus (developable) one; its rotation
// field is the polar of the ruled pair's h.
JV3 developable_h(double u, double v, int k) {
  auto [X1, X2] = vars(u, v, k);
  JV3 nu = ruled_nu(u, v, k);
  Jet2 denom = 1.0 + X1 * X2;
  return jet_div(-nu, denom);
}

Domain rect(double u0, double u1, double v0, double v1, std::string desc) {
  Domain d;
  d.u0 = u0;
  d.u1 = u1;
  d.v0 = v0;
  d.v1 = v1;
  d.description = std::move(desc);
  return d;
}

std::vector<DeformationPair> build_catalog() {
  std::vector<DeformationPair> cat;

  {
    DeformationPair p;
    p.name = "paraboloid";
    p.domain = rect(0.5, 1.5, 1.6, 2.6,
                    "translation surface; excludes |u| = |v| and u^2+v^2 = 1");
    p.domain.inside = [](double u, double v) {
      return std::abs(std::abs(u) - std::abs(v)) > 0.05 &&
             std::abs(u * u + v * v - 1.0) > 0.05;
    };
    p.f = {parab_f, p.domain};
    p.g = {parab_g, p.domain};
    p.h_closed = SurfaceMap{parab_h, p.domain};
    p.expected_class = PairClass::generic;
    cat.push_back(std::move(p));
  }
  {
    DeformationPair p;
    p.name = "trivial";
    p.domain = rect(0.5, 1.5, 1.6, 2.6, "rigid-motion displacement of the paraboloid");
    p.f = {parab_f, p.domain};
    p.g = {trivial_g, p.domain};
    p.h_closed = SurfaceMap{[](double, double, int k) {
                              return const_jet_vec(triv_a, k);
                            },
                            p.domain};
    p.expected_class = PairClass::trivial_displacement;
    cat.push_back(std::move(p));
  }
  {
    DeformationPair p;
    p.name = "planar";
    p.domain = rect(0.3, 0.8, 0.9, 1.4, "plane with a normal deformation field");
    p.f = {planar_f, p.domain};
    p.g = {planar_g, p.domain};
    p.h_closed = SurfaceMap{planar_h, p.domain};
    p.expected_class = PairClass::planar_normal;
    cat.push_back(std::move(p));
  }
  {
    DeformationPair p;
    p.name = "ruled";
    p.domain = rect(0.2, 1.0, 0.3, 1.1, "ruled surface; excludes x1 x2 = 0");
    p.domain.inside = [](double u, double v) { return std::abs(u * v) > 1e-6; };
    p.f = {ruled_f, p.domain};
    p.g = {ruled_g, p.domain};
    p.h_closed = SurfaceMap{ruled_h, p.domain};
    p.expected_class = PairClass::ruled_rank1_plus;
    cat.push_back(std::move(p));
  }
  {
    DeformationPair p;
    p.name = "cylinder";
    p.domain = rect(0.4, 2.7, -0.5, 0.5, "cylinder bending; excludes sin u = 0");
    p.domain.inside = [](double u, double) { return std::abs(std::sin(u)) > 0.05; };
    p.f = {cylinder_f, p.domain};
    p.g = {cylinder_g, p.domain};
    p.h_closed = SurfaceMap{cylinder_h, p.domain};
    p.expected_class = PairClass::ruled_developable_rank1_both;
    cat.push_back(std::move(p));
  }
  {
    DeformationPair p;
    p.name = "developable";
    p.domain = rect(0.2, 1.0, 0.3, 1.1, "developable surface; excludes x1 x2 = 0");
    p.domain.inside = [](double u, double v) { return std::abs(u * v) > 1e-6; };
    p.f = {ruled_g, p.domain};
    p.g = {ruled_f, p.domain};
    p.h_closed = SurfaceMap{developable_h, p.domain};
    p.expected_class = PairClass::developable_rank1_minus;
    cat.push_back(std::move(p));
  }
  return cat;
}

}  // namespace

const std::vector<DeformationPair>& catalog() {
  static const std::vector<DeformationPair> cat = build_catalog();
  return cat;
}

const DeformationPair& find_pair(const std::string& name) {
  for (const auto& p : catalog())
    if (p.name == name) return p;
  throw UnknownPair("unknown catalog pair: " + name);
}

std::vector<std::string> pair_names() {
  std::vector<std::string> names;
  for (const auto& p : catalog()) names.push_back(p.name);
  return names;
}

std::vector<GridPoint> raw_grid(const Domain& d, int n) {
  if (n < 2) throw DomainError("grid needs at least 2 points per side");
  std::vector<GridPoint> pts;
  pts.reserve(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      double u = d.u0 + (d.u1 - d.u0) * c / (n - 1);
      double v = d.v0 + (d.v1 - d.v0) * r / (n - 1);
      pts.push_back({u, v});
    }
  return pts;
}

std::vector<GridPoint> pair_grid(const DeformationPair& p, int n) {
  std::vector<GridPoint> pts = raw_grid(p.domain, n);
  std::vector<GridPoint> out;
  out.reserve(pts.size());
  for (const auto& pt : pts)
    if (p.domain.contains(pt.u, pt.v)) out.push_back(pt);
  return out;
}

PairValidation validate_pair(const DeformationPair& p,
                             const std::vector<GridPoint>& grid, Exec exec) {
  struct Local {
    double residual, immersion;
  };
  auto rows = sweep<Local>(
      grid,
      [&](const GridPoint& pt) {
        JV3 f = p.f.eval(pt.u, pt.v, 1);
        JV3 g = p.g.eval(pt.u, pt.v, 1);
        V3 f1 = partial(f, 1, 0), f2 = partial(f, 0, 1);
        V3 g1 = partial(g, 1, 0), g2 = partial(g, 0, 1);
        double scale = std::max({norm(f1) * norm(g1), norm(f1) * norm(g2),
                                 norm(f2) * norm(g1), norm(f2) * norm(g2), 1e-300});
        double r = std::max({std::abs(dot(f1, g1)), std::abs(dot(f2, g2)),
                             std::abs(dot(f1, g2) + dot(f2, g1))});
        double imm = norm(cross(f1, f2)) / std::max(norm(f1) * norm(f2), 1e-300);
        return Local{r / scale, imm};
      },
      exec);
  PairValidation out;
  out.min_immersion = 1.0;
  for (const auto& r : rows) {
    out.max_isometry_residual = std::max(out.max_isometry_residual, r.residual);
    out.min_immersion = std::min(out.min_immersion, r.immersion);
  }
  out.pass = out.max_isometry_residual <= tol::validate_pair &&
             out.min_immersion > tol::immersion;
  return out;
}

}  // namespace darboux
