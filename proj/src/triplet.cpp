#include "darboux/triplet.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "darboux/error.hpp"
#include "darboux/tolerances.hpp"

namespace darboux {

namespace {

void check_letters(const std::string& word) {
  for (char c : word)
    if (c != 'A' && c != 'D')
      throw BadWord("word letter must be A or D, got '" + std::string(1, c) + "'");
}

double max_coeff(const JV3& v) {
  return std::max({v.x.max_abs_coeff(), v.y.max_abs_coeff(), v.z.max_abs_coeff()});
}

void require_immersion(const JV3& d1, const JV3& d2, const char* who) {
  V3 a = value(d1), b = value(d2);
  if (norm(cross(a, b)) <= tol::immersion * std::max(norm(a) * norm(b), 1e-300))
    throw NotImmersion(std::string(who) + ": derivative rank below 2");
}

/// Bind the component maps of a triplet to its shared jets closure.
void rebind(DarbouxTriplet& t) {
  auto jets = t.jets;
  t.f = {[jets](double u, double v, int k) { return jets(u, v, k).f; }, t.domain};
  t.g = {[jets](double u, double v, int k) { return jets(u, v, k).g; }, t.domain};
  t.h = {[jets](double u, double v, int k) { return jets(u, v, k).h; }, t.domain};
}

}  // namespace

JV3 solve_rotation_field(const JV3& f, const JV3& g) {
  if (f.x.order() < 1) throw OrderExceeded("rotation solve needs order >= 1");
  JV3 a1 = derivative(f, 0), a2 = derivative(f, 1);
  JV3 b1 = derivative(g, 0), b2 = derivative(g, 1);
  require_immersion(a1, a2, "solve_rotation_field");

  // Normal equations of the stacked system h x d_i f = d_i g: the matrix of
  // h -> h x a is -[a]_x, so A^T A = sum (|a|^2 I - a a^T) and A^T b = sum a x b.
  Jet2 n1 = dot(a1, a1), n2 = dot(a2, a2);
  Jet2 m00 = n1 + n2 - a1.x * a1.x - a2.x * a2.x;
  Jet2 m11 = n1 + n2 - a1.y * a1.y - a2.y * a2.y;
  Jet2 m22 = n1 + n2 - a1.z * a1.z - a2.z * a2.z;
  Jet2 m01 = -(a1.x * a1.y) - a2.x * a2.y;
  Jet2 m02 = -(a1.x * a1.z) - a2.x * a2.z;
  Jet2 m12 = -(a1.y * a1.z) - a2.y * a2.z;
  JV3 r = cross(a1, b1) + cross(a2, b2);

  Jet2 c00 = m11 * m22 - m12 * m12;
  Jet2 c01 = m02 * m12 - m01 * m22;
  Jet2 c02 = m01 * m12 - m02 * m11;
  Jet2 c11 = m00 * m22 - m02 * m02;
  Jet2 c12 = m01 * m02 - m00 * m12;
  Jet2 c22 = m00 * m11 - m01 * m01;
  Jet2 det = m00 * c00 + m01 * c01 + m02 * c02;
  Jet2 inv_det = recip(det);

  auto solve = [&](const JV3& rhs) -> JV3 {
    return {(c00 * rhs.x + c01 * rhs.y + c02 * rhs.z) * inv_det,
            (c01 * rhs.x + c11 * rhs.y + c12 * rhs.z) * inv_det,
            (c02 * rhs.x + c12 * rhs.y + c22 * rhs.z) * inv_det};
  };
  // One semi-normal refinement step: the normal-equation solve squares the
  // condition number of the stacked system, and a near-rank-deficient dg
  // (orbit passing near a pole) otherwise costs half the mantissa.
  JV3 h = solve(r);
  JV3 rho1 = b1 - cross(h, a1), rho2 = b2 - cross(h, a2);
  return h + solve(cross(a1, rho1) + cross(a2, rho2));
}

double rotation_residual(const JV3& f, const JV3& g, const JV3& h) {
  V3 hv = value(h);
  double worst = 0;
  for (int axis = 0; axis < 2; ++axis) {
    V3 a = axis == 0 ? partial(f, 1, 0) : partial(f, 0, 1);
    V3 b = axis == 0 ? partial(g, 1, 0) : partial(g, 0, 1);
    double scale = std::max({norm(b), norm(hv) * norm(a), 1e-300});
    worst = std::max(worst, norm(b - cross(hv, a)) / scale);
  }
  return worst;
}

TripletJets step_A(const TripletJets& t) {
  return {t.h, t.g - cross(t.h, t.f), t.f};
}

JV3 polar_jet(const JV3& m) {
  if (m.x.order() < 1) throw OrderExceeded("polar needs order >= 1");
  JV3 d1 = derivative(m, 0), d2 = derivative(m, 1);
  require_immersion(d1, d2, "polar");
  JV3 nu = cross(d1, d2);
  JV3 mt = truncated(m, m.x.order() - 1);
  Jet2 den = dot(nu, mt);
  double scale = norm(value(nu)) * std::max(norm(value(mt)), 1.0);
  if (std::abs(den.value()) <= 1e-9 * std::max(scale, 1e-300))
    throw TangentPlaneThroughOrigin("polar: tangent plane passes through the origin");
  return jet_div(-nu, den);
}

namespace {

TripletJets step_D_rotation(const TripletJets& t) {
  JV3 s = solve_rotation_field(t.g, t.f);
  int k = t.order() - 1;
  return {truncated(t.g, k), truncated(t.f, k), s};
}

TripletJets step_D_polar(const TripletJets& t) {
  JV3 s = polar_jet(t.h);
  int k = t.order() - 1;
  return {truncated(t.g, k), truncated(t.f, k), s};
}

}  // namespace

TripletJets step_D(const TripletJets& t, DRoute route) {
  if (t.order() < 1) throw OrderExceeded("D step needs order >= 1");
  switch (route) {
    case DRoute::rotation_solve:
      return step_D_rotation(t);
    case DRoute::polar_of_h:
      return step_D_polar(t);
    case DRoute::cross_check: {
      TripletJets a = step_D_rotation(t);
      TripletJets b = step_D_polar(t);
      JV3 d = a.h - b.h;
      double scale = std::max({max_coeff(a.h), max_coeff(b.h), 1.0});
      if (max_coeff(d) > tol::route_agreement * scale)
        throw InconsistentSystem("D step: rotation solve and polar disagree");
      return a;
    }
    case DRoute::automatic:
      break;
  }
  try {
    return step_D_rotation(t);
  } catch (const Error& first) {
    try {
      return step_D_polar(t);
    } catch (const Error& second) {
      throw BothRoutesUnavailable(std::string("D step failed both ways: ") +
                                  first.what() + "; " + second.what());
    }
  }
}

std::string reduce_word(const std::string& word) {
  check_letters(word);
  std::string out;
  for (char c : word) {
    if (!out.empty() && out.back() == c)
      out.pop_back();  // AA or DD cancels
    else
      out.push_back(c);
  }
  return out;
}

DarbouxTriplet make_triplet(const DeformationPair& p) {
  DarbouxTriplet t;
  t.domain = p.domain;
  t.provenance = "";
  SurfaceMap f = p.f, g = p.g;
  t.jets = [f, g](double u, double v, int k) {
    JV3 fj = f.eval(u, v, k + 1);
    JV3 gj = g.eval(u, v, k + 1);
    JV3 h = solve_rotation_field(fj, gj);
    double res = rotation_residual(fj, gj, h);
    if (res > tol::triplet_residual)
      throw InconsistentSystem("dg = h x df unsolvable: df.dg != 0 (residual " +
                               std::to_string(res) + ")");
    return TripletJets{truncated(fj, k), truncated(gj, k), h};
  };
  rebind(t);
  return t;
}

DarbouxTriplet transform_A(const DarbouxTriplet& t) {
  DarbouxTriplet out;
  out.domain = t.domain;
  out.provenance = t.provenance + "A";
  auto prev = t.jets;
  out.jets = [prev](double u, double v, int k) { return step_A(prev(u, v, k)); };
  rebind(out);
  return out;
}

DarbouxTriplet transform_D(const DarbouxTriplet& t, DRoute route) {
  DarbouxTriplet out;
  out.domain = t.domain;
  out.provenance = t.provenance + "D";
  auto prev = t.jets;
  out.jets = [prev, route](double u, double v, int k) {
    return step_D(prev(u, v, k + 1), route);
  };
  rebind(out);
  return out;
}

DarbouxTriplet apply_word(const DarbouxTriplet& t, const std::string& word) {
  std::string reduced = reduce_word(word);
  DarbouxTriplet cur = t;
  std::string prefix;
  for (char c : reduced) {
    prefix.push_back(c);
    cur = c == 'A' ? transform_A(cur) : transform_D(cur);
    auto inner = cur.jets;
    std::string at = prefix;
    cur.jets = [inner, at](double u, double v, int k) {
      try {
        return inner(u, v, k);
      } catch (const Error& e) {
        std::string msg = e.what();
        if (msg.find("word prefix") != std::string::npos) throw;
        throw Error(msg + " (failed at word prefix \"" + at + "\")");
      }
    };
    rebind(cur);
  }
  return cur;
}

DarbouxTriplet triplet_shift(const DarbouxTriplet& t, V3 v, V3 a, V3 b) {
  DarbouxTriplet out;
  out.domain = t.domain;
  out.provenance = t.provenance;
  auto prev = t.jets;
  out.jets = [prev, v, a, b](double u, double w, int k) {
    TripletJets in = prev(u, w, k);
    JV3 av = const_jet_vec(a, k);
    return TripletJets{in.f + const_jet_vec(v, k),
                       in.g + cross(av, in.f) + const_jet_vec(b, k),
                       in.h + av};
  };
  rebind(out);
  return out;
}

SurfaceMap compute_h(const SurfaceMap& f, const SurfaceMap& g) {
  SurfaceMap fc = f, gc = g;
  return {[fc, gc](double u, double v, int k) {
            JV3 fj = fc.eval(u, v, k + 1);
            JV3 gj = gc.eval(u, v, k + 1);
            JV3 h = solve_rotation_field(fj, gj);
            double res = rotation_residual(fj, gj, h);
            if (res > tol::triplet_residual)
              throw InconsistentSystem(
                  "dg = h x df unsolvable: df.dg != 0 (residual " +
                  std::to_string(res) + ")");
            return h;
          },
          f.domain};
}

SurfaceMap polar(const SurfaceMap& m, PolarNormalization) {
  SurfaceMap mc = m;
  return {[mc](double u, double v, int k) { return polar_jet(mc.eval(u, v, k + 1)); },
          m.domain};
}

TripletJets eval_word_jets(const DeformationPair& p, const std::string& word,
                           double u, double v, int order, bool reduce,
                           DRoute route) {
  check_letters(word);
  std::string w = reduce ? reduce_word(word) : word;
  int nd = static_cast<int>(std::count(w.begin(), w.end(), 'D'));
  int base = order + nd + 1;
  JV3 fj = p.f.eval(u, v, base);
  JV3 gj = p.g.eval(u, v, base);
  JV3 h = solve_rotation_field(fj, gj);
  double res = rotation_residual(fj, gj, h);
  if (res > tol::triplet_residual)
    throw InconsistentSystem("dg = h x df unsolvable: df.dg != 0 (residual " +
                             std::to_string(res) + ")");
  TripletJets t{truncated(fj, base - 1), truncated(gj, base - 1), h};
  for (char c : w) t = c == 'A' ? step_A(t) : step_D(t, route);
  return t;
}

namespace {

struct OrbitRow {
  const char* word;
  const char* label;
  const char* family;
};

constexpr OrbitRow orbit_rows[] = {
    {"", "f", "f"},           {"A", "h", "h"},
    {"D", "g", "g"},          {"AD", "gtilde", "g"},
    {"DA", "hstar", "h"},     {"ADA", "fstar", "f"},
    {"DAD", "ftilde", "f"},   {"ADAD", "htilde", "h"},
    {"DADA", "gstar", "g"},   {"ADADA", "gtildestar", "g"},
    {"DADAD", "htildestar", "h"}, {"ADADAD", "ftildestar", "f"},
};

}  // namespace

std::vector<OrbitEntry> twelve_surfaces(const DarbouxTriplet& t) {
  std::vector<OrbitEntry> orbit;
  orbit.reserve(12);
  for (const OrbitRow& row : orbit_rows) {
    OrbitEntry e;
    e.word = row.word;
    e.label = row.label;
    e.family = row.family;
    e.surface = apply_word(t, row.word).f;
    orbit.push_back(std::move(e));
  }
  return orbit;
}

const OrbitEntry& find_surface(const std::vector<OrbitEntry>& orbit,
                               const std::string& word_or_label) {
  for (const OrbitEntry& e : orbit)
    if (e.word == word_or_label || e.label == word_or_label) return e;
  throw UnknownSurface("no orbit surface named \"" + word_or_label + "\"");
}

}  // namespace darboux
