#include <cmath>

#include "doctest.h"

#include "darboux/second_forms.hpp"
#include "darboux/tolerances.hpp"
#include "darboux/triplet.hpp"

using namespace darboux;

namespace {

QuadraticForm2 hand_form(double a11, double a12, double a22) {
  QuadraticForm2 q;
  q.m << a11, a12, a12, a22;
  q.zero_scale = 1.0;
  return q;
}

double rel_diff(const Eigen::Matrix2d& got, const Eigen::Matrix2d& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

}  // namespace

TEST_CASE("apolarity scalar on hand-built forms") {
  CHECK(apolarity_check(hand_form(1, 0, 1), hand_form(1, 0, -1)) == 0.0);
  CHECK(apolarity_check(hand_form(1, 0, 1), hand_form(1, 0, 1)) ==
        doctest::Approx(1.0));
  CHECK(apolarity_check(hand_form(0, 1, 0), hand_form(0, 1, 0)) ==
        doctest::Approx(1.0));
  // A vanishing form is apolar to everything by convention.
  CHECK(apolarity_check(hand_form(0, 0, 0), hand_form(1, 0, 1)) == 0.0);
}

TEST_CASE("rank, kernel and marginality helpers") {
  CHECK(form_rank(hand_form(1, 0, 1e-9)) == 1);
  CHECK(form_rank(hand_form(1, 0, -2)) == 2);
  CHECK(form_rank(hand_form(0, 0, 0)) == 0);
  CHECK_FALSE(rank_marginal(hand_form(1, 0, 1e-9)));
  // Small eigenvalue within a factor 10 of the rank cutoff 1e-6*norm.
  CHECK(rank_marginal(hand_form(1, 0, 5e-6)));
  // Norm within a factor 10 of the zero threshold 1e-8*zero_scale.
  CHECK(rank_marginal(hand_form(3e-8, 0, 0)));

  Eigen::Vector2d k = form_kernel(hand_form(1, 0, 1e-9));
  CHECK(std::abs(k(0)) < 1e-3);
  CHECK(std::abs(k(1)) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)form_kernel(hand_form(1, 0, -1)),
                  const IncompatibleArguments&);
}

TEST_CASE("classical forms at the reference point") {
  const DeformationPair& p = find_pair("paraboloid");
  DarbouxTriplet t = make_triplet(p);
  TripletJets j = t.jets(1.0, 2.0, 2);

  V3 nu = cross(value(derivative(j.f, 0)), value(derivative(j.f, 1)));
  V3 fstar = (-1.0 / dot(nu, value(j.f))) * nu;
  CHECK(norm(fstar - V3{-0.5, -1.0, 0.25}) < 1e-9);

  ClassicalForms cls = classical_forms(t, 1.0, 2.0);
  // f = (u, v, u^2+v^2+1): D^2 f = 2 e3 on the diagonal, f*_3 = 0.25.
  CHECK(rel_diff(cls.f.m, 0.5 * Eigen::Matrix2d::Identity()) < 1e-9);
  CHECK(form_rank(cls.f) == 2);

  // g* = -h/(h.g) pairs to -1 with g and annihilates dg.
  V3 hv = value(j.h), gv = value(j.g);
  V3 gstar = (-1.0 / dot(hv, gv)) * hv;
  CHECK(std::abs(dot(gstar, gv) + 1.0) < 1e-9);
  CHECK(std::abs(dot(gstar, value(derivative(j.g, 0)))) < 1e-9);
  CHECK(std::abs(dot(gstar, value(derivative(j.g, 1)))) < 1e-9);

  // h* = -nu/(nu.h) satisfies f* = -(h.f*) h* and (h*.f)(h.f*) = 1.
  V3 hstar = (-1.0 / dot(nu, hv)) * nu;
  double hfs = dot(hv, fstar);
  CHECK(norm(fstar + hfs * hstar) < 1e-9);
  CHECK(std::abs(dot(hstar, value(j.f)) * hfs - 1.0) < 1e-9);
}

TEST_CASE("octonion forms at the reference point") {
  const DeformationPair& p = find_pair("paraboloid");
  IsotropicImmersionPoint pt = lift_point(p, 1.0, 2.0, 1);
  OctonionForms f = forms_from_octonions(pt);
  CHECK(f.direction_residual <= tol::forms_direction);
  CHECK(f.symmetry_residual <= tol::forms_direction);

  // In this representative gauge the plus form is (nu.f) times the classical
  // one: nu.f = -4 at (1,2), so it must equal diag(-2,-2) exactly.
  CHECK(rel_diff(f.plus.m, -2.0 * Eigen::Matrix2d::Identity()) < 1e-9);
  CHECK(form_rank(f.plus) == 2);
  CHECK(form_rank(f.minus) == 2);
  CHECK(form_rank(f.core) == 2);

  // Rank-(2,2,2) trichotomy: exactly one of the three forms is definite.
  int definite = 0;
  for (const QuadraticForm2* q : {&f.plus, &f.minus, &f.core}) {
    double d = q->m.determinant();
    CHECK(std::abs(d) > 1e-6 * q->m.norm() * q->m.norm());
    if (d > 0) ++definite;
  }
  CHECK(definite == 1);
}

TEST_CASE("apolarity of the extracted forms across the catalog") {
  for (const DeformationPair& p : catalog()) {
    for (const GridPoint& at : pair_grid(p, 4)) {
      INFO("pair ", p.name, " at (", at.u, ",", at.v, ")");
      IsotropicImmersionPoint pt = lift_point(p, at.u, at.v, 1);
      OctonionForms f = forms_from_octonions(pt);
      CHECK(f.direction_residual <= tol::forms_direction);
      CHECK(f.symmetry_residual <= tol::forms_direction);
      CHECK(apolarity_check(f.plus, f.minus) <= tol::apolarity);
      CHECK(apolarity_check(f.core, f.plus) <= tol::apolarity);
      CHECK(apolarity_check(f.core, f.minus) <= tol::apolarity);
    }
  }
}

TEST_CASE("rescaling a representative rescales coefficients only") {
  const DeformationPair& p = find_pair("paraboloid");
  IsotropicImmersionPoint pt = lift_point(p, 0.4, 1.7, 1);
  OctonionForms base = forms_from_octonions(pt);

  IsotropicImmersionPoint scaled = pt;
  Jet2 two = Jet2::constant(2.0, pt.order());
  scaled.psi = {pt.psi.x * two, pt.psi.s * two, pt.psi.y * two, pt.psi.t * two};
  OctonionForms f = forms_from_octonions(scaled);

  // The product for the plus form is linear in psi; the core form's target
  // direction is psi itself, so its coefficients halve.
  CHECK(rel_diff(f.plus.m, 2.0 * base.plus.m) < 1e-9);
  CHECK(rel_diff(f.minus.m, 2.0 * base.minus.m) < 1e-9);
  CHECK(rel_diff(f.core.m, 0.5 * base.core.m) < 1e-9);
}

TEST_CASE("degenerate pairs force the predicted vanishing forms") {
  for (const GridPoint& at : pair_grid(find_pair("trivial"), 4)) {
    INFO("trivial at (", at.u, ",", at.v, ")");
    OctonionForms f =
        forms_from_octonions(lift_point(find_pair("trivial"), at.u, at.v, 1));
    CHECK(effectively_zero(f.minus));
    CHECK(effectively_zero(f.core));
    CHECK(form_rank(f.plus) == 2);
  }
  for (const GridPoint& at : pair_grid(find_pair("planar"), 4)) {
    INFO("planar at (", at.u, ",", at.v, ")");
    OctonionForms f =
        forms_from_octonions(lift_point(find_pair("planar"), at.u, at.v, 1));
    CHECK(effectively_zero(f.plus));
    CHECK(effectively_zero(f.core));
    CHECK(form_rank(f.minus) == 2);
  }
}

TEST_CASE("proportionality to the classical forms with exact factors") {
  const DeformationPair& p = find_pair("paraboloid");
  DarbouxTriplet t = make_triplet(p);
  for (const GridPoint& at : pair_grid(p, 3)) {
    INFO("paraboloid at (", at.u, ",", at.v, ")");
    ProportionalityReport r = proportionality_check(t, at.u, at.v);
    for (const ProportionalityComponent* c : {&r.plus, &r.minus, &r.core}) {
      CHECK(c->polar_defined);
      CHECK_FALSE(c->vacuous);
      CHECK(c->cross_residual <= tol::proportionality);
    }
    CHECK(r.factor_residual >= 0.0);
    CHECK(r.factor_residual <= tol::proportionality);
    CHECK(r.gauge_sign == 1.0);
  }
  for (const char* name : {"ruled", "developable"}) {
    const DeformationPair& q = find_pair(name);
    DarbouxTriplet tq = make_triplet(q);
    for (const GridPoint& at : pair_grid(q, 3)) {
      INFO(name, " at (", at.u, ",", at.v, ")");
      ProportionalityReport r = proportionality_check(tq, at.u, at.v);
      CHECK(r.plus.cross_residual <= tol::proportionality);
      CHECK(r.minus.cross_residual <= tol::proportionality);
      CHECK(r.core.cross_residual <= tol::proportionality);
      CHECK(r.factor_residual >= 0.0);
      CHECK(r.factor_residual <= tol::proportionality);
    }
  }
}

TEST_CASE("proportionality flags on degenerate pairs") {
  DarbouxTriplet t2 = make_triplet(find_pair("trivial"));
  ProportionalityReport r2 = proportionality_check(t2, 1.1, 2.1);
  CHECK(r2.plus.polar_defined);
  CHECK_FALSE(r2.plus.vacuous);
  CHECK(r2.plus.cross_residual <= tol::proportionality);
  CHECK(r2.minus.vacuous);
  CHECK(r2.core.vacuous);
  CHECK(r2.factor_residual < 0.0);

  DarbouxTriplet t3 = make_triplet(find_pair("planar"));
  ProportionalityReport r3 = proportionality_check(t3, 0.6, 1.1);
  CHECK(r3.plus.vacuous);
  CHECK_FALSE(r3.minus.polar_defined);
  CHECK_FALSE(r3.core.polar_defined);

  // The cylinder's rotation field pairs to zero with both g and the normal
  // of f, so the g- and h-side polar gauges are undefined there.
  DarbouxTriplet t5 = make_triplet(find_pair("cylinder"));
  ProportionalityReport r5 = proportionality_check(t5, 1.7, -0.1);
  CHECK(r5.plus.polar_defined);
  CHECK(r5.plus.cross_residual <= tol::proportionality);
  CHECK_FALSE(r5.minus.polar_defined);
  CHECK_FALSE(r5.core.polar_defined);

  CHECK_THROWS_AS((void)classical_forms(t3, 0.6, 1.1), const PolarUndefined&);
}

TEST_CASE("rank table rows across the catalog") {
  struct Expected {
    const char* name;
    std::array<int, 3> row;
  };
  const Expected table[] = {
      {"paraboloid", {2, 2, 2}}, {"trivial", {2, 0, 0}},
      {"planar", {0, 2, 0}},     {"ruled", {2, 1, 1}},
      {"cylinder", {1, 1, 0}},   {"developable", {1, 2, 1}},
  };
  for (const Expected& e : table) {
    INFO("pair ", e.name);
    FormRankReport rep = rank_table(find_pair(e.name), 4);
    CHECK(rep.row == e.row);
    CHECK(rep.marginal_count == 0);
    CHECK(rep.table_checked >= 12);
    CHECK(rep.rank_mismatch == 0);
    CHECK(rep.kernel_angle <= tol::kernel_angle);
  }
}

TEST_CASE("a wrong target direction is detected") {
  IsotropicImmersionPoint pt = lift_point(find_pair("paraboloid"), 1.0, 2.0, 1);
  // A constant offset leaves every derivative intact but bends the target
  // direction the minus-form products are projected onto.
  pt.psi_minus.s = pt.psi_minus.s + Jet2::constant(0.3, pt.order());
  CHECK_THROWS_AS((void)forms_from_octonions(pt), const DirectionMismatch&);
}
