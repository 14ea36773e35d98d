#include <cmath>

#include "darboux/quadric.hpp"
#include "darboux/rng.hpp"
#include "doctest.h"

using namespace darboux;

namespace {

Vec8 plus_label(const V3& a, const V3& b) {
  return to_vec8(ZornR{dot(a, b), -a, -b, 1.0});
}

Vec8 minus_label(const V3& a, const V3& b) {
  return to_vec8(ZornR{1.0, a, b, dot(a, b)});
}

}  // namespace

TEST_CASE("charts at the origin are the coordinate subspaces") {
  IsoSubspace wp = chart_plus({0, 0, 0}, {0, 0, 0});
  CHECK(wp.dim() == 4);
  CHECK(gram_residual(wp.basis) < 1e-14);
  // (x, s, 0, 0) lies in it, (0, 0, y, t) does not.
  CHECK(containment_residual(wp, to_vec8(P44{{1, -2, 0.5}, 3.0, {}, 0.0})) < 1e-14);
  CHECK(containment_residual(wp, to_vec8(P44{{}, 0.0, {1, 0, 0}, 0.0})) > 0.9);

  IsoSubspace wm = chart_minus({0, 0, 0}, {0, 0, 0});
  CHECK(containment_residual(wm, to_vec8(P44{{1, 2, 3}, 0.0, {}, -4.0})) < 1e-14);
  CHECK(containment_residual(wm, to_vec8(P44{{}, 1.0, {}, 0.0})) > 0.9);
}

TEST_CASE("charts are graphs of the advertised linear maps") {
  Rng rng(60);
  V3 a = rng.vec3(), b = rng.vec3();
  IsoSubspace wp = chart_plus(a, b);
  CHECK(gram_residual(wp.basis) < 1e-13);
  for (int rep = 0; rep < 5; ++rep) {
    V3 x = rng.vec3();
    double s = rng.uniform();
    P44 v{x, s, cross(a, x) + scale(b, s), -dot(b, x)};
    CHECK(std::abs(q_form(v)) < 1e-13);
    CHECK(containment_residual(wp, to_vec8(v)) < 1e-12);
  }
  IsoSubspace wm = chart_minus(a, b);
  for (int rep = 0; rep < 5; ++rep) {
    V3 x = rng.vec3();
    double t = rng.uniform();
    P44 v{x, -dot(b, x), cross(a, x) + scale(b, t), t};
    CHECK(containment_residual(wm, to_vec8(v)) < 1e-12);
  }
}

TEST_CASE("classification recovers the chart labels") {
  Rng rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    V3 a = rng.vec3(), b = rng.vec3();
    FamilyLabel lp = classify_family(chart_plus(a, b));
    CHECK(lp.family == Family::plus_family);
    CHECK(proj_sin_angle(to_vec8(lp.z), plus_label(a, b)) < 1e-9);
    CHECK(std::abs(norm_form(lp.z)) < 1e-10);

    FamilyLabel lm = classify_family(chart_minus(a, b));
    CHECK(lm.family == Family::minus_family);
    CHECK(proj_sin_angle(to_vec8(lm.z), minus_label(a, b)) < 1e-9);
  }
}

TEST_CASE("points of a plus chart are absorbed by the label") {
  Rng rng(62);
  V3 a = rng.vec3(), b = rng.vec3();
  IsoSubspace wp = chart_plus(a, b);
  ZornR z = classify_family(wp).z;
  for (int c = 0; c < 4; ++c) {
    ZornR v = from_vec8(rho_vec8(wp.basis.col(c)));
    CHECK(product_residual(z, v) < 1e-9);  // rho(W) = ker L_Z
  }
}

TEST_CASE("annihilators of a null octonion are the two maximal isotropics") {
  Rng rng(63);
  for (int rep = 0; rep < 10; ++rep) {
    ZornR z = rng.null_zorn();
    IsoSubspace wl = annihilator(z, Side::left);
    CHECK(wl.family == Family::plus_family);
    CHECK(wl.dim() == 4);
    CHECK(gram_residual(wl.basis) < 1e-10);
    FamilyLabel l = classify_family(wl);
    CHECK(l.family == Family::plus_family);
    CHECK(proj_sin_angle(to_vec8(l.z), to_vec8(z)) < 1e-8);

    IsoSubspace wr = annihilator(z, Side::right);
    CHECK(wr.family == Family::minus_family);
    CHECK(proj_sin_angle(to_vec8(classify_family(wr).z), to_vec8(z)) < 1e-8);
  }
}

TEST_CASE("incidence of opposite charts happens exactly on the cross relation") {
  Rng rng(64);
  for (int rep = 0; rep < 10; ++rep) {
    V3 a = rng.vec3(), b = rng.vec3(), bp = rng.vec3();
    V3 ap = a + cross(b, bp);
    IsoSubspace wp = chart_plus(a, b);
    IsoSubspace wm = chart_minus(ap, bp);
    CHECK(incident(wp, wm));
    // Label product vanishes in the incident position.
    ZornR zp = from_vec8(plus_label(a, b));
    ZornR zm = from_vec8(minus_label(ap, bp));
    CHECK(product_residual(zm, zp) < 1e-12);

    V3 off = ap + V3{0.37, 0, 0};
    CHECK_FALSE(incident(wp, chart_minus(off, bp)));
    ZornR zo = from_vec8(minus_label(off, bp));
    CHECK(product_residual(zo, zp) > 1e-3);
  }
  CHECK_THROWS_AS(incident(chart_plus({}, {}), chart_plus({1, 0, 0}, {})),
                  SameFamily);
}

TEST_CASE("extending a 3-dimensional isotropic subspace") {
  // Hand example: V = span{x1, x2, s}. V-perp drops y1, y2, t; the quotient
  // is spanned by x3, y3 with q = x3 y3, so the null directions give the
  // (x, s) coordinate space and span{x1, x2, s, y3}.
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(8, 3);
  basis(0, 0) = 1.0;  // x1
  basis(1, 1) = 1.0;  // x2
  basis(3, 2) = 1.0;  // s
  IsoSubspace v{basis, Family::none};
  auto [wp, wm] = extend_isotropic3(v);
  CHECK(wp.family == Family::plus_family);
  CHECK(wm.family == Family::minus_family);
  CHECK(sin_max_principal_angle(wp.basis, chart_plus({}, {}).basis) < 1e-10);
  Vec8 y3 = Vec8::Zero();
  y3(6) = 1.0;
  CHECK(containment_residual(wm, y3) < 1e-10);

  // Property: restricting a random chart to 3 columns and extending recovers
  // the chart on the matching side.
  Rng rng(65);
  for (int rep = 0; rep < 10; ++rep) {
    V3 a = rng.vec3(), b = rng.vec3();
    IsoSubspace w = chart_plus(a, b);
    IsoSubspace v3{w.basis.leftCols(3), Family::none};
    auto [p, m] = extend_isotropic3(v3);
    CHECK(sin_max_principal_angle(p.basis, w.basis) < 1e-9);
    CHECK(gram_residual(m.basis) < 1e-10);
    CHECK(incident(p, m));  // they share the 3-dimensional core
    for (int c = 0; c < 3; ++c) {
      CHECK(containment_residual(p, v3.basis.col(c)) < 1e-9);
      CHECK(containment_residual(m, v3.basis.col(c)) < 1e-9);
    }
  }
}

TEST_CASE("pgl4 action preserves q and transports isotropic subspaces") {
  Rng rng(66);
  Eigen::Matrix4d a;
  do {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = rng.uniform();
  } while (std::abs(a.determinant()) < 0.1);

  for (int rep = 0; rep < 10; ++rep) {
    P44 v{rng.vec3(), rng.uniform(), rng.vec3(), rng.uniform()};
    P44 av = pgl4_action(a, v);
    CHECK(q_form(av) == doctest::Approx(q_form(v)).epsilon(1e-12));
  }

  V3 ca = rng.vec3(), cb = rng.vec3();
  IsoSubspace w = pgl4_action(a, chart_plus(ca, cb));
  CHECK(gram_residual(w.basis) < 1e-11);
  CHECK(classify_family(w).family == Family::plus_family);

  // A shear in the (s, x1) block: not affine in the chart coordinates.
  Eigen::Matrix4d shear = Eigen::Matrix4d::Identity();
  shear(3, 0) = 0.3;
  IsoSubspace ws = pgl4_action(shear, chart_minus(ca, cb));
  CHECK(gram_residual(ws.basis) < 1e-11);
  CHECK(classify_family(ws).family == Family::minus_family);

  // Jet-valued action agrees with the value-level action.
  J44 jet{const_jet_vec(rng.vec3(), 1), Jet2::variable(0, 0.5, 1),
          const_jet_vec(rng.vec3(), 1), Jet2::variable(1, -0.25, 1)};
  P44 via_jet = value(pgl4_action(a, jet));
  P44 direct = pgl4_action(a, value(jet));
  CHECK((to_vec8(via_jet) - to_vec8(direct)).norm() < 1e-13);

  P44 pt{rng.vec3(), rng.uniform(), rng.vec3(), rng.uniform()};
  CHECK_THROWS_AS(pgl4_action(Eigen::Matrix4d::Zero(), pt), SingularMatrix);
}

TEST_CASE("error paths") {
  Eigen::MatrixXd b3 = Eigen::MatrixXd::Zero(8, 3);
  b3(0, 0) = b3(1, 1) = b3(2, 2) = 1.0;
  CHECK_THROWS_AS(classify_family(IsoSubspace{b3, Family::none}),
                  IncompatibleArguments);
  Eigen::MatrixXd b4 = Eigen::MatrixXd::Zero(8, 4);
  b4(0, 0) = b4(3, 1) = b4(4, 2) = b4(7, 3) = 1.0;  // x1, s, y1, t: not isotropic
  CHECK_THROWS_AS(classify_family(IsoSubspace{b4, Family::none}), NotIsotropic);
  CHECK_THROWS_AS(annihilator(ZornR{1, {}, {}, 1}, Side::left), NotIsotropic);
  CHECK_THROWS_AS(annihilator(ZornR{}, Side::left), ZeroElement);
  CHECK_THROWS_AS(extend_isotropic3(chart_plus({}, {})), IncompatibleArguments);
  Eigen::MatrixXd dep(8, 2);
  dep.col(0) = Vec8::Ones();
  dep.col(1) = 2.0 * Vec8::Ones();
  CHECK_THROWS_AS(orthonormalize(dep), DegenerateInput);
}
