#include "darboux/quadric.hpp"

#include <cmath>

#include "darboux/error.hpp"

namespace darboux {

namespace {

Eigen::MatrixXd map_rho_inv(const Eigen::MatrixXd& basis_z) {
  Eigen::MatrixXd out(8, basis_z.cols());
  for (int c = 0; c < basis_z.cols(); ++c) out.col(c) = rho_inv_vec8(basis_z.col(c));
  return out;
}

IsoSubspace from_columns(Eigen::MatrixXd cols, Family fam) {
  IsoSubspace w;
  w.basis = orthonormalize(cols);
  w.family = fam;
  return w;
}

}  // namespace

IsoSubspace chart_plus(const V3& a, const V3& b) {
  Eigen::MatrixXd m(8, 4);
  const V3 e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int k = 0; k < 3; ++k) {
    V3 y = cross(a, e[k]);
    P44 v{e[k], 0.0, y, -dot(b, e[k])};
    m.col(k) = to_vec8(v);
  }
  m.col(3) = to_vec8(P44{{0, 0, 0}, 1.0, b, 0.0});
  return from_columns(m, Family::plus_family);
}

IsoSubspace chart_minus(const V3& a, const V3& b) {
  Eigen::MatrixXd m(8, 4);
  const V3 e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int k = 0; k < 3; ++k) {
    V3 y = cross(a, e[k]);
    P44 v{e[k], -dot(b, e[k]), y, 0.0};
    m.col(k) = to_vec8(v);
  }
  m.col(3) = to_vec8(P44{{0, 0, 0}, 0.0, b, 1.0});
  return from_columns(m, Family::minus_family);
}

FamilyLabel classify_family(const IsoSubspace& w) {
  if (w.dim() != 4)
    throw IncompatibleArguments("classify_family needs a 4-dimensional subspace");
  if (gram_residual(w.basis) > tol::iso_eps)
    throw NotIsotropic("classify_family: subspace is not totally isotropic");

  // rho(W) = ker L_Z demands Z.V = 0 for V in rho(W), i.e. R_V Z = 0 (plus);
  // rho(W) = ker R_Z demands V.Z = 0, i.e. L_V Z = 0 (minus).
  Eigen::MatrixXd plus_sys(32, 8), minus_sys(32, 8);
  for (int c = 0; c < 4; ++c) {
    ZornR v = from_vec8(rho_vec8(w.basis.col(c)));
    plus_sys.middleRows(8 * c, 8) = mul_operator(v, Side::right);
    minus_sys.middleRows(8 * c, 8) = mul_operator(v, Side::left);
  }
  Eigen::MatrixXd k_plus = null_space(plus_sys, 1e-7);
  Eigen::MatrixXd k_minus = null_space(minus_sys, 1e-7);
  if (k_plus.cols() + k_minus.cols() != 1)
    throw AmbiguousFamily("classify_family: no unique null label");
  FamilyLabel out;
  if (k_plus.cols() == 1) {
    out.family = Family::plus_family;
    out.z = from_vec8(k_plus.col(0));
  } else {
    out.family = Family::minus_family;
    out.z = from_vec8(k_minus.col(0));
  }
  return out;
}

IsoSubspace annihilator(const ZornR& z, Side side) {
  double n = euclid_norm(z);
  if (n < 1e-300) throw ZeroElement("annihilator of the zero octonion");
  if (std::abs(norm_form(z)) > tol::iso_eps * n * n)
    throw NotIsotropic("annihilator requires a null octonion");
  Eigen::MatrixXd ker = null_space(mul_operator(z, side), tol::kernel_cutoff);
  if (ker.cols() != 4)
    throw DegenerateInput("annihilator: kernel dimension is not 4");
  IsoSubspace w;
  w.basis = map_rho_inv(ker);  // rho is coordinate-orthogonal, so still orthonormal
  w.family = (side == Side::left) ? Family::plus_family : Family::minus_family;
  return w;
}

bool incident(const ProjPoint& p, const IsoSubspace& w, double tolerance) {
  if (w.dim() != 4)
    throw IncompatibleArguments("incidence needs a maximal subspace");
  return containment_residual(w, p.v) <= tolerance;
}

bool incident(const IsoSubspace& a, const IsoSubspace& b, double tolerance) {
  if (a.dim() != 4 || b.dim() != 4)
    throw IncompatibleArguments("incidence needs maximal subspaces");
  if (a.family == b.family)
    throw SameFamily("incidence is defined between opposite families");
  // dim(A cap B) = 8 - rank[A B]; opposite families meet in dim 1 or 3.
  int r = joint_rank(a.basis, b.basis, 10.0 * tolerance);
  return (8 - r) >= 3;
}

std::pair<IsoSubspace, IsoSubspace> extend_isotropic3(const IsoSubspace& v) {
  if (v.dim() != 3)
    throw IncompatibleArguments("extend_isotropic3 needs a 3-dimensional subspace");
  if (gram_residual(v.basis) > tol::iso_eps)
    throw NotIsotropic("extend_isotropic3: subspace is not totally isotropic");

  // V-perp with respect to the polarization of q: null space of G B where G
  // is the Gram matrix of q and B the basis. q_polar(u, w) = u^T G w.
  Mat8 g = Mat8::Zero();
  for (int k = 0; k < 3; ++k) {
    g(k, 4 + k) = 0.5;
    g(4 + k, k) = 0.5;
  }
  g(3, 7) = 0.5;
  g(7, 3) = 0.5;
  Eigen::MatrixXd perp = null_space((v.basis.transpose() * g).eval(), 1e-10);  // 8x5
  if (perp.cols() != 5)
    throw DegenerateInput("extend_isotropic3: V-perp has unexpected dimension");

  // Euclidean complement of V inside V-perp: representatives of V-perp / V.
  Eigen::MatrixXd c = null_space((v.basis.transpose() * perp).eval(), 1e-10);
  if (c.cols() != 2)
    throw DegenerateInput("extend_isotropic3: quotient has unexpected dimension");
  Eigen::MatrixXd comp = perp * c;  // 8x2

  // q restricted to the complement: 2x2 symmetric with signature (1,1).
  Eigen::Matrix2d gq;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      gq(i, j) = q_polar(p44_from_vec8(comp.col(i)), p44_from_vec8(comp.col(j)));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gq);
  double d0 = es.eigenvalues()(0), d1 = es.eigenvalues()(1);
  if (!(d0 < 0.0 && d1 > 0.0) ||
      std::min(std::abs(d0), std::abs(d1)) < 1e-10 * std::max(std::abs(d0), std::abs(d1)))
    throw DegenerateInput("extend_isotropic3: quotient form is not split");

  // Null directions of diag(d0, d1): alpha*sqrt(d1) e0 +- sqrt(-d0) e1.
  Eigen::Vector2d n0(std::sqrt(d1), std::sqrt(-d0));
  Eigen::Vector2d n1(std::sqrt(d1), -std::sqrt(-d0));
  Vec8 w0 = comp * (es.eigenvectors() * n0);
  Vec8 w1 = comp * (es.eigenvectors() * n1);

  auto extend = [&](const Vec8& dir) {
    Eigen::MatrixXd m(8, 4);
    m.leftCols(3) = v.basis;
    m.col(3) = dir;
    IsoSubspace w;
    w.basis = orthonormalize(m);
    w.family = Family::none;
    return w;
  };
  IsoSubspace wa = extend(w0), wb = extend(w1);
  FamilyLabel la = classify_family(wa), lb = classify_family(wb);
  wa.family = la.family;
  wb.family = lb.family;
  if (la.family == lb.family)
    throw AmbiguousFamily("extend_isotropic3: extensions classify identically");
  if (la.family == Family::plus_family) return {wa, wb};
  return {wb, wa};
}

namespace {

Eigen::Matrix4d inverse_transpose(const Eigen::Matrix4d& a) {
  Eigen::FullPivLU<Eigen::Matrix4d> lu(a.transpose());
  if (!lu.isInvertible()) throw SingularMatrix("pgl4_action: matrix is singular");
  return lu.inverse();
}

template <class S>
Vec44<S> pgl4_apply(const Eigen::Matrix4d& a, const Eigen::Matrix4d& ait,
                    const Vec44<S>& v) {
  // (x, s) and (y, t) as 4-vectors in the order (x1, x2, x3, s) etc.
  S u1[4] = {v.x.x, v.x.y, v.x.z, v.s};
  S u2[4] = {v.y.x, v.y.y, v.y.z, v.t};
  S r1[4], r2[4];
  for (int i = 0; i < 4; ++i) {
    r1[i] = a(i, 0) * u1[0] + a(i, 1) * u1[1] + a(i, 2) * u1[2] + a(i, 3) * u1[3];
    r2[i] = ait(i, 0) * u2[0] + ait(i, 1) * u2[1] + ait(i, 2) * u2[2] + ait(i, 3) * u2[3];
  }
  return {{r1[0], r1[1], r1[2]}, r1[3], {r2[0], r2[1], r2[2]}, r2[3]};
}

}  // namespace

P44 pgl4_action(const Eigen::Matrix4d& a, const P44& v) {
  return pgl4_apply(a, inverse_transpose(a), v);
}

J44 pgl4_action(const Eigen::Matrix4d& a, const J44& v) {
  return pgl4_apply(a, inverse_transpose(a), v);
}

IsoSubspace pgl4_action(const Eigen::Matrix4d& a, const IsoSubspace& w) {
  Eigen::Matrix4d ait = inverse_transpose(a);
  Eigen::MatrixXd m(8, w.dim());
  for (int c = 0; c < w.dim(); ++c) {
    P44 v = p44_from_vec8(w.basis.col(c));
    m.col(c) = to_vec8(pgl4_apply(a, ait, v));
  }
  IsoSubspace out;
  out.basis = orthonormalize(m);
  out.family = w.family;
  return out;
}

}  // namespace darboux
