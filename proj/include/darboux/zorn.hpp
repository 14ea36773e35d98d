#pragma once

#include <Eigen/Dense>

#include "darboux/error.hpp"
#include "darboux/tolerances.hpp"
#include "darboux/vec3.hpp"

namespace darboux {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

/// Split octonion as a Zorn vector matrix (a, x; y, b) with a, b scalars and
/// x, y in R^3. Coordinates are ordered (a, x1, x2, x3, y1, y2, y3, b).
template <class S>
struct Zorn {
  S a{}, b{};
  Vec3<S> x{}, y{};

  Zorn() = default;
  Zorn(S pa, Vec3<S> px, Vec3<S> py, S pb)
      : a(std::move(pa)), b(std::move(pb)), x(std::move(px)), y(std::move(py)) {}

  Zorn operator-() const { return {-a, -x, -y, -b}; }
  Zorn& operator+=(const Zorn& o) { a += o.a; x += o.x; y += o.y; b += o.b; return *this; }
  Zorn& operator-=(const Zorn& o) { a -= o.a; x -= o.x; y -= o.y; b -= o.b; return *this; }
  friend Zorn operator+(Zorn u, const Zorn& v) { return u += v; }
  friend Zorn operator-(Zorn u, const Zorn& v) { return u -= v; }
  friend Zorn operator*(const S& s, const Zorn& v) { return {s * v.a, s * v.x, s * v.y, s * v.b}; }
};

/// Zorn product:
/// (a, x; y, b)(a', x'; y', b') =
///   (aa' + x.y', ax' + b'x - y X y'; a'y + by' + x X x', x'.y + bb').
template <class S>
inline Zorn<S> mul(const Zorn<S>& u, const Zorn<S>& v) {
  Zorn<S> r;
  r.a = u.a * v.a + dot(u.x, v.y);
  r.x = u.a * v.x + v.b * u.x - cross(u.y, v.y);
  r.y = v.a * u.y + u.b * v.y + cross(u.x, v.x);
  r.b = dot(v.x, u.y) + u.b * v.b;
  return r;
}

/// Determinant norm N(Z) = ab - x.y; multiplicative.
template <class S>
inline S norm_form(const Zorn<S>& u) {
  return u.a * u.b - dot(u.x, u.y);
}

/// Polarization of N: <Z, Z'> = (N(Z+Z') - N(Z) - N(Z'))/2.
template <class S>
inline S bilinear(const Zorn<S>& u, const Zorn<S>& v) {
  return 0.5 * (u.a * v.b + v.a * u.b - dot(u.x, v.y) - dot(v.x, u.y));
}

/// Conjugation Z-bar = 2<Z,1>1 - Z: swaps the diagonal, negates x and y.
template <class S>
inline Zorn<S> conj(const Zorn<S>& u) {
  return {u.b, -u.x, -u.y, u.a};
}

/// Transposition: swaps x and y. An anti-automorphism.
template <class S>
inline Zorn<S> transpose(const Zorn<S>& u) {
  return {u.a, u.y, u.x, u.b};
}

template <class S>
inline S re(const Zorn<S>& u) {
  return 0.5 * (u.a + u.b);
}

using ZornR = Zorn<double>;
using ZornJ = Zorn<Jet2>;

inline ZornR zorn_unit() { return {1.0, {}, {}, 1.0}; }

inline Vec8 to_vec8(const ZornR& u) {
  Vec8 v;
  v << u.a, u.x.x, u.x.y, u.x.z, u.y.x, u.y.y, u.y.z, u.b;
  return v;
}

inline ZornR from_vec8(const Vec8& v) {
  return {v(0), {v(1), v(2), v(3)}, {v(4), v(5), v(6)}, v(7)};
}

inline double euclid_norm(const ZornR& u) { return to_vec8(u).norm(); }

enum class Side { left, right };

/// 8x8 matrix of left multiplication L_Z: W -> ZW, or right R_Z: W -> WZ.
inline Mat8 mul_operator(const ZornR& z, Side side) {
  Mat8 m;
  for (int k = 0; k < 8; ++k) {
    Vec8 e = Vec8::Zero();
    e(k) = 1.0;
    ZornR ek = from_vec8(e);
    ZornR col = (side == Side::left) ? mul(z, ek) : mul(ek, z);
    m.col(k) = to_vec8(col);
  }
  return m;
}

// --- jet-valued helpers ---

inline ZornR value(const ZornJ& u) {
  return {u.a.value(), value(u.x), value(u.y), u.b.value()};
}

inline ZornJ truncated(const ZornJ& u, int k) {
  return {u.a.truncated(k), truncated(u.x, k), truncated(u.y, k), u.b.truncated(k)};
}

inline ZornJ derivative(const ZornJ& u, int axis) {
  return {u.a.derivative(axis), derivative(u.x, axis), derivative(u.y, axis),
          u.b.derivative(axis)};
}

inline ZornJ const_jet_zorn(const ZornR& u, int order) {
  return {Jet2::constant(u.a, order), const_jet_vec(u.x, order),
          const_jet_vec(u.y, order), Jet2::constant(u.b, order)};
}

/// Unit-normalize a jet-valued representative and fix its sign so the first
/// coordinate that is clearly nonzero at the base point is positive. Makes
/// d(psi) well-defined for projective representatives.
inline ZornJ normalize_rep(const ZornJ& u) {
  Jet2 n2 = u.a * u.a + dot(u.x, u.x) + dot(u.y, u.y) + u.b * u.b;
  if (n2.value() < tol::jet_eps)
    throw ZeroElement("cannot normalize a near-zero representative");
  Jet2 inv = recip(sqrt(n2));
  Vec8 v = to_vec8(value(u));
  double mx = v.cwiseAbs().maxCoeff();
  for (int k = 0; k < 8; ++k) {
    if (std::abs(v(k)) > 1e-9 * mx) {
      if (v(k) < 0) inv *= -1.0;
      break;
    }
  }
  return {u.a * inv, {u.x.x * inv, u.x.y * inv, u.x.z * inv},
          {u.y.x * inv, u.y.y * inv, u.y.z * inv}, u.b * inv};
}

/// Scale-normalized residual of a Zorn product of two value-level vectors.
inline double product_residual(const ZornR& u, const ZornR& v) {
  double s = euclid_norm(u) * euclid_norm(v);
  return euclid_norm(mul(u, v)) / std::max(s, 1e-300);
}

}  // namespace darboux
