#pragma once

#include "darboux/zorn.hpp"

namespace darboux {

/// Point of R^{4,4} in coordinates (x, s, y, t) with quadratic form
/// q = x.y + st. Coordinate vector order: (x1, x2, x3, s, y1, y2, y3, t).
template <class S>
struct Vec44 {
  Vec3<S> x{};
  S s{};
  Vec3<S> y{};
  S t{};

  Vec44() = default;
  Vec44(Vec3<S> px, S ps, Vec3<S> py, S pt)
      : x(std::move(px)), s(std::move(ps)), y(std::move(py)), t(std::move(pt)) {}

  Vec44 operator-() const { return {-x, -s, -y, -t}; }
  Vec44& operator+=(const Vec44& o) { x += o.x; s += o.s; y += o.y; t += o.t; return *this; }
  Vec44& operator-=(const Vec44& o) { x -= o.x; s -= o.s; y -= o.y; t -= o.t; return *this; }
  friend Vec44 operator+(Vec44 u, const Vec44& v) { return u += v; }
  friend Vec44 operator-(Vec44 u, const Vec44& v) { return u -= v; }
  friend Vec44 operator*(const S& c, const Vec44& v) { return {c * v.x, c * v.s, c * v.y, c * v.t}; }
};

template <class S>
inline S q_form(const Vec44<S>& v) {
  return dot(v.x, v.y) + v.s * v.t;
}

/// Polarization of q.
template <class S>
inline S q_polar(const Vec44<S>& u, const Vec44<S>& v) {
  return 0.5 * (dot(u.x, v.y) + dot(v.x, u.y) + u.s * v.t + v.s * u.t);
}

/// The anti-isometry rho: (x, s, y, t) -> (s, x; y, -t); N(rho(v)) = -q(v).
template <class S>
inline Zorn<S> rho(const Vec44<S>& v) {
  return {v.s, v.x, v.y, -v.t};
}

template <class S>
inline Vec44<S> rho_inv(const Zorn<S>& z) {
  return {z.x, z.a, z.y, -z.b};
}

/// sigma (x:s:y:t) = (y:s:x:t); induced by transposition through rho.
template <class S>
inline Vec44<S> involution_sigma(const Vec44<S>& v) {
  return {v.y, v.s, v.x, v.t};
}

/// c (x:s:y:t) = (x:t:y:s); induced by conjugation through rho (up to sign).
template <class S>
inline Vec44<S> involution_c(const Vec44<S>& v) {
  return {v.x, v.t, v.y, v.s};
}

/// sigma.c (x:s:y:t) = (y:t:x:s).
template <class S>
inline Vec44<S> involution_sc(const Vec44<S>& v) {
  return {v.y, v.t, v.x, v.s};
}

using P44 = Vec44<double>;
using J44 = Vec44<Jet2>;

inline Vec8 to_vec8(const P44& v) {
  Vec8 w;
  w << v.x.x, v.x.y, v.x.z, v.s, v.y.x, v.y.y, v.y.z, v.t;
  return w;
}

inline P44 p44_from_vec8(const Vec8& w) {
  return {{w(0), w(1), w(2)}, w(3), {w(4), w(5), w(6)}, w(7)};
}

inline P44 value(const J44& v) {
  return {value(v.x), v.s.value(), value(v.y), v.t.value()};
}

inline J44 truncated(const J44& v, int k) {
  return {truncated(v.x, k), v.s.truncated(k), truncated(v.y, k), v.t.truncated(k)};
}

inline J44 derivative(const J44& v, int axis) {
  return {derivative(v.x, axis), v.s.derivative(axis), derivative(v.y, axis),
          v.t.derivative(axis)};
}

/// Coordinate change between the two 8-vector orders: vec44 (x,s,y,t) and
/// zorn (a,x,y,b), following rho.
inline Vec8 rho_vec8(const Vec8& v44) {
  Vec8 z;
  z << v44(3), v44(0), v44(1), v44(2), v44(4), v44(5), v44(6), -v44(7);
  return z;
}

inline Vec8 rho_inv_vec8(const Vec8& z) {
  Vec8 v;
  v << z(1), z(2), z(3), z(0), z(4), z(5), z(6), -z(7);
  return v;
}

/// sin of the angle between the lines spanned by two nonzero vectors.
/// Stable for tiny angles (no acos of a near-1 cosine).
inline double proj_sin_angle(const Vec8& a, const Vec8& b) {
  double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw ZeroElement("projective angle of zero vector");
  Vec8 ah = a / na, bh = b / nb;
  return (ah - ah.dot(bh) * bh).norm();
}

}  // namespace darboux
