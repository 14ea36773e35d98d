#pragma once

#include <cmath>

#include "darboux/jet.hpp"

namespace darboux {

/// 3-vector over a scalar ring S (double for values, Jet2 for jets).
template <class S>
struct Vec3 {
  S x{}, y{}, z{};

  Vec3() = default;
  Vec3(S px, S py, S pz) : x(std::move(px)), y(std::move(py)), z(std::move(pz)) {}

  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(const S& s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
  friend Vec3 operator*(const Vec3& v, const S& s) { return {v.x * s, v.y * s, v.z * s}; }
};

template <class S>
inline S dot(const Vec3<S>& a, const Vec3<S>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class S>
inline Vec3<S> cross(const Vec3<S>& a, const Vec3<S>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

using V3 = Vec3<double>;
using JV3 = Vec3<Jet2>;

inline double norm(const V3& v) { return std::sqrt(dot(v, v)); }
inline V3 scale(const V3& v, double s) { return {v.x * s, v.y * s, v.z * s}; }

inline JV3 const_jet_vec(const V3& v, int order) {
  return {Jet2::constant(v.x, order), Jet2::constant(v.y, order),
          Jet2::constant(v.z, order)};
}

inline V3 value(const JV3& v) { return {v.x.value(), v.y.value(), v.z.value()}; }

inline JV3 truncated(const JV3& v, int k) {
  return {v.x.truncated(k), v.y.truncated(k), v.z.truncated(k)};
}

inline JV3 derivative(const JV3& v, int axis) {
  return {v.x.derivative(axis), v.y.derivative(axis), v.z.derivative(axis)};
}

inline JV3 jet_div(const JV3& v, const Jet2& d) {
  Jet2 r = recip(d);
  return {v.x * r, v.y * r, v.z * r};
}

/// Partial-derivative values of a jet-valued map: component-wise partial(i,j).
inline V3 partial(const JV3& v, int i, int j) {
  return {v.x.partial(i, j), v.y.partial(i, j), v.z.partial(i, j)};
}

}  // namespace darboux
