#pragma once

#include <cmath>
#include <vector>

#include "darboux/error.hpp"
#include "darboux/tolerances.hpp"

namespace darboux {

/// Truncated Taylor polynomial in two variables (u1, u2) about a base point,
/// up to total order K. Coefficients are stored densely in graded
/// lexicographic order: (0,0); (1,0),(0,1); (2,0),(1,1),(0,2); ...
/// The coefficient of u1^i u2^j is c[(i+j)(i+j+1)/2 + j].
class Jet2 {
public:
  Jet2() : order_(0), c_(1, 0.0) {}
  explicit Jet2(int order) : order_(order), c_(size_for(order), 0.0) {
    if (order < 0) throw DomainError("jet order must be nonnegative");
  }

  static Jet2 constant(double v, int order) {
    Jet2 r(order);
    r.c_[0] = v;
    return r;
  }

  /// The jet of the coordinate function u_axis at base value v.
  static Jet2 variable(int axis, double v, int order) {
    if (axis != 0 && axis != 1) throw DomainError("jet axis must be 0 or 1");
    Jet2 r(order);
    r.c_[0] = v;
    if (order >= 1) r.c_[axis == 0 ? 1 : 2] = 1.0;
    return r;
  }

  int order() const { return order_; }
  int size() const { return static_cast<int>(c_.size()); }
  double value() const { return c_[0]; }

  static int size_for(int order) { return (order + 1) * (order + 2) / 2; }
  static int index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }

  double coeff(int i, int j) const {
    check_degree(i, j);
    return c_[index(i, j)];
  }
  double& coeff(int i, int j) {
    check_degree(i, j);
    return c_[index(i, j)];
  }

  /// Value of the partial derivative d^{i+j} / du1^i du2^j at the base point,
  /// i.e. i! j! times the stored coefficient.
  double partial(int i, int j) const {
    check_degree(i, j);
    double f = 1.0;
    for (int k = 2; k <= i; ++k) f *= k;
    for (int k = 2; k <= j; ++k) f *= k;
    return f * c_[index(i, j)];
  }

  Jet2 truncated(int k) const {
    if (k > order_) throw OrderExceeded("cannot truncate to a higher order");
    Jet2 r(k);
    for (int n = 0; n < r.size(); ++n) r.c_[n] = c_[n];
    return r;
  }

  /// Jet of the partial derivative along the given axis; one order lower.
  Jet2 derivative(int axis) const {
    if (order_ < 1) throw OrderExceeded("derivative of an order-0 jet");
    if (axis != 0 && axis != 1) throw DomainError("jet axis must be 0 or 1");
    Jet2 r(order_ - 1);
    for (int d = 0; d <= r.order_; ++d)
      for (int j = 0; j <= d; ++j) {
        int i = d - j;
        if (axis == 0)
          r.c_[index(i, j)] = (i + 1) * c_[index(i + 1, j)];
        else
          r.c_[index(i, j)] = (j + 1) * c_[index(i, j + 1)];
      }
    return r;
  }

  Jet2 operator-() const {
    Jet2 r(*this);
    for (double& v : r.c_) v = -v;
    return r;
  }

  Jet2& operator+=(const Jet2& o) {
    check_same_order(o);
    for (int n = 0; n < size(); ++n) c_[n] += o.c_[n];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    check_same_order(o);
    for (int n = 0; n < size(); ++n) c_[n] -= o.c_[n];
    return *this;
  }
  Jet2& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }
  Jet2& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  Jet2& operator-=(double s) {
    c_[0] -= s;
    return *this;
  }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator+(Jet2 a, double s) { return a += s; }
  friend Jet2 operator+(double s, Jet2 a) { return a += s; }
  friend Jet2 operator-(Jet2 a, double s) { return a -= s; }
  friend Jet2 operator-(double s, const Jet2& a) { return -a + s; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator/(Jet2 a, double s) { return a *= 1.0 / s; }

  /// Truncated product: convolution of coefficients up to total order K.
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    a.check_same_order(b);
    int K = a.order_;
    Jet2 r(K);
    for (int d1 = 0; d1 <= K; ++d1)
      for (int j1 = 0; j1 <= d1; ++j1) {
        double ca = a.c_[index(d1 - j1, j1)];
        if (ca == 0.0) continue;
        for (int d2 = 0; d1 + d2 <= K; ++d2)
          for (int j2 = 0; j2 <= d2; ++j2)
            r.c_[index(d1 + d2 - j1 - j2, j1 + j2)] +=
                ca * b.c_[index(d2 - j2, j2)];
      }
    return r;
  }

  friend Jet2 operator/(const Jet2& a, const Jet2& b);

  /// Largest absolute coefficient.
  double max_abs_coeff() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  const std::vector<double>& coeffs() const { return c_; }

private:
  void check_degree(int i, int j) const {
    if (i < 0 || j < 0 || i + j > order_)
      throw OrderExceeded("multi-index exceeds jet order");
  }
  void check_same_order(const Jet2& o) const {
    if (order_ != o.order_)
      throw OrderMismatch("jet orders differ in arithmetic");
  }

  int order_;
  std::vector<double> c_;
};

namespace detail {

/// Composition with a univariate power series about the jet's base value:
/// given series coefficients s[n] = f^(n)(a0)/n!, returns the jet of f(a).
inline Jet2 compose_series(const Jet2& a, const std::vector<double>& s) {
  int K = a.order();
  Jet2 tilde = a;  // a minus its constant term
  tilde -= a.value();
  Jet2 r = Jet2::constant(s[K], K);
  for (int n = K - 1; n >= 0; --n) {
    r = r * tilde;
    r += s[n];
  }
  return r;
}

}  // namespace detail

/// Reciprocal 1/a. The constant term must stay clear of zero.
inline Jet2 recip(const Jet2& a) {
  double a0 = a.value();
  if (std::abs(a0) < tol::jet_eps)
    throw DivisionBySingularJet("divisor jet has near-zero constant term");
  int K = a.order();
  std::vector<double> s(K + 1);
  double p = 1.0 / a0;
  for (int n = 0; n <= K; ++n) {
    s[n] = (n % 2 == 0) ? p : -p;
    p /= a0;
  }
  return detail::compose_series(a, s);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * recip(b); }

inline Jet2 sin(const Jet2& a) {
  int K = a.order();
  double s0 = std::sin(a.value()), c0 = std::cos(a.value());
  std::vector<double> s(K + 1);
  double fact = 1.0;
  static const int sign[4] = {1, 1, -1, -1};  // d^n sin: sin, cos, -sin, -cos
  for (int n = 0; n <= K; ++n) {
    if (n > 0) fact *= n;
    s[n] = sign[n % 4] * ((n % 2 == 0) ? s0 : c0) / fact;
  }
  return detail::compose_series(a, s);
}

inline Jet2 cos(const Jet2& a) {
  int K = a.order();
  double s0 = std::sin(a.value()), c0 = std::cos(a.value());
  std::vector<double> s(K + 1);
  double fact = 1.0;
  static const int sign[4] = {1, -1, -1, 1};  // d^n cos: cos, -sin, -cos, sin
  for (int n = 0; n <= K; ++n) {
    if (n > 0) fact *= n;
    s[n] = sign[n % 4] * ((n % 2 == 0) ? c0 : s0) / fact;
  }
  return detail::compose_series(a, s);
}

inline Jet2 exp(const Jet2& a) {
  int K = a.order();
  double e0 = std::exp(a.value());
  std::vector<double> s(K + 1);
  double fact = 1.0;
  for (int n = 0; n <= K; ++n) {
    if (n > 0) fact *= n;
    s[n] = e0 / fact;
  }
  return detail::compose_series(a, s);
}

inline Jet2 sqrt(const Jet2& a) {
  double a0 = a.value();
  if (a0 <= tol::jet_eps)
    throw DomainError("sqrt of a jet with nonpositive constant term");
  int K = a.order();
  std::vector<double> s(K + 1);
  // s[n] = binom(1/2, n) * a0^(1/2 - n)
  double b = 1.0, p = std::sqrt(a0);
  for (int n = 0; n <= K; ++n) {
    s[n] = b * p;
    b *= (0.5 - n) / (n + 1);
    p /= a0;
  }
  return detail::compose_series(a, s);
}

}  // namespace darboux
