#pragma once

#include <cstdint>
#include <random>

#include "darboux/error.hpp"
#include "darboux/subspace.hpp"
#include "darboux/zorn.hpp"

namespace darboux {

/// Seeded random source for property tests and verification sweeps. Uniform
/// draws come straight from the engine's bits, so a seed pins the whole
/// stream independently of the standard library's distribution details.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    double u01 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u01;
  }

  V3 vec3(double lo = -1.0, double hi = 1.0) {
    double x = uniform(lo, hi), y = uniform(lo, hi), z = uniform(lo, hi);
    return {x, y, z};
  }

  ZornR zorn(double lo = -1.0, double hi = 1.0) {
    double a = uniform(lo, hi);
    V3 x = vec3(lo, hi), y = vec3(lo, hi);
    double b = uniform(lo, hi);
    return {a, x, y, b};
  }

  /// Nonzero null octonion: pick (a, x, y) with a clear of zero and solve
  /// b = x.y / a so that N = ab - x.y = 0.
  ZornR null_zorn() {
    for (;;) {
      double a = uniform();
      if (std::abs(a) < 0.3) continue;
      V3 x = vec3(), y = vec3();
      return {a, x, y, dot(x, y) / a};
    }
  }

  /// Nonzero b with mul(b, a) = 0, sampled from the kernel of right
  /// multiplication by a. Requires a null and nonzero.
  ZornR right_annihilator(const ZornR& a) {
    Eigen::MatrixXd ker = null_space(mul_operator(a, Side::right), 1e-9);
    if (ker.cols() == 0)
      throw DegenerateInput("right_annihilator: element has no annihilator");
    for (;;) {
      Eigen::VectorXd c(ker.cols());
      for (int i = 0; i < c.size(); ++i) c(i) = uniform();
      Vec8 b = ker * c;
      if (b.norm() > 0.3) return from_vec8(b);
    }
  }

  std::mt19937_64& engine() { return eng_; }

private:
  std::mt19937_64 eng_;
};

}  // namespace darboux
