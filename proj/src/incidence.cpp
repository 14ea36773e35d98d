#include "darboux/incidence.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "darboux/error.hpp"
#include "darboux/subspace.hpp"
#include "darboux/surfaces.hpp"

namespace darboux {

namespace {

// Finite-difference step for the chart Jacobian. Smaller than the bracket
// step: the Jacobian only feeds a least-squares solve, so its error budget
// is the plain central-difference one without nesting.
constexpr double chart_jacobian_step = 1e-5;

using Vec11 = Eigen::Matrix<double, 11, 1>;
using Vec24 = Eigen::Matrix<double, 24, 1>;
using Frame6 = Eigen::Matrix<double, 11, 6>;
using Bracket15 = Eigen::Matrix<double, 11, 15>;

Vec8 unit_vec8(const ZornR& z) {
  Vec8 v = to_vec8(z);
  double n = v.norm();
  if (n < 1e-150) throw ZeroElement("zero representative in an incidence triple");
  return v / n;
}

std::array<ZornR, 3> entries(const IncidenceTriple& t) {
  return {t.x0, t.x1, t.x2};
}

/// Orthonormal basis of ker R_next cap ker L_prev: the representatives that
/// keep both products with the neighbours zero.
Eigen::MatrixXd fiber_basis(const ZornR& next, const ZornR& prev) {
  Eigen::MatrixXd m(16, 8);
  m.topRows(8) = mul_operator(next, Side::right);
  m.bottomRows(8) = mul_operator(prev, Side::left);
  return null_space(m, tol::fiber_cutoff);
}

/// Orthonormal 8x2 basis of the orthogonal complement of x inside the
/// column span of the orthonormal 8x3 basis k; x must lie in that span.
Eigen::Matrix<double, 8, 2> complement_in_fiber(
    const Eigen::Matrix<double, 8, 3>& k, const Vec8& x) {
  Eigen::Vector3d c = k.transpose() * x.normalized();
  Eigen::Matrix3d seed = Eigen::Matrix3d::Zero();
  seed.col(0) = c;
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(seed);
  Eigen::Matrix3d q = qr.householderQ();
  return k * q.rightCols<2>();
}

// --- chart of the incidence variety around a base triple ---
//
// Representatives are normalized so that the b entry of x2 and the a entry
// of x1 equal one. Then x2 = (a.b, -a; -b, 1) for parameters (a, b), and
// the product x1 x2 = 0 forces x1 = (1, a + b x bp; bp, .) for a free
// parameter bp. The slot-0 fiber of the pair (x1, x2) is three-dimensional;
// x0 moves inside its projectivization with two more parameters. That gives
// eleven chart coordinates th = (da, db, dbp, alpha, beta).

struct Chart {
  V3 a0, b0, bp0;
  Vec8 x0_base;                       // unit representative of slot 0
  Eigen::Matrix<double, 8, 2> comp0;  // complement of x0 in its fiber
  std::array<Eigen::Matrix<double, 8, 2>, 3> base_frame;  // per-slot planes
  // Diagonal preconditioner: coordinates are scaled so the chart Jacobian
  // has unit columns at the base point. Rank profiles are scale-invariant,
  // but the singular-value gaps that the cutoffs inspect are not, and raw
  // chart parameters can differ by orders of magnitude.
  Vec11 coord_scale = Vec11::Ones();
};

ZornR plus_label(const V3& a, const V3& b) { return {dot(a, b), -a, -b, 1.0}; }

ZornR minus_label(const V3& a, const V3& b) { return {1.0, a, b, dot(a, b)}; }

std::array<Vec8, 3> chart_labels(const Chart& c, const Vec11& raw) {
  Vec11 th = raw.cwiseProduct(c.coord_scale);
  V3 a = c.a0 + V3{th(0), th(1), th(2)};
  V3 b = c.b0 + V3{th(3), th(4), th(5)};
  V3 bp = c.bp0 + V3{th(6), th(7), th(8)};
  ZornR x2 = plus_label(a, b);
  ZornR x1 = minus_label(a + cross(b, bp), bp);
  Eigen::MatrixXd k = fiber_basis(x1, x2);
  if (k.cols() != 3)
    throw ChartDegenerate("slot-0 fiber is not three-dimensional in the chart");
  Vec8 seed = c.x0_base + th(9) * c.comp0.col(0) + th(10) * c.comp0.col(1);
  Vec8 x0 = k * (k.transpose() * seed);
  return {x0, to_vec8(x1), to_vec8(x2)};
}

Vec24 stack24(const std::array<Vec8, 3>& xs) {
  Vec24 v;
  v << xs[0], xs[1], xs[2];
  return v;
}

/// Modified Gram-Schmidt on two columns; throws when they fail to span a
/// plane with a healthy margin.
Eigen::Matrix<double, 8, 2> orthonormal_pair(Eigen::Matrix<double, 8, 2> m) {
  double n0 = m.col(0).norm();
  if (n0 < 1e-8) throw ChartDegenerate("degenerate vertical frame");
  m.col(0) /= n0;
  m.col(1) -= m.col(0) * m.col(0).dot(m.col(1));
  double n1 = m.col(1).norm();
  if (n1 < 1e-8) throw ChartDegenerate("degenerate vertical frame");
  m.col(1) /= n1;
  return m;
}

struct Probe {
  Chart chart;
  double pullback_residual = 0;

  explicit Probe(const IncidenceTriple& base);

  std::array<Vec8, 3> labels(const Vec11& th) const {
    return chart_labels(chart, th);
  }

  /// 24 x 11 Jacobian of the chart by central differences.
  Eigen::Matrix<double, 24, 11> jacobian(const Vec11& th) const {
    Eigen::Matrix<double, 24, 11> j;
    for (int m = 0; m < 11; ++m) {
      Vec11 e = Vec11::Zero();
      e(m) = chart_jacobian_step;
      j.col(m) = (stack24(labels(th + e)) - stack24(labels(th - e))) /
                 (2.0 * chart_jacobian_step);
    }
    return j;
  }

  /// Frame of the vertical distribution at th, in ambient coordinates:
  /// the base-point planes carried into the fibers at th by orthogonal
  /// projection, so the frame varies smoothly and reproduces the base
  /// planes at th = 0.
  Eigen::Matrix<double, 24, 6> frame_ambient(
      const std::array<Vec8, 3>& xs) const {
    Eigen::Matrix<double, 24, 6> out = Eigen::Matrix<double, 24, 6>::Zero();
    for (int i = 0; i < 3; ++i) {
      Eigen::MatrixXd k =
          fiber_basis(from_vec8(xs[(i + 1) % 3]), from_vec8(xs[(i + 2) % 3]));
      if (k.cols() != 3)
        throw ChartDegenerate("fiber is not three-dimensional in the chart");
      Vec8 xh = xs[i].normalized();
      Eigen::Matrix<double, 8, 2> raw =
          k * (k.transpose() * chart.base_frame[i]);
      raw -= xh * (xh.transpose() * raw);
      out.block<8, 2>(8 * i, 2 * i) = orthonormal_pair(raw);
    }
    return out;
  }

  /// The frame pulled back to chart coordinates: solve the least-squares
  /// system [J | gauge] w = frame and keep the chart components. The gauge
  /// columns absorb the scale drift of the representatives, which is not
  /// visible in the chart.
  Frame6 frame_flat(const Vec11& th) {
    std::array<Vec8, 3> xs = labels(th);
    Eigen::Matrix<double, 24, 14> a;
    a.leftCols<11>() = jacobian(th);
    a.rightCols<3>().setZero();
    for (int i = 0; i < 3; ++i)
      a.block<8, 1>(8 * i, 11 + i) = xs[i].normalized();
    Eigen::Matrix<double, 24, 6> v = frame_ambient(xs);
    Eigen::Matrix<double, 14, 6> w = a.colPivHouseholderQr().solve(v);
    double defect = ((a * w - v).colwise().norm().maxCoeff());
    pullback_residual = std::max(pullback_residual, defect);
    return w.topRows<11>();
  }

  /// Directional derivative of a frame field column set along dir, by a
  /// central difference at step tol::fd_step on the normalized direction.
  template <class Field>
  auto directional(Field&& f, const Vec11& th, const Vec11& dir)
      -> decltype(f(th)) {
    double n = dir.norm();
    if (n < 1e-12) {
      auto zero = f(th);
      zero.setZero();
      return zero;
    }
    Vec11 u = dir / n;
    double h = tol::fd_step;
    return n * (f(th + h * u) - f(th - h * u)) / (2.0 * h);
  }

  /// The 15 pairwise brackets [v_j, v_k], j < k, of the frame fields at th,
  /// in chart coordinates: flat-space brackets Dv_k[v_j] - Dv_j[v_k].
  Bracket15 first_brackets(const Vec11& th) {
    Frame6 f0 = frame_flat(th);
    std::array<Frame6, 6> dcol;  // dcol[j] = derivative of the frame along v_j
    for (int j = 0; j < 6; ++j)
      dcol[j] = directional([this](const Vec11& t) { return frame_flat(t); },
                            th, f0.col(j));
    Bracket15 b;
    int idx = 0;
    for (int j = 0; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k)
        b.col(idx++) = dcol[j].col(k) - dcol[k].col(j);
    return b;
  }
};

Probe::Probe(const IncidenceTriple& base) {
  double inc = incidence_residual(base);
  if (inc > tol::membership)
    throw NotIncident("triple fails the incidence relations");

  Vec8 v2 = unit_vec8(base.x2);
  ZornR x2 = from_vec8(v2);
  if (std::abs(x2.b) < 1e-6)
    throw ChartDegenerate("vanishing chart denominator on the plus slot");
  chart.a0 = (-1.0 / x2.b) * x2.x;
  chart.b0 = (-1.0 / x2.b) * x2.y;

  Vec8 v1 = unit_vec8(base.x1);
  ZornR x1 = from_vec8(v1);
  if (std::abs(x1.a) < 1e-6)
    throw ChartDegenerate("vanishing chart denominator on the minus slot");
  V3 aprime = (1.0 / x1.a) * x1.x;
  chart.bp0 = (1.0 / x1.a) * x1.y;
  V3 gap = aprime - (chart.a0 + cross(chart.b0, chart.bp0));
  if (norm(gap) > 1e-6 * std::max(1.0, norm(aprime)))
    throw ChartDegenerate("triple is inconsistent with the product chart");

  chart.x0_base = unit_vec8(base.x0);

  // Fibers at the base point, computed from the chart's own labels so the
  // frame construction is self-consistent.
  ZornR bx2 = plus_label(chart.a0, chart.b0);
  ZornR bx1 = minus_label(chart.a0 + cross(chart.b0, chart.bp0), chart.bp0);
  std::array<Vec8, 3> xs = {chart.x0_base, to_vec8(bx1), to_vec8(bx2)};
  for (int i = 0; i < 3; ++i) {
    Eigen::MatrixXd k =
        fiber_basis(from_vec8(xs[(i + 1) % 3]), from_vec8(xs[(i + 2) % 3]));
    if (k.cols() != 3)
      throw ChartDegenerate("base fiber is not three-dimensional");
    Vec8 x = xs[i];
    double outside = (x - k * (k.transpose() * x)).norm() / x.norm();
    if (outside > tol::proj_eq)
      throw ChartDegenerate("slot representative escapes its base fiber");
    Eigen::Matrix<double, 8, 3> k3 = k;
    chart.base_frame[i] = complement_in_fiber(k3, x);
  }
  chart.comp0 = chart.base_frame[0];

  // Precondition: rescale the coordinates so the base Jacobian has unit
  // columns, then require the chart to be immersive and transverse to the
  // scale gauge.
  Eigen::Matrix<double, 24, 11> j0 = jacobian(Vec11::Zero());
  for (int m = 0; m < 11; ++m)
    chart.coord_scale(m) = 1.0 / std::max(j0.col(m).norm(), 1e-6);

  std::array<Vec8, 3> base_xs = chart_labels(chart, Vec11::Zero());
  Eigen::Matrix<double, 24, 14> a;
  a.leftCols<11>() = jacobian(Vec11::Zero());
  a.rightCols<3>().setZero();
  for (int i = 0; i < 3; ++i)
    a.block<8, 1>(8 * i, 11 + i) = base_xs[i].normalized();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  Eigen::VectorXd s = svd.singularValues();
  if (s(13) < tol::fiber_cutoff * s(0))
    throw ChartDegenerate("chart plus gauge directions are rank-deficient");
}

}  // namespace

IncidenceTriple incidence_triple(const IsotropicImmersionPoint& p) {
  ZornR x0 = value(rho(p.psi));
  ZornR x1 = value(rho(p.psi_minus));
  ZornR x2 = value(rho(p.psi_plus));
  return {from_vec8(unit_vec8(x0)), from_vec8(unit_vec8(x1)),
          from_vec8(unit_vec8(x2))};
}

IncidenceTriple cyclic_shift(const IncidenceTriple& t) {
  return {t.x1, t.x2, t.x0};
}

double incidence_residual(const IncidenceTriple& t) {
  return std::max({product_residual(t.x0, t.x1), product_residual(t.x1, t.x2),
                   product_residual(t.x2, t.x0)});
}

Eigen::Matrix<double, 8, 3> fiber_space(const IncidenceTriple& t, int slot) {
  if (slot < 0 || slot > 2)
    throw IncompatibleArguments("fiber slot must be 0, 1 or 2");
  std::array<ZornR, 3> xs = entries(t);
  Eigen::MatrixXd k = fiber_basis(xs[(slot + 1) % 3], xs[(slot + 2) % 3]);
  if (k.cols() != 3)
    throw DegeneratePoint("incidence fiber is not three-dimensional");
  Vec8 x = to_vec8(xs[slot]);
  double n = x.norm();
  if (n < 1e-150) throw ZeroElement("zero representative in an incidence triple");
  double outside = (x - k * (k.transpose() * x)).norm() / n;
  if (outside > tol::proj_eq)
    throw DegeneratePoint("representative does not lie in its fiber space");
  return k;
}

Eigen::Matrix<double, 24, 6> distribution_frame(const IncidenceTriple& t) {
  Eigen::Matrix<double, 24, 6> out = Eigen::Matrix<double, 24, 6>::Zero();
  std::array<ZornR, 3> xs = entries(t);
  for (int i = 0; i < 3; ++i) {
    Eigen::Matrix<double, 8, 3> k = fiber_space(t, i);
    out.block<8, 2>(8 * i, 2 * i) = complement_in_fiber(k, to_vec8(xs[i]));
  }
  return out;
}

DirectSumReport direct_sum_check(const IncidenceTriple& t) {
  Eigen::Matrix<double, 24, 6> f = distribution_frame(t);
  DirectSumReport r;
  for (int i = 0; i < 3; ++i) {
    r.fiber_dim[i] =
        numerical_rank(f.middleCols(2 * i, 2), tol::fiber_cutoff);
    Eigen::Matrix<double, 24, 4> pair;
    pair.leftCols<2>() = f.middleCols(2 * i, 2);
    pair.rightCols<2>() = f.middleCols(2 * ((i + 1) % 3), 2);
    r.pair_dim[i] = numerical_rank(pair, tol::fiber_cutoff);
  }
  r.total_dim = numerical_rank(f, tol::fiber_cutoff);
  return r;
}

IncidenceSurfaceReport integral_surface_check(const DeformationPair& p,
                                              int grid_n, Exec exec) {
  std::vector<GridPoint> grid = pair_grid(p, grid_n);
  std::vector<IncidenceSurfacePoint> pts = sweep<IncidenceSurfacePoint>(
      grid,
      [&](const GridPoint& at) -> IncidenceSurfacePoint {
        IsotropicImmersionPoint lp = lift_point(p, at.u, at.v, 1);
        std::array<ZornJ, 3> z = {normalize_rep(rho(lp.psi)),
                                  normalize_rep(rho(lp.psi_minus)),
                                  normalize_rep(rho(lp.psi_plus))};
        std::array<double, 3> s{}, d0{}, d1{};
        for (int i = 0; i < 3; ++i) {
          s[i] = euclid_norm(value(z[i]));
          d0[i] = euclid_norm(value(derivative(z[i], 0)));
          d1[i] = euclid_norm(value(derivative(z[i], 1)));
        }
        IncidenceSurfacePoint out{at, 0.0, 0.0};
        for (int i = 0; i < 3; ++i) {
          int j = (i + 1) % 3;
          ZornJ prod = mul(z[i], z[j]);
          double floor = 1e-6 * s[i] * s[j];
          out.residual =
              std::max(out.residual, euclid_norm(value(prod)) /
                                         std::max(s[i] * s[j], 1e-300));
          double t0 = euclid_norm(value(derivative(prod, 0))) /
                      std::max(d0[i] * s[j] + s[i] * d0[j], floor);
          double t1 = euclid_norm(value(derivative(prod, 1))) /
                      std::max(d1[i] * s[j] + s[i] * d1[j], floor);
          out.tangency = std::max({out.tangency, t0, t1});
        }
        return out;
      },
      exec);
  IncidenceSurfaceReport rep;
  rep.points = std::move(pts);
  for (const IncidenceSurfacePoint& q : rep.points) {
    rep.max_residual = std::max(rep.max_residual, q.residual);
    rep.max_tangency = std::max(rep.max_tangency, q.tangency);
  }
  return rep;
}

BracketProbeReport nonintegrability_probe(const IncidenceTriple& base) {
  Probe pr(base);
  Vec11 zero = Vec11::Zero();

  Frame6 f0 = pr.frame_flat(zero);
  Bracket15 b0 = pr.first_brackets(zero);

  // Second level: [v_i, b_jk] = D b_jk [v_i] - D v_i [b_jk] at the base.
  Eigen::Matrix<double, 11, 90> second;
  std::array<Bracket15, 6> db;  // derivative of the bracket field along v_i
  for (int i = 0; i < 6; ++i)
    db[i] = pr.directional(
        [&pr](const Vec11& t) { return pr.first_brackets(t); }, zero,
        f0.col(i));
  std::array<Frame6, 15> dv;  // derivative of the frame field along b_jk
  for (int m = 0; m < 15; ++m)
    dv[m] = pr.directional(
        [&pr](const Vec11& t) { return pr.frame_flat(t); }, zero, b0.col(m));
  for (int i = 0; i < 6; ++i)
    for (int m = 0; m < 15; ++m)
      second.col(i * 15 + m) = db[i].col(m) - dv[m].col(i);

  BracketProbeReport rep;
  rep.pullback_residual = pr.pullback_residual;
  rep.rank_distribution = numerical_rank(f0, tol::fiber_cutoff);

  Eigen::Matrix<double, 11, 21> first;
  first.leftCols<6>() = f0;
  first.rightCols<15>() = b0;
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(first)};
    Eigen::VectorXd s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s(r) > tol::bracket_cutoff * s(0)) ++r;
    rep.rank_first = r;
    rep.sigma_first = (r > 0) ? s(r - 1) / s(0) : 0.0;
    rep.tail_first = (r < s.size()) ? s(r) / s(0) : 0.0;
  }
  // At a healthy centering the dropped singular values sit at
  // finite-difference noise level, decades under the cutoff. A tail
  // crowding the cutoff means the chart is too curved for the nested
  // differences and any rank reading would be noise; refuse rather than
  // report garbage.
  if (rep.tail_first > 0.1 * tol::bracket_cutoff)
    throw ChartDegenerate(
        "bracket spectrum has no clean gap at the rank cutoff");

  Eigen::Matrix<double, 11, 111> full;
  full.leftCols<21>() = first;
  full.rightCols<90>() = second;
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(full)};
    Eigen::VectorXd s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s(r) > tol::bracket_cutoff * s(0)) ++r;
    rep.rank_second = r;
    rep.sigma_second = (r > 0) ? s(r - 1) / s(0) : 0.0;
  }
  return rep;
}

}  // namespace darboux
