#include "darboux/gauss.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "darboux/error.hpp"
#include "darboux/tolerances.hpp"

namespace darboux {

namespace {

IsotropicImmersionPoint build_point(TripletJets trip, int order) {
  if (order < 1) throw IncompatibleArguments("lift order must be at least 1");
  const int k = order;  // representatives live one order below trip
  IsotropicImmersionPoint pt;
  JV3 f = truncated(trip.f, k), g = truncated(trip.g, k), h = truncated(trip.h, k);
  pt.gtilde = truncated(trip.g - cross(trip.h, trip.f), k);
  pt.nu_f = cross(derivative(trip.f, 0), derivative(trip.f, 1));  // order k
  pt.psi = J44{f, Jet2::constant(1.0, k), g, -dot(f, g)};

  ZornJ zp{dot(h, pt.gtilde), -h, -pt.gtilde, Jet2::constant(1.0, k)};
  Jet2 nf = dot(pt.nu_f, f);
  ZornJ zm{nf, nf * h + cross(pt.nu_f, pt.gtilde), -pt.nu_f, -dot(h, pt.nu_f)};
  pt.psi_plus = rho_inv(zp);
  pt.psi_minus = rho_inv(zm);
  pt.trip = std::move(trip);

  Eigen::MatrixXd cols(8, 3);
  cols.col(0) = to_vec8(value(pt.psi));
  cols.col(1) = to_vec8(value(derivative(pt.psi, 0)));
  cols.col(2) = to_vec8(value(derivative(pt.psi, 1)));
  pt.v.basis = orthonormalize(cols);
  pt.v.family = Family::none;
  return pt;
}

/// Chart coordinates (htilde, fstar) of the minus Gauss space at the value
/// level. Throws PolarUndefined when the tangent plane of f passes through
/// the origin.
std::pair<V3, V3> minus_chart_coords(const V3& f, const V3& gt, const V3& h,
                                     const V3& nu) {
  double den = dot(nu, f);
  double scale = norm(nu) * std::max(norm(f), 1.0);
  if (std::abs(den) <= 1e-9 * scale)
    throw PolarUndefined("polar of f undefined: tangent plane through origin");
  V3 fstar = (-1.0 / den) * nu;
  return {h - cross(fstar, gt), fstar};
}

/// Division-free basis of the minus Gauss space, valid also where the polar
/// of f does not exist. Columns in (x, s, y, t) coordinate order.
IsoSubspace minus_space_division_free(const V3& f, const V3& gt, const V3& h,
                                      const V3& nu) {
  double nn = norm(nu);
  if (nn < tol::jet_eps) throw NotImmersion("normal direction vanishes");
  V3 nhat = (1.0 / nn) * nu;
  // Two unit vectors spanning the plane orthogonal to nu.
  V3 seed = std::abs(nhat.x) <= std::abs(nhat.y) && std::abs(nhat.x) <= std::abs(nhat.z)
                ? V3{1, 0, 0}
                : (std::abs(nhat.y) <= std::abs(nhat.z) ? V3{0, 1, 0} : V3{0, 0, 1});
  V3 x1 = cross(nhat, seed);
  x1 = (1.0 / norm(x1)) * x1;
  V3 x2 = cross(nhat, x1);

  auto tangential = [&](const V3& x) {
    return P44{x, 0.0, cross(h, x), -dot(gt, x)};
  };
  Eigen::MatrixXd cols(8, 4);
  cols.col(0) = to_vec8(tangential(x1));
  cols.col(1) = to_vec8(tangential(x2));
  cols.col(2) = to_vec8(P44{f, 1.0, cross(h, f) + gt, -dot(gt, f)});
  cols.col(3) = to_vec8(P44{{0, 0, 0}, 0.0, nu, -dot(nu, f)});
  IsoSubspace w{orthonormalize(cols), Family::minus_family};
  if (classify_family(w).family != Family::minus_family)
    throw AmbiguousFamily("division-free minus basis left its family");
  return w;
}

double vanish_residual(const ZornR& a, const ZornR& b) {
  return euclid_norm(mul(a, b)) /
         std::max(1.0, euclid_norm(a) * euclid_norm(b));
}

int rank_with_floor(const Eigen::MatrixXd& m, double abs_floor) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  double cutoff = std::max(tol::rank_cutoff * svd.singularValues()(0), abs_floor);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > cutoff) ++r;
  return r;
}

}  // namespace

J44 lift_psi(const DeformationPair& p, double u, double v, int order) {
  if (!p.domain.contains(u, v))
    throw DomainError("parameter point outside the pair's domain");
  JV3 f = p.f.eval(u, v, order), g = p.g.eval(u, v, order);
  return J44{f, Jet2::constant(1.0, order), g, -dot(f, g)};
}

IsotropicImmersionPoint lift_point(const DeformationPair& p, double u, double v,
                                   int order) {
  return build_point(eval_word_jets(p, "", u, v, order + 1), order);
}

IsotropicImmersionPoint lift_point(const DarbouxTriplet& t, double u, double v,
                                   int order) {
  return build_point(t.jets(u, v, order + 1), order);
}

std::pair<IsoSubspace, IsoSubspace> gauss_maps_generic(
    const IsotropicImmersionPoint& p) {
  return extend_isotropic3(p.v);
}

std::pair<IsoSubspace, IsoSubspace> gauss_maps_closed_form(
    const DarbouxTriplet& t, double u, double v) {
  TripletJets j = t.jets(u, v, 1);
  V3 f = value(j.f), g = value(j.g), h = value(j.h);
  V3 gt = g - cross(h, f);
  V3 nu = cross(value(derivative(j.f, 0)), value(derivative(j.f, 1)));

  IsoSubspace wp = chart_plus(h, gt);
  IsoSubspace wm;
  try {
    auto [htilde, fstar] = minus_chart_coords(f, gt, h, nu);
    wm = chart_minus(htilde, fstar);
  } catch (const PolarUndefined&) {
    wm = minus_space_division_free(f, gt, h, nu);
  }
  return {wp, wm};
}

double cross_oracle_residual(const DeformationPair& p, double u, double v) {
  DarbouxTriplet t = make_triplet(p);
  IsotropicImmersionPoint pt = lift_point(p, u, v, 1);
  auto [gp, gm] = gauss_maps_generic(pt);
  auto [cp, cm] = gauss_maps_closed_form(t, u, v);
  return std::max(sin_max_principal_angle(gp.basis, cp.basis),
                  sin_max_principal_angle(gm.basis, cm.basis));
}

TrialityReport verify_differential_triality(const DeformationPair& p, int grid_n,
                                            Exec exec) {
  auto grid = pair_grid(p, grid_n);
  using Res = std::array<double, 4>;
  auto res = sweep<Res>(
      grid,
      [&](const GridPoint& at) -> Res {
        IsotropicImmersionPoint pt = lift_point(p, at.u, at.v, 1);
        ZornJ zn = normalize_rep(rho(pt.psi));
        ZornJ zp = normalize_rep(rho(pt.psi_plus));
        ZornJ zm = normalize_rep(rho(pt.psi_minus));
        ZornR vp = value(zp), vm = value(zm);
        Res r{0, 0, 0, 0};
        for (int axis = 0; axis < 2; ++axis) {
          ZornR dn = value(rho(derivative(rho_inv(zn), axis)));
          ZornR dp = value(rho(derivative(rho_inv(zp), axis)));
          ZornR dm = value(rho(derivative(rho_inv(zm), axis)));
          r[0] = std::max(r[0], vanish_residual(vp, dn));
          r[1] = std::max(r[1], vanish_residual(dn, vm));
          r[2] = std::max(r[2], vanish_residual(vm, dp));
          r[3] = std::max(r[3], vanish_residual(dm, vp));
        }
        return r;
      },
      exec);
  TrialityReport rep;
  rep.points = static_cast<int>(res.size());
  for (const Res& r : res) {
    rep.psi_plus_dpsi = std::max(rep.psi_plus_dpsi, r[0]);
    rep.dpsi_psi_minus = std::max(rep.dpsi_psi_minus, r[1]);
    rep.psi_minus_dpsi_plus = std::max(rep.psi_minus_dpsi_plus, r[2]);
    rep.dpsi_minus_psi_plus = std::max(rep.dpsi_minus_psi_plus, r[3]);
  }
  return rep;
}

namespace {

Eigen::MatrixXd plus_jacobian(const IsotropicImmersionPoint& p) {
  Eigen::MatrixXd jp(6, 2);
  for (int axis = 0; axis < 2; ++axis) {
    V3 dh = value(derivative(p.trip.h, axis));
    V3 dgt = value(derivative(p.gtilde, axis));
    jp.col(axis) << dh.x, dh.y, dh.z, dgt.x, dgt.y, dgt.z;
  }
  return jp;
}

Eigen::MatrixXd minus_jacobian(const IsotropicImmersionPoint& p) {
  J44 nm = rho_inv(normalize_rep(rho(p.psi_minus)));
  Vec8 base = to_vec8(value(nm));
  Eigen::MatrixXd jm(8, 2);
  for (int axis = 0; axis < 2; ++axis) {
    Vec8 d = to_vec8(value(derivative(nm, axis)));
    jm.col(axis) = d - base.dot(d) * base;
  }
  return jm;
}

}  // namespace

std::pair<int, int> gauss_ranks(const IsotropicImmersionPoint& p) {
  double scale_p = std::max(1.0, norm(value(p.trip.h)) + norm(value(p.gtilde)));
  int rank_plus = rank_with_floor(plus_jacobian(p), 1e-10 * scale_p);
  int rank_minus = rank_with_floor(minus_jacobian(p), 1e-10);
  return {rank_plus, rank_minus};
}

Eigen::Vector2d gauss_kernel(const IsotropicImmersionPoint& p, Family side) {
  if (side == Family::none)
    throw IncompatibleArguments("gauss_kernel needs a plus or minus side");
  Eigen::MatrixXd j = side == Family::plus_family ? plus_jacobian(p)
                                                  : minus_jacobian(p);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeFullV);
  return svd.matrixV().col(1);
}

CycleReport verify_triality_cycle(const DeformationPair& p, int grid_n,
                                  Exec exec) {
  auto grid = pair_grid(p, grid_n);
  struct PointRes {
    std::array<double, 4> r{0, 0, 0, 0};
    bool checked = false;
  };
  auto res = sweep<PointRes>(
      grid,
      [&](const GridPoint& at) -> PointRes {
        PointRes out;
        IsotropicImmersionPoint pt = lift_point(p, at.u, at.v, 1);
        auto [rp, rm] = gauss_ranks(pt);
        if (rp < 2 || rm < 2) return out;  // secondary map not an immersion

        Vec8 ray_psi = to_vec8(value(rho(pt.psi)));
        Vec8 ray_plus = to_vec8(value(rho(pt.psi_plus)));
        Vec8 ray_minus = to_vec8(value(rho(pt.psi_minus)));

        auto secondary_labels = [](const J44& x) {
          Eigen::MatrixXd cols(8, 3);
          cols.col(0) = to_vec8(value(x));
          cols.col(1) = to_vec8(value(derivative(x, 0)));
          cols.col(2) = to_vec8(value(derivative(x, 1)));
          IsoSubspace v{orthonormalize(cols), Family::none};
          auto [wp, wm] = extend_isotropic3(v);
          return std::pair{to_vec8(classify_family(wp).z),
                           to_vec8(classify_family(wm).z)};
        };

        auto [p_plus, p_minus] =
            secondary_labels(rho_inv(normalize_rep(rho(pt.psi_plus))));
        out.r[0] = proj_sin_angle(p_plus, ray_minus);
        out.r[1] = proj_sin_angle(p_minus, ray_psi);

        auto [m_plus, m_minus] =
            secondary_labels(rho_inv(normalize_rep(rho(pt.psi_minus))));
        out.r[2] = proj_sin_angle(m_plus, ray_psi);
        out.r[3] = proj_sin_angle(m_minus, ray_plus);
        out.checked = true;
        return out;
      },
      exec);

  CycleReport rep;
  for (const PointRes& r : res) {
    if (!r.checked) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    rep.plus_plus = std::max(rep.plus_plus, r.r[0]);
    rep.plus_minus = std::max(rep.plus_minus, r.r[1]);
    rep.minus_plus = std::max(rep.minus_plus, r.r[2]);
    rep.minus_minus = std::max(rep.minus_minus, r.r[3]);
  }
  if (rep.checked == 0)
    throw DegenerateSecondary(
        "no grid point has both Gauss maps of rank 2; the secondary "
        "immersions degenerate everywhere (" + std::to_string(rep.skipped) +
        " points excluded)");
  return rep;
}

PhiLevelReport darboux_at_phi_level(const DarbouxTriplet& t, double u, double v) {
  TripletJets j = t.jets(u, v, 0);
  V3 f = value(j.f), g = value(j.g), h = value(j.h);
  V3 gt = g - cross(h, f);

  PhiLevelReport rep;
  P44 theta_plus = rho_inv(ZornR{dot(h, gt), -h, -gt, 1.0});
  P44 lift_of_A = involution_c(P44{h, 1.0, gt, -dot(h, gt)});
  rep.plus_vs_A = proj_sin_angle(to_vec8(theta_plus), to_vec8(lift_of_A));

  P44 psi{f, 1.0, g, -dot(f, g)};
  P44 lift_of_D{g, 1.0, f, -dot(g, f)};
  rep.sigma_vs_D =
      proj_sin_angle(to_vec8(involution_sigma(psi)), to_vec8(lift_of_D));

  TripletJets jc = apply_word(t, "DADADA").jets(u, v, 0);
  V3 fc = value(jc.f), gc = value(jc.g);
  P44 central{fc, 1.0, gc, -dot(fc, gc)};
  rep.central_vs_sc =
      proj_sin_angle(to_vec8(central), to_vec8(involution_sc(psi)));
  return rep;
}

PairClass rank_class(int rank_plus, int rank_minus) {
  if (rank_plus == 0) return PairClass::trivial_displacement;
  if (rank_minus == 0) return PairClass::planar_normal;
  if (rank_plus == 1 && rank_minus == 1)
    return PairClass::ruled_developable_rank1_both;
  if (rank_plus == 1) return PairClass::ruled_rank1_plus;
  if (rank_minus == 1) return PairClass::developable_rank1_minus;
  return PairClass::generic;
}

double ruling_residual(const DeformationPair& p, double u, double v) {
  // Kernel direction of dh in parameter space, sign-aligned with a reference.
  auto kernel_dir = [&](double uu, double vv,
                        const Eigen::Vector2d* ref) -> Eigen::Vector2d {
    TripletJets j = eval_word_jets(p, "", uu, vv, 1);
    Eigen::Matrix<double, 3, 2> jh;
    for (int axis = 0; axis < 2; ++axis) {
      V3 dh = value(derivative(j.h, axis));
      jh.col(axis) << dh.x, dh.y, dh.z;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(jh.transpose() * jh);
    Eigen::Vector2d k = es.eigenvectors().col(0);  // smallest eigenvalue
    if (ref && k.dot(*ref) < 0) k = -k;
    return k;
  };
  auto line_dir = [&](double uu, double vv, const Eigen::Vector2d& k) -> V3 {
    TripletJets j = eval_word_jets(p, "", uu, vv, 1);
    return k(0) * value(derivative(j.f, 0)) + k(1) * value(derivative(j.f, 1));
  };

  Eigen::Vector2d k0 = kernel_dir(u, v, nullptr);
  const double eps = tol::fd_step;
  double up = u + eps * k0(0), vp = v + eps * k0(1);
  double um = u - eps * k0(0), vm = v - eps * k0(1);
  V3 wp = line_dir(up, vp, kernel_dir(up, vp, &k0));
  V3 wm = line_dir(um, vm, kernel_dir(um, vm, &k0));
  V3 dw = (1.0 / (2.0 * eps)) * (wp - wm);

  V3 w0 = line_dir(u, v, k0);
  double nw = norm(w0);
  if (nw < tol::jet_eps)
    throw DegeneratePoint("ruling direction vanishes");
  V3 what = (1.0 / nw) * w0;
  V3 off = dw - dot(dw, what) * what;

  TripletJets j2 = eval_word_jets(p, "", u, v, 2);
  double hess = 0;
  for (auto [a, b] : {std::pair{2, 0}, std::pair{1, 1}, std::pair{0, 2}}) {
    V3 d2 = partial(j2.f, a, b);
    hess += dot(d2, d2) * (a == 1 ? 2.0 : 1.0);  // mixed term counted twice
  }
  hess = std::sqrt(hess);
  return norm(off) / std::max(hess, 1e-6);
}

RankReport classify_rank(const DeformationPair& p, int grid_n, Exec exec) {
  auto grid = pair_grid(p, grid_n);
  auto ranks = sweep<std::pair<int, int>>(
      grid,
      [&](const GridPoint& at) {
        return gauss_ranks(lift_point(p, at.u, at.v, 1));
      },
      exec);

  RankReport rep;
  rep.points.reserve(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    rep.points.push_back({grid[i], ranks[i].first, ranks[i].second});
    rep.rank_plus_max = std::max(rep.rank_plus_max, ranks[i].first);
    rep.rank_minus_max = std::max(rep.rank_minus_max, ranks[i].second);
  }
  rep.label = rank_class(rep.rank_plus_max, rep.rank_minus_max);

  if (rep.rank_plus_max == 1) {
    auto rules = sweep<double>(
        grid,
        [&](const GridPoint& at) { return ruling_residual(p, at.u, at.v); },
        exec);
    for (double r : rules) rep.max_ruling_residual = std::max(rep.max_ruling_residual, r);
    rep.ruling_points = static_cast<int>(rules.size());
  }
  return rep;
}

}  // namespace darboux
