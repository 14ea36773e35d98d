#include "darboux/second_forms.hpp"

#include <cmath>
#include <sstream>

#include "darboux/error.hpp"
#include "darboux/tolerances.hpp"

namespace darboux {

namespace {

ZornR deriv_value(const ZornJ& z, int axis) {
  return value(rho(derivative(rho_inv(z), axis)));
}

struct Extraction {
  QuadraticForm2 form;
  double direction_residual = 0;
  double symmetry_residual = 0;
};

struct Operand {
  ZornR at;                  // representative value
  std::array<ZornR, 2> d;    // derivative values
  double scale;              // max of the three Euclidean norms
};

Operand make_operand(const ZornJ& z) {
  Operand o;
  o.at = value(z);
  o.d = {deriv_value(z, 0), deriv_value(z, 1)};
  o.scale = std::max(
      {euclid_norm(o.at), euclid_norm(o.d[0]), euclid_norm(o.d[1])});
  return o;
}

/// Least-squares scalar of -(X a)(Y b) against the target direction, for the
/// four derivative pairs. Residuals and the zero threshold are measured
/// against the operand scale (value and derivative norms), so derivatives
/// that vanish up to roundoff produce a clean zero instead of noise ratios.
Extraction extract_form(const Operand& a, const Operand& b,
                        const ZornR& target) {
  Vec8 t = to_vec8(target);
  double t2 = t.squaredNorm();
  if (t2 < 1e-300) throw ZeroElement("extraction target vanishes");
  double ab = std::max(a.scale * b.scale, 1e-300);
  Extraction e;
  Eigen::Matrix2d raw;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      Vec8 prod = -to_vec8(mul(a.d[x], b.d[y]));
      double ops = euclid_norm(a.d[x]) * euclid_norm(b.d[y]);
      double s = prod.dot(t) / t2;
      e.direction_residual =
          std::max(e.direction_residual,
                   (prod - s * t).norm() / std::max(ops, 1e-8 * ab));
      raw(x, y) = s;
    }
  e.symmetry_residual = std::abs(raw(0, 1) - raw(1, 0)) * std::sqrt(t2) / ab;
  double off = 0.5 * (raw(0, 1) + raw(1, 0));
  e.form.m << raw(0, 0), off, off, raw(1, 1);
  e.form.zero_scale = ab / std::sqrt(t2);
  return e;
}

OctonionForms extract_all(const ZornJ& zpsi, const ZornJ& zplus,
                          const ZornJ& zminus) {
  Operand opsi = make_operand(zpsi);
  Operand oplus = make_operand(zplus);
  Operand ominus = make_operand(zminus);
  Extraction em = extract_form(oplus, opsi, conj(ominus.at));
  Extraction ep = extract_form(opsi, ominus, conj(oplus.at));
  Extraction ec = extract_form(ominus, oplus, conj(opsi.at));

  OctonionForms out;
  out.minus = em.form;
  out.plus = ep.form;
  out.core = ec.form;
  out.direction_residual = std::max(
      {em.direction_residual, ep.direction_residual, ec.direction_residual});
  out.symmetry_residual = std::max(
      {em.symmetry_residual, ep.symmetry_residual, ec.symmetry_residual});
  if (out.direction_residual > tol::forms_direction) {
    std::ostringstream os;
    os << "derivative product misses its conjugate direction (residual "
       << out.direction_residual << ")";
    throw DirectionMismatch(os.str());
  }
  return out;
}

/// -nu / (nu . against): the tangent-plane normal nu rescaled so its pairing
/// with `against` is -1. With nu the normal of f this yields f* (against = f)
/// and h* (against = h); h* is defined by h* . df = 0, h* . h = -1 and only
/// coincides with the polar of h where h immerses.
V3 scaled_normal(const V3& nu, const V3& against, const char* who) {
  double den = dot(nu, against);
  if (std::abs(den) <= 1e-9 * norm(nu) * std::max(norm(against), 1.0))
    throw PolarUndefined(std::string("polar gauge of ") + who +
                         " undefined: normal pairing vanishes");
  return (-1.0 / den) * nu;
}

QuadraticForm2 star_dot_hessian(const V3& star, const JV3& m,
                                bool up_to_scale) {
  QuadraticForm2 q;
  V3 d20 = partial(m, 2, 0), d11 = partial(m, 1, 1), d02 = partial(m, 0, 2);
  q.m << dot(star, d20), dot(star, d11), dot(star, d11), dot(star, d02);
  q.up_to_scale = up_to_scale;
  // A Hessian of roundoff size relative to the map itself means a vanishing
  // form, so the zero threshold is set by the larger of the two.
  double hess = std::max({norm(d20), norm(d11), norm(d02)});
  q.zero_scale = norm(star) * std::max(hess, norm(value(m)));
  return q;
}

Eigen::Vector3d flatten(const QuadraticForm2& q) {
  return {q.m(0, 0), q.m(0, 1), q.m(1, 1)};
}

bool row_admissible(int p, int m, int c) {
  if (p == 2 && m == 2 && c == 2) return true;
  if (p == 2 && m == 1 && c == 1) return true;
  if (p == 1 && m == 2 && c == 1) return true;
  if (p == 1 && m == 1 && c == 0) return true;
  if (p == 0 && c == 0) return true;
  if (m == 0 && c == 0) return true;
  return false;
}

double kernel_sin(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return std::abs(a(0) * b(1) - a(1) * b(0)) / (a.norm() * b.norm());
}

}  // namespace

bool effectively_zero(const QuadraticForm2& q) {
  return q.m.norm() <= tol::form_zero * q.zero_scale + 1e-300;
}

int form_rank(const QuadraticForm2& q) {
  if (effectively_zero(q)) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q.m);
  double cutoff = tol::form_rank_cutoff * q.m.norm();
  int r = 0;
  for (int i = 0; i < 2; ++i)
    if (std::abs(es.eigenvalues()(i)) > cutoff) ++r;
  return r;
}

bool rank_marginal(const QuadraticForm2& q) {
  double zt = tol::form_zero * q.zero_scale + 1e-300;
  double n = q.m.norm();
  if (n > 0.1 * zt && n < 10.0 * zt) return true;
  if (n <= zt) return false;  // solidly zero
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q.m);
  double cutoff = tol::form_rank_cutoff * n;
  for (int i = 0; i < 2; ++i) {
    double s = std::abs(es.eigenvalues()(i));
    if (s > 0.1 * cutoff && s < 10.0 * cutoff) return true;
  }
  return false;
}

Eigen::Vector2d form_kernel(const QuadraticForm2& q) {
  if (form_rank(q) != 1)
    throw IncompatibleArguments("form_kernel needs a rank-1 form");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q.m);
  int small = std::abs(es.eigenvalues()(0)) <= std::abs(es.eigenvalues()(1)) ? 0 : 1;
  return es.eigenvectors().col(small);
}

OctonionForms forms_from_octonions(const IsotropicImmersionPoint& p) {
  if (p.order() < 1)
    throw IncompatibleArguments("form extraction needs order-1 jets at least");
  return extract_all(rho(p.psi), rho(p.psi_plus), rho(p.psi_minus));
}

double apolarity_check(const QuadraticForm2& a, const QuadraticForm2& b) {
  if (effectively_zero(a) || effectively_zero(b)) return 0.0;
  double s = a.m(0, 0) * b.m(1, 1) + a.m(1, 1) * b.m(0, 0) -
             2.0 * a.m(0, 1) * b.m(0, 1);
  return std::abs(s) / std::max(a.m.norm() * b.m.norm(), 1e-300);
}

ClassicalForms classical_forms(const DarbouxTriplet& t, double u, double v) {
  TripletJets j = t.jets(u, v, 2);
  V3 nu = cross(value(derivative(j.f, 0)), value(derivative(j.f, 1)));
  V3 hv = value(j.h), gv = value(j.g);
  ClassicalForms out;
  out.f = star_dot_hessian(scaled_normal(nu, value(j.f), "f"), j.f, false);
  double hg = dot(hv, gv);
  if (std::abs(hg) <= 1e-9 * norm(hv) * std::max(norm(gv), 1.0))
    throw PolarUndefined("polar gauge of g undefined: h.g vanishes");
  out.g = star_dot_hessian((-1.0 / hg) * hv, j.g, false);
  out.h = star_dot_hessian(scaled_normal(nu, hv, "h"), j.h, false);
  return out;
}

ProportionalityReport proportionality_check(const DarbouxTriplet& t, double u,
                                            double v) {
  TripletJets j = t.jets(u, v, 2);
  const int k = 1;
  JV3 f = truncated(j.f, k), g = truncated(j.g, k), h = truncated(j.h, k);
  JV3 gt = truncated(j.g - cross(j.h, j.f), k);
  JV3 nu = cross(derivative(j.f, 0), derivative(j.f, 1));
  Jet2 nf = dot(nu, f);
  if (std::abs(nf.value()) <=
      1e-9 * norm(value(nu)) * std::max(norm(value(f)), 1.0))
    throw PolarUndefined("polar of f undefined: tangent plane through origin");
  JV3 fstar = jet_div(-nu, nf);
  JV3 htilde = h - cross(fstar, gt);

  ZornJ zpsi{Jet2::constant(1.0, k), f, g, dot(f, g)};
  ZornJ zplus{dot(h, gt), -h, -gt, Jet2::constant(1.0, k)};
  ZornJ zminus{Jet2::constant(1.0, k), htilde, fstar, dot(htilde, fstar)};
  OctonionForms ext = extract_all(zpsi, zplus, zminus);

  ProportionalityReport rep;
  QuadraticForm2 cls_f, cls_g, cls_h;
  bool have_f = true, have_g = true, have_h = true;
  V3 nuv = value(nu);
  V3 hv = value(j.h), gv = value(j.g), fv = value(j.f);
  try {
    cls_f = star_dot_hessian(scaled_normal(nuv, fv, "f"), j.f, false);
  } catch (const PolarUndefined&) {
    have_f = false;
  }
  double hg = dot(hv, gv);
  if (std::abs(hg) > 1e-9 * norm(hv) * std::max(norm(gv), 1.0))
    cls_g = star_dot_hessian((-1.0 / hg) * hv, j.g, false);
  else
    have_g = false;
  V3 hstar{};
  try {
    hstar = scaled_normal(nuv, hv, "h");
    cls_h = star_dot_hessian(hstar, j.h, false);
  } catch (const PolarUndefined&) {
    have_h = false;
  }

  auto component = [](const QuadraticForm2& a, const QuadraticForm2& b,
                      bool defined) {
    ProportionalityComponent c;
    c.polar_defined = defined;
    if (!defined) return c;
    bool za = effectively_zero(a), zb = effectively_zero(b);
    if (za && zb) {
      c.vacuous = true;
      return c;
    }
    if (za != zb) {
      c.cross_residual = 1.0;  // one vanishes, the other does not
      return c;
    }
    Eigen::Vector3d va = flatten(a), vb = flatten(b);
    c.cross_residual = va.cross(vb).norm() / (va.norm() * vb.norm());
    return c;
  };
  rep.plus = component(ext.plus, cls_f, have_f);
  rep.minus = component(ext.minus, cls_g, have_g);
  rep.core = component(ext.core, cls_h, have_h);

  bool all_nonzero = have_f && have_g && have_h && !effectively_zero(ext.plus) &&
                     !effectively_zero(ext.minus) && !effectively_zero(ext.core) &&
                     !effectively_zero(cls_f) && !effectively_zero(cls_g) &&
                     !effectively_zero(cls_h);
  if (all_nonzero) {
    double hf = dot(hv, value(fstar));
    double fh = dot(fv, hstar);
    Eigen::Matrix2d pred_plus = cls_f.m;
    Eigen::Matrix2d pred_core = hf * cls_h.m;
    Eigen::Matrix2d pred_minus = hg * fh * cls_g.m;
    double s = flatten(ext.plus).dot(Eigen::Vector3d(
                   pred_plus(0, 0), pred_plus(0, 1), pred_plus(1, 1))) >= 0
                   ? 1.0
                   : -1.0;
    auto rel = [s](const Eigen::Matrix2d& got, const Eigen::Matrix2d& want) {
      return (got - s * want).norm() /
             std::max({got.norm(), want.norm(), 1e-300});
    };
    rep.factor_residual = std::max({rel(ext.plus.m, pred_plus),
                                    rel(ext.core.m, pred_core),
                                    rel(ext.minus.m, pred_minus)});
    rep.gauge_sign = s;
  }
  return rep;
}

FormRankReport rank_table(const DeformationPair& p, int grid_n, Exec exec) {
  auto grid = pair_grid(p, grid_n);
  struct PointData {
    int rp, rm, rc;
    bool marginal;
    bool mismatch = false;
    double angle = 0;
  };
  auto data = sweep<PointData>(
      grid,
      [&](const GridPoint& at) -> PointData {
        IsotropicImmersionPoint pt = lift_point(p, at.u, at.v, 1);
        OctonionForms forms = forms_from_octonions(pt);
        PointData d;
        d.rp = form_rank(forms.plus);
        d.rm = form_rank(forms.minus);
        d.rc = form_rank(forms.core);
        d.marginal = rank_marginal(forms.plus) || rank_marginal(forms.minus) ||
                     rank_marginal(forms.core);
        if (d.marginal) return d;
        auto [gp, gm] = gauss_ranks(pt);
        d.mismatch = (d.rp != gm) || (d.rm != gp);
        if (d.rp == 1 && gm == 1)
          d.angle = std::max(d.angle,
                             kernel_sin(form_kernel(forms.plus),
                                        gauss_kernel(pt, Family::minus_family)));
        if (d.rm == 1 && gp == 1)
          d.angle = std::max(d.angle,
                             kernel_sin(form_kernel(forms.minus),
                                        gauss_kernel(pt, Family::plus_family)));
        return d;
      },
      exec);

  FormRankReport rep;
  rep.points.reserve(grid.size());
  bool have_row = false;
  for (size_t i = 0; i < grid.size(); ++i) {
    const PointData& d = data[i];
    rep.points.push_back({grid[i], d.rp, d.rm, d.rc, d.marginal});
    if (d.marginal) {
      ++rep.marginal_count;
      continue;
    }
    ++rep.table_checked;
    if (d.mismatch) ++rep.rank_mismatch;
    rep.kernel_angle = std::max(rep.kernel_angle, d.angle);
    std::array<int, 3> row{d.rp, d.rm, d.rc};
    if (!have_row) {
      rep.row = row;
      have_row = true;
    } else if (row != rep.row) {
      std::ostringstream os;
      os << "rank triple changes across the grid: (" << rep.row[0] << ","
         << rep.row[1] << "," << rep.row[2] << ") vs (" << row[0] << ","
         << row[1] << "," << row[2] << ") at (" << grid[i].u << ","
         << grid[i].v << ")";
      throw TableViolation(os.str());
    }
  }
  if (!have_row)
    throw TableViolation("every grid point is rank-marginal; no stable row");
  if (!row_admissible(rep.row[0], rep.row[1], rep.row[2])) {
    std::ostringstream os;
    os << "rank triple (" << rep.row[0] << "," << rep.row[1] << ","
       << rep.row[2] << ") is not an admissible classification row";
    throw TableViolation(os.str());
  }
  return rep;
}

}  // namespace darboux
