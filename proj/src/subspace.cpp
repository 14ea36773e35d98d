#include "darboux/subspace.hpp"

#include "darboux/error.hpp"
#include "darboux/tolerances.hpp"

namespace darboux {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
  // Guard against rank deficiency: QR silently produces arbitrary columns.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  double smax = svd.singularValues()(0);
  if (smax == 0.0 || svd.singularValues().minCoeff() < 1e-10 * smax)
    throw DegenerateInput("orthonormalize: input columns are numerically dependent");
  return q;
}

double gram_residual(const Eigen::MatrixXd& basis) {
  double r = 0.0;
  for (int i = 0; i < basis.cols(); ++i)
    for (int j = i; j < basis.cols(); ++j) {
      double g = q_polar(p44_from_vec8(basis.col(i)), p44_from_vec8(basis.col(j)));
      r = std::max(r, std::abs(g));
    }
  return r;
}

double sin_max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols() || a.rows() != b.rows())
    throw IncompatibleArguments("principal angles need equal-dimensional subspaces");
  Eigen::MatrixXd resid = a - b * (b.transpose() * a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(resid);
  return svd.singularValues()(0);
}

double containment_residual(const IsoSubspace& w, const Vec8& v) {
  double n = v.norm();
  if (n == 0.0) throw ZeroElement("containment test of a zero vector");
  Vec8 r = v - w.basis * (w.basis.transpose() * v);
  return r.norm() / n;
}

int joint_rank(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double rel_cutoff) {
  Eigen::MatrixXd m(a.rows(), a.cols() + b.cols());
  m << a, b;
  return numerical_rank(m, rel_cutoff);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel_cutoff) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_cutoff * smax) ++rank;
  if (smax == 0.0) rank = 0;
  return svd.matrixV().rightCols(m.cols() - rank);
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_cutoff) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double smax = sv(0);
  if (smax == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_cutoff * smax) ++rank;
  return rank;
}

}  // namespace darboux
