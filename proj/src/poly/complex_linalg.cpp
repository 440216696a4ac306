#include "ouc/poly/complex_linalg.hpp"

#include <limits>
#include <stdexcept>

#include "ouc/errors.hpp"

namespace ouc::poly {

namespace {

double norm1(const Eigen::MatrixXcd& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

LinearSolution solve_complex_linear(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve_complex_linear: matrix not square");
  if (b.rows() != a.rows()) throw std::invalid_argument("solve_complex_linear: rhs row mismatch");
  if (a.rows() == 0) return {Eigen::MatrixXcd(0, b.cols()), 1.0};
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  if (!lu.isInvertible()) {
    throw IllConditionedError("solve_complex_linear: singular matrix",
                              std::numeric_limits<double>::infinity());
  }
  const double cond = norm1(a) * norm1(lu.inverse());
  if (!(cond <= kMaxCondition)) {
    throw IllConditionedError("solve_complex_linear: condition number exceeds 1e12", cond);
  }
  return {lu.solve(b), cond};
}

Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& a, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  const double cut = sv.size() > 0 ? tol * sv(0) : 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cut) inv(k) = 1.0 / sv(k);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace ouc::poly
