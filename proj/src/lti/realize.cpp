#include "ouc/lti/realize.hpp"

#include <algorithm>
#include <stdexcept>

#include "ouc/errors.hpp"

namespace ouc::lti {

using poly::MatrixPolynomial;
using poly::Polynomial;
using poly::RationalMatrix;

namespace {

// Single-output, multi-input observer form of num_j(s)/den(s), den monic of degree n.
void observer_block(const Polynomial& den, const std::vector<Polynomial>& nums, Eigen::MatrixXd& a,
                    Eigen::MatrixXd& b, Eigen::RowVectorXd& c, Eigen::RowVectorXd& d) {
  const int n = den.degree();
  const auto m = static_cast<Eigen::Index>(nums.size());
  a = Eigen::MatrixXd::Zero(n, n);
  b = Eigen::MatrixXd::Zero(n, m);
  c = Eigen::RowVectorXd::Zero(n);
  d = Eigen::RowVectorXd::Zero(m);
  for (int k = 0; k < n; ++k) {
    a(k, n - 1) = -den.coeff(k);
    if (k > 0) a(k, k - 1) = 1.0;
  }
  if (n > 0) c(n - 1) = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double dj = nums[static_cast<std::size_t>(j)].coeff(n);
    d(j) = dj;
    for (int k = 0; k < n; ++k) b(k, j) = nums[static_cast<std::size_t>(j)].coeff(k) - dj * den.coeff(k);
  }
}

// Block-diagonal stacking of per-row observer forms.
StateSpace stack_rows(const MatrixPolynomial& num, const Polynomial& den) {
  const int rows = num.rows();
  const int cols = num.cols();
  const int n = den.degree();
  StateSpace ss;
  ss.A = Eigen::MatrixXd::Zero(rows * n, rows * n);
  ss.B = Eigen::MatrixXd::Zero(rows * n, cols);
  ss.C = Eigen::MatrixXd::Zero(rows, rows * n);
  ss.D = Eigen::MatrixXd::Zero(rows, cols);
  for (int i = 0; i < rows; ++i) {
    std::vector<Polynomial> nums;
    for (int j = 0; j < cols; ++j) nums.push_back(num(i, j));
    Eigen::MatrixXd a, b;
    Eigen::RowVectorXd c, d;
    observer_block(den, nums, a, b, c, d);
    ss.A.block(i * n, i * n, n, n) = a;
    ss.B.block(i * n, 0, n, cols) = b;
    ss.C.block(i, i * n, 1, n) = c;
    ss.D.row(i) = d;
  }
  return ss;
}

StateSpace transpose(const StateSpace& ss) {
  StateSpace t;
  t.A = ss.A.transpose();
  t.B = ss.C.transpose();
  t.C = ss.B.transpose();
  t.D = ss.D.transpose();
  return t;
}

// Returns an orthogonal Q (n x n) and the dimension k of the controllable
// subspace of (a, b); the first k columns of Q span it.
std::pair<Eigen::MatrixXd, int> controllable_staircase(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                                       double tol) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  if (n == 0) return {q, 0};
  const double scale = std::max({1.0, a.norm(), b.norm()});
  Eigen::MatrixXd at = a;
  Eigen::MatrixXd block = b;  // rows k..n of the current input block
  Eigen::Index k = 0;
  while (k < n && block.cols() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(block, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > tol * scale) ++r;
    if (r == 0) break;
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(n, n);
    t.bottomRightCorner(n - k, n - k) = svd.matrixU();
    at = t.transpose() * at * t;
    q = q * t;
    block = at.block(k + r, k, n - k - r, r);
    k += r;
  }
  return {q, static_cast<int>(k)};
}

}  // namespace

StateSpace realize_canonical(const RationalMatrix& w) {
  if (!w.is_proper()) throw ImproperError("realize: transfer matrix is not proper");
  const Polynomial& den = w.denominator();
  const double lead = den.leading();
  Polynomial monic = den * (1.0 / lead);
  MatrixPolynomial num = w.numerators() * (1.0 / lead);
  StateSpace ss;
  if (w.cols() < w.rows()) {
    // Controller form is the dual of the observer form of W^T.
    MatrixPolynomial numt(w.cols(), w.rows());
    for (int i = 0; i < w.rows(); ++i) {
      for (int j = 0; j < w.cols(); ++j) numt(j, i) = num(i, j);
    }
    ss = transpose(stack_rows(numt, monic));
  } else {
    ss = stack_rows(num, monic);
  }
  ss.validate();
  return ss;
}

StateSpace minimal(const StateSpace& in, double tol) {
  StateSpace ss = in;
  ss.validate();
  const int nd = ss.disturbances();
  Eigen::MatrixXd b_all(ss.states(), ss.inputs() + nd);
  b_all << ss.B, ss.E;
  auto [qc, kc] = controllable_staircase(ss.A, b_all, tol);
  Eigen::MatrixXd t = qc.leftCols(kc);
  Eigen::MatrixXd a = t.transpose() * ss.A * t;
  Eigen::MatrixXd b = t.transpose() * b_all;
  Eigen::MatrixXd c = ss.C * t;

  auto [qo, ko] = controllable_staircase(a.transpose(), c.transpose(), tol);
  Eigen::MatrixXd to = qo.leftCols(ko);
  StateSpace out;
  out.A = to.transpose() * a * to;
  const Eigen::MatrixXd bo = to.transpose() * b;
  out.B = bo.leftCols(ss.inputs());
  out.E = bo.rightCols(nd);
  out.C = c * to;
  out.D = ss.D;
  out.G = ss.G;
  out.validate();
  return out;
}

StateSpace realize(const RationalMatrix& w, double tol) { return minimal(realize_canonical(w), tol); }

StateSpace realize_left_mfd(const MatrixPolynomial& n, const MatrixPolynomial& m) {
  const int p = n.rows();
  if (n.cols() != p) throw std::invalid_argument("realize_left_mfd: N must be square");
  if (m.rows() != p) throw std::invalid_argument("realize_left_mfd: M row count must match N");
  const int deg = n.degree();
  if (deg < 0) throw std::invalid_argument("realize_left_mfd: N is zero");
  if (m.degree() > deg) throw ImproperError("realize_left_mfd: deg M exceeds deg N");
  const int q = m.cols();
  Eigen::FullPivLU<Eigen::MatrixXd> lead(n.coefficient(deg));
  if (!lead.isInvertible()) {
    throw std::invalid_argument("realize_left_mfd: leading coefficient matrix of N is singular");
  }
  std::vector<Eigen::MatrixXd> nk, mk;
  for (int k = 0; k <= deg; ++k) {
    nk.push_back(lead.solve(n.coefficient(k)));
    mk.push_back(lead.solve(m.coefficient(k)));
  }
  StateSpace ss;
  ss.D = mk[static_cast<std::size_t>(deg)];
  ss.A = Eigen::MatrixXd::Zero(p * deg, p * deg);
  ss.B = Eigen::MatrixXd::Zero(p * deg, q);
  ss.C = Eigen::MatrixXd::Zero(p, p * deg);
  for (int k = 0; k < deg; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    ss.A.block(k * p, (deg - 1) * p, p, p) = -nk[uk];
    if (k > 0) ss.A.block(k * p, (k - 1) * p, p, p).setIdentity();
    ss.B.block(k * p, 0, p, q) = mk[uk] - nk[uk] * ss.D;
  }
  if (deg > 0) ss.C.rightCols(p).setIdentity();
  ss.validate();
  return ss;
}

}  // namespace ouc::lti
