#include "ouc/poly/matrix_polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace ouc::poly {

MatrixPolynomial::MatrixPolynomial(int rows, int cols)
    : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows * cols)) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix polynomial dimensions must be positive");
}

MatrixPolynomial::MatrixPolynomial(int rows, int cols, std::vector<Polynomial> entries)
    : MatrixPolynomial(rows, cols) {
  if (entries.size() != e_.size()) throw std::invalid_argument("matrix polynomial entry count mismatch");
  e_ = std::move(entries);
}

MatrixPolynomial MatrixPolynomial::identity(int n) {
  return scalar_identity(n, Polynomial::constant(1.0));
}

MatrixPolynomial MatrixPolynomial::scalar_identity(int n, const Polynomial& p) {
  MatrixPolynomial m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = p;
  return m;
}

MatrixPolynomial MatrixPolynomial::from_coefficients(const std::vector<Eigen::MatrixXd>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("from_coefficients: no coefficient matrices");
  const auto rows = static_cast<int>(coeffs.front().rows());
  const auto cols = static_cast<int>(coeffs.front().cols());
  MatrixPolynomial m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      std::vector<double> c(coeffs.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].rows() != rows || coeffs[k].cols() != cols) {
          throw std::invalid_argument("from_coefficients: inconsistent shapes");
        }
        c[k] = coeffs[k](i, j);
      }
      m(i, j) = Polynomial(std::move(c));
    }
  }
  return m;
}

std::size_t MatrixPolynomial::index(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("matrix polynomial index");
  return static_cast<std::size_t>(i * cols_ + j);
}

int MatrixPolynomial::degree() const {
  int d = Polynomial::kZeroDegree;
  for (const auto& p : e_) d = std::max(d, p.degree());
  return d;
}

Eigen::MatrixXd MatrixPolynomial::coefficient(int k) const {
  Eigen::MatrixXd out(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).coeff(k);
  }
  return out;
}

ComplexMatrix MatrixPolynomial::operator()(Complex s) const {
  ComplexMatrix out(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j)(s);
  }
  return out;
}

MatrixPolynomial MatrixPolynomial::derivative() const {
  MatrixPolynomial out = *this;
  for (auto& e : out.e_) e = e.derivative();
  return out;
}

MatrixPolynomial& MatrixPolynomial::operator+=(const MatrixPolynomial& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix polynomial sum: shape mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += rhs.e_[k];
  return *this;
}

MatrixPolynomial& MatrixPolynomial::operator-=(const MatrixPolynomial& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix polynomial difference: shape mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= rhs.e_[k];
  return *this;
}

MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix polynomial product: shape mismatch");
  MatrixPolynomial out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < b.cols_; ++j) {
      Polynomial acc;
      for (int k = 0; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

MatrixPolynomial operator*(const Polynomial& p, MatrixPolynomial m) {
  for (auto& e : m.e_) e = p * e;
  return m;
}

MatrixPolynomial operator*(MatrixPolynomial m, double k) {
  for (auto& e : m.e_) e *= k;
  return m;
}

}  // namespace ouc::poly
