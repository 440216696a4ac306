#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ouc/poly/polynomial.hpp"

namespace ouc::poly {

using ComplexMatrix = Eigen::MatrixXcd;

/// Rectangular matrix of real polynomials (row-major entry storage).
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  MatrixPolynomial(int rows, int cols);
  MatrixPolynomial(int rows, int cols, std::vector<Polynomial> entries);

  static MatrixPolynomial identity(int n);
  static MatrixPolynomial scalar_identity(int n, const Polynomial& p);
  /// Builds sum_k coeffs[k] * s^k from constant coefficient matrices.
  static MatrixPolynomial from_coefficients(const std::vector<Eigen::MatrixXd>& coeffs);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Polynomial& operator()(int i, int j) { return e_[index(i, j)]; }
  const Polynomial& operator()(int i, int j) const { return e_[index(i, j)]; }

  /// Max entry degree; Polynomial::kZeroDegree when every entry is zero.
  int degree() const;
  /// Coefficient matrix of s^k.
  Eigen::MatrixXd coefficient(int k) const;
  ComplexMatrix operator()(Complex s) const;
  MatrixPolynomial derivative() const;

  MatrixPolynomial& operator+=(const MatrixPolynomial& rhs);
  MatrixPolynomial& operator-=(const MatrixPolynomial& rhs);
  friend MatrixPolynomial operator+(MatrixPolynomial a, const MatrixPolynomial& b) { return a += b; }
  friend MatrixPolynomial operator-(MatrixPolynomial a, const MatrixPolynomial& b) { return a -= b; }
  friend MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b);
  friend MatrixPolynomial operator*(const Polynomial& p, MatrixPolynomial m);
  friend MatrixPolynomial operator*(MatrixPolynomial m, double k);

 private:
  std::size_t index(int i, int j) const;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Polynomial> e_;
};

}  // namespace ouc::poly
