#pragma once

#include <utility>
#include <vector>

#include "ouc/poly/matrix_polynomial.hpp"

namespace ouc::poly {

/// Matrix of polynomial ratios held in common-denominator form.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  /// Throws std::invalid_argument if the denominator is identically zero.
  RationalMatrix(MatrixPolynomial numerators, Polynomial denominator);

  static RationalMatrix identity(int n);
  /// Builds the common-denominator form from per-entry (numerator, denominator)
  /// pairs, row-major. Identical denominators are shared rather than multiplied.
  static RationalMatrix from_entries(int rows, int cols,
                                     const std::vector<std::pair<Polynomial, Polynomial>>& entries);

  int rows() const { return num_.rows(); }
  int cols() const { return num_.cols(); }
  const MatrixPolynomial& numerators() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  /// Throws PoleError when |den(s)| <= 1e-12 * sum_k |den_k| |s|^k.
  ComplexMatrix operator()(Complex s) const;

  /// Every entry numerator degree <= denominator degree.
  bool is_proper() const;
  bool is_strictly_proper() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

 private:
  MatrixPolynomial num_;
  Polynomial den_;
};

}  // namespace ouc::poly
