#include "ouc/poly/rational_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "ouc/errors.hpp"

namespace ouc::poly {

RationalMatrix::RationalMatrix(MatrixPolynomial numerators, Polynomial denominator)
    : num_(std::move(numerators)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw std::invalid_argument("rational matrix denominator is identically zero");
}

RationalMatrix RationalMatrix::identity(int n) {
  return {MatrixPolynomial::identity(n), Polynomial::constant(1.0)};
}

RationalMatrix RationalMatrix::from_entries(
    int rows, int cols, const std::vector<std::pair<Polynomial, Polynomial>>& entries) {
  if (entries.size() != static_cast<std::size_t>(rows * cols)) {
    throw std::invalid_argument("from_entries: entry count mismatch");
  }
  std::vector<Polynomial> distinct;
  for (const auto& [n, d] : entries) {
    if (d.is_zero()) throw std::invalid_argument("from_entries: zero denominator");
    bool seen = false;
    for (const auto& q : distinct) seen = seen || q == d;
    if (!seen) distinct.push_back(d);
  }
  Polynomial lcd = Polynomial::constant(1.0);
  for (const auto& q : distinct) lcd *= q;

  MatrixPolynomial num(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const auto& [n, d] = entries[static_cast<std::size_t>(i * cols + j)];
      Polynomial scaled = n;
      for (const auto& q : distinct) {
        if (!(q == d)) scaled *= q;
      }
      num(i, j) = scaled;
    }
  }
  return {std::move(num), std::move(lcd)};
}

ComplexMatrix RationalMatrix::operator()(Complex s) const {
  const Complex d = den_(s);
  double scale = 0.0;
  double pw = 1.0;
  for (double c : den_.coeffs()) {
    scale += std::abs(c) * pw;
    pw *= std::abs(s);
  }
  if (std::abs(d) <= 1e-12 * scale) throw PoleError(s);
  return num_(s) / d;
}

bool RationalMatrix::is_proper() const { return num_.degree() <= den_.degree(); }

bool RationalMatrix::is_strictly_proper() const { return num_.degree() < den_.degree(); }

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

}  // namespace ouc::poly
