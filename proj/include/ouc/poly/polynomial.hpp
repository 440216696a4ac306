#pragma once

#include <complex>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace ouc::poly {

using Complex = std::complex<double>;

/// Real-coefficient polynomial, coefficients in ascending degree.
///
/// Trailing (highest-degree) coefficients with magnitude below 1e-12 times the
/// largest coefficient magnitude are dropped on construction, so degree() is
/// always that of a nonzero leading coefficient. The zero polynomial has
/// degree kZeroDegree.
class Polynomial {
 public:
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();
  static constexpr double kTrimTolerance = 1e-12;

  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  static Polynomial constant(double c);
  static Polynomial monomial(int degree, double c = 1.0);
  /// gain * prod (s - root). Complex roots must come in conjugate pairs.
  static Polynomial from_roots(std::span<const Complex> roots, double gain = 1.0);

  int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::span<const double> coeffs() const { return c_; }
  /// Coefficient of s^k; zero outside [0, degree].
  double coeff(int k) const;
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }
  double max_abs_coeff() const;

  Complex operator()(Complex s) const;
  double operator()(double s) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(double k);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator*(Polynomial p, double k) { return p *= k; }
  friend Polynomial operator*(double k, Polynomial p) { return p *= k; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial derivative() const;

  /// Roots via eigenvalues of the balanced companion matrix.
  std::vector<Complex> roots() const;

 private:
  void trim();
  std::vector<double> c_;
};

Polynomial pow(const Polynomial& p, int n);

struct Division {
  Polynomial quotient;
  Polynomial remainder;
  /// max|remainder coeff| / max|numerator coeff| (0 for a zero numerator).
  double relative_remainder = 0.0;
};

/// Euclidean division num = quotient * den + remainder, deg remainder < deg den.
Division divide(const Polynomial& num, const Polynomial& den);

struct HurwitzResult {
  bool hurwitz = false;
  /// -max Re(root); +infinity for a nonzero constant (no roots).
  double margin = 0.0;
};

/// All roots strictly in the open left half-plane. A nonzero constant counts
/// as Hurwitz (empty root set). Throws std::invalid_argument for the zero
/// polynomial.
HurwitzResult is_hurwitz(const Polynomial& p);

/// Multiset comparison of two root sets that may contain clustered (multiple)
/// roots. Points are grouped by single linkage at `cluster_radius`; each
/// cluster must hold the same number of points from both sets and the cluster
/// centroids of the two sets must agree.
struct RootMatch {
  bool counts_match = false;
  std::size_t clusters = 0;
  double max_centroid_error = 0.0;
};

RootMatch match_roots(std::span<const Complex> a, std::span<const Complex> b,
                      double cluster_radius);

}  // namespace ouc::poly
