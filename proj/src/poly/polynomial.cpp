#include "ouc/poly/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace ouc::poly {

namespace {

// Parlett-Reinsch diagonal similarity scaling (radix 2), in place.
void balance(Eigen::MatrixXd& a) {
  constexpr double kRadix = 2.0;
  constexpr double kRadixSq = kRadix * kRadix;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadixSq;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadixSq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

Polynomial Polynomial::constant(double c) { return Polynomial(std::vector<double>{c}); }

Polynomial Polynomial::monomial(int degree, double c) {
  if (degree < 0) throw std::invalid_argument("monomial degree must be nonnegative");
  std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1, 0.0);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, double gain) {
  std::vector<bool> used(roots.size(), false);
  Polynomial p = constant(gain);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Complex z = roots[i];
    const double tol = 1e-9 * (1.0 + std::abs(z));
    if (std::abs(z.imag()) <= tol) {
      p *= Polynomial{-z.real(), 1.0};
      continue;
    }
    // Find the closest unused conjugate partner.
    std::size_t best = roots.size();
    double best_dist = tol;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(roots[j] - std::conj(z));
      if (dist <= best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    if (best == roots.size()) {
      throw std::invalid_argument("root set is not closed under conjugation");
    }
    used[best] = true;
    const double re = 0.5 * (z.real() + roots[best].real());
    const double im = 0.5 * (std::abs(z.imag()) + std::abs(roots[best].imag()));
    p *= Polynomial{re * re + im * im, -2.0 * re, 1.0};
  }
  return p;
}

double Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0.0;
  return c_[static_cast<std::size_t>(k)];
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::operator()(Complex s) const {
  Complex acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::operator()(double s) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (double& c : out.c_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] -= rhs.c_[k];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<double> out(lhs.c_.size() + rhs.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.c_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] += lhs.c_[i] * rhs.c_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

Polynomial& Polynomial::operator*=(double k) {
  for (double& c : c_) c *= k;
  trim();
  return *this;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

void Polynomial::trim() {
  const double cutoff = kTrimTolerance * max_abs_coeff();
  while (!c_.empty() && (std::abs(c_.back()) <= cutoff || c_.back() == 0.0)) c_.pop_back();
}

std::vector<Complex> Polynomial::roots() const {
  if (is_zero()) throw std::invalid_argument("roots of the zero polynomial are undefined");
  std::vector<Complex> out;
  // Exact factors of s are peeled off so they come back as exact zeros.
  std::size_t lead_zeros = 0;
  while (lead_zeros < c_.size() && c_[lead_zeros] == 0.0) ++lead_zeros;
  out.assign(lead_zeros, Complex(0.0, 0.0));
  const auto n = static_cast<Eigen::Index>(c_.size() - lead_zeros) - 1;
  if (n <= 0) return out;
  const double lead = c_.back();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    comp(k, n - 1) = -c_[lead_zeros + static_cast<std::size_t>(k)] / lead;
    if (k > 0) comp(k, k - 1) = 1.0;
  }
  balance(comp);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigenvalue solve failed");
  for (Eigen::Index k = 0; k < n; ++k) out.push_back(solver.eigenvalues()(k));
  return out;
}

Polynomial pow(const Polynomial& p, int n) {
  if (n < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial out = Polynomial::constant(1.0);
  for (int k = 0; k < n; ++k) out *= p;
  return out;
}

Division divide(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::invalid_argument("polynomial division by zero");
  Division result;
  if (num.is_zero() || num.degree() < den.degree()) {
    result.remainder = num;
    result.relative_remainder = num.is_zero() ? 0.0 : 1.0;
    return result;
  }
  std::vector<double> rem(num.coeffs().begin(), num.coeffs().end());
  const int dn = den.degree();
  const int nq = num.degree() - dn;
  std::vector<double> quot(static_cast<std::size_t>(nq) + 1, 0.0);
  for (int k = nq; k >= 0; --k) {
    const double q = rem[static_cast<std::size_t>(k + dn)] / den.leading();
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dn; ++j) rem[static_cast<std::size_t>(k + j)] -= q * den.coeff(j);
    rem[static_cast<std::size_t>(k + dn)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(dn));
  double rem_max = 0.0;
  for (double r : rem) rem_max = std::max(rem_max, std::abs(r));
  result.quotient = Polynomial(std::move(quot));
  // Trimming is relative to the remainder's own scale, so small residues survive.
  result.relative_remainder = rem_max / num.max_abs_coeff();
  result.remainder = Polynomial(std::move(rem));
  return result;
}

HurwitzResult is_hurwitz(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("is_hurwitz: zero polynomial");
  if (p.degree() == 0) return {true, std::numeric_limits<double>::infinity()};
  double max_re = -std::numeric_limits<double>::infinity();
  for (const Complex& z : p.roots()) max_re = std::max(max_re, z.real());
  return {max_re < 0.0, -max_re};
}

RootMatch match_roots(std::span<const Complex> a, std::span<const Complex> b,
                      double cluster_radius) {
  const std::size_t n = a.size() + b.size();
  std::vector<Complex> pts;
  pts.reserve(n);
  pts.insert(pts.end(), a.begin(), a.end());
  pts.insert(pts.end(), b.begin(), b.end());

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(pts[i] - pts[j]) <= cluster_radius) parent[find(i)] = find(j);
    }
  }

  struct Acc {
    Complex sum_a = 0.0, sum_b = 0.0;
    std::size_t na = 0, nb = 0;
  };
  std::vector<Acc> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    Acc& c = acc[find(i)];
    if (i < a.size()) {
      c.sum_a += pts[i];
      ++c.na;
    } else {
      c.sum_b += pts[i];
      ++c.nb;
    }
  }
  RootMatch out;
  out.counts_match = a.size() == b.size();
  for (const Acc& c : acc) {
    if (c.na == 0 && c.nb == 0) continue;
    ++out.clusters;
    if (c.na != c.nb) {
      out.counts_match = false;
      continue;
    }
    const Complex ca = c.sum_a / static_cast<double>(c.na);
    const Complex cb = c.sum_b / static_cast<double>(c.nb);
    out.max_centroid_error = std::max(out.max_centroid_error, std::abs(ca - cb));
  }
  return out;
}

}  // namespace ouc::poly
