#include "ouc/lti/riccati.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ouc/errors.hpp"
#include "ouc/lti/state_space.hpp"

namespace ouc::lti {

namespace {

using Complex = std::complex<double>;
using MatC = Eigen::MatrixXcd;

// Plane rotation with real c, complex s: [c s; -conj(s) c] [f; g] = [r; 0].
void lartg(Complex f, Complex g, double& c, Complex& s) {
  if (g == Complex(0.0)) {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (f == Complex(0.0)) {
    c = 0.0;
    s = std::conj(g) / std::abs(g);
    return;
  }
  const double af = std::abs(f);
  const double nrm = std::hypot(af, std::abs(g));
  c = af / nrm;
  s = (f / af) * std::conj(g) / nrm;
}

// x <- c x + s y,  y <- c y - conj(s) x
void rot(Eigen::Ref<Eigen::VectorXcd> x, Eigen::Ref<Eigen::VectorXcd> y, double c, Complex s) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Complex tmp = c * x(i) + s * y(i);
    y(i) = c * y(i) - std::conj(s) * x(i);
    x(i) = tmp;
  }
}

// Swaps the adjacent diagonal entries k, k+1 of upper-triangular t, updating q.
void swap_adjacent(MatC& t, MatC& q, Eigen::Index k) {
  const Eigen::Index n = t.rows();
  const Complex t11 = t(k, k);
  const Complex t22 = t(k + 1, k + 1);
  double c = 0.0;
  Complex s;
  lartg(t(k, k + 1), t22 - t11, c, s);
  if (k + 2 < n) {
    Eigen::VectorXcd r1 = t.row(k).tail(n - k - 2).transpose();
    Eigen::VectorXcd r2 = t.row(k + 1).tail(n - k - 2).transpose();
    rot(r1, r2, c, s);
    t.row(k).tail(n - k - 2) = r1.transpose();
    t.row(k + 1).tail(n - k - 2) = r2.transpose();
  }
  if (k > 0) {
    Eigen::VectorXcd c1 = t.col(k).head(k);
    Eigen::VectorXcd c2 = t.col(k + 1).head(k);
    rot(c1, c2, c, std::conj(s));
    t.col(k).head(k) = c1;
    t.col(k + 1).head(k) = c2;
  }
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
  Eigen::VectorXcd q1 = q.col(k);
  Eigen::VectorXcd q2 = q.col(k + 1);
  rot(q1, q2, c, std::conj(s));
  q.col(k) = q1;
  q.col(k + 1) = q2;
}

double residual_norm(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& q,
                     const Eigen::MatrixXd& r, const Eigen::MatrixXd& p) {
  return care_residual(a, b, q, r, p).norm();
}

}  // namespace

Eigen::MatrixXd care_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& q,
                              const Eigen::MatrixXd& r, const Eigen::MatrixXd& p) {
  const Eigen::MatrixXd rinv_bt = r.ldlt().solve(b.transpose());
  return a.transpose() * p + p * a - p * b * rinv_bt * p + q;
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q) {
  const Eigen::Index n = a.rows();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  Eigen::ComplexSchur<MatC> schur(a.cast<Complex>());
  const MatC& t = schur.matrixT();
  const MatC& u = schur.matrixU();
  // With A = U T U*, Y = U* X U solves T* Y + Y T = -U* Q U.
  const MatC c = -(u.adjoint() * q.cast<Complex>() * u);
  const MatC th = t.adjoint();
  MatC y = MatC::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXcd rhs = c.col(j);
    for (Eigen::Index k = 0; k < j; ++k) rhs -= t(k, j) * y.col(k);
    MatC lhs = th;
    lhs.diagonal().array() += t(j, j);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(lhs(i, i)) == 0.0) throw RiccatiError("solve_lyapunov: singular Lyapunov operator");
    }
    y.col(j) = lhs.triangularView<Eigen::Lower>().solve(rhs);
  }
  Eigen::MatrixXd x = (u * y * u.adjoint()).real();
  return 0.5 * (x + x.transpose());
}

CareSolution solve_care(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& q,
                        const Eigen::MatrixXd& r) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  if (a.cols() != n || b.rows() != n || q.rows() != n || q.cols() != n || r.rows() != m || r.cols() != m) {
    throw std::invalid_argument("solve_care: inconsistent dimensions");
  }
  Eigen::LLT<Eigen::MatrixXd> rllt(r);
  if (rllt.info() != Eigen::Success) throw RiccatiError("solve_care: R is not positive definite");
  CareSolution out;
  if (n == 0) {
    out.P.resize(0, 0);
    out.K.resize(m, 0);
    out.margin = std::numeric_limits<double>::infinity();
    return out;
  }
  const Eigen::MatrixXd g = b * rllt.solve(b.transpose());

  MatC h(2 * n, 2 * n);
  h << a.cast<Complex>(), -g.cast<Complex>(), -q.cast<Complex>(), -a.transpose().cast<Complex>();
  Eigen::ComplexSchur<MatC> schur(h);
  if (schur.info() != Eigen::Success) throw RiccatiError("solve_care: Schur decomposition failed");
  MatC t = schur.matrixT();
  MatC u = schur.matrixU();
  const double hscale = h.cwiseAbs().maxCoeff();
  Eigen::Index placed = 0;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    const double re = t(i, i).real();
    if (std::abs(re) <= 1e-13 * hscale) {
      throw RiccatiError("solve_care: Hamiltonian has eigenvalues on the imaginary axis");
    }
    if (re < 0.0) {
      for (Eigen::Index k = i - 1; k >= placed; --k) swap_adjacent(t, u, k);
      ++placed;
    }
  }
  if (placed != n) throw RiccatiError("solve_care: stable subspace has the wrong dimension");
  const MatC u11 = u.topLeftCorner(n, n);
  const MatC u21 = u.bottomLeftCorner(n, n);
  Eigen::FullPivLU<MatC> lu(u11);
  if (!lu.isInvertible()) throw RiccatiError("solve_care: no stabilizing solution (U11 singular)");
  Eigen::MatrixXd p = (u21 * lu.inverse()).real();
  p = 0.5 * (p + p.transpose());

  // Newton-Kleinman refinement from the Schur solution.
  double res = residual_norm(a, b, q, r, p);
  for (int it = 0; it < 20; ++it) {
    const Eigen::MatrixXd k = rllt.solve(b.transpose() * p);
    const Eigen::MatrixXd ac = a - b * k;
    if (!is_stable(ac).stable) break;
    const Eigen::MatrixXd next = solve_lyapunov(ac, q + k.transpose() * r * k);
    const double next_res = residual_norm(a, b, q, r, next);
    if (!(next_res < res)) break;
    p = next;
    res = next_res;
  }

  out.P = p;
  out.K = rllt.solve(b.transpose() * p);
  out.residual = res;
  const auto st = is_stable(Eigen::MatrixXd(a - b * out.K));
  out.margin = st.margin;
  if (!st.stable) throw RiccatiError("solve_care: closed loop A - B K is not Hurwitz");
  // Scale for the residual test: ||Q||, or the size of the individual terms when Q vanishes.
  const double term_scale = 2.0 * (a.norm() * p.norm()) + (p * g * p).norm();
  const double tol = 1e-8 * q.norm() + 1e-13 * term_scale;
  if (!(res <= tol)) {
    throw RiccatiError("solve_care: residual " + std::to_string(res) + " exceeds tolerance");
  }
  return out;
}

}  // namespace ouc::lti
