#include "ouc/lti/state_space.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "ouc/errors.hpp"

namespace ouc::lti {

namespace {

void check(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("state space: ") + what);
}

Eigen::MatrixXcd transfer(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& c,
                          const Eigen::MatrixXd& d, std::complex<double> s) {
  Eigen::MatrixXcd out = d.cast<std::complex<double>>();
  if (a.rows() == 0 || b.cols() == 0) return out;
  Eigen::MatrixXcd sa = -a.cast<std::complex<double>>();
  sa.diagonal().array() += s;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(sa);
  if (!lu.isInvertible()) throw PoleError(s);
  out += c.cast<std::complex<double>>() * lu.solve(b.cast<std::complex<double>>());
  return out;
}

}  // namespace

void StateSpace::validate() {
  const Eigen::Index n = A.rows();
  if (E.size() == 0 && E.cols() == 0) E.resize(n, 0);
  if (G.size() == 0 && G.cols() == 0) G.resize(C.rows(), 0);
  std::as_const(*this).validate();
}

void StateSpace::validate() const {
  const Eigen::Index n = A.rows();
  check(A.cols() == n, "A must be square");
  check(B.rows() == n, "B row count must equal state dimension");
  check(C.cols() == n, "C column count must equal state dimension");
  check(D.rows() == C.rows() && D.cols() == B.cols(), "D must be outputs x inputs");
  check(E.rows() == n || (E.size() == 0 && E.cols() == 0), "E row count must equal state dimension");
  check(G.rows() == C.rows() || (G.size() == 0 && G.cols() == 0), "G row count must equal output dimension");
  check(E.cols() == G.cols() || G.cols() == 0, "E and G disturbance counts differ");
  check(A.allFinite() && B.allFinite() && C.allFinite() && D.allFinite() && E.allFinite() && G.allFinite(),
        "non-finite entries");
}

Eigen::MatrixXcd StateSpace::response(std::complex<double> s) const { return transfer(A, B, C, D, s); }

Eigen::MatrixXcd StateSpace::disturbance_response(std::complex<double> s) const {
  Eigen::MatrixXd g = G;
  if (g.cols() != E.cols()) g = Eigen::MatrixXd::Zero(C.rows(), E.cols());
  return transfer(A, E, C, g, s);
}

StabilityReport is_stable(const Eigen::MatrixXd& a) {
  StabilityReport out;
  if (a.rows() == 0) {
    out.stable = true;
    out.margin = std::numeric_limits<double>::infinity();
    return out;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("is_stable: eigenvalue solve failed");
  out.eigenvalues = solver.eigenvalues();
  const double max_re = out.eigenvalues.real().maxCoeff();
  out.margin = -max_re;
  // Eigenvalues within roundoff of the axis (an exact integrator) count as marginal.
  out.stable = max_re < -kAxisTolerance * std::max(1.0, a.norm());
  return out;
}

StabilityReport is_stable(const StateSpace& ss) { return is_stable(ss.A); }

}  // namespace ouc::lti
