#include "ouc/lti/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "ouc/errors.hpp"

namespace ouc::lti {

SimTrace simulate(const StateSpace& ss_in, const waves::DisturbanceSpec& spec, double T, double h,
                  const SimOptions& options) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("simulate: step h must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("simulate: horizon T must be >= 0");
  StateSpace ss = ss_in;
  ss.validate();
  spec.validate();
  const int n = ss.states();
  const int l = ss.inputs();
  if (!spec.frequencies.empty() && spec.channels() != l) {
    throw std::invalid_argument("simulate: disturbance channel count does not match system input");
  }
  const auto steps = static_cast<Eigen::Index>(std::llround(std::floor(T / h + 1e-9)));
  const std::size_t nf = spec.size();

  // Per-harmonic exact discretization: expm([[A, B Cw], [0, S]] h) gives
  // x(t+h) = Phi x(t) + Gamma_j w_j(t) for that harmonic's exosystem state w_j.
  Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(n, n);
  if (n > 0) phi = (ss.A * h).exp();
  // Columns [cos block | sin block]; the w = 0 exosystem is the constant cos(0 t).
  const auto nfi = static_cast<Eigen::Index>(nf);
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, 2 * nfi);
  Eigen::MatrixXd dre(l, nfi);
  Eigen::MatrixXd dim(l, nfi);
  for (std::size_t j = 0; j < nf; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const double w = spec.frequencies[j];
    dre.col(jj) = spec.amplitudes[j].real();
    dim.col(jj) = spec.amplitudes[j].imag();
    if (n == 0) continue;
    const int q = w == 0.0 ? 1 : 2;
    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + q, n + q);
    aug.topLeftCorner(n, n) = ss.A;
    aug.block(0, n, n, 1) = ss.B * dre.col(jj);
    if (q == 2) {
      aug.block(0, n + 1, n, 1) = -ss.B * dim.col(jj);
      aug(n, n + 1) = -w;
      aug(n + 1, n) = w;
    }
    const Eigen::MatrixXd e = (aug * h).exp();
    gamma.col(jj) = e.block(0, n, n, 1);
    if (q == 2) gamma.col(nfi + jj) = e.block(0, n + 1, n, 1);
  }

  SimTrace tr;
  tr.h = h;
  tr.t.resize(steps + 1);
  tr.y.resize(steps + 1, ss.outputs());
  tr.d.resize(steps + 1, l);
  if (options.record_states) tr.x.resize(steps + 1, n);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (options.x0.size() > 0) {
    if (options.x0.size() != n) throw std::invalid_argument("simulate: initial state has wrong size");
    x = options.x0;
  }
  Eigen::VectorXd cs(2 * nfi);
  for (Eigen::Index k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * h;
    for (Eigen::Index j = 0; j < nfi; ++j) {
      const double arg = spec.frequencies[static_cast<std::size_t>(j)] * t;
      cs(j) = std::cos(arg);
      cs(nfi + j) = std::sin(arg);
    }
    const Eigen::VectorXd d = dre * cs.head(nfi) - dim * cs.tail(nfi);
    tr.t(k) = t;
    tr.d.row(k) = d.transpose();
    tr.y.row(k) = (ss.C * x + ss.D * d).transpose();
    if (options.record_states) tr.x.row(k) = x.transpose();
    if (k == steps) break;

    Eigen::VectorXd next = phi * x + gamma * cs;
    if (!next.allFinite() || (n > 0 && next.cwiseAbs().maxCoeff() > 1e150)) {
      throw DivergenceError("simulate: state diverged", t + h);
    }
    x = std::move(next);
  }
  return tr;
}

}  // namespace ouc::lti
