#include "ouc/synth/ouc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ouc/errors.hpp"
#include "ouc/lti/interconnect.hpp"
#include "ouc/lti/realize.hpp"
#include "ouc/poly/complex_linalg.hpp"

namespace ouc::synth {

using Complex = std::complex<double>;

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Eigen::MatrixXcd eval_or_abort(const poly::RationalMatrix& w, double omega, const char* step) {
  try {
    return w(Complex(0.0, omega));
  } catch (const PoleError&) {
    throw SynthesisError(step, "transfer matrix has a pole at i*" + num(omega));
  }
}

}  // namespace

void CostWeights::validate() const {
  for (double v : {alpha, beta, gamma1, gamma2}) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("cost weights must be finite and nonnegative");
  }
}

Eigen::Matrix4d CostWeights::F_hat() const {
  return Eigen::Vector4d(alpha, beta, gamma1, gamma2).asDiagonal();
}

Eigen::MatrixXcd compute_pi(const vessel::PlantModel& plant, const CostWeights& w, double omega) {
  const Eigen::MatrixXcd W = eval_or_abort(plant.W_yu0, omega, "compute_pi");
  Eigen::MatrixXcd pi = W.adjoint() * w.Fyy().cast<Complex>() * W;
  pi += w.Fuu().cast<Complex>();
  // Exact Hermitian symmetry; the off-diagonal pair is computed once.
  pi(1, 0) = std::conj(pi(0, 1));
  pi(0, 0) = pi(0, 0).real();
  pi(1, 1) = pi(1, 1).real();
  return pi;
}

std::vector<double> validation_grid(const std::vector<double>& freqs) {
  std::vector<double> grid;
  constexpr int kPoints = 200;
  for (int k = 0; k < kPoints; ++k) grid.push_back(std::pow(10.0, -3.0 + 6.0 * k / (kPoints - 1)));
  grid.insert(grid.end(), freqs.begin(), freqs.end());
  return grid;
}

FrequencyCondition frequency_condition_check(const vessel::PlantModel& plant, const CostWeights& w,
                                             const std::vector<double>& freqs) {
  FrequencyCondition out;
  out.epsilon = std::numeric_limits<double>::infinity();
  for (double omega : validation_grid(freqs)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(compute_pi(plant, w, omega), Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    if (lo < out.epsilon) {
      out.epsilon = lo;
      out.omega_at_min = omega;
    }
  }
  out.passed = out.epsilon > 0.0;
  return out;
}

std::vector<double> with_zero_frequency(const std::vector<double>& freqs) {
  std::vector<double> out;
  bool has_zero = false;
  for (double f : freqs) {
    if (!std::isfinite(f) || f < 0.0) throw std::invalid_argument("frequencies must be finite and >= 0");
    if (std::find(out.begin(), out.end(), f) != out.end()) throw std::invalid_argument("repeated frequency");
    has_zero = has_zero || f == 0.0;
    out.push_back(f);
  }
  if (!has_zero) out.push_back(0.0);
  return out;
}

std::vector<InterpolationTarget> compute_targets(const vessel::PlantModel& plant, const CostWeights& w,
                                                 const std::vector<double>& freqs) {
  std::vector<InterpolationTarget> out;
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    const double omega = freqs[j];
    if (!std::isfinite(omega) || omega < 0.0) throw std::invalid_argument("compute_targets: bad frequency");
    for (std::size_t k = 0; k < j; ++k) {
      if (freqs[k] == omega) throw std::invalid_argument("compute_targets: repeated frequency");
    }
    InterpolationTarget t;
    t.omega = omega;
    t.Pi = compute_pi(plant, w, omega);
    const Eigen::MatrixXcd W = eval_or_abort(plant.W_yu0, omega, "compute_targets");
    const Eigen::MatrixXcd Wd = eval_or_abort(plant.W_yd0, omega, "compute_targets");
    const Eigen::MatrixXcd rhs = -(W.adjoint() * w.Fyy().cast<Complex>() * Wd);
    try {
      t.R = poly::solve_complex_linear(t.Pi, rhs).x;
    } catch (const IllConditionedError& e) {
      throw SynthesisError("compute_targets", std::string("Pi is singular at i*") + num(omega) + ": " + e.what());
    }
    if (omega == 0.0) t.R = t.R.real().cast<Complex>();
    out.push_back(std::move(t));
  }
  return out;
}

Polynomial default_rho(int deg_delta, int p, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("default_rho: mu must be positive");
  const int k = deg_delta + 2 * p + 1;
  return poly::pow(Polynomial{mu, 1.0}, k) * std::pow(mu, -k);
}

MatrixPolynomial solve_r(const vessel::PlantModel& plant, const std::vector<InterpolationTarget>& targets,
                         const Polynomial& rho) {
  const Polynomial& den = plant.W_yu0.denominator();
  const auto zeros = std::count_if(targets.begin(), targets.end(), [](const auto& t) { return t.omega == 0.0; });
  if (zeros != 1) throw SynthesisError("solve_r", "exactly one target must sit at zero frequency");
  const int p = static_cast<int>(targets.size()) - 1;
  const int deg = 2 * p;
  if (rho.degree() < deg + den.degree()) {
    throw SynthesisError("solve_r", "deg rho = " + std::to_string(rho.degree()) + " is below 2p + deg Delta = " +
                                        std::to_string(deg + den.degree()));
  }
  double omega_max = 0.0;
  for (const auto& t : targets) omega_max = std::max(omega_max, t.omega);
  if (omega_max == 0.0) omega_max = 1.0;

  // Values r0_j the polynomial must take at i w_j.
  std::vector<Eigen::MatrixXcd> r0;
  for (const auto& t : targets) {
    const Complex s(0.0, t.omega);
    const Eigen::MatrixXcd Wd = eval_or_abort(plant.W_yd0, t.omega, "solve_r");
    const Eigen::MatrixXcd want = (rho(s) / den(s)) * t.R;
    const Eigen::MatrixXcd v = want * poly::pseudo_inverse(Wd);
    // The pseudo-inverse only reproduces R_j when it lies in the row space of W_yd0.
    const double miss = (v * Wd - want).norm();
    if (!(miss <= 1e-8 * want.norm() + 1e-14)) {
      throw SynthesisError("solve_r", "interpolation condition cannot be met at i*" + num(t.omega) +
                                          " (W_yd0 rank deficient, mismatch " + num(miss) + ")");
    }
    r0.push_back(v);
  }

  // Real (2p+1)-square system in the scaled variable s / omega_max.
  const int n = deg + 1;
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, n);
  int row = 0;
  std::vector<std::pair<std::size_t, bool>> rows;  // (target, imaginary part?)
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const Complex z(0.0, targets[j].omega / omega_max);
    const int parts = targets[j].omega == 0.0 ? 1 : 2;
    for (int part = 0; part < parts; ++part) {
      Complex zk = 1.0;
      for (int k = 0; k < n; ++k) {
        V(row, k) = part == 0 ? zk.real() : zk.imag();
        zk *= z;
      }
      rows.emplace_back(j, part == 1);
      ++row;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
  if (lu.rank() < n) throw SynthesisError("solve_r", "coefficient system is rank deficient (repeated frequencies?)");

  MatrixPolynomial r(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Eigen::VectorXd rhs(n);
      for (int i = 0; i < n; ++i) {
        const Complex v = r0[rows[static_cast<std::size_t>(i)].first](a, b);
        rhs(i) = rows[static_cast<std::size_t>(i)].second ? v.imag() : v.real();
      }
      const Eigen::VectorXd c = lu.solve(rhs);
      const double res = (V * c - rhs).norm();
      if (!(res <= 1e-9 * std::max(1.0, rhs.norm()))) {
        throw SynthesisError("solve_r", "coefficient solve residual " + num(res) + " exceeds 1e-9");
      }
      std::vector<double> coeffs(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) coeffs[static_cast<std::size_t>(k)] = c(k) * std::pow(omega_max, -k);
      r(a, b) = Polynomial(std::move(coeffs));
    }
  }
  return r;
}

std::string to_string(Status s) { return s == Status::Optimal ? "OPTIMAL" : "FAILED"; }

OucController assemble_controller(const vessel::PlantModel& plant, const MatrixPolynomial& r, const Polynomial& rho) {
  const Polynomial& den = plant.W_yu0.denominator();
  OucController c;
  c.r = r;
  c.rho = rho;
  c.M = den * r;
  // M = D r, so the exact quotient of M W_yu0-numerators by D is r times the
  // numerators. Long division by D would amplify rounding for high-degree r;
  // the cancellation is instead verified on the product.
  const MatrixPolynomial mw = c.M * plant.W_yu0.numerators();
  c.N = r * plant.W_yu0.numerators();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Polynomial rem = mw(i, j) - den * c.N(i, j);
      const double scale = mw(i, j).max_abs_coeff();
      const double rel = scale == 0.0 ? 0.0 : rem.max_abs_coeff() / scale;
      if (rel > 1e-9) {
        throw SynthesisError("assemble", "denominator does not cancel in N (relative remainder " + num(rel) + ")");
      }
    }
  }
  c.N += MatrixPolynomial::scalar_identity(2, rho);
  const int dn = c.N.degree();
  if (c.M.degree() > dn) throw SynthesisError("assemble", "deg M exceeds deg N; controller is not proper");
  if (Eigen::FullPivLU<Eigen::MatrixXd>(c.N.coefficient(dn)).rank() < 2) {
    throw SynthesisError("assemble", "leading coefficient matrix of N is singular; controller is not proper");
  }
  return c;
}

lti::StateSpace controller_state_space(const OucController& ctrl) { return lti::realize_left_mfd(ctrl.N, ctrl.M); }

Certificate verify_certificate(const vessel::PlantModel& plant, const OucController& ctrl,
                               const std::vector<InterpolationTarget>& targets, const CostWeights& w) {
  Certificate cert;
  cert.rho_hurwitz = !ctrl.rho.is_zero() && poly::is_hurwitz(ctrl.rho).hurwitz;
  if (!cert.rho_hurwitz) cert.diagnostics.push_back("rho is not Hurwitz");

  lti::StateSpace cl;
  bool have_loop = false;
  try {
    cl = lti::feedback_interconnect(vessel::plant_state_space(plant), controller_state_space(ctrl));
    have_loop = true;
    const auto st = lti::is_stable(cl);
    cert.stability_margin = st.margin;
    cert.stable = st.margin > kStabilityThreshold;
    if (!cert.stable) {
      cert.diagnostics.push_back("closed loop not stable: max Re(eig) = " + num(-st.margin));
    }
  } catch (const std::exception& e) {
    cert.diagnostics.push_back(std::string("closed loop could not be formed: ") + e.what());
  }

  cert.interpolation_ok = have_loop;
  for (const auto& t : targets) {
    cert.frequencies.push_back(t.omega);
    double res = std::numeric_limits<double>::infinity();
    if (have_loop) {
      try {
        const Eigen::MatrixXcd wud = cl.response(Complex(0.0, t.omega)).bottomRows(2);
        res = (wud - t.R).norm();
      } catch (const PoleError&) {
      }
    }
    cert.residuals.push_back(res);
    if (!(res <= kInterpolationTolerance)) {
      cert.interpolation_ok = false;
      cert.diagnostics.push_back("interpolation residual " + num(res) + " at w = " + num(t.omega));
    }
  }

  std::vector<double> freqs;
  for (const auto& t : targets) freqs.push_back(t.omega);
  const auto fc = frequency_condition_check(plant, w, freqs);
  cert.pi_min_eig = fc.epsilon;
  cert.pi_ok = fc.passed;
  if (!cert.pi_ok) cert.diagnostics.push_back("Pi not positive definite at w = " + num(fc.omega_at_min));

  const bool ok = cert.stable && cert.interpolation_ok && cert.pi_ok;
  cert.status = ok ? Status::Optimal : Status::Failed;
  return cert;
}

OucController synthesize(const vessel::PlantModel& plant, const CostWeights& w, const std::vector<double>& freqs,
                         const SynthesisOptions& options) {
  w.validate();
  std::vector<double> all;
  try {
    all = with_zero_frequency(freqs);
  } catch (const std::invalid_argument& e) {
    throw SynthesisError("frequencies", e.what());
  }
  const auto fc = frequency_condition_check(plant, w, all);
  if (!fc.passed) {
    throw SynthesisError("frequency condition", "min eig Pi = " + num(fc.epsilon) + " at w = " +
                                                    num(fc.omega_at_min) + "; the problem is ill-posed");
  }
  const auto targets = compute_targets(plant, w, all);
  const int p = static_cast<int>(all.size()) - 1;
  const Polynomial rho =
      options.rho ? *options.rho : default_rho(plant.W_yu0.denominator().degree(), p, options.mu);
  const MatrixPolynomial r = solve_r(plant, targets, rho);
  OucController ctrl = assemble_controller(plant, r, rho);
  ctrl.frequencies = all;
  ctrl.certificate = verify_certificate(plant, ctrl, targets, w);
  return ctrl;
}

Eigen::VectorXd r_coefficients(const MatrixPolynomial& r, int degree) {
  Eigen::VectorXd v(r.rows() * r.cols() * (degree + 1));
  int k = 0;
  for (int i = 0; i < r.rows(); ++i) {
    for (int j = 0; j < r.cols(); ++j) {
      for (int d = 0; d <= degree; ++d) v(k++) = r(i, j).coeff(d);
    }
  }
  return v;
}

}  // namespace ouc::synth
