#include "ouc/lti/interconnect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ouc/errors.hpp"
#include "ouc/poly/polynomial.hpp"

namespace ouc::lti {

using Complex = std::complex<double>;

StateSpace feedback_interconnect(const StateSpace& plant_in, const StateSpace& ctrl_in) {
  StateSpace p = plant_in;
  StateSpace c = ctrl_in;
  p.validate();
  c.validate();
  if (c.inputs() != p.outputs() || c.outputs() != p.inputs()) {
    throw std::invalid_argument("feedback_interconnect: controller dimensions do not match plant");
  }
  const int n = p.states();
  const int nc = c.states();
  const int m = p.inputs();
  const int k = p.outputs();
  const int l = p.disturbances();
  Eigen::MatrixXd g = p.G.cols() == l ? p.G : Eigen::MatrixXd::Zero(k, l);

  Eigen::MatrixXd ldc = Eigen::MatrixXd::Identity(m, m) - c.D * p.D;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(ldc);
  if (!lu.isInvertible()) throw AlgebraicLoopError("feedback_interconnect: I - Dc*D is singular");
  // u = Ux x + Uc xc + Ud d
  const Eigen::MatrixXd ux = lu.solve(c.D * p.C);
  const Eigen::MatrixXd uc = lu.solve(c.C);
  const Eigen::MatrixXd ud = lu.solve(c.D * g);
  // y = Yx x + Yc xc + Yd d
  const Eigen::MatrixXd yx = p.C + p.D * ux;
  const Eigen::MatrixXd yc = p.D * uc;
  const Eigen::MatrixXd yd = g + p.D * ud;

  StateSpace cl;
  cl.A.resize(n + nc, n + nc);
  cl.A << p.A + p.B * ux, p.B * uc, c.B * yx, c.A + c.B * yc;
  cl.B.resize(n + nc, l);
  cl.B << p.E + p.B * ud, c.B * yd;
  cl.C.resize(k + m, n + nc);
  cl.C << yx, yc, ux, uc;
  cl.D.resize(k + m, l);
  cl.D << yd, ud;
  cl.validate();
  return cl;
}

StateSpace state_feedback_loop(const StateSpace& plant_in, const Eigen::MatrixXd& k) {
  StateSpace p = plant_in;
  p.validate();
  if (k.rows() != p.inputs() || k.cols() != p.states()) {
    throw std::invalid_argument("state_feedback_loop: gain has wrong shape");
  }
  const int l = p.disturbances();
  Eigen::MatrixXd g = p.G.cols() == l ? p.G : Eigen::MatrixXd::Zero(p.outputs(), l);
  StateSpace cl;
  cl.A = p.A - p.B * k;
  cl.B = p.E;
  cl.C.resize(p.outputs() + p.inputs(), p.states());
  cl.C << p.C - p.D * k, -k;
  cl.D.resize(p.outputs() + p.inputs(), l);
  cl.D << g, Eigen::MatrixXd::Zero(p.inputs(), l);
  cl.validate();
  return cl;
}

Complex loop_determinant(const StateSpace& p, const poly::MatrixPolynomial& n, const poly::MatrixPolynomial& m,
                         Complex s) {
  const int ns = p.states();
  const int mu = p.inputs();
  if (n.rows() != mu || n.cols() != mu || m.rows() != mu || m.cols() != p.outputs()) {
    throw std::invalid_argument("loop_determinant: N, M shapes do not match plant");
  }
  const Eigen::MatrixXcd ms = m(s);
  Eigen::MatrixXcd big(ns + mu, ns + mu);
  Eigen::MatrixXcd sia = -p.A.cast<Complex>();
  sia.diagonal().array() += s;
  big << sia, -p.B.cast<Complex>(), -ms * p.C.cast<Complex>(), n(s) - ms * p.D.cast<Complex>();
  return big.fullPivLu().determinant();
}

namespace {

// f'(s)/f(s) for the loop determinant f, via Jacobi's formula.
Complex log_derivative(const StateSpace& p, const poly::MatrixPolynomial& n, const poly::MatrixPolynomial& m,
                       const poly::MatrixPolynomial& dn, const poly::MatrixPolynomial& dm, Complex s) {
  const int ns = p.states();
  const int mu = p.inputs();
  const Eigen::MatrixXcd ms = m(s);
  const Eigen::MatrixXcd dms = dm(s);
  Eigen::MatrixXcd big(ns + mu, ns + mu);
  Eigen::MatrixXcd sia = -p.A.cast<Complex>();
  sia.diagonal().array() += s;
  big << sia, -p.B.cast<Complex>(), -ms * p.C.cast<Complex>(), n(s) - ms * p.D.cast<Complex>();
  Eigen::MatrixXcd dbig = Eigen::MatrixXcd::Zero(ns + mu, ns + mu);
  dbig.topLeftCorner(ns, ns).setIdentity();
  dbig.bottomLeftCorner(mu, ns) = -dms * p.C.cast<Complex>();
  dbig.bottomRightCorner(mu, mu) = dn(s) - dms * p.D.cast<Complex>();
  return big.partialPivLu().solve(dbig).trace();
}

// Zeroth and first moments of the zeros inside |s - c| < r.
std::pair<Complex, Complex> moments(const StateSpace& p, const poly::MatrixPolynomial& n,
                                    const poly::MatrixPolynomial& m, const poly::MatrixPolynomial& dn,
                                    const poly::MatrixPolynomial& dm, Complex c, double r, int nodes) {
  Complex m0 = 0.0;
  Complex m1 = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / nodes);
    const Complex z = c + r * e;
    const Complex g = log_derivative(p, n, m, dn, dm, z) * r * e;
    m0 += g;
    m1 += z * g;
  }
  return {m0 / static_cast<double>(nodes), m1 / static_cast<double>(nodes)};
}

}  // namespace

DeterminantComparison compare_loop_determinant(const StateSpace& p, const poly::MatrixPolynomial& n,
                                               const poly::MatrixPolynomial& m,
                                               const std::vector<Complex>& reference, double link_radius) {
  constexpr int kNodes = 512;
  const auto dn = n.derivative();
  const auto dm = m.derivative();

  // Single-linkage groups of the reference points.
  const std::size_t np = reference.size();
  std::vector<std::size_t> parent(np);
  for (std::size_t i = 0; i < np; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = i + 1; j < np; ++j) {
      if (std::abs(reference[i] - reference[j]) <= link_radius) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(np, -1);
  for (std::size_t i = 0; i < np; ++i) {
    const std::size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(i);
  }

  DeterminantComparison out;
  out.degree = p.states() + p.inputs() * std::max(n.degree(), 0);
  out.counts_match = true;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    DeterminantCluster cl;
    Complex sum = 0.0;
    for (auto i : groups[g]) sum += reference[i];
    cl.reference_count = static_cast<int>(groups[g].size());
    cl.reference_centroid = sum / static_cast<double>(cl.reference_count);
    cl.center = cl.reference_centroid;
    double spread = 0.0;
    for (auto i : groups[g]) spread = std::max(spread, std::abs(reference[i] - cl.center));
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < np; ++i) {
      if (find(i) != find(groups[g].front())) gap = std::min(gap, std::abs(reference[i] - cl.center));
    }
    // Halfway between this group's edge and the nearest outsider.
    cl.radius = std::isfinite(gap) ? spread + 0.5 * (gap - spread) : std::max(2.0 * spread, 1.0);
    const auto [m0, m1] = moments(p, n, m, dn, dm, cl.center, cl.radius, kNodes);
    cl.count = m0.real();
    const double rounded = std::round(cl.count);
    if (std::abs(cl.count - rounded) > 1e-6 || static_cast<int>(rounded) != cl.reference_count ||
        std::abs(m0.imag()) > 1e-6) {
      out.counts_match = false;
    }
    cl.centroid = rounded > 0 ? m1 / rounded : Complex(0.0);
    out.max_centroid_error = std::max(out.max_centroid_error, std::abs(cl.centroid - cl.reference_centroid));
    out.clusters.push_back(cl);
  }
  // One disc around everything: no determinant zeros may hide outside the groups.
  Complex mid = 0.0;
  for (const auto& z : reference) mid += z;
  if (np > 0) mid /= static_cast<double>(np);
  double big = 1.0;
  for (const auto& z : reference) big = std::max(big, std::abs(z - mid));
  out.total_count = moments(p, n, m, dn, dm, mid, 2.0 * big, 4 * kNodes).first.real();
  if (std::abs(out.total_count - out.degree) > 1e-6 || static_cast<int>(np) != out.degree) out.counts_match = false;
  return out;
}

}  // namespace ouc::lti
