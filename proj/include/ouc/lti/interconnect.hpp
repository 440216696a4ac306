#pragma once

#include <complex>
#include <vector>

#include "ouc/lti/state_space.hpp"
#include "ouc/poly/matrix_polynomial.hpp"

namespace ouc::lti {

/// Closes u = controller(y) around the plant. The result has state [x; xc],
/// input d (through plant E, G) and output [y; u].
/// Throws AlgebraicLoopError when I - Dc*D is singular.
StateSpace feedback_interconnect(const StateSpace& plant, const StateSpace& controller);

/// Closes u = -K x. Input d, output [y; u].
StateSpace state_feedback_loop(const StateSpace& plant, const Eigen::MatrixXd& k);

/// det [[sI - A, -B], [-M(s) C, N(s) - M(s) D]] for the polynomial controller N u = M y.
std::complex<double> loop_determinant(const StateSpace& plant, const poly::MatrixPolynomial& n,
                                      const poly::MatrixPolynomial& m, std::complex<double> s);

/// Zeros of the determinant inside one disc, from contour integrals of
/// f'/f = trace(B(s)^-1 B'(s)) (argument principle). Unlike rooting the
/// expanded polynomial, count and centroid stay well conditioned for
/// clustered or repeated zeros.
struct DeterminantCluster {
  std::complex<double> center;
  double radius = 0.0;
  int reference_count = 0;            ///< eigenvalues grouped into this disc
  double count = 0.0;                 ///< winding number (ideally an integer)
  std::complex<double> reference_centroid;
  std::complex<double> centroid;      ///< mean of the determinant zeros in the disc
};

struct DeterminantComparison {
  std::vector<DeterminantCluster> clusters;
  /// n_plant + m * deg N: the determinant's degree when N has an invertible leading coefficient.
  int degree = 0;
  /// Winding number over a disc enclosing every reference point.
  double total_count = 0.0;
  bool counts_match = false;
  double max_centroid_error = 0.0;
};

/// Groups `reference` (typically closed-loop eigenvalues) by single linkage at
/// `link_radius`, draws a disc around each group halfway to its neighbours and
/// compares zero counts and centroids of the loop determinant with the group.
DeterminantComparison compare_loop_determinant(const StateSpace& plant, const poly::MatrixPolynomial& n,
                                               const poly::MatrixPolynomial& m,
                                               const std::vector<std::complex<double>>& reference,
                                               double link_radius);

}  // namespace ouc::lti
