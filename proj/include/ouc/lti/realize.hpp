#pragma once

#include "ouc/lti/state_space.hpp"
#include "ouc/poly/matrix_polynomial.hpp"
#include "ouc/poly/rational_matrix.hpp"

namespace ouc::lti {

inline constexpr double kMinimalTolerance = 1e-9;

/// Realization of a proper rational matrix. Builds one canonical block per
/// row (observer form) or per column (controller form), whichever is smaller,
/// then removes uncontrollable and unobservable modes at `tol`.
/// Throws ImproperError for improper W.
StateSpace realize(const poly::RationalMatrix& w, double tol = kMinimalTolerance);

/// Canonical block realization without reduction.
StateSpace realize_canonical(const poly::RationalMatrix& w);

/// Orthogonal staircase removal of uncontrollable, then unobservable, modes.
/// Rank decisions use tol * max(1, ||A||, ||B||) (resp. ||C||). E and G are
/// carried along; E counts as an input for controllability.
StateSpace minimal(const StateSpace& ss, double tol = kMinimalTolerance);

/// Realization of N(s)^-1 M(s) (left matrix fraction). The leading
/// coefficient matrix of N must be invertible and deg M <= deg N.
StateSpace realize_left_mfd(const poly::MatrixPolynomial& n, const poly::MatrixPolynomial& m);

}  // namespace ouc::lti
