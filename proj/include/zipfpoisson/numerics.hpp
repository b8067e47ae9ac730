#pragma once

#include <functional>

namespace zipfpoisson {

inline constexpr double kDefaultScalarTol = 1e-12;

/// Closed interval handed to the scalar kernels. Endpoints must be finite
/// and strictly ordered.
struct Bracket {
  double lo;
  double hi;
  Bracket(double lo, double hi);
};

/// Outcome of a scalar root find or minimization.
struct ScalarResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// ln(k!), exact for every representable k. Summation up to k = 20 (where
/// k! fits a double exactly), lgamma beyond. Throws std::domain_error for
/// negative k.
double log_factorial(int k);

/// Root of f inside the bracket: bisection to width <= tol, then a short
/// guarded secant polish to push |f(x)| toward machine level. Requires a
/// sign change across the bracket (BracketError otherwise); non-finite f
/// values raise EvaluationError.
ScalarResult find_root(const std::function<double(double)>& f, Bracket bracket,
                       double tol = kDefaultScalarTol);

/// Golden-section minimization of a unimodal f over the bracket, run until
/// the bracket width drops below tol. Non-finite f values raise
/// EvaluationError.
ScalarResult minimize_scalar(const std::function<double(double)>& f,
                             Bracket bracket, double tol = kDefaultScalarTol);

}  // namespace zipfpoisson
