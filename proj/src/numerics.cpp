#include "zipfpoisson/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "zipfpoisson/errors.hpp"

namespace zipfpoisson {

namespace {

constexpr int kMaxBisectIterations = 400;
constexpr int kMaxSecantPolish = 12;
constexpr int kMaxGoldenIterations = 400;

double checked_eval(const std::function<double(double)>& f, double x) {
  const double fx = f(x);
  if (!std::isfinite(fx)) {
    throw EvaluationError("function value is not finite at x = " +
                          std::to_string(x));
  }
  return fx;
}

}  // namespace

Bracket::Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::domain_error("bracket endpoints must be finite");
  }
  if (!(lo < hi)) {
    throw std::domain_error("bracket requires lo < hi");
  }
}

double log_factorial(int k) {
  if (k < 0) {
    throw std::domain_error("log_factorial requires k >= 0");
  }
  if (k <= 20) {
    // 20! = 2432902008176640000 is the largest factorial a double holds
    // exactly, so the summed logs agree with ln of the exact product.
    double sum = 0.0;
    for (int i = 2; i <= k; ++i) {
      sum += std::log(static_cast<double>(i));
    }
    return sum;
  }
  return std::lgamma(static_cast<double>(k) + 1.0);
}

ScalarResult find_root(const std::function<double(double)>& f, Bracket bracket,
                       double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::domain_error("find_root requires tol > 0");
  }
  double lo = bracket.lo;
  double hi = bracket.hi;
  double flo = checked_eval(f, lo);
  double fhi = checked_eval(f, hi);
  if (flo == 0.0) return {lo, 0.0, 0, true};
  if (fhi == 0.0) return {hi, 0.0, 0, true};
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw BracketError("find_root requires a sign change across the bracket");
  }

  int iterations = 0;
  while ((hi - lo) > tol && iterations < kMaxBisectIterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point floor
    const double fmid = checked_eval(f, mid);
    ++iterations;
    if (fmid == 0.0) return {mid, 0.0, iterations, true};
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }

  double x = (std::abs(flo) <= std::abs(fhi)) ? lo : hi;
  double fx = (std::abs(flo) <= std::abs(fhi)) ? flo : fhi;

  // Secant polish inside the final bracket. Near a simple root this drives
  // |f| to the evaluation noise floor; any step that leaves the bracket or
  // fails to improve stops the polish.
  for (int i = 0; i < kMaxSecantPolish && fx != 0.0; ++i) {
    const double denom = fhi - flo;
    if (denom == 0.0) break;
    const double s = hi - fhi * (hi - lo) / denom;
    if (!(s > lo && s < hi)) break;
    const double fs = f(s);
    if (!std::isfinite(fs)) break;
    ++iterations;
    if (std::abs(fs) >= std::abs(fx)) break;
    x = s;
    fx = fs;
    if (fs == 0.0) break;
    if ((fs > 0.0) == (flo > 0.0)) {
      lo = s;
      flo = fs;
    } else {
      hi = s;
      fhi = fs;
    }
  }

  const bool converged = (hi - lo) <= tol || std::abs(fx) <= tol;
  return {x, fx, iterations, converged};
}

ScalarResult minimize_scalar(const std::function<double(double)>& f,
                             Bracket bracket, double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::domain_error("minimize_scalar requires tol > 0");
  }
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double invphi2 = (3.0 - std::sqrt(5.0)) / 2.0;

  double a = bracket.lo;
  double b = bracket.hi;
  double h = b - a;
  double c = a + invphi2 * h;
  double d = a + invphi * h;
  double fc = checked_eval(f, c);
  double fd = checked_eval(f, d);

  int iterations = 0;
  while (h > tol && iterations < kMaxGoldenIterations) {
    ++iterations;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      h = b - a;
      c = a + invphi2 * h;
      fc = checked_eval(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = b - a;
      d = a + invphi * h;
      fd = checked_eval(f, d);
    }
    if (c >= d) break;  // interval at floating-point floor
  }

  const double x = 0.5 * (a + b);
  const double fx = checked_eval(f, x);
  return {x, fx, iterations, (b - a) <= tol};
}

}  // namespace zipfpoisson
