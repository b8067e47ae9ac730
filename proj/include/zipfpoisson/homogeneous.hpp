#pragma once

#include <utility>
#include <vector>

namespace zipfpoisson {

/// Direction of the Zipf ratio tying rating-count probabilities together.
///
/// Paper:     P(N = k) / P(N = j) = k / j   (mass grows with the count)
/// Classical: P(N = k) / P(N = j) = j / k   (mass decays with the count)
///
/// The two differ only by the sign of the ln(k) - ln(j) target term.
enum class ZipfDirection { Paper, Classical };

/// Sign applied to the log-ratio target: +1 for Paper, -1 for Classical.
double zipf_sign(ZipfDirection direction);

/// One Zipf ratio equation between counts k and j. Requires k > j >= 1.
struct PairEquation {
  int k;
  int j;
  PairEquation(int k, int j);

  bool operator==(const PairEquation&) const = default;
};

enum class Verdict { Consistent, Inconsistent };

/// Closed-form rate for each pair of counts, plus the spread across pairs.
/// A single-rate model only exists when every pair demands the same rate.
struct ConsistencyReport {
  std::vector<std::pair<PairEquation, double>> pair_lambdas;
  double spread = 0.0;
  Verdict verdict = Verdict::Consistent;
};

/// Real-domain witness that the counting form P(N = k) proportional to k
/// admits no rate: the residual's global minimum over the expected count,
/// reported per k. feasible is true only when f_min <= 0.
struct FeasibilityCertificate {
  int k = 0;
  double x_star = 0.0;
  double f_min = 0.0;
  bool feasible = false;
};

/// P(N = k) for a Poisson count with mean mu >= 0. pmf(0, 0) = 1 and
/// pmf(k, 0) = 0 for k > 0. Computed in log space so large k and mu do not
/// overflow. Throws std::domain_error for k < 0 or mu < 0.
double pmf_poisson(int k, double mu);

/// The unique rate that satisfies the pair's ratio equation in isolation:
///   lambda = exp((ln k! - ln j! + sigma (ln k - ln j)) / (k - j))
/// with sigma = +1 for ZipfDirection::Paper. Evaluated in log space; the
/// result is checked to reproduce the ratio to within floating-point slack.
double lambda_closed_form(const PairEquation& pair,
                          ZipfDirection direction = ZipfDirection::Paper);

/// Closed-form rates for every pair 1 <= j < k <= k_max (ordered by k, then
/// j), their spread max - min, and the verdict spread <= consistency_tol.
/// Requires k_max >= 2.
ConsistencyReport homogeneity_consistency_report(
    int k_max, double consistency_tol = 1e-9,
    ZipfDirection direction = ZipfDirection::Paper);

/// Minimizes f(x) = x - k ln x + ln k! + sigma ln k - ln c over the expected
/// count x > 0, where f = 0 would mean P(N = k) = k / c exactly. The minimum
/// sits at x* = k analytically; a golden-section pass over [k/8, 8k] must
/// confirm it. Requires k >= 1 and c > 0.
FeasibilityCertificate counting_form_feasibility(
    int k, double zipf_constant = 1.0,
    ZipfDirection direction = ZipfDirection::Paper);

}  // namespace zipfpoisson
