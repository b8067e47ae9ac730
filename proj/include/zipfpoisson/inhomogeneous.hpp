#pragma once

#include <cstddef>
#include <vector>

#include "zipfpoisson/homogeneous.hpp"

namespace zipfpoisson {

/// Algebraic form of the per-pair residual. DerivedSum is the log of the
/// pmf ratio equation: the log-probability difference minus the log target.
/// PaperProduct multiplies the two grouped terms of that difference instead
/// of adding them; it is kept as an alternative system with its own
/// solution set.
enum class ResidualForm { DerivedSum, PaperProduct };

/// Which (k, j) pairs tie the counts 1..K together.
enum class PairStrategy { Consecutive, AllPairs, AnchorToOne };

/// Zipf-constrained equation system over counts 1..K. Count k gets its own
/// observation window [0, t_k) and rate lambda_k; the Zipf ratio couples the
/// count probabilities pairwise.
struct EquationSystem {
  int K = 0;
  std::vector<PairEquation> pairs;
  ResidualForm form = ResidualForm::DerivedSum;
  ZipfDirection zipf_direction = ZipfDirection::Paper;
  double c = 1.0;                 // Zipf proportionality constant
  double t0 = 0.0;                // common window start, fixed at 0
  double ordering_margin = 1e-6;  // minimum gap between consecutive times

  /// Structural checks: K >= 2, pair counts within 1..K, c > 0, t0 == 0,
  /// ordering_margin > 0. Throws ConfigError on failure.
  void validate() const;

  bool operator==(const EquationSystem&) const = default;
};

/// Options for build_system beyond K and the pair strategy.
struct SystemOptions {
  ResidualForm form = ResidualForm::DerivedSum;
  ZipfDirection zipf_direction = ZipfDirection::Paper;
  double c = 1.0;
  double ordering_margin = 1e-6;
};

/// Per-count rates and window endpoints, both indexed 1..K externally
/// (entry k lives at offset k - 1).
struct ModelParams {
  std::vector<double> lambdas;
  std::vector<double> times;

  std::size_t size() const { return lambdas.size(); }

  /// Expected count lambda_k * t_k for 1 <= k <= size().
  double product(int k) const;

  bool operator==(const ModelParams&) const = default;
};

struct ResidualVector {
  std::vector<double> values;  // one per system pair, in pair order
  double inf_norm = 0.0;
};

enum class ViolationKind { LambdaPositivity, TimePositivity, TimeOrdering };

/// One violated feasibility constraint. slack is the signed distance to the
/// constraint boundary and is <= 0 for every reported violation. Ordering
/// violations set j = k - 1 and slack = (t_k - t_j) - ordering_margin.
struct ConstraintViolation {
  ViolationKind kind;
  int k = 0;
  int j = 0;
  double slack = 0.0;
};

/// Assembles the pair list for counts 1..K under the given strategy:
/// Consecutive gives (k+1, k) for k = 1..K-1, AllPairs every 1 <= j < k <= K
/// (ordered by k then j), AnchorToOne gives (k, 1) for k = 2..K.
/// Requires K >= 2.
EquationSystem build_system(int K, PairStrategy strategy,
                            const SystemOptions& options = {});

/// ln P(N(t_k) = k) under the model, k in 1..size. The expected count is
/// clamped below at 1e-300 so degenerate inputs stay finite.
double log_pmf(const ModelParams& params, int k);

/// Residual of one pair equation; exactly zero iff the pair's Zipf ratio
/// holds. Depends on the parameters only through the products lambda_k t_k.
double residual(const ModelParams& params, const PairEquation& pair,
                const EquationSystem& system);

/// All pair residuals in system order plus their infinity norm.
ResidualVector residual_vector(const ModelParams& params,
                               const EquationSystem& system);

/// Feasibility violations of params against the system's positivity and
/// ordering constraints. Empty means feasible.
std::vector<ConstraintViolation> check_constraints(
    const ModelParams& params, const EquationSystem& system);

/// Rescales each window t_k by scales[k-1] and compensates lambda_k by the
/// inverse factor, leaving every product (and hence every residual)
/// unchanged. Throws GaugeOrderingError if the rescaled times are no longer
/// strictly increasing and positive.
ModelParams gauge_transform(const ModelParams& params,
                            const std::vector<double>& scales);

}  // namespace zipfpoisson
