#pragma once

#include <cstdint>
#include <map>

namespace zipfpoisson {

/// Nonnegative weights over integer keys. The keys are rating counts for
/// popularity histograms and pmf supports, or 1-based ranks for
/// rank-frequency tables. normalized records whether the weights are known
/// to sum to 1.
struct CountDistribution {
  std::map<std::int64_t, double> counts;
  bool normalized = false;

  double total_weight() const;

  /// Weight at k, 0 when absent.
  double at(std::int64_t k) const;

  /// Same support scaled to total weight 1. Throws std::domain_error when
  /// the total weight is not positive.
  CountDistribution normalize() const;

  bool operator==(const CountDistribution&) const = default;
};

}  // namespace zipfpoisson
