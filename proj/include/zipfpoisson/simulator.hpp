#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "zipfpoisson/dataset.hpp"
#include "zipfpoisson/distribution.hpp"
#include "zipfpoisson/rng.hpp"
#include "zipfpoisson/solver.hpp"

namespace zipfpoisson {

/// Piecewise-constant intensity on [0, horizon). Segment i covers
/// [breakpoints[i-1], breakpoints[i]) with breakpoints[-1] taken as 0; the
/// last breakpoint is the horizon. Breakpoints must be strictly increasing
/// and positive, rates nonnegative and finite.
struct PiecewiseIntensity {
  std::vector<double> breakpoints;
  std::vector<double> rates;
  double horizon = 0.0;

  PiecewiseIntensity(std::vector<double> breakpoints,
                     std::vector<double> rates);

  /// Rate at time t in [0, horizon); throws std::domain_error outside.
  double rate_at(double t) const;

  double max_rate() const;

  /// Integral of the rate over [a, b] within [0, horizon].
  double integral(double a, double b) const;
};

/// Event times of one realization, ascending, with the seed that produced
/// them.
struct EventStream {
  std::vector<double> times;
  std::uint64_t seed = 0;
};

/// Interprets a converged solution as an intensity: segment k ends at t_k
/// and carries rate lambda_k. Throws ConfigError when the solution did not
/// converge.
PiecewiseIntensity intensity_from_solution(
    const InhomogeneousSolution& solution);

/// Thinning sampler: candidate times arrive at the peak rate and survive
/// with probability rate(t) / max_rate. One gap draw and one acceptance
/// draw per candidate, in that order, so identical seeds give identical
/// streams.
EventStream sample_events(const PiecewiseIntensity& intensity,
                          std::uint64_t seed);

/// Relative frequency of total event counts over many replications. Counts
/// above k_max are pooled into tail_mass rather than the pmf. Replication i
/// uses the substream seed xor i.
struct EmpiricalPmf {
  CountDistribution pmf;   // keys 0..k_max, explicit zeros included
  double tail_mass = 0.0;
  int replications = 0;
};

EmpiricalPmf empirical_count_pmf(const PiecewiseIntensity& intensity,
                                 int k_max, int replications,
                                 std::uint64_t seed);

/// Inverse-CDF sampler over ranks 1..n_items with weights proportional to
/// rank^(-exponent). exponent = 0 is the uniform case.
class ZipfSampler {
 public:
  ZipfSampler(double exponent, int n_items);

  /// 1-based rank.
  int draw(Rng& rng) const;

  /// Normalized weights, index 0 holding rank 1.
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

/// Number of draws landing on each rank 1..n_items (zeros included).
CountDistribution sample_zipf(double exponent, int n_items,
                              std::int64_t n_draws, std::uint64_t seed);

/// How synthesize_ratings decorates raw event times with identities.
struct RatingSynthesisOptions {
  int n_users = 100;
  double user_exponent = 1.0;
  int n_items = 100;
  double item_exponent = 1.0;
  double time_scale = 86400.0;  // seconds of timestamp per unit of model time
};

/// Attaches Zipf-popular user/item ids and a rating from the half-star
/// scale {0.5, 1.0, ..., 5.0} to each event. Per event the draw order is
/// user, item, rating. Timestamps are round(time * time_scale).
std::vector<RatingEvent> synthesize_ratings(
    const EventStream& stream, const RatingSynthesisOptions& options,
    std::uint64_t seed);

/// One-column CSV "time" with shortest round-trip formatting.
void write_event_csv(std::ostream& out, const EventStream& stream);

}  // namespace zipfpoisson
