#include "zipfpoisson/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "text_format.hpp"
#include "zipfpoisson/errors.hpp"

namespace zipfpoisson {

PiecewiseIntensity::PiecewiseIntensity(std::vector<double> breakpoints_,
                                       std::vector<double> rates_)
    : breakpoints(std::move(breakpoints_)), rates(std::move(rates_)) {
  if (breakpoints.empty() || breakpoints.size() != rates.size()) {
    throw std::domain_error(
        "intensity needs matching, nonempty breakpoints and rates");
  }
  double previous = 0.0;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i]) || breakpoints[i] <= previous) {
      throw std::domain_error(
          "breakpoints must be positive and strictly increasing");
    }
    previous = breakpoints[i];
    if (!std::isfinite(rates[i]) || rates[i] < 0.0) {
      throw std::domain_error("rates must be nonnegative and finite");
    }
  }
  horizon = breakpoints.back();
}

double PiecewiseIntensity::rate_at(double t) const {
  if (!(t >= 0.0) || t >= horizon) {
    throw std::domain_error("time outside [0, horizon)");
  }
  const auto it =
      std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  return rates[static_cast<std::size_t>(it - breakpoints.begin())];
}

double PiecewiseIntensity::max_rate() const {
  return *std::max_element(rates.begin(), rates.end());
}

double PiecewiseIntensity::integral(double a, double b) const {
  if (!(a >= 0.0) || !(b >= a) || b > horizon) {
    throw std::domain_error("integration bounds outside [0, horizon]");
  }
  double total = 0.0;
  double segment_lo = 0.0;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const double lo = std::max(a, segment_lo);
    const double hi = std::min(b, breakpoints[i]);
    if (hi > lo) {
      total += (hi - lo) * rates[i];
    }
    segment_lo = breakpoints[i];
  }
  return total;
}

PiecewiseIntensity intensity_from_solution(
    const InhomogeneousSolution& solution) {
  if (!solution.converged) {
    throw ConfigError("intensity requires a converged solution");
  }
  return PiecewiseIntensity(solution.params.times, solution.params.lambdas);
}

EventStream sample_events(const PiecewiseIntensity& intensity,
                          std::uint64_t seed) {
  EventStream stream;
  stream.seed = seed;
  const double peak = intensity.max_rate();
  if (peak <= 0.0) {
    return stream;
  }
  Rng rng(seed);
  double t = 0.0;
  while (true) {
    t += rng.exponential(peak);
    if (t >= intensity.horizon) {
      break;
    }
    // The acceptance draw happens even on constant-rate segments so the
    // draw sequence is one gap + one acceptance per candidate, always.
    const double u = rng.uniform();
    if (u * peak < intensity.rate_at(t)) {
      stream.times.push_back(t);
    }
  }
  return stream;
}

EmpiricalPmf empirical_count_pmf(const PiecewiseIntensity& intensity,
                                 int k_max, int replications,
                                 std::uint64_t seed) {
  if (k_max < 0) {
    throw std::domain_error("empirical pmf requires k_max >= 0");
  }
  if (replications < 1) {
    throw std::domain_error("empirical pmf requires replications >= 1");
  }

  EmpiricalPmf out;
  out.replications = replications;
  for (int k = 0; k <= k_max; ++k) {
    out.pmf.counts[k] = 0.0;
  }
  std::int64_t tail = 0;
  for (int rep = 0; rep < replications; ++rep) {
    const EventStream stream =
        sample_events(intensity, seed ^ static_cast<std::uint64_t>(rep));
    const auto count = static_cast<std::int64_t>(stream.times.size());
    if (count <= k_max) {
      out.pmf.counts[count] += 1.0;
    } else {
      ++tail;
    }
  }
  for (auto& [k, weight] : out.pmf.counts) {
    weight /= replications;
  }
  out.tail_mass = static_cast<double>(tail) / replications;
  out.pmf.normalized = (tail == 0);
  return out;
}

ZipfSampler::ZipfSampler(double exponent, int n_items) {
  if (n_items < 1) {
    throw std::domain_error("zipf sampler requires n_items >= 1");
  }
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
    throw std::domain_error("zipf exponent must be nonnegative and finite");
  }
  weights_.resize(n_items);
  double total = 0.0;
  for (int rank = 1; rank <= n_items; ++rank) {
    const double w = std::pow(static_cast<double>(rank), -exponent);
    weights_[rank - 1] = w;
    total += w;
  }
  cumulative_.resize(n_items);
  double running = 0.0;
  for (int i = 0; i < n_items; ++i) {
    weights_[i] /= total;
    running += weights_[i];
    cumulative_[i] = running;
  }
  cumulative_.back() = 1.0;
}

int ZipfSampler::draw(Rng& rng) const {
  const double u = rng.uniform();
  const auto it =
      std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) {
    return static_cast<int>(cumulative_.size());
  }
  return static_cast<int>(it - cumulative_.begin()) + 1;
}

CountDistribution sample_zipf(double exponent, int n_items,
                              std::int64_t n_draws, std::uint64_t seed) {
  if (n_draws < 0) {
    throw std::domain_error("sample_zipf requires n_draws >= 0");
  }
  const ZipfSampler sampler(exponent, n_items);
  CountDistribution dist;
  for (int rank = 1; rank <= n_items; ++rank) {
    dist.counts[rank] = 0.0;
  }
  Rng rng(seed);
  for (std::int64_t i = 0; i < n_draws; ++i) {
    dist.counts[sampler.draw(rng)] += 1.0;
  }
  return dist;
}

std::vector<RatingEvent> synthesize_ratings(
    const EventStream& stream, const RatingSynthesisOptions& options,
    std::uint64_t seed) {
  if (options.n_users < 1 || options.n_items < 1) {
    throw std::domain_error("synthesis requires at least one user and item");
  }
  if (!(options.time_scale > 0.0) || !std::isfinite(options.time_scale)) {
    throw std::domain_error("time_scale must be positive and finite");
  }
  const ZipfSampler users(options.user_exponent, options.n_users);
  const ZipfSampler items(options.item_exponent, options.n_items);

  Rng rng(seed);
  std::vector<RatingEvent> events;
  events.reserve(stream.times.size());
  for (double time : stream.times) {
    RatingEvent event;
    event.user_id = std::to_string(users.draw(rng));
    event.item_id = std::to_string(items.draw(rng));
    const int half_stars = static_cast<int>(rng.uniform() * 10.0);  // 0..9
    event.rating = 0.5 * (half_stars + 1);
    event.timestamp = std::llround(time * options.time_scale);
    events.push_back(std::move(event));
  }
  return events;
}

void write_event_csv(std::ostream& out, const EventStream& stream) {
  out << "time\n";
  for (double t : stream.times) {
    out << detail::format_double(t) << '\n';
  }
}

}  // namespace zipfpoisson
