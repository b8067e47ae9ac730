#include "zipfpoisson/distribution.hpp"

#include <stdexcept>

namespace zipfpoisson {

double CountDistribution::total_weight() const {
  double total = 0.0;
  for (const auto& [key, weight] : counts) {
    total += weight;
  }
  return total;
}

double CountDistribution::at(std::int64_t k) const {
  const auto it = counts.find(k);
  return it == counts.end() ? 0.0 : it->second;
}

CountDistribution CountDistribution::normalize() const {
  const double total = total_weight();
  if (!(total > 0.0)) {
    throw std::domain_error("cannot normalize a zero-weight distribution");
  }
  CountDistribution out;
  for (const auto& [key, weight] : counts) {
    out.counts[key] = weight / total;
  }
  out.normalized = true;
  return out;
}

}  // namespace zipfpoisson
