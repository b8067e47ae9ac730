#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zipfpoisson/distribution.hpp"
#include "zipfpoisson/homogeneous.hpp"

namespace zipfpoisson {

/// One rating row. Ids stay strings; rating platforms use opaque keys and
/// nothing here depends on them being numeric.
struct RatingEvent {
  std::string user_id;
  std::string item_id;
  double rating = 0.0;
  std::int64_t timestamp = 0;

  bool operator==(const RatingEvent&) const = default;
};

/// Column naming and delimiter of a rating CSV file. Defaults describe the
/// MovieLens layout.
struct RatingFormat {
  char delimiter = ',';
  std::string user_column = "userId";
  std::string item_column = "movieId";
  std::string rating_column = "rating";
  std::string timestamp_column = "timestamp";
};

/// One skipped or rejected input row. Lines are 1-based and include the
/// header, so the first data row is line 2.
struct ParseIssue {
  int line = 0;
  std::string message;
};

struct ParseResult {
  std::vector<RatingEvent> events;
  std::vector<ParseIssue> issues;
};

/// Reads rating rows. A header row is required and every configured column
/// must appear in it (ParseError otherwise, regardless of strictness).
/// Malformed data rows raise ParseError naming the line when strict,
/// otherwise they are skipped and recorded as issues.
ParseResult parse_ratings(std::istream& in, const RatingFormat& format = {},
                          bool strict = false);

/// Writes events in the same layout parse_ratings reads; numeric fields use
/// shortest round-trip formatting so write -> parse is lossless.
void write_ratings_csv(std::ostream& out,
                       const std::vector<RatingEvent>& events,
                       const RatingFormat& format = {});

enum class CountAxis { Item, User };

/// Histogram of per-entity rating counts: key k maps to the number of
/// entities that received exactly k ratings. Total weight equals the number
/// of distinct entities.
CountDistribution popularity_counts(const std::vector<RatingEvent>& events,
                                    CountAxis axis);

/// Rank-frequency table: key r maps to the rating count of the r-th most
/// rated entity (ranks 1-based; ties broken by id, ascending).
CountDistribution rank_frequency(const std::vector<RatingEvent>& events,
                                 CountAxis axis);

/// Empirical ratio weight(k) / weight(j) next to both theoretical
/// predictions for it: k/j (mass growing with the count) and j/k (classical
/// decay).
struct RatioCheck {
  std::int64_t k = 0;
  std::int64_t j = 0;
  double empirical = 0.0;
  double paper_predicted = 0.0;
  double classical_predicted = 0.0;
};

/// Least-squares line through (ln k, ln weight).
struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Power-law diagnostics for one distribution.
struct ZipfFitReport {
  PowerLawFit fit;
  std::vector<RatioCheck> ratio_checks;
  std::vector<std::string> diagnostics;
};

/// Empirical ratio checks for the given pairs. Pairs touching a zero-weight
/// count are skipped; when diagnostics is non-null each skip appends an
/// explanatory line.
std::vector<RatioCheck> zipf_ratio_test(
    const CountDistribution& dist, const std::vector<PairEquation>& pairs,
    std::vector<std::string>* diagnostics = nullptr);

/// Ordinary least squares of ln(weight) on ln(key) over keys >= k_min with
/// positive weight. Throws FitError with fewer than 3 such support points.
PowerLawFit fit_power_law_exponent(const CountDistribution& dist,
                                   std::int64_t k_min = 1);

/// fit_power_law_exponent plus zipf_ratio_test in one report.
ZipfFitReport zipf_fit_report(const CountDistribution& dist,
                              const std::vector<PairEquation>& pairs,
                              std::int64_t k_min = 1);

/// Two-column CSV "k,weight" in key order.
void write_distribution_csv(std::ostream& out, const CountDistribution& dist);

}  // namespace zipfpoisson
