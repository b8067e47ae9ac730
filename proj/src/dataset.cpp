#include "zipfpoisson/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>

#include "text_format.hpp"
#include "zipfpoisson/errors.hpp"

namespace zipfpoisson {

namespace {

std::vector<std::string> split_fields(const std::string& line,
                                      char delimiter) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

void strip_line_ending(std::string& line) {
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
}

bool parse_double(const std::string& text, double& value) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

bool parse_int64(const std::string& text, std::int64_t& value) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end;
}

const std::string& entity_id(const RatingEvent& event, CountAxis axis) {
  return axis == CountAxis::Item ? event.item_id : event.user_id;
}

std::map<std::string, std::int64_t> entity_counts(
    const std::vector<RatingEvent>& events, CountAxis axis) {
  std::map<std::string, std::int64_t> counts;
  for (const RatingEvent& event : events) {
    ++counts[entity_id(event, axis)];
  }
  return counts;
}

}  // namespace

ParseResult parse_ratings(std::istream& in, const RatingFormat& format,
                          bool strict) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("line 1: missing header row");
  }
  strip_line_ending(line);
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) {
    line.erase(0, 3);
  }

  const std::vector<std::string> header =
      split_fields(line, format.delimiter);
  const auto find_column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) {
        return i;
      }
    }
    throw ParseError("line 1: missing required column '" + name + "'");
  };
  const std::size_t user_col = find_column(format.user_column);
  const std::size_t item_col = find_column(format.item_column);
  const std::size_t rating_col = find_column(format.rating_column);
  const std::size_t timestamp_col = find_column(format.timestamp_column);

  ParseResult result;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    strip_line_ending(line);
    if (line.empty()) {
      continue;
    }

    std::string problem;
    const std::vector<std::string> fields =
        split_fields(line, format.delimiter);
    RatingEvent event;
    if (fields.size() != header.size()) {
      problem = "expected " + std::to_string(header.size()) +
                " fields, found " + std::to_string(fields.size());
    } else if (fields[user_col].empty()) {
      problem = "empty user id";
    } else if (fields[item_col].empty()) {
      problem = "empty item id";
    } else if (!parse_double(fields[rating_col], event.rating)) {
      problem = "malformed rating '" + fields[rating_col] + "'";
    } else if (!parse_int64(fields[timestamp_col], event.timestamp)) {
      problem = "malformed timestamp '" + fields[timestamp_col] + "'";
    }

    if (!problem.empty()) {
      if (strict) {
        throw ParseError("line " + std::to_string(line_number) + ": " +
                         problem);
      }
      result.issues.push_back({line_number, problem});
      continue;
    }
    event.user_id = fields[user_col];
    event.item_id = fields[item_col];
    result.events.push_back(std::move(event));
  }
  return result;
}

void write_ratings_csv(std::ostream& out,
                       const std::vector<RatingEvent>& events,
                       const RatingFormat& format) {
  const char d = format.delimiter;
  out << format.user_column << d << format.item_column << d
      << format.rating_column << d << format.timestamp_column << '\n';
  for (const RatingEvent& event : events) {
    out << event.user_id << d << event.item_id << d
        << detail::format_double(event.rating) << d
        << detail::format_int(event.timestamp) << '\n';
  }
}

CountDistribution popularity_counts(const std::vector<RatingEvent>& events,
                                    CountAxis axis) {
  CountDistribution dist;
  for (const auto& [id, count] : entity_counts(events, axis)) {
    dist.counts[count] += 1.0;
  }
  return dist;
}

CountDistribution rank_frequency(const std::vector<RatingEvent>& events,
                                 CountAxis axis) {
  const auto counts = entity_counts(events, axis);
  std::vector<std::pair<std::string, std::int64_t>> ordered(counts.begin(),
                                                            counts.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  CountDistribution dist;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    dist.counts[static_cast<std::int64_t>(i) + 1] =
        static_cast<double>(ordered[i].second);
  }
  return dist;
}

std::vector<RatioCheck> zipf_ratio_test(
    const CountDistribution& dist, const std::vector<PairEquation>& pairs,
    std::vector<std::string>* diagnostics) {
  std::vector<RatioCheck> checks;
  for (const PairEquation& pair : pairs) {
    const double wk = dist.at(pair.k);
    const double wj = dist.at(pair.j);
    if (!(wk > 0.0) || !(wj > 0.0)) {
      if (diagnostics) {
        const int zero_at = !(wk > 0.0) ? pair.k : pair.j;
        diagnostics->push_back(
            "pair (" + std::to_string(pair.k) + ", " +
            std::to_string(pair.j) + ") skipped: zero weight at count " +
            std::to_string(zero_at));
      }
      continue;
    }
    RatioCheck check;
    check.k = pair.k;
    check.j = pair.j;
    check.empirical = wk / wj;
    check.paper_predicted =
        static_cast<double>(pair.k) / static_cast<double>(pair.j);
    check.classical_predicted =
        static_cast<double>(pair.j) / static_cast<double>(pair.k);
    checks.push_back(check);
  }
  return checks;
}

PowerLawFit fit_power_law_exponent(const CountDistribution& dist,
                                   std::int64_t k_min) {
  if (k_min < 1) {
    throw std::domain_error("power-law fit requires k_min >= 1");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [k, weight] : dist.counts) {
    if (k >= k_min && weight > 0.0) {
      xs.push_back(std::log(static_cast<double>(k)));
      ys.push_back(std::log(weight));
    }
  }
  if (xs.size() < 3) {
    throw FitError("power-law fit needs at least 3 support points, found " +
                   std::to_string(xs.size()));
  }

  const auto n = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;

  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }

  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = mean_y - fit.exponent * mean_x;

  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double predicted = fit.intercept + fit.exponent * xs[i];
    ss_res += (ys[i] - predicted) * (ys[i] - predicted);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  fit.r_squared =
      ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
  return fit;
}

ZipfFitReport zipf_fit_report(const CountDistribution& dist,
                              const std::vector<PairEquation>& pairs,
                              std::int64_t k_min) {
  ZipfFitReport report;
  report.fit = fit_power_law_exponent(dist, k_min);
  report.ratio_checks = zipf_ratio_test(dist, pairs, &report.diagnostics);
  return report;
}

void write_distribution_csv(std::ostream& out, const CountDistribution& dist) {
  out << "k,weight\n";
  for (const auto& [k, weight] : dist.counts) {
    out << detail::format_int(k) << ',' << detail::format_double(weight)
        << '\n';
  }
}

}  // namespace zipfpoisson
