#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "svg.hpp"
#include "text_format.hpp"
#include "zipfpoisson/dataset.hpp"
#include "zipfpoisson/errors.hpp"
#include "zipfpoisson/json_io.hpp"
#include "zipfpoisson/rng.hpp"
#include "zipfpoisson/simulator.hpp"
#include "zipfpoisson/solver.hpp"

namespace zipfpoisson::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Keeps the ratings-synthesis stream apart from the event and replication
// streams derived from the same user seed.
constexpr std::uint64_t kSynthesisSalt = 0x9e3779b97f4a7c15ULL;

void atomic_write(const fs::path& path, const std::string& content) {
  if (!path.parent_path().empty()) {
    fs::create_directories(path.parent_path());
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw ConfigError("cannot open " + tmp.string() + " for writing");
    }
    f << content;
    f.flush();
    if (!f) {
      throw ConfigError("failed while writing " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

fs::path out_path(const OutputArgs& out, const std::string& name) {
  return fs::path(out.out_dir) / name;
}

json rng_metadata(std::uint64_t seed) {
  return json{{"name", kRngName},
              {"stream_scheme", kRngStreamScheme},
              {"seed", seed}};
}

}  // namespace

bool OutputArgs::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

void OutputArgs::validate() const {
  if (out_dir.empty()) {
    throw ConfigError("--out-dir must not be empty");
  }
  for (const std::string& format : formats) {
    if (format != "csv" && format != "json" && format != "svg") {
      throw ConfigError("unknown format '" + format +
                        "' (expected csv, json, or svg)");
    }
  }
}

std::uint64_t SeedArgs::resolve(const std::string& command) const {
  if (seed_set) {
    return seed;
  }
  if (entropy) {
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) ^ device();
  }
  throw ConfigError(command +
                    " draws random numbers: pass --seed <n> for a "
                    "reproducible run or --entropy for a random one");
}

int run_homogeneous_report(const HomogeneousReportArgs& args) {
  args.out.validate();
  const ZipfDirection direction =
      zipf_direction_from_string(args.zipf_direction);
  if (args.k_max < 2) {
    throw ConfigError("--k-max must be at least 2");
  }
  const ConsistencyReport consistency = homogeneity_consistency_report(
      args.k_max, args.consistency_tol, direction);
  std::vector<FeasibilityCertificate> certificates;
  certificates.reserve(args.k_max);
  for (int k = 1; k <= args.k_max; ++k) {
    certificates.push_back(counting_form_feasibility(k, 1.0, direction));
  }

  if (args.out.wants("json")) {
    json certs = json::array();
    for (const FeasibilityCertificate& certificate : certificates) {
      certs.push_back(serialize(certificate));
    }
    const json doc{{"schema_version", kSchemaVersion},
                   {"k_max", args.k_max},
                   {"consistency_tol", args.consistency_tol},
                   {"zipf_direction", args.zipf_direction},
                   {"consistency", serialize(consistency)},
                   {"feasibility", std::move(certs)}};
    atomic_write(out_path(args.out, "homogeneous_report.json"),
                 dump_json(doc));
  }

  std::ostringstream table;
  table << "single-rate model, counts 1.." << args.k_max << " ("
        << args.zipf_direction << " ratio direction)\n\n";
  table << std::left << std::setw(10) << "pair"
        << "required rate\n";
  for (const auto& [pair, lambda] : consistency.pair_lambdas) {
    table << std::setw(10)
          << ("(" + std::to_string(pair.k) + "," + std::to_string(pair.j) +
              ")")
          << detail::format_double(lambda) << "\n";
  }
  table << "\nspread  " << detail::format_double(consistency.spread)
        << "\nverdict " << to_string(consistency.verdict) << "\n\n";
  table << "counting-form feasibility, f(x) = x - k ln x + ln k! "
           "+/- ln k\n\n";
  table << std::left << std::setw(6) << "k" << std::setw(10) << "x*"
        << std::setw(24) << "f_min"
        << "feasible\n";
  for (const FeasibilityCertificate& c : certificates) {
    table << std::setw(6) << c.k << std::setw(10)
          << detail::format_double(c.x_star) << std::setw(24)
          << detail::format_double(c.f_min) << (c.feasible ? "yes" : "no")
          << "\n";
  }
  std::cout << table.str();
  return kExitOk;
}

int run_solve(const SolveArgs& args) {
  args.out.validate();
  if (args.K < 2) {
    throw ConfigError("--K must be at least 2");
  }
  SystemOptions system_options;
  system_options.form = residual_form_from_string(args.form);
  system_options.zipf_direction =
      zipf_direction_from_string(args.zipf_direction);
  system_options.c = args.zipf_constant;
  system_options.ordering_margin = args.ordering_margin;
  const EquationSystem system = build_system(
      args.K, pair_strategy_from_string(args.strategy), system_options);

  SolverOptions options;
  options.max_iterations = args.max_iterations;
  options.residual_tol = args.residual_tol;
  options.step_tol = args.step_tol;
  options.n_starts = args.starts;
  options.seed = args.seed.resolve("solve");
  options.restriction = restriction_from_string(args.restriction);
  if (!args.product_range.empty()) {
    if (args.product_range.size() != 2) {
      throw ConfigError("--product-range takes exactly two values: lo hi");
    }
    options.init_product_range =
        std::make_pair(args.product_range[0], args.product_range[1]);
  }

  const SolveReport report = solve(system, options);
  const InhomogeneousSolution& best = report.solutions[report.best];

  if (args.out.wants("json")) {
    const json doc{{"schema_version", kSchemaVersion},
                   {"rng", rng_metadata(options.seed)},
                   {"strategy", args.strategy},
                   {"system", serialize(system)},
                   {"options", serialize(options)},
                   {"report", serialize(report)}};
    atomic_write(out_path(args.out, "solve_report.json"), dump_json(doc));
  }
  if (args.out.wants("csv")) {
    std::ostringstream times;
    std::ostringstream lambdas;
    times << "k,t_k\n";
    lambdas << "k,lambda_k\n";
    for (int k = 1; k <= args.K; ++k) {
      times << k << ',' << detail::format_double(best.params.times[k - 1])
            << '\n';
      lambdas << k << ','
              << detail::format_double(best.params.lambdas[k - 1]) << '\n';
    }
    atomic_write(out_path(args.out, "times.csv"), times.str());
    atomic_write(out_path(args.out, "lambdas.csv"), lambdas.str());
  }
  if (args.out.wants("svg")) {
    atomic_write(out_path(args.out, "solution.svg"),
                 render_solution_svg(best));
  }

  if (report.no_convergence) {
    std::cout << "no start converged; best objective "
              << detail::format_double(best.objective) << " from start "
              << best.start_index << "\n";
    return kExitNoConvergence;
  }
  std::cout << "converged: residual inf-norm "
            << detail::format_double(best.residuals.inf_norm) << ", "
            << report.distinct_count << " distinct solution(s) across "
            << options.n_starts << " starts\n";
  return kExitOk;
}

int run_simulate(const SimulateArgs& args) {
  args.out.validate();
  if (args.k_max < 0) {
    throw ConfigError("--k-max must be nonnegative");
  }
  if (args.replications < 1) {
    throw ConfigError("--replications must be at least 1");
  }
  const bool inline_intensity =
      !args.rates.empty() || !args.breakpoints.empty();
  const bool solution_intensity = !args.from_solution.empty();
  if (inline_intensity == solution_intensity) {
    throw ConfigError(
        "simulate needs exactly one intensity source: --from-solution, or "
        "--rates with --breakpoints");
  }

  std::optional<PiecewiseIntensity> intensity;
  json source;
  if (solution_intensity) {
    std::ifstream f(args.from_solution);
    if (!f) {
      throw ConfigError("cannot read " + args.from_solution);
    }
    json doc;
    try {
      doc = json::parse(f);
    } catch (const json::exception& e) {
      throw ConfigError(args.from_solution + " is not valid JSON: " +
                        e.what());
    }
    const SolveReport report = deserialize_solve_report(
        doc.contains("report") ? doc.at("report") : doc);
    const InhomogeneousSolution& best = report.solutions[report.best];
    intensity.emplace(intensity_from_solution(best));
    source = json{{"from_solution", args.from_solution}};
  } else {
    if (args.rates.empty() || args.breakpoints.empty()) {
      throw ConfigError("--rates and --breakpoints go together");
    }
    intensity.emplace(args.breakpoints, args.rates);
    source = json{{"inline", true}};
  }

  const std::uint64_t seed = args.seed.resolve("simulate");
  const EventStream stream = sample_events(*intensity, seed);
  const EmpiricalPmf empirical =
      empirical_count_pmf(*intensity, args.k_max, args.replications, seed);

  // The realized total count of the process is Poisson with mean equal to
  // the integrated intensity, which is what the empirical pmf must match.
  const double total_mean = intensity->integral(0.0, intensity->horizon);
  CountDistribution theoretical;
  double covered = 0.0;
  for (int k = 0; k <= args.k_max; ++k) {
    const double p = pmf_poisson(k, total_mean);
    theoretical.counts[k] = p;
    covered += p;
  }
  const double theoretical_tail = std::max(0.0, 1.0 - covered);

  double max_abs_diff = 0.0;
  double l1 = 0.0;
  for (int k = 0; k <= args.k_max; ++k) {
    const double diff = std::abs(empirical.pmf.at(k) - theoretical.at(k));
    max_abs_diff = std::max(max_abs_diff, diff);
    l1 += diff;
  }
  const double tv_distance =
      0.5 * (l1 + std::abs(empirical.tail_mass - theoretical_tail));

  if (args.out.wants("json")) {
    const json doc{
        {"schema_version", kSchemaVersion},
        {"rng", rng_metadata(seed)},
        {"source", std::move(source)},
        {"intensity", serialize(*intensity)},
        {"total_mean", total_mean},
        {"events_in_realization", stream.times.size()},
        {"empirical", serialize(empirical)},
        {"theoretical",
         json{{"pmf", serialize(theoretical)}, {"tail_mass", theoretical_tail}}},
        {"comparison",
         json{{"max_abs_diff", max_abs_diff}, {"tv_distance", tv_distance}}}};
    atomic_write(out_path(args.out, "pmf_comparison.json"), dump_json(doc));
  }
  if (args.out.wants("csv")) {
    std::ostringstream events;
    write_event_csv(events, stream);
    atomic_write(out_path(args.out, "events.csv"), events.str());
  }
  if (args.ratings_csv) {
    RatingSynthesisOptions synthesis;
    synthesis.n_users = args.n_users;
    synthesis.user_exponent = args.user_exponent;
    synthesis.n_items = args.n_items;
    synthesis.item_exponent = args.item_exponent;
    synthesis.time_scale = args.time_scale;
    const std::vector<RatingEvent> ratings =
        synthesize_ratings(stream, synthesis, seed ^ kSynthesisSalt);
    std::ostringstream csv;
    write_ratings_csv(csv, ratings);
    atomic_write(out_path(args.out, "ratings.csv"), csv.str());
  }

  std::cout << stream.times.size() << " event(s) in the realization; "
            << "total mean " << detail::format_double(total_mean)
            << ", tv distance " << detail::format_double(tv_distance)
            << " over " << args.replications << " replication(s)\n";
  return kExitOk;
}

namespace {

json analyze_axis_section(const std::vector<RatingEvent>& events,
                          CountAxis axis, std::int64_t k_min,
                          int ratio_k_max) {
  const CountDistribution popularity = popularity_counts(events, axis);
  const CountDistribution ranks = rank_frequency(events, axis);

  std::vector<PairEquation> pairs;
  for (int k = 2; k <= ratio_k_max; ++k) {
    pairs.emplace_back(k, k - 1);
  }

  std::vector<std::string> diagnostics;
  const std::vector<RatioCheck> checks =
      zipf_ratio_test(popularity, pairs, &diagnostics);

  json popularity_fit = nullptr;
  try {
    popularity_fit = serialize(fit_power_law_exponent(popularity, k_min));
  } catch (const FitError& e) {
    diagnostics.push_back(std::string("popularity fit skipped: ") + e.what());
  }
  json rank_fit = nullptr;
  try {
    rank_fit = serialize(fit_power_law_exponent(ranks, k_min));
  } catch (const FitError& e) {
    diagnostics.push_back(std::string("rank-frequency fit skipped: ") +
                          e.what());
  }

  json ratio_checks = json::array();
  for (const RatioCheck& check : checks) {
    ratio_checks.push_back(serialize(check));
  }
  return json{{"n_entities", popularity.total_weight()},
              {"popularity_fit", std::move(popularity_fit)},
              {"rank_frequency_fit", std::move(rank_fit)},
              {"ratio_checks", std::move(ratio_checks)},
              {"diagnostics", diagnostics}};
}

}  // namespace

int run_analyze(const AnalyzeArgs& args) {
  args.out.validate();
  if (args.k_min < 1) {
    throw ConfigError("--k-min must be at least 1");
  }
  if (args.ratio_k_max < 2) {
    throw ConfigError("--ratio-k-max must be at least 2");
  }
  std::ifstream f(args.input);
  if (!f) {
    throw ConfigError("cannot read " + args.input);
  }
  const ParseResult parsed = parse_ratings(f, RatingFormat{}, args.strict);
  if (parsed.events.empty()) {
    throw ConfigError("no events in " + args.input);
  }

  const CountDistribution item_popularity =
      popularity_counts(parsed.events, CountAxis::Item);
  const CountDistribution user_popularity =
      popularity_counts(parsed.events, CountAxis::User);
  const CountDistribution item_ranks =
      rank_frequency(parsed.events, CountAxis::Item);
  const CountDistribution user_ranks =
      rank_frequency(parsed.events, CountAxis::User);

  if (args.out.wants("json")) {
    json issues = json::array();
    for (std::size_t i = 0; i < parsed.issues.size() && i < 10; ++i) {
      issues.push_back(json{{"line", parsed.issues[i].line},
                            {"message", parsed.issues[i].message}});
    }
    const json doc{
        {"schema_version", kSchemaVersion},
        {"input",
         json{{"path", args.input},
              {"n_events", parsed.events.size()},
              {"n_issues", parsed.issues.size()},
              {"first_issues", std::move(issues)}}},
        {"item", analyze_axis_section(parsed.events, CountAxis::Item,
                                      args.k_min, args.ratio_k_max)},
        {"user", analyze_axis_section(parsed.events, CountAxis::User,
                                      args.k_min, args.ratio_k_max)}};
    atomic_write(out_path(args.out, "analyze_report.json"), dump_json(doc));
  }
  if (args.out.wants("csv")) {
    const auto write_dist = [&](const std::string& name,
                                const CountDistribution& dist) {
      std::ostringstream csv;
      write_distribution_csv(csv, dist);
      atomic_write(out_path(args.out, name), csv.str());
    };
    write_dist("item_counts.csv", item_popularity);
    write_dist("user_counts.csv", user_popularity);
    write_dist("item_rank_frequency.csv", item_ranks);
    write_dist("user_rank_frequency.csv", user_ranks);
  }

  std::cout << parsed.events.size() << " event(s), "
            << detail::format_double(item_popularity.total_weight())
            << " item(s), "
            << detail::format_double(user_popularity.total_weight())
            << " user(s), " << parsed.issues.size()
            << " skipped row(s)\n";
  return kExitOk;
}

}  // namespace zipfpoisson::cli
