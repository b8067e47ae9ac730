#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zipfpoisson::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoConvergence = 3;

struct OutputArgs {
  std::string out_dir = ".";
  std::vector<std::string> formats = {"csv", "json"};

  bool wants(const std::string& format) const;
  /// Throws ConfigError on formats outside {csv, json, svg}.
  void validate() const;
};

struct SeedArgs {
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool entropy = false;

  /// Seed to use: --seed wins, --entropy draws one, neither is an error.
  std::uint64_t resolve(const std::string& command) const;
};

struct HomogeneousReportArgs {
  int k_max = 0;
  double consistency_tol = 1e-9;
  std::string zipf_direction = "paper";
  OutputArgs out;
};

struct SolveArgs {
  int K = 0;
  std::string strategy = "consecutive";
  std::string form = "derived-sum";
  std::string zipf_direction = "paper";
  std::string restriction = "none";
  double zipf_constant = 1.0;
  double ordering_margin = 1e-6;
  int starts = 8;
  int max_iterations = 500;
  double residual_tol = 1e-8;
  double step_tol = 1e-12;
  std::vector<double> product_range;  // empty or [lo, hi]
  SeedArgs seed;
  OutputArgs out;
};

struct SimulateArgs {
  std::string from_solution;       // path to a solve report JSON
  std::vector<double> rates;       // inline intensity, with breakpoints
  std::vector<double> breakpoints;
  int k_max = 20;
  int replications = 10000;
  bool ratings_csv = false;
  int n_users = 100;
  double user_exponent = 1.0;
  int n_items = 100;
  double item_exponent = 1.0;
  double time_scale = 86400.0;
  SeedArgs seed;
  OutputArgs out;
};

struct AnalyzeArgs {
  std::string input;
  bool strict = false;
  std::int64_t k_min = 1;
  int ratio_k_max = 5;
  OutputArgs out;
};

int run_homogeneous_report(const HomogeneousReportArgs& args);
int run_solve(const SolveArgs& args);
int run_simulate(const SimulateArgs& args);
int run_analyze(const AnalyzeArgs& args);

}  // namespace zipfpoisson::cli
