// Acceptance checks for the toolkit, one numbered criterion per line.
// Each check exercises the public library or the CLI binary (argv[1]) and
// prints [PASS]/[FAIL] with a short measurement; the exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "zipfpoisson/dataset.hpp"
#include "zipfpoisson/homogeneous.hpp"
#include "zipfpoisson/rng.hpp"
#include "zipfpoisson/simulator.hpp"
#include "zipfpoisson/solver.hpp"

namespace fs = std::filesystem;
using namespace zipfpoisson;

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& failure) {
    if (!ok) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << failure;
    }
  }

  void note(const std::string& text) {
    if (detail.tellp() > 0) detail << "; ";
    detail << text;
  }
};

int g_failures = 0;

void report(int index, const std::string& name, const Check& check,
            double elapsed_seconds, double budget_seconds) {
  const bool in_budget =
      budget_seconds <= 0.0 || elapsed_seconds < budget_seconds;
  const bool pass = check.pass && in_budget;
  if (!pass) ++g_failures;
  std::ostringstream line;
  line << (pass ? "[PASS] " : "[FAIL] ") << index << ". " << name << " — ";
  const std::string detail = check.detail.str();
  if (!detail.empty()) line << detail << "; ";
  line << "elapsed " << elapsed_seconds << " s";
  if (budget_seconds > 0.0) {
    line << " (budget " << budget_seconds << " s)";
    if (!in_budget) line << " EXCEEDED";
  }
  std::puts(line.str().c_str());
}

std::string fmt(double value) {
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

// ---- criterion bodies ----

void criterion_1() {
  Stopwatch timer;
  Check check;
  const struct {
    int k;
    int j;
    double expected;
  } cases[] = {{2, 1, 4.0}, {3, 2, 4.5}, {3, 1, std::sqrt(18.0)}};
  for (const auto& c : cases) {
    const double lambda = lambda_closed_form(PairEquation(c.k, c.j));
    check.require(std::abs(lambda - c.expected) <= 1e-9,
                  "lambda(" + std::to_string(c.k) + "," +
                      std::to_string(c.j) + ") = " + fmt(lambda));
    const double ratio =
        pmf_poisson(c.k, lambda) / pmf_poisson(c.j, lambda);
    const double target = static_cast<double>(c.k) / c.j;
    check.require(std::abs(ratio - target) <= 1e-9,
                  "pmf ratio off at (" + std::to_string(c.k) + "," +
                      std::to_string(c.j) + "): " + fmt(ratio));
  }
  const ConsistencyReport report_3 = homogeneity_consistency_report(3);
  check.require(std::abs(report_3.spread - 0.5) <= 1e-9,
                "spread = " + fmt(report_3.spread));
  check.require(report_3.verdict == Verdict::Inconsistent,
                "verdict not inconsistent");
  check.note("rates 4, 4.5, sqrt(18); spread " + fmt(report_3.spread));
  report(1, "single shared rate is self-contradictory", check,
         timer.seconds(), 1.0);
}

void criterion_2() {
  Stopwatch timer;
  Check check;
  double previous = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 500; ++k) {
    const FeasibilityCertificate cert = counting_form_feasibility(k);
    if (cert.f_min <= 0.0 || cert.feasible) {
      check.require(false, "k = " + std::to_string(k) +
                               " reported feasible, f_min = " +
                               fmt(cert.f_min));
      break;
    }
    worst = std::min(worst, cert.f_min);
    if (k == 1) {
      check.require(std::abs(cert.f_min - 1.0) <= 1e-9,
                    "f_min(1) = " + fmt(cert.f_min));
    }
    if (k == 2) {
      check.require(std::abs(cert.f_min - 2.0) <= 1e-9,
                    "f_min(2) = " + fmt(cert.f_min));
    }
    if (k >= 3 && cert.f_min < previous) {
      check.require(false, "f_min dips at k = " + std::to_string(k));
    }
    if (k >= 2) previous = cert.f_min;
  }
  check.note("minimum residual over k = 1..500 stays >= " + fmt(worst));
  report(2, "counting form admits no real solution", check, timer.seconds(),
         1.0);
}

SolveReport criterion_3(const EquationSystem& system) {
  Stopwatch timer;
  Check check;
  SolverOptions options;
  options.seed = 2024;
  const SolveReport solved = solve(system, options);
  const InhomogeneousSolution& best = solved.solutions[solved.best];
  check.require(best.converged, "no start converged");
  check.require(best.residuals.inf_norm <= 1e-6,
                "best residual inf-norm " + fmt(best.residuals.inf_norm));
  check.require(verify(best, system), "independent verify failed");
  bool ordered = best.params.times[0] > 0.0;
  for (std::size_t k = 1; k < best.params.times.size(); ++k) {
    ordered = ordered && (best.params.times[k] - best.params.times[k - 1] >=
                          system.ordering_margin * (1.0 - 1e-9));
  }
  check.require(ordered, "window ordering margin violated");
  bool positive = true;
  for (double lambda : best.params.lambdas) {
    positive = positive && lambda > 0.0;
  }
  check.require(positive, "nonpositive rate");
  check.note("best residual inf-norm " + fmt(best.residuals.inf_norm) +
             " over 8 starts");
  report(3, "K = 10 rates and windows solve the ratio system", check,
         timer.seconds(), 10.0);
  return solved;
}

void criterion_4(const SolveReport& solved) {
  Stopwatch timer;
  Check check;
  // Hunt for two converged solutions whose expected-count vectors differ.
  double best_gap = 0.0;
  const int K = static_cast<int>(solved.solutions[0].params.size());
  for (std::size_t a = 0; a < solved.solutions.size(); ++a) {
    if (!solved.solutions[a].converged) continue;
    for (std::size_t b = a + 1; b < solved.solutions.size(); ++b) {
      if (!solved.solutions[b].converged) continue;
      double gap = 0.0;
      for (int k = 1; k <= K; ++k) {
        gap = std::max(gap, std::abs(solved.solutions[a].params.product(k) -
                                     solved.solutions[b].params.product(k)));
      }
      best_gap = std::max(best_gap, gap);
    }
  }
  check.require(best_gap > 1e-3,
                "largest product-vector gap " + fmt(best_gap));
  check.require(solved.distinct_count >= 2,
                "distinct_count = " + std::to_string(solved.distinct_count));
  check.note(std::to_string(solved.distinct_count) +
             " distinct solutions, widest product gap " + fmt(best_gap));
  report(4, "independent runs land on different solutions", check,
         timer.seconds(), 0.0);
}

void criterion_5(const SolveReport& solved, const EquationSystem& system) {
  Stopwatch timer;
  Check check;
  const InhomogeneousSolution& best = solved.solutions[solved.best];
  const ResidualVector reference = residual_vector(best.params, system);
  Rng rng(515151);
  const int K = static_cast<int>(best.params.size());
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    // Draw new strictly increasing times, then express them as
    // per-component scales so ordering is preserved by construction.
    std::vector<double> scales(K);
    double t_prev = 0.0;
    for (int k = 0; k < K; ++k) {
      const double target =
          std::max(best.params.times[k] * rng.log_uniform(0.25, 4.0),
                   t_prev + 2.0 * system.ordering_margin);
      scales[k] = target / best.params.times[k];
      t_prev = target;
    }
    const ModelParams transformed = gauge_transform(best.params, scales);
    const ResidualVector moved = residual_vector(transformed, system);
    for (std::size_t i = 0; i < reference.values.size(); ++i) {
      worst = std::max(worst,
                       std::abs(moved.values[i] - reference.values[i]));
    }
  }
  check.require(worst <= 1e-10,
                "residual drift " + fmt(worst) + " exceeds 1e-10");
  check.note("max residual drift over 100 transforms " + fmt(worst));
  report(5, "rescaling windows against rates changes nothing", check,
         timer.seconds(), 0.0);
}

void criterion_6() {
  Stopwatch timer;
  Check check;
  // Forcing one shared expected count reproduces the single-rate model
  // inside the solver: the K = 3 system then has no solution and every
  // start must stall short of the tolerance.
  const EquationSystem system = build_system(3, PairStrategy::Consecutive);
  SolverOptions options;
  options.seed = 606;
  options.n_starts = 16;
  options.residual_tol = 1e-6;
  options.restriction = Restriction::EqualMeans;
  const SolveReport solved = solve(system, options);
  check.require(solved.no_convergence, "a start converged unexpectedly");
  double floor = std::numeric_limits<double>::infinity();
  for (const InhomogeneousSolution& s : solved.solutions) {
    check.require(!s.converged && s.residuals.inf_norm > 1e-6,
                  "start " + std::to_string(s.start_index) +
                      " reached " + fmt(s.residuals.inf_norm));
    floor = std::min(floor, s.residuals.inf_norm);
  }
  check.note("16 starts all stall; best inf-norm " + fmt(floor) +
             " (theory: ln(9/8)/2 = " + fmt(0.5 * std::log(9.0 / 8.0)) +
             ")");
  report(6, "restricting to the homogeneous model fails for K = 3", check,
         timer.seconds(), 10.0);
}

void criterion_7() {
  Stopwatch timer;
  Check check;
  const PiecewiseIntensity constant({1.0}, {3.0});
  const int k_max = 25;
  const EmpiricalPmf empirical =
      empirical_count_pmf(constant, k_max, 100000, 7070);
  double tv = 0.0;
  double tail_prob = 1.0;
  for (int k = 0; k <= k_max; ++k) {
    const double p = pmf_poisson(k, 3.0);
    tail_prob -= p;
    tv += std::abs(empirical.pmf.at(k) - p);
  }
  tv += std::abs(empirical.tail_mass - std::max(tail_prob, 0.0));
  tv *= 0.5;
  check.require(tv <= 0.01, "total variation distance " + fmt(tv));

  const PiecewiseIntensity pieces({1.0, 2.0, 4.0}, {3.0, 1.0, 2.0});
  const int reps = 10000;
  double seg_counts[3] = {0.0, 0.0, 0.0};
  for (int rep = 0; rep < reps; ++rep) {
    const EventStream stream =
        sample_events(pieces, 404000 + static_cast<std::uint64_t>(rep));
    for (double t : stream.times) {
      if (t < 1.0) {
        seg_counts[0] += 1.0;
      } else if (t < 2.0) {
        seg_counts[1] += 1.0;
      } else {
        seg_counts[2] += 1.0;
      }
    }
  }
  const double expected[3] = {3.0, 1.0, 4.0};
  double worst_sigma = 0.0;
  for (int s = 0; s < 3; ++s) {
    const double mean = seg_counts[s] / reps;
    const double se = std::sqrt(expected[s] / reps);
    worst_sigma = std::max(worst_sigma, std::abs(mean - expected[s]) / se);
  }
  check.require(worst_sigma <= 3.0,
                "segment mean off by " + fmt(worst_sigma) +
                    " standard errors");
  check.note("TV distance " + fmt(tv) + " at 1e5 replications; worst segment "
             "deviation " + fmt(worst_sigma) + " SE");
  report(7, "thinning sampler reproduces the Poisson law", check,
         timer.seconds(), 30.0);
}

void criterion_8() {
  Stopwatch timer;
  Check check;
  const CountDistribution hist = sample_zipf(1.0, 1000, 1000000, 808);
  // Re-rank by observed count, descending, to get the rank-frequency table.
  std::vector<double> weights;
  weights.reserve(hist.counts.size());
  for (const auto& [rank, weight] : hist.counts) {
    weights.push_back(weight);
  }
  std::sort(weights.begin(), weights.end(), std::greater<double>());
  CountDistribution ranked;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    ranked.counts[static_cast<std::int64_t>(i) + 1] = weights[i];
  }
  const PowerLawFit sampled = fit_power_law_exponent(ranked);
  check.require(std::abs(sampled.exponent - (-1.0)) <= 0.05,
                "sampled exponent " + fmt(sampled.exponent));

  CountDistribution exact;
  for (int k = 1; k <= 50; ++k) {
    exact.counts[k] = 3.0 * std::pow(static_cast<double>(k), -2.0);
  }
  const PowerLawFit ideal = fit_power_law_exponent(exact);
  check.require(std::abs(ideal.exponent - (-2.0)) <= 1e-9,
                "exact-input exponent " + fmt(ideal.exponent));
  check.require(std::abs(ideal.r_squared - 1.0) <= 1e-12,
                "exact-input r^2 " + fmt(ideal.r_squared));
  check.note("sampled exponent " + fmt(sampled.exponent) +
             ", exact recovery to " + fmt(ideal.exponent));
  report(8, "rank-frequency fits recover the Zipf exponent", check,
         timer.seconds(), 30.0);
}

int run_cli(const std::string& cli, const std::string& args,
            const fs::path& log) {
  const std::string command = cli + " " + args + " > " + log.string() +
                              " 2>&1";
  const int raw = std::system(command.c_str());
#ifdef _WIN32
  return raw;
#else
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
#endif
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void criterion_9(const std::string& cli) {
  Stopwatch timer;
  Check check;
  const fs::path root =
      fs::temp_directory_path() / "zipfpoisson_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  // Golden commands and the artifacts they must reproduce byte for byte.
  struct Golden {
    std::string name;
    std::string args;  // {} replaced with the output directory
    std::vector<std::string> artifacts;
  };
  const fs::path ratings_seed_dir = root / "ratings_seed";
  const std::vector<Golden> goldens = {
      {"homogeneous-report",
       "homogeneous-report --k-max 4 --out-dir {}",
       {"homogeneous_report.json"}},
      {"solve",
       "solve --K 4 --seed 7 --format csv,json,svg --out-dir {}",
       {"solve_report.json", "times.csv", "lambdas.csv", "solution.svg"}},
      {"simulate",
       "simulate --rates 3 --breakpoints 1 --seed 11 --replications 5000 "
       "--ratings-csv --out-dir {}",
       {"pmf_comparison.json", "events.csv", "ratings.csv"}},
      {"analyze",
       "analyze --input " + (ratings_seed_dir / "ratings.csv").string() +
           " --out-dir {}",
       {"analyze_report.json", "item_counts.csv", "user_counts.csv",
        "item_rank_frequency.csv", "user_rank_frequency.csv"}},
  };

  // The analyze command needs an input; synthesize it once, deterministically.
  fs::create_directories(ratings_seed_dir);
  const int seed_status = run_cli(
      cli,
      "simulate --rates 40 --breakpoints 20 --seed 99 --replications 100 "
      "--ratings-csv --out-dir " + ratings_seed_dir.string(),
      root / "ratings_seed.log");
  check.require(seed_status == 0, "failed to synthesize analyze input");

  int artifacts_compared = 0;
  for (const Golden& golden : goldens) {
    std::string contents[2];
    bool ran_ok = true;
    for (int round = 0; round < 2; ++round) {
      const fs::path dir =
          root / (golden.name + "_round" + std::to_string(round));
      fs::create_directories(dir);
      std::string args = golden.args;
      const std::size_t where = args.find("{}");
      args.replace(where, 2, dir.string());
      const int status =
          run_cli(cli, args, dir / "log.txt");
      if (status != 0) {
        check.require(false, golden.name + " exited with " +
                                 std::to_string(status));
        ran_ok = false;
        break;
      }
      std::ostringstream bundle;
      for (const std::string& artifact : golden.artifacts) {
        const fs::path path = dir / artifact;
        if (!fs::exists(path)) {
          check.require(false, golden.name + " missing " + artifact);
          ran_ok = false;
          break;
        }
        bundle << artifact << ":" << slurp(path) << "\n";
      }
      contents[round] = bundle.str();
    }
    if (ran_ok) {
      if (contents[0] == contents[1]) {
        artifacts_compared += static_cast<int>(golden.artifacts.size());
      } else {
        check.require(false, golden.name + " outputs differ between runs");
      }
    }
  }
  check.note(std::to_string(artifacts_compared) +
             " artifacts byte-identical across repeat runs");
  report(9, "every golden command replays byte-identically", check,
         timer.seconds(), 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fputs("usage: acceptance <path-to-cli>\n", stderr);
    return 64;
  }
  const std::string cli = argv[1];

  criterion_1();
  criterion_2();
  const EquationSystem system_k10 =
      build_system(10, PairStrategy::Consecutive);
  const SolveReport solved_k10 = criterion_3(system_k10);
  criterion_4(solved_k10);
  criterion_5(solved_k10, system_k10);
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(cli);

  if (g_failures == 0) {
    std::puts("all acceptance criteria satisfied");
  } else {
    std::printf("%d acceptance criteria failed\n", g_failures);
  }
  return g_failures;
}
