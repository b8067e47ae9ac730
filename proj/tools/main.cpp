#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "zipfpoisson/errors.hpp"

int main(int argc, char** argv) {
  using namespace zipfpoisson::cli;

  CLI::App app{
      "Poisson-process toolkit for rating-platform dataset formation: "
      "single-rate diagnostics, rate/window solving, event simulation, and "
      "dataset Zipf analysis"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from an INI/TOML file");

  HomogeneousReportArgs hr_args;
  SolveArgs solve_args;
  SimulateArgs sim_args;
  AnalyzeArgs analyze_args;
  int exit_code = kExitOk;

  const auto add_output = [](CLI::App* sub, OutputArgs& out) {
    sub->add_option("--out-dir", out.out_dir,
                    "Directory receiving output artifacts")
        ->capture_default_str();
    sub->add_option("--format", out.formats,
                    "Artifact families to write (csv, json, svg)")
        ->delimiter(',')
        ->capture_default_str();
  };

  {
    CLI::App* sub = app.add_subcommand(
        "homogeneous-report",
        "Report why a single shared rate cannot satisfy the Zipf ratios");
    sub->add_option("--k-max", hr_args.k_max,
                    "Largest rating count to include (>= 2)")
        ->required();
    sub->add_option("--consistency-tol", hr_args.consistency_tol,
                    "Spread below which the rates count as consistent")
        ->capture_default_str();
    sub->add_option("--zipf-direction", hr_args.zipf_direction,
                    "Ratio direction: paper or classical")
        ->capture_default_str();
    add_output(sub, hr_args.out);
    sub->callback([&] { exit_code = run_homogeneous_report(hr_args); });
  }

  {
    CLI::App* sub = app.add_subcommand(
        "solve", "Solve for per-count rates and windows matching the ratios");
    sub->add_option("--K", solve_args.K, "Number of counts (>= 2)")
        ->required();
    sub->add_option("--strategy", solve_args.strategy,
                    "Pair selection: consecutive, all-pairs, anchor-to-one")
        ->capture_default_str();
    sub->add_option("--form", solve_args.form,
                    "Residual form: derived-sum or paper-product")
        ->capture_default_str();
    sub->add_option("--zipf-direction", solve_args.zipf_direction,
                    "Ratio direction: paper or classical")
        ->capture_default_str();
    sub->add_option("--restriction", solve_args.restriction,
                    "Structural restriction: none, equal-rates, equal-means")
        ->capture_default_str();
    sub->add_option("--zipf-constant", solve_args.zipf_constant,
                    "Proportionality constant c")
        ->capture_default_str();
    sub->add_option("--ordering-margin", solve_args.ordering_margin,
                    "Minimum gap between consecutive windows")
        ->capture_default_str();
    sub->add_option("--starts", solve_args.starts, "Number of random starts")
        ->capture_default_str();
    sub->add_option("--max-iterations", solve_args.max_iterations,
                    "Iteration cap per start")
        ->capture_default_str();
    sub->add_option("--residual-tol", solve_args.residual_tol,
                    "Convergence threshold on the residual inf-norm")
        ->capture_default_str();
    sub->add_option("--step-tol", solve_args.step_tol,
                    "Stall threshold on the step inf-norm")
        ->capture_default_str();
    sub->add_option("--product-range", solve_args.product_range,
                    "Init range lo hi for the products lambda_k t_k")
        ->expected(2);
    CLI::Option* seed_opt =
        sub->add_option("--seed", solve_args.seed.seed, "RNG seed");
    sub->add_flag("--entropy", solve_args.seed.entropy,
                  "Draw the seed from OS entropy");
    add_output(sub, solve_args.out);
    sub->callback([&, seed_opt] {
      solve_args.seed.seed_set = seed_opt->count() > 0;
      exit_code = run_solve(solve_args);
    });
  }

  {
    CLI::App* sub = app.add_subcommand(
        "simulate",
        "Sample events from a piecewise-constant intensity and compare "
        "count frequencies against the Poisson law");
    sub->add_option("--from-solution", sim_args.from_solution,
                    "Solve report JSON whose best solution provides the "
                    "intensity");
    sub->add_option("--rates", sim_args.rates,
                    "Segment rates (with --breakpoints)")
        ->delimiter(',');
    sub->add_option("--breakpoints", sim_args.breakpoints,
                    "Segment right endpoints, last one is the horizon")
        ->delimiter(',');
    sub->add_option("--k-max", sim_args.k_max,
                    "Largest count tracked by the empirical pmf")
        ->capture_default_str();
    sub->add_option("--replications", sim_args.replications,
                    "Independent realizations for the empirical pmf")
        ->capture_default_str();
    sub->add_flag("--ratings-csv", sim_args.ratings_csv,
                  "Also synthesize a ratings.csv with Zipf identities");
    sub->add_option("--n-users", sim_args.n_users, "Synthetic user pool")
        ->capture_default_str();
    sub->add_option("--user-exponent", sim_args.user_exponent,
                    "Zipf exponent for user popularity")
        ->capture_default_str();
    sub->add_option("--n-items", sim_args.n_items, "Synthetic item pool")
        ->capture_default_str();
    sub->add_option("--item-exponent", sim_args.item_exponent,
                    "Zipf exponent for item popularity")
        ->capture_default_str();
    sub->add_option("--time-scale", sim_args.time_scale,
                    "Seconds of timestamp per unit of model time")
        ->capture_default_str();
    CLI::Option* seed_opt =
        sub->add_option("--seed", sim_args.seed.seed, "RNG seed");
    sub->add_flag("--entropy", sim_args.seed.entropy,
                  "Draw the seed from OS entropy");
    add_output(sub, sim_args.out);
    sub->callback([&, seed_opt] {
      sim_args.seed.seed_set = seed_opt->count() > 0;
      exit_code = run_simulate(sim_args);
    });
  }

  {
    CLI::App* sub = app.add_subcommand(
        "analyze",
        "Measure popularity and rank-frequency Zipf behavior of a rating "
        "CSV");
    sub->add_option("--input", analyze_args.input, "Rating CSV file")
        ->required();
    sub->add_flag("--strict", analyze_args.strict,
                  "Fail on the first malformed row instead of skipping");
    sub->add_option("--k-min", analyze_args.k_min,
                    "Smallest count/rank used by the power-law fits")
        ->capture_default_str();
    sub->add_option("--ratio-k-max", analyze_args.ratio_k_max,
                    "Check count ratios for pairs (k, k-1) up to this k")
        ->capture_default_str();
    add_output(sub, analyze_args.out);
    sub->callback([&] { exit_code = run_analyze(analyze_args); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const zipfpoisson::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}
