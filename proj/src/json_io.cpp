#include "zipfpoisson/json_io.hpp"

#include <stdexcept>
#include <utility>

#include "zipfpoisson/errors.hpp"

namespace zipfpoisson {

namespace {

using nlohmann::json;

/// Runs a deserializer body and converts any failure (missing keys, wrong
/// types, violated invariants) into a ConfigError naming the artifact.
template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string to_string(ResidualForm form) {
  switch (form) {
    case ResidualForm::DerivedSum: return "derived-sum";
    case ResidualForm::PaperProduct: return "paper-product";
  }
  throw std::logic_error("unreachable residual form");
}

std::string to_string(ZipfDirection direction) {
  switch (direction) {
    case ZipfDirection::Paper: return "paper";
    case ZipfDirection::Classical: return "classical";
  }
  throw std::logic_error("unreachable zipf direction");
}

std::string to_string(PairStrategy strategy) {
  switch (strategy) {
    case PairStrategy::Consecutive: return "consecutive";
    case PairStrategy::AllPairs: return "all-pairs";
    case PairStrategy::AnchorToOne: return "anchor-to-one";
  }
  throw std::logic_error("unreachable pair strategy");
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
  }
  throw std::logic_error("unreachable verdict");
}

std::string to_string(Restriction restriction) {
  switch (restriction) {
    case Restriction::None: return "none";
    case Restriction::EqualRates: return "equal-rates";
    case Restriction::EqualMeans: return "equal-means";
  }
  throw std::logic_error("unreachable restriction");
}

ResidualForm residual_form_from_string(const std::string& name) {
  if (name == "derived-sum") return ResidualForm::DerivedSum;
  if (name == "paper-product") return ResidualForm::PaperProduct;
  throw ConfigError("unknown residual form '" + name + "'");
}

ZipfDirection zipf_direction_from_string(const std::string& name) {
  if (name == "paper") return ZipfDirection::Paper;
  if (name == "classical") return ZipfDirection::Classical;
  throw ConfigError("unknown zipf direction '" + name + "'");
}

PairStrategy pair_strategy_from_string(const std::string& name) {
  if (name == "consecutive") return PairStrategy::Consecutive;
  if (name == "all-pairs") return PairStrategy::AllPairs;
  if (name == "anchor-to-one") return PairStrategy::AnchorToOne;
  throw ConfigError("unknown pair strategy '" + name + "'");
}

Restriction restriction_from_string(const std::string& name) {
  if (name == "none") return Restriction::None;
  if (name == "equal-rates") return Restriction::EqualRates;
  if (name == "equal-means") return Restriction::EqualMeans;
  throw ConfigError("unknown restriction '" + name + "'");
}

json serialize(const PairEquation& pair) {
  return json{{"k", pair.k}, {"j", pair.j}};
}

json serialize(const EquationSystem& system) {
  json pairs = json::array();
  for (const PairEquation& pair : system.pairs) {
    pairs.push_back(serialize(pair));
  }
  return json{{"K", system.K},
              {"pairs", std::move(pairs)},
              {"form", to_string(system.form)},
              {"zipf_direction", to_string(system.zipf_direction)},
              {"c", system.c},
              {"t0", system.t0},
              {"ordering_margin", system.ordering_margin}};
}

EquationSystem deserialize_equation_system(const json& j) {
  return guarded("equation system JSON", [&] {
    EquationSystem system;
    system.K = j.at("K").get<int>();
    for (const json& pj : j.at("pairs")) {
      system.pairs.emplace_back(pj.at("k").get<int>(), pj.at("j").get<int>());
    }
    system.form = residual_form_from_string(j.at("form").get<std::string>());
    system.zipf_direction =
        zipf_direction_from_string(j.at("zipf_direction").get<std::string>());
    system.c = j.at("c").get<double>();
    system.t0 = j.at("t0").get<double>();
    system.ordering_margin = j.at("ordering_margin").get<double>();
    system.validate();
    return system;
  });
}

json serialize(const ModelParams& params) {
  return json{{"lambdas", params.lambdas}, {"times", params.times}};
}

ModelParams deserialize_model_params(const json& j) {
  return guarded("model params JSON", [&] {
    ModelParams params;
    params.lambdas = j.at("lambdas").get<std::vector<double>>();
    params.times = j.at("times").get<std::vector<double>>();
    if (params.lambdas.size() != params.times.size()) {
      throw ConfigError("model params JSON: lambdas/times size mismatch");
    }
    return params;
  });
}

json serialize(const ResidualVector& residuals) {
  return json{{"values", residuals.values}, {"inf_norm", residuals.inf_norm}};
}

json serialize(const ConsistencyReport& report) {
  json pair_lambdas = json::array();
  for (const auto& [pair, lambda] : report.pair_lambdas) {
    pair_lambdas.push_back(
        json{{"k", pair.k}, {"j", pair.j}, {"lambda", lambda}});
  }
  return json{{"pair_lambdas", std::move(pair_lambdas)},
              {"spread", report.spread},
              {"verdict", to_string(report.verdict)}};
}

json serialize(const FeasibilityCertificate& certificate) {
  return json{{"k", certificate.k},
              {"x_star", certificate.x_star},
              {"f_min", certificate.f_min},
              {"feasible", certificate.feasible}};
}

json serialize(const SolverOptions& options) {
  json range = nullptr;
  if (options.init_product_range) {
    range = json::array(
        {options.init_product_range->first, options.init_product_range->second});
  }
  return json{{"max_iterations", options.max_iterations},
              {"residual_tol", options.residual_tol},
              {"step_tol", options.step_tol},
              {"n_starts", options.n_starts},
              {"seed", options.seed},
              {"init_product_range", std::move(range)},
              {"restriction", to_string(options.restriction)}};
}

json serialize(const InhomogeneousSolution& solution) {
  return json{{"params", serialize(solution.params)},
              {"residuals", serialize(solution.residuals)},
              {"converged", solution.converged},
              {"start_index", solution.start_index},
              {"iterations", solution.iterations},
              {"objective", solution.objective}};
}

InhomogeneousSolution deserialize_solution(const json& j) {
  return guarded("solution JSON", [&] {
    InhomogeneousSolution solution;
    solution.params = deserialize_model_params(j.at("params"));
    solution.residuals.values =
        j.at("residuals").at("values").get<std::vector<double>>();
    solution.residuals.inf_norm =
        j.at("residuals").at("inf_norm").get<double>();
    solution.converged = j.at("converged").get<bool>();
    solution.start_index = j.at("start_index").get<int>();
    solution.iterations = j.at("iterations").get<int>();
    solution.objective = j.at("objective").get<double>();
    return solution;
  });
}

json serialize(const SolveReport& report) {
  json solutions = json::array();
  for (const InhomogeneousSolution& solution : report.solutions) {
    solutions.push_back(serialize(solution));
  }
  return json{{"solutions", std::move(solutions)},
              {"best", report.best},
              {"distinct_count", report.distinct_count},
              {"no_convergence", report.no_convergence}};
}

SolveReport deserialize_solve_report(const json& j) {
  return guarded("solve report JSON", [&] {
    SolveReport report;
    for (const json& sj : j.at("solutions")) {
      report.solutions.push_back(deserialize_solution(sj));
    }
    report.best = j.at("best").get<int>();
    report.distinct_count = j.at("distinct_count").get<int>();
    report.no_convergence = j.at("no_convergence").get<bool>();
    if (report.solutions.empty()) {
      throw ConfigError("solve report JSON: no solutions");
    }
    if (report.best < 0 ||
        report.best >= static_cast<int>(report.solutions.size())) {
      throw ConfigError("solve report JSON: best index out of range");
    }
    return report;
  });
}

json serialize(const CountDistribution& dist) {
  json entries = json::array();
  for (const auto& [k, weight] : dist.counts) {
    entries.push_back(json::array({k, weight}));
  }
  return json{{"entries", std::move(entries)},
              {"normalized", dist.normalized}};
}

CountDistribution deserialize_count_distribution(const json& j) {
  return guarded("count distribution JSON", [&] {
    CountDistribution dist;
    for (const json& entry : j.at("entries")) {
      dist.counts[entry.at(0).get<std::int64_t>()] =
          entry.at(1).get<double>();
    }
    dist.normalized = j.at("normalized").get<bool>();
    return dist;
  });
}

json serialize(const PiecewiseIntensity& intensity) {
  return json{{"breakpoints", intensity.breakpoints},
              {"rates", intensity.rates},
              {"horizon", intensity.horizon}};
}

json serialize(const EmpiricalPmf& pmf) {
  return json{{"pmf", serialize(pmf.pmf)},
              {"tail_mass", pmf.tail_mass},
              {"replications", pmf.replications}};
}

json serialize(const RatioCheck& check) {
  return json{{"k", check.k},
              {"j", check.j},
              {"empirical", check.empirical},
              {"paper_predicted", check.paper_predicted},
              {"classical_predicted", check.classical_predicted}};
}

json serialize(const PowerLawFit& fit) {
  return json{{"exponent", fit.exponent},
              {"intercept", fit.intercept},
              {"r_squared", fit.r_squared}};
}

json serialize(const ZipfFitReport& report) {
  json checks = json::array();
  for (const RatioCheck& check : report.ratio_checks) {
    checks.push_back(serialize(check));
  }
  return json{{"fit", serialize(report.fit)},
              {"ratio_checks", std::move(checks)},
              {"diagnostics", report.diagnostics}};
}

std::string dump_json(const json& j) {
  return j.dump(2) + "\n";
}

}  // namespace zipfpoisson
