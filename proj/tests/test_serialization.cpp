#include <doctest.h>

#include <string>
#include <vector>

#include "zipfpoisson/errors.hpp"
#include "zipfpoisson/json_io.hpp"

using namespace zipfpoisson;

TEST_SUITE("serialization") {
  TEST_CASE("enum names round trip and reject strangers") {
    CHECK(to_string(ResidualForm::DerivedSum) == "derived-sum");
    CHECK(to_string(ResidualForm::PaperProduct) == "paper-product");
    CHECK(residual_form_from_string("derived-sum") ==
          ResidualForm::DerivedSum);
    CHECK(residual_form_from_string("paper-product") ==
          ResidualForm::PaperProduct);
    CHECK_THROWS_AS(residual_form_from_string("sum"), ConfigError);

    CHECK(to_string(ZipfDirection::Paper) == "paper");
    CHECK(to_string(ZipfDirection::Classical) == "classical");
    CHECK(zipf_direction_from_string("paper") == ZipfDirection::Paper);
    CHECK(zipf_direction_from_string("classical") ==
          ZipfDirection::Classical);
    CHECK_THROWS_AS(zipf_direction_from_string("Paper"), ConfigError);

    CHECK(to_string(PairStrategy::Consecutive) == "consecutive");
    CHECK(to_string(PairStrategy::AllPairs) == "all-pairs");
    CHECK(to_string(PairStrategy::AnchorToOne) == "anchor-to-one");
    for (PairStrategy s : {PairStrategy::Consecutive, PairStrategy::AllPairs,
                           PairStrategy::AnchorToOne}) {
      CHECK(pair_strategy_from_string(to_string(s)) == s);
    }
    CHECK_THROWS_AS(pair_strategy_from_string(""), ConfigError);

    CHECK(to_string(Verdict::Consistent) == "consistent");
    CHECK(to_string(Verdict::Inconsistent) == "inconsistent");

    CHECK(to_string(Restriction::None) == "none");
    CHECK(to_string(Restriction::EqualRates) == "equal-rates");
    CHECK(to_string(Restriction::EqualMeans) == "equal-means");
    for (Restriction r : {Restriction::None, Restriction::EqualRates,
                          Restriction::EqualMeans}) {
      CHECK(restriction_from_string(to_string(r)) == r);
    }
    CHECK_THROWS_AS(restriction_from_string("equal"), ConfigError);
  }

  TEST_CASE("equation systems round trip") {
    SystemOptions options;
    options.form = ResidualForm::PaperProduct;
    options.zipf_direction = ZipfDirection::Classical;
    options.c = 2.5;
    options.ordering_margin = 1e-4;
    const EquationSystem system =
        build_system(4, PairStrategy::AllPairs, options);
    const EquationSystem back =
        deserialize_equation_system(serialize(system));
    CHECK(back == system);
  }

  TEST_CASE("deserializing a defective system fails") {
    const EquationSystem system = build_system(3, PairStrategy::Consecutive);
    nlohmann::json j = serialize(system);
    nlohmann::json missing = j;
    missing.erase("pairs");
    CHECK_THROWS_AS(deserialize_equation_system(missing), ConfigError);

    nlohmann::json bad_t0 = j;
    bad_t0["t0"] = 1.0;
    CHECK_THROWS_AS(deserialize_equation_system(bad_t0), ConfigError);

    nlohmann::json bad_pair = j;
    bad_pair["pairs"][0]["k"] = 9;  // beyond K
    CHECK_THROWS_AS(deserialize_equation_system(bad_pair), ConfigError);

    nlohmann::json bad_type = j;
    bad_type["K"] = "three";
    CHECK_THROWS_AS(deserialize_equation_system(bad_type), ConfigError);
  }

  TEST_CASE("model params round trip bitwise") {
    ModelParams params;
    params.lambdas = {0.1, 2.0, 4.5};
    params.times = {0.3333333333333333, 1.7976931348623157, 3.0};
    const ModelParams back = deserialize_model_params(serialize(params));
    CHECK(back == params);
    CHECK_THROWS_AS(deserialize_model_params(nlohmann::json::object()),
                    ConfigError);
  }

  TEST_CASE("solve reports round trip") {
    const EquationSystem system = build_system(3, PairStrategy::Consecutive);
    SolverOptions options;
    options.seed = 8;
    options.n_starts = 4;
    const SolveReport report = solve(system, options);
    const SolveReport back = deserialize_solve_report(serialize(report));
    REQUIRE(back.solutions.size() == report.solutions.size());
    CHECK(back.best == report.best);
    CHECK(back.distinct_count == report.distinct_count);
    CHECK(back.no_convergence == report.no_convergence);
    for (std::size_t i = 0; i < report.solutions.size(); ++i) {
      const InhomogeneousSolution& a = report.solutions[i];
      const InhomogeneousSolution& b = back.solutions[i];
      CHECK(a.params == b.params);
      CHECK(a.residuals.values == b.residuals.values);
      CHECK(a.residuals.inf_norm == b.residuals.inf_norm);
      CHECK(a.converged == b.converged);
      CHECK(a.start_index == b.start_index);
      CHECK(a.iterations == b.iterations);
      CHECK(a.objective == b.objective);
    }

    nlohmann::json j = serialize(report);
    j["best"] = 99;
    CHECK_THROWS_AS(deserialize_solve_report(j), ConfigError);
    nlohmann::json empty = serialize(report);
    empty["solutions"] = nlohmann::json::array();
    CHECK_THROWS_AS(deserialize_solve_report(empty), ConfigError);
  }

  TEST_CASE("solver options serialize the init range as null or a pair") {
    SolverOptions options;
    nlohmann::json j = serialize(options);
    CHECK(j["init_product_range"].is_null());
    options.init_product_range = {0.5, 50.0};
    j = serialize(options);
    REQUIRE(j["init_product_range"].is_array());
    CHECK(j["init_product_range"][0] == 0.5);
    CHECK(j["init_product_range"][1] == 50.0);
  }

  TEST_CASE("count distributions round trip as entry lists") {
    CountDistribution dist;
    dist.counts = {{3, 1.0}, {1, 2.0}, {10, 0.25}};
    dist.normalized = false;
    const nlohmann::json j = serialize(dist);
    REQUIRE(j["entries"].is_array());
    CHECK(j["entries"][0][0] == 1);  // key order
    const CountDistribution back = deserialize_count_distribution(j);
    CHECK(back == dist);
    CHECK_THROWS_AS(
        deserialize_count_distribution(nlohmann::json::object()),
        ConfigError);
  }

  TEST_CASE("reports serialize without loss of structure") {
    const ConsistencyReport consistency = homogeneity_consistency_report(3);
    const nlohmann::json cj = serialize(consistency);
    CHECK(cj["verdict"] == "inconsistent");
    CHECK(cj["spread"] == 0.5);
    REQUIRE(cj["pair_lambdas"].is_array());
    CHECK(cj["pair_lambdas"].size() == 3);

    const FeasibilityCertificate cert = counting_form_feasibility(2);
    const nlohmann::json fj = serialize(cert);
    CHECK(fj["k"] == 2);
    CHECK(fj["feasible"] == false);
    CHECK(fj["x_star"] == 2.0);

    const PiecewiseIntensity intensity({1.0, 2.0}, {3.0, 0.5});
    const nlohmann::json ij = serialize(intensity);
    CHECK(ij["breakpoints"].size() == 2);
    CHECK(ij["horizon"] == 2.0);

    const EmpiricalPmf pmf =
        empirical_count_pmf(PiecewiseIntensity({1.0}, {1.0}), 4, 100, 3);
    const nlohmann::json pj = serialize(pmf);
    CHECK(pj["replications"] == 100);
    CHECK(pj.contains("tail_mass"));

    RatioCheck check;
    check.k = 2;
    check.j = 1;
    check.empirical = 1.9;
    check.paper_predicted = 2.0;
    check.classical_predicted = 0.5;
    ZipfFitReport fit_report;
    fit_report.fit.exponent = -1.0;
    fit_report.fit.intercept = 0.5;
    fit_report.fit.r_squared = 0.99;
    fit_report.ratio_checks = {check};
    fit_report.diagnostics = {"skipped pair (4, 3): zero weight"};
    const nlohmann::json zj = serialize(fit_report);
    CHECK(zj["fit"]["exponent"] == -1.0);
    CHECK(zj["ratio_checks"][0]["paper_predicted"] == 2.0);
    CHECK(zj["diagnostics"][0] ==
          "skipped pair (4, 3): zero weight");
  }

  TEST_CASE("dump_json is canonical") {
    nlohmann::json j;
    j["zebra"] = 1;
    j["apple"] = {1, 2};
    j["mid"] = nlohmann::json::object();
    const std::string a = dump_json(j);
    CHECK(a ==
          "{\n  \"apple\": [\n    1,\n    2\n  ],\n  \"mid\": {},\n"
          "  \"zebra\": 1\n}\n");
    CHECK(a == dump_json(j));
    CHECK(a.back() == '\n');
  }
}
