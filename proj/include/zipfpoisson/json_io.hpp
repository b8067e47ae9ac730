#pragma once

#include <string>

#include <json.hpp>

#include "zipfpoisson/dataset.hpp"
#include "zipfpoisson/simulator.hpp"
#include "zipfpoisson/solver.hpp"

namespace zipfpoisson {

/// Current schema_version stamped into every JSON artifact.
inline constexpr int kSchemaVersion = 1;

/// Enum <-> string maps. Parsers throw ConfigError on unknown names.
std::string to_string(ResidualForm form);
std::string to_string(ZipfDirection direction);
std::string to_string(PairStrategy strategy);
std::string to_string(Verdict verdict);
std::string to_string(Restriction restriction);
ResidualForm residual_form_from_string(const std::string& name);
ZipfDirection zipf_direction_from_string(const std::string& name);
PairStrategy pair_strategy_from_string(const std::string& name);
Restriction restriction_from_string(const std::string& name);

nlohmann::json serialize(const PairEquation& pair);
nlohmann::json serialize(const EquationSystem& system);
nlohmann::json serialize(const ModelParams& params);
nlohmann::json serialize(const ResidualVector& residuals);
nlohmann::json serialize(const ConsistencyReport& report);
nlohmann::json serialize(const FeasibilityCertificate& certificate);
nlohmann::json serialize(const SolverOptions& options);
nlohmann::json serialize(const InhomogeneousSolution& solution);
nlohmann::json serialize(const SolveReport& report);
nlohmann::json serialize(const CountDistribution& dist);
nlohmann::json serialize(const PiecewiseIntensity& intensity);
nlohmann::json serialize(const EmpiricalPmf& pmf);
nlohmann::json serialize(const RatioCheck& check);
nlohmann::json serialize(const PowerLawFit& fit);
nlohmann::json serialize(const ZipfFitReport& report);

/// Deserializers validate what they build (ConfigError on bad content).
EquationSystem deserialize_equation_system(const nlohmann::json& j);
ModelParams deserialize_model_params(const nlohmann::json& j);
InhomogeneousSolution deserialize_solution(const nlohmann::json& j);
SolveReport deserialize_solve_report(const nlohmann::json& j);
CountDistribution deserialize_count_distribution(const nlohmann::json& j);

/// Canonical dump: sorted keys (nlohmann::json's natural order), two-space
/// indent, trailing newline. All JSON artifacts go through this so repeat
/// runs are byte-identical.
std::string dump_json(const nlohmann::json& j);

}  // namespace zipfpoisson
