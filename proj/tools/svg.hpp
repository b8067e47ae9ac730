#pragma once

#include <string>

#include "zipfpoisson/solver.hpp"

namespace zipfpoisson::cli {

/// Two-panel SVG of a solution: window endpoints t_k on the left (group id
/// "time-values") and rates lambda_k on the right (group id
/// "lambda-values"). Pure function of the solution, so identical inputs
/// give identical bytes.
std::string render_solution_svg(const InhomogeneousSolution& solution);

}  // namespace zipfpoisson::cli
