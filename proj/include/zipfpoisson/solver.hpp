#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zipfpoisson/inhomogeneous.hpp"

namespace zipfpoisson {

/// Two converged solutions count as distinct when their product vectors
/// (lambda_k t_k) differ by more than this in the infinity norm.
inline constexpr double kDistinctProductTol = 1e-3;

/// Optional structural restriction applied during a solve.
///
/// EqualRates ties every lambda_k to one shared rate while the windows stay
/// free; such systems still admit exact solutions. EqualMeans ties every
/// expected count lambda_k t_k to one shared value, which collapses the
/// model to a single-parameter Poisson pmf for all counts; under the Zipf
/// ratios that model is solvable for K = 2 and provably unsolvable for
/// K >= 3 (consecutive pairs pin ln x to both ln 4 and ln 4.5).
enum class Restriction { None, EqualRates, EqualMeans };

struct SolverOptions {
  int max_iterations = 500;
  double residual_tol = 1e-8;  // convergence test on the residual inf-norm
  double step_tol = 1e-12;     // stall test on the inf-norm of the LM step
  int n_starts = 8;
  std::uint64_t seed = 0;
  /// Range for log-uniform draws of the initial products; defaults to
  /// (0.01, 2K) when unset.
  std::optional<std::pair<double, double>> init_product_range;
  Restriction restriction = Restriction::None;
};

struct InhomogeneousSolution {
  ModelParams params;
  ResidualVector residuals;
  bool converged = false;
  int start_index = 0;
  int iterations = 0;
  double objective = 0.0;  // sum of squared residuals
};

struct SolveReport {
  /// All per-start solutions, sorted by (objective, start_index).
  std::vector<InhomogeneousSolution> solutions;
  /// Index into solutions of the best converged solution (0 if none
  /// converged; check no_convergence before trusting it).
  int best = 0;
  /// Converged solutions pairwise farther than kDistinctProductTol apart in
  /// product space.
  int distinct_count = 0;
  bool no_convergence = true;
};

/// Multi-start damped least-squares solve of the system. Start i draws its
/// initial point from the substream seed xor i, so reports are reproducible
/// and individual starts can be replayed in isolation.
SolveReport solve(const EquationSystem& system, const SolverOptions& options);

/// Single local solve from a caller-supplied feasible starting point.
/// Throws InitError if init violates the system constraints. The optional
/// trace receives the objective after every accepted step, starting with
/// the initial objective.
InhomogeneousSolution local_solve(const EquationSystem& system,
                                  const ModelParams& init,
                                  const SolverOptions& options,
                                  std::vector<double>* objective_trace = nullptr);

/// Recomputes residuals and constraints from scratch and checks the
/// convergence contract: residual inf-norm <= residual_tol and no
/// constraint violations.
bool verify(const InhomogeneousSolution& solution,
            const EquationSystem& system, double residual_tol = 1e-8);

/// Smooth bijection between the solver's unconstrained coordinates z and
/// feasible model parameters. Every z maps to strictly positive rates and
/// strictly increasing times separated by at least ordering_margin:
///
///   None:       z = (u_1..u_K, v_1..v_K),  lambda_k = exp(u_k)
///   EqualRates: z = (u, v_1..v_K),         lambda_k = exp(u)
///   EqualMeans: z = (w, v_1..v_K),         lambda_k t_k = exp(w)
///
/// with t_1 = exp(v_1) and t_k = t_{k-1} + margin + exp(v_k). Exposed so
/// the analytic Jacobian can be validated against finite differences.
struct SolverParameterization {
  int K = 0;
  double ordering_margin = 1e-6;
  Restriction restriction = Restriction::None;

  int dimension() const;
  ModelParams params(std::span<const double> z) const;
  /// Inverse of params(); for restricted modes the shared coordinate is the
  /// mean of the per-count logs.
  std::vector<double> coordinates(const ModelParams& params) const;
};

/// Jacobian of the system residuals with respect to z, row-major with one
/// row per pair. Analytic for ResidualForm::DerivedSum, central finite
/// differences otherwise.
std::vector<double> residual_jacobian(const SolverParameterization& repar,
                                      const EquationSystem& system,
                                      std::span<const double> z);

}  // namespace zipfpoisson
