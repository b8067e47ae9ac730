#include "zipfpoisson/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "zipfpoisson/errors.hpp"
#include "zipfpoisson/rng.hpp"

namespace zipfpoisson {

namespace {

constexpr double kMuScale = 1e-3;     // initial damping = kMuScale * max diag
constexpr double kMuShrink = 3.0;     // damping divisor on accepted steps
constexpr double kMuGrow = 4.0;       // damping multiplier on rejected steps
constexpr double kMuFloor = 1e-14;
constexpr double kMuCeiling = 1e16;   // give up once damping exceeds this
constexpr double kMinCoordinateGap = 1e-12;

void validate_options(const SolverOptions& options) {
  if (options.max_iterations < 1) {
    throw ConfigError("max_iterations must be at least 1");
  }
  if (options.n_starts < 1) {
    throw ConfigError("n_starts must be at least 1");
  }
  if (!(options.residual_tol > 0.0) || !std::isfinite(options.residual_tol)) {
    throw ConfigError("residual_tol must be positive and finite");
  }
  if (!(options.step_tol >= 0.0) || !std::isfinite(options.step_tol)) {
    throw ConfigError("step_tol must be nonnegative and finite");
  }
  if (options.init_product_range) {
    const auto [lo, hi] = *options.init_product_range;
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
      throw ConfigError("init_product_range requires 0 < lo < hi");
    }
  }
}

Eigen::VectorXd residuals_at(const SolverParameterization& repar,
                             const EquationSystem& system,
                             const Eigen::VectorXd& z) {
  const ModelParams p =
      repar.params(std::span<const double>(z.data(), z.size()));
  const ResidualVector rv = residual_vector(p, system);
  return Eigen::Map<const Eigen::VectorXd>(rv.values.data(),
                                           static_cast<long>(rv.values.size()));
}

// d(lambda_m t_m)/dz as a dense K x dim matrix for the current z.
Eigen::MatrixXd product_jacobian(const SolverParameterization& repar,
                                 const Eigen::VectorXd& z) {
  const int K = repar.K;
  const int dim = repar.dimension();
  const ModelParams p =
      repar.params(std::span<const double>(z.data(), z.size()));
  Eigen::MatrixXd dx = Eigen::MatrixXd::Zero(K, dim);

  const int v_offset = (repar.restriction == Restriction::None) ? K : 1;
  for (int m = 0; m < K; ++m) {
    const double x_m = p.lambdas[m] * p.times[m];
    switch (repar.restriction) {
      case Restriction::None:
        dx(m, m) = x_m;
        break;
      case Restriction::EqualRates:
      case Restriction::EqualMeans:
        dx(m, 0) = x_m;
        break;
    }
    if (repar.restriction != Restriction::EqualMeans) {
      // t_m depends on v_1..v_m through increments exp(v_p).
      for (int pp = 0; pp <= m; ++pp) {
        dx(m, v_offset + pp) = p.lambdas[m] * std::exp(z[v_offset + pp]);
      }
    }
  }
  return dx;
}

Eigen::MatrixXd jacobian_matrix(const SolverParameterization& repar,
                                const EquationSystem& system,
                                const Eigen::VectorXd& z) {
  const int dim = repar.dimension();
  const int rows = static_cast<int>(system.pairs.size());

  if (system.form == ResidualForm::DerivedSum) {
    const ModelParams p =
        repar.params(std::span<const double>(z.data(), z.size()));
    const Eigen::MatrixXd dx = product_jacobian(repar, z);
    Eigen::MatrixXd J(rows, dim);
    for (int row = 0; row < rows; ++row) {
      const PairEquation& pair = system.pairs[row];
      const double xk = p.product(pair.k);
      const double xj = p.product(pair.j);
      const double drdxk = pair.k / xk - 1.0;
      const double drdxj = 1.0 - pair.j / xj;
      J.row(row) = drdxk * dx.row(pair.k - 1) + drdxj * dx.row(pair.j - 1);
    }
    return J;
  }

  Eigen::MatrixXd J(rows, dim);
  for (int i = 0; i < dim; ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(z[i]));
    Eigen::VectorXd zp = z;
    Eigen::VectorXd zm = z;
    zp[i] += h;
    zm[i] -= h;
    const Eigen::VectorXd rp = residuals_at(repar, system, zp);
    const Eigen::VectorXd rm = residuals_at(repar, system, zm);
    J.col(i) = (rp - rm) / (zp[i] - zm[i]);
  }
  return J;
}

struct LmOutcome {
  Eigen::VectorXd z;
  int iterations = 0;
  bool converged = false;
};

LmOutcome run_lm(const SolverParameterization& repar,
                 const EquationSystem& system, Eigen::VectorXd z,
                 const SolverOptions& options,
                 std::vector<double>* objective_trace) {
  Eigen::VectorXd r = residuals_at(repar, system, z);
  double objective = r.squaredNorm();
  if (objective_trace) {
    objective_trace->push_back(objective);
  }

  LmOutcome out;
  out.converged = r.lpNorm<Eigen::Infinity>() <= options.residual_tol;
  double mu = -1.0;

  while (!out.converged && out.iterations < options.max_iterations) {
    const Eigen::MatrixXd J = jacobian_matrix(repar, system, z);
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    if (mu < 0.0) {
      mu = kMuScale * std::max(A.diagonal().maxCoeff(), 1e-12);
    }

    bool stepped = false;
    while (mu <= kMuCeiling) {
      Eigen::MatrixXd damped = A;
      damped.diagonal().array() += mu;
      const Eigen::VectorXd delta = damped.ldlt().solve(-g);
      if (!delta.allFinite()) {
        mu *= kMuGrow;
        continue;
      }
      if (delta.lpNorm<Eigen::Infinity>() <= options.step_tol) {
        break;  // proposed step below resolution: stalled
      }
      const Eigen::VectorXd z_trial = z + delta;
      const Eigen::VectorXd r_trial = residuals_at(repar, system, z_trial);
      const double trial_objective =
          r_trial.allFinite() ? r_trial.squaredNorm()
                              : std::numeric_limits<double>::infinity();
      if (std::isfinite(trial_objective) && trial_objective < objective) {
        z = z_trial;
        r = r_trial;
        objective = trial_objective;
        mu = std::max(mu / kMuShrink, kMuFloor);
        stepped = true;
        break;
      }
      mu *= kMuGrow;
    }

    if (!stepped) {
      break;
    }
    ++out.iterations;
    if (objective_trace) {
      objective_trace->push_back(objective);
    }
    out.converged = r.lpNorm<Eigen::Infinity>() <= options.residual_tol;
  }

  out.z = std::move(z);
  return out;
}

InhomogeneousSolution make_solution(const SolverParameterization& repar,
                                    const EquationSystem& system,
                                    const LmOutcome& lm, int start_index) {
  InhomogeneousSolution solution;
  solution.params =
      repar.params(std::span<const double>(lm.z.data(), lm.z.size()));
  solution.residuals = residual_vector(solution.params, system);
  solution.converged = lm.converged;
  solution.start_index = start_index;
  solution.iterations = lm.iterations;
  for (double r : solution.residuals.values) {
    solution.objective += r * r;
  }
  return solution;
}

ModelParams draw_init(Rng& rng, int K, double product_lo, double product_hi,
                      double margin) {
  std::vector<double> products(K);
  for (double& x : products) {
    x = rng.log_uniform(product_lo, product_hi);
  }
  std::vector<double> times(K);
  for (double& t : times) {
    t = K * (1.0 - rng.uniform());  // uniform on (0, K]
  }
  std::sort(times.begin(), times.end());
  times[0] = std::max(times[0], 2.0 * margin);
  for (int k = 1; k < K; ++k) {
    times[k] = std::max(times[k], times[k - 1] + 2.0 * margin);
  }

  ModelParams init;
  init.times = times;
  init.lambdas.resize(K);
  for (int k = 0; k < K; ++k) {
    init.lambdas[k] = products[k] / times[k];
  }
  return init;
}

std::vector<double> product_vector(const ModelParams& params) {
  std::vector<double> x(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    x[i] = params.lambdas[i] * params.times[i];
  }
  return x;
}

double sort_key(const InhomogeneousSolution& s) {
  return std::isfinite(s.objective)
             ? s.objective
             : std::numeric_limits<double>::infinity();
}

}  // namespace

int SolverParameterization::dimension() const {
  return restriction == Restriction::None ? 2 * K : K + 1;
}

ModelParams SolverParameterization::params(std::span<const double> z) const {
  if (K < 1) {
    throw std::domain_error("parameterization requires K >= 1");
  }
  if (static_cast<int>(z.size()) != dimension()) {
    throw std::domain_error("coordinate vector has wrong dimension");
  }
  const int v_offset = (restriction == Restriction::None) ? K : 1;

  ModelParams p;
  p.lambdas.resize(K);
  p.times.resize(K);
  double t = 0.0;
  for (int k = 0; k < K; ++k) {
    t = (k == 0) ? std::exp(z[v_offset])
                 : t + ordering_margin + std::exp(z[v_offset + k]);
    p.times[k] = t;
  }
  switch (restriction) {
    case Restriction::None:
      for (int k = 0; k < K; ++k) {
        p.lambdas[k] = std::exp(z[k]);
      }
      break;
    case Restriction::EqualRates: {
      const double lambda = std::exp(z[0]);
      for (int k = 0; k < K; ++k) {
        p.lambdas[k] = lambda;
      }
      break;
    }
    case Restriction::EqualMeans: {
      const double x = std::exp(z[0]);
      for (int k = 0; k < K; ++k) {
        p.lambdas[k] = x / p.times[k];
      }
      break;
    }
  }
  return p;
}

std::vector<double> SolverParameterization::coordinates(
    const ModelParams& params) const {
  if (static_cast<int>(params.size()) != K ||
      params.lambdas.size() != params.times.size()) {
    throw std::domain_error("params size does not match parameterization");
  }
  std::vector<double> z(dimension());
  const int v_offset = (restriction == Restriction::None) ? K : 1;
  for (int k = 0; k < K; ++k) {
    const double gap =
        (k == 0) ? params.times[0]
                 : params.times[k] - params.times[k - 1] - ordering_margin;
    if (!(params.times[k] > 0.0)) {
      throw std::domain_error("coordinates require positive times");
    }
    // Gaps at exactly the margin would need v = -inf; nudge them instead.
    z[v_offset + k] = std::log(std::max(gap, kMinCoordinateGap));
  }
  switch (restriction) {
    case Restriction::None:
      for (int k = 0; k < K; ++k) {
        if (!(params.lambdas[k] > 0.0)) {
          throw std::domain_error("coordinates require positive rates");
        }
        z[k] = std::log(params.lambdas[k]);
      }
      break;
    case Restriction::EqualRates: {
      double mean_log = 0.0;
      for (int k = 0; k < K; ++k) {
        if (!(params.lambdas[k] > 0.0)) {
          throw std::domain_error("coordinates require positive rates");
        }
        mean_log += std::log(params.lambdas[k]);
      }
      z[0] = mean_log / K;
      break;
    }
    case Restriction::EqualMeans: {
      double mean_log = 0.0;
      for (int k = 0; k < K; ++k) {
        const double x = params.lambdas[k] * params.times[k];
        if (!(x > 0.0)) {
          throw std::domain_error("coordinates require positive products");
        }
        mean_log += std::log(x);
      }
      z[0] = mean_log / K;
      break;
    }
  }
  return z;
}

std::vector<double> residual_jacobian(const SolverParameterization& repar,
                                      const EquationSystem& system,
                                      std::span<const double> z) {
  const Eigen::VectorXd zv =
      Eigen::Map<const Eigen::VectorXd>(z.data(), static_cast<long>(z.size()));
  const Eigen::MatrixXd J = jacobian_matrix(repar, system, zv);
  std::vector<double> out(static_cast<std::size_t>(J.rows()) *
                          static_cast<std::size_t>(J.cols()));
  for (long row = 0; row < J.rows(); ++row) {
    for (long col = 0; col < J.cols(); ++col) {
      out[static_cast<std::size_t>(row) * J.cols() + col] = J(row, col);
    }
  }
  return out;
}

InhomogeneousSolution local_solve(const EquationSystem& system,
                                  const ModelParams& init,
                                  const SolverOptions& options,
                                  std::vector<double>* objective_trace) {
  system.validate();
  validate_options(options);
  if (init.lambdas.size() != init.times.size() ||
      init.size() != static_cast<std::size_t>(system.K)) {
    throw InitError("initial point size does not match system K");
  }
  const auto violations = check_constraints(init, system);
  if (!violations.empty()) {
    throw InitError("initial point violates " +
                    std::to_string(violations.size()) +
                    " feasibility constraint(s)");
  }

  const SolverParameterization repar{system.K, system.ordering_margin,
                                     options.restriction};
  const std::vector<double> z0 = repar.coordinates(init);
  const Eigen::VectorXd z =
      Eigen::Map<const Eigen::VectorXd>(z0.data(), static_cast<long>(z0.size()));
  const LmOutcome lm = run_lm(repar, system, z, options, objective_trace);
  return make_solution(repar, system, lm, 0);
}

SolveReport solve(const EquationSystem& system, const SolverOptions& options) {
  system.validate();
  validate_options(options);

  const auto [product_lo, product_hi] = options.init_product_range.value_or(
      std::pair<double, double>{0.01, 2.0 * system.K});
  const SolverParameterization repar{system.K, system.ordering_margin,
                                     options.restriction};

  SolveReport report;
  report.solutions.reserve(options.n_starts);
  for (int start = 0; start < options.n_starts; ++start) {
    Rng rng = Rng::stream(options.seed, static_cast<std::uint64_t>(start));
    const ModelParams init =
        draw_init(rng, system.K, product_lo, product_hi,
                  system.ordering_margin);
    const std::vector<double> z0 = repar.coordinates(init);
    const Eigen::VectorXd z = Eigen::Map<const Eigen::VectorXd>(
        z0.data(), static_cast<long>(z0.size()));
    const LmOutcome lm = run_lm(repar, system, z, options, nullptr);
    report.solutions.push_back(make_solution(repar, system, lm, start));
  }

  std::sort(report.solutions.begin(), report.solutions.end(),
            [](const InhomogeneousSolution& a, const InhomogeneousSolution& b) {
              const double ka = sort_key(a);
              const double kb = sort_key(b);
              if (ka != kb) return ka < kb;
              return a.start_index < b.start_index;
            });

  report.no_convergence = true;
  report.best = 0;
  std::vector<std::vector<double>> representatives;
  for (std::size_t i = 0; i < report.solutions.size(); ++i) {
    const InhomogeneousSolution& s = report.solutions[i];
    if (!s.converged) continue;
    if (report.no_convergence) {
      report.no_convergence = false;
      report.best = static_cast<int>(i);
    }
    const std::vector<double> x = product_vector(s.params);
    bool matched = false;
    for (const std::vector<double>& rep : representatives) {
      double dist = 0.0;
      for (std::size_t m = 0; m < x.size(); ++m) {
        dist = std::max(dist, std::abs(x[m] - rep[m]));
      }
      if (dist <= kDistinctProductTol) {
        matched = true;
        break;
      }
    }
    if (!matched) {
      representatives.push_back(x);
    }
  }
  report.distinct_count = static_cast<int>(representatives.size());
  return report;
}

bool verify(const InhomogeneousSolution& solution, const EquationSystem& system,
            double residual_tol) {
  const ResidualVector rv = residual_vector(solution.params, system);
  return rv.inf_norm <= residual_tol &&
         check_constraints(solution.params, system).empty();
}

}  // namespace zipfpoisson
