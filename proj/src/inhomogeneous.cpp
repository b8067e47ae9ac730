#include "zipfpoisson/inhomogeneous.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "zipfpoisson/errors.hpp"
#include "zipfpoisson/numerics.hpp"

namespace zipfpoisson {

namespace {

// Expected counts below this are treated as this floor so logs stay finite.
constexpr double kProductFloor = 1e-300;

double clamped_product(const ModelParams& params, int k) {
  return std::max(params.product(k), kProductFloor);
}

// ln P(N(t_k) = k) as a function of the expected count x = lambda_k t_k.
double log_pmf_from_product(double x, int k) {
  return k * std::log(x) - log_factorial(k) - x;
}

}  // namespace

void EquationSystem::validate() const {
  if (K < 2) {
    throw ConfigError("equation system requires K >= 2");
  }
  if (pairs.empty()) {
    throw ConfigError("equation system has no pair equations");
  }
  for (const PairEquation& pair : pairs) {
    if (pair.k > K) {
      throw ConfigError("pair equation references count " +
                        std::to_string(pair.k) + " beyond K = " +
                        std::to_string(K));
    }
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ConfigError("zipf constant c must be positive and finite");
  }
  if (t0 != 0.0) {
    throw ConfigError("t0 is fixed at 0");
  }
  if (!(ordering_margin > 0.0) || !std::isfinite(ordering_margin)) {
    throw ConfigError("ordering_margin must be positive and finite");
  }
}

double ModelParams::product(int k) const {
  if (k < 1 || static_cast<std::size_t>(k) > size()) {
    throw std::domain_error("count index out of range");
  }
  return lambdas[k - 1] * times[k - 1];
}

EquationSystem build_system(int K, PairStrategy strategy,
                            const SystemOptions& options) {
  if (K < 2) {
    throw std::domain_error("build_system requires K >= 2");
  }
  EquationSystem system;
  system.K = K;
  system.form = options.form;
  system.zipf_direction = options.zipf_direction;
  system.c = options.c;
  system.ordering_margin = options.ordering_margin;

  switch (strategy) {
    case PairStrategy::Consecutive:
      for (int k = 1; k < K; ++k) {
        system.pairs.emplace_back(k + 1, k);
      }
      break;
    case PairStrategy::AllPairs:
      for (int k = 2; k <= K; ++k) {
        for (int j = 1; j < k; ++j) {
          system.pairs.emplace_back(k, j);
        }
      }
      break;
    case PairStrategy::AnchorToOne:
      for (int k = 2; k <= K; ++k) {
        system.pairs.emplace_back(k, 1);
      }
      break;
  }
  system.validate();
  return system;
}

double log_pmf(const ModelParams& params, int k) {
  if (params.lambdas.size() != params.times.size()) {
    throw std::domain_error("params lambdas/times size mismatch");
  }
  return log_pmf_from_product(clamped_product(params, k), k);
}

double residual(const ModelParams& params, const PairEquation& pair,
                const EquationSystem& system) {
  if (params.lambdas.size() != params.times.size() ||
      params.size() != static_cast<std::size_t>(system.K)) {
    throw std::domain_error("params size does not match system K");
  }
  const double sigma = zipf_sign(system.zipf_direction);
  const double target = sigma * (std::log(static_cast<double>(pair.k)) -
                                 std::log(static_cast<double>(pair.j)));
  const double xk = clamped_product(params, pair.k);
  const double xj = clamped_product(params, pair.j);

  // Both forms read the parameters only through the products, which is what
  // makes gauge transforms exact no-ops on the residuals.
  switch (system.form) {
    case ResidualForm::DerivedSum:
      return log_pmf_from_product(xk, pair.k) -
             log_pmf_from_product(xj, pair.j) - target;
    case ResidualForm::PaperProduct: {
      const double factor = (xj - xk) * (pair.k * std::log(xk) -
                                         pair.j * std::log(xj) +
                                         log_factorial(pair.j) -
                                         log_factorial(pair.k));
      return factor - target;
    }
  }
  throw std::logic_error("unreachable residual form");
}

ResidualVector residual_vector(const ModelParams& params,
                               const EquationSystem& system) {
  ResidualVector rv;
  rv.values.reserve(system.pairs.size());
  for (const PairEquation& pair : system.pairs) {
    const double r = residual(params, pair, system);
    rv.values.push_back(r);
    rv.inf_norm = std::max(rv.inf_norm, std::abs(r));
  }
  return rv;
}

std::vector<ConstraintViolation> check_constraints(
    const ModelParams& params, const EquationSystem& system) {
  if (params.lambdas.size() != params.times.size() ||
      params.size() != static_cast<std::size_t>(system.K)) {
    throw std::domain_error("params size does not match system K");
  }
  std::vector<ConstraintViolation> violations;
  for (int k = 1; k <= system.K; ++k) {
    const double lambda = params.lambdas[k - 1];
    if (!(lambda > 0.0)) {
      violations.push_back({ViolationKind::LambdaPositivity, k, 0, lambda});
    }
    const double t = params.times[k - 1];
    if (!(t > 0.0)) {
      violations.push_back({ViolationKind::TimePositivity, k, 0, t});
    }
    if (k >= 2) {
      const double gap = t - params.times[k - 2];
      const double slack = gap - system.ordering_margin;
      if (slack < 0.0) {
        violations.push_back({ViolationKind::TimeOrdering, k, k - 1, slack});
      }
    }
  }
  return violations;
}

ModelParams gauge_transform(const ModelParams& params,
                            const std::vector<double>& scales) {
  if (params.lambdas.size() != params.times.size()) {
    throw std::domain_error("params lambdas/times size mismatch");
  }
  if (scales.size() != params.size()) {
    throw std::domain_error("scales size does not match params");
  }
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw std::domain_error("gauge scales must be positive and finite");
    }
  }
  ModelParams out;
  out.lambdas.resize(params.size());
  out.times.resize(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    out.times[i] = params.times[i] * scales[i];
    out.lambdas[i] = params.lambdas[i] / scales[i];
    if (!(out.times[i] > 0.0) ||
        (i > 0 && !(out.times[i] > out.times[i - 1]))) {
      throw GaugeOrderingError(
          "gauge transform breaks strict time ordering at k = " +
          std::to_string(i + 1));
    }
  }
  return out;
}

}  // namespace zipfpoisson
