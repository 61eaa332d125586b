#include "nbvp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nbvp/errors.hpp"
#include "nbvp/localization.hpp"

namespace nbvp {

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
  if (sign != Sign::plus && sign != Sign::minus) {
    throw std::invalid_argument("SolverConfig: sign must be +1 or -1");
  }
  if (initial_lambda && !(*initial_lambda * to_double(sign) > 0.0)) {
    throw std::invalid_argument("SolverConfig: initial_lambda must have the requested sign");
  }
}

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double iterate_bound(double rho, double lambda0, const ProblemSpec& problem,
                     const KernelMatrix& kernel, const Grid& grid) {
  if (!problem.envelope) return std::numeric_limits<double>::infinity();
  const auto tr = envelope_transforms(problem.envelope(rho), kernel, grid);
  const double top = *std::max_element(tr.lower.begin(), tr.lower.end());
  if (!(top > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(std::abs(lambda0), rho / top);
}

}  // namespace

EigenpairApprox fixed_point_solve(double rho, const SolverConfig& config,
                                  const ProblemSpec& problem, const KernelMatrix& kernel,
                                  const Grid& grid) {
  if (!(rho > 0.0)) throw std::invalid_argument("fixed_point_solve: rho must be positive");
  config.validate();
  const std::size_t n = grid.size();
  if (kernel.size() != n) {
    throw std::invalid_argument("fixed_point_solve: kernel and grid sizes differ");
  }

  const double sigma = to_double(config.sign);
  EigenpairApprox pair;
  pair.rho = rho;
  pair.lambda = config.initial_lambda.value_or(sigma);
  if (config.initial_u) {
    if (config.initial_u->size() != n) {
      throw std::invalid_argument("fixed_point_solve: initial_u has wrong length");
    }
    if (std::abs(sup_norm(*config.initial_u) - rho) > 1e-12 * std::max(1.0, rho)) {
      throw std::invalid_argument("fixed_point_solve: initial_u must have sup-norm rho");
    }
    pair.u = *config.initial_u;
  } else {
    pair.u.assign(n, rho);
  }
  pair.c_rho = iterate_bound(rho, pair.lambda, problem, kernel, grid);

  std::vector<double> f(n);
  std::vector<double> w(n);
  for (int k = 1; k <= config.max_iter; ++k) {
    apply_hammerstein(problem, kernel, grid, pair.u, f, w);
    if (!all_finite(w)) {
      throw NumericalFailure("fixed_point_solve: non-finite T u at iteration " +
                             std::to_string(k));
    }
    const double norm = sup_norm(w);
    if (norm == 0.0) {
      throw SolverBreakdown("fixed_point_solve: ||T u|| = 0 at iteration " +
                            std::to_string(k));
    }
    const double lambda_new = sigma * rho / norm;
    double du = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double next = lambda_new * w[i];
      du = std::max(du, std::abs(next - pair.u[i]));
      pair.u[i] = next;
    }
    const double step = du + std::abs(lambda_new - pair.lambda);
    pair.lambda = lambda_new;
    pair.iterations = k;
    if (config.on_iterate) config.on_iterate(k, pair.lambda, pair.u);
    if (!std::isfinite(step)) {
      throw NumericalFailure("fixed_point_solve: non-finite step at iteration " +
                             std::to_string(k));
    }
    if (step < config.tol) {
      pair.converged = true;
      break;
    }
  }

  pair.consistency_error = consistency_error(pair, problem, kernel, grid);
  if (n >= 5) {
    const auto res = bvp_residual(pair, kernel.spec().eps, kernel.spec().omega, problem, grid);
    pair.bvp_residual = res.max_residual;
    pair.boundary_slopes = res.slopes;
  }
  return pair;
}

double consistency_error(const EigenpairApprox& pair, const ProblemSpec& problem,
                         const KernelMatrix& kernel, const Grid& grid) {
  if (pair.u.size() != grid.size()) {
    throw std::invalid_argument("consistency_error: eigenfunction length does not match grid");
  }
  const auto tu = apply_hammerstein(problem, kernel, grid, pair.u);
  double e = 0.0;
  for (std::size_t i = 0; i < tu.size(); ++i) {
    e = std::max(e, std::abs(pair.u[i] - pair.lambda * tu[i]));
  }
  return e;
}

BvpResidual bvp_residual(const EigenpairApprox& pair, Sign eps, double omega,
                         const ProblemSpec& problem, const Grid& grid) {
  const std::size_t n = grid.size();
  if (n < 5) throw std::invalid_argument("bvp_residual: need at least 5 nodes");
  if (pair.u.size() != n) {
    throw std::invalid_argument("bvp_residual: eigenfunction length does not match grid");
  }
  const auto t = grid.nodes();
  const auto& u = pair.u;
  const double h_val = eval_functional(problem, u, grid);
  const double e = to_double(eps);
  const double w2 = omega * omega;

  BvpResidual out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (grid.near_breakpoint(i)) continue;
    const double h1 = t[i] - t[i - 1];
    const double h2 = t[i + 1] - t[i];
    const double upp =
        2.0 * ((u[i + 1] - u[i]) / h2 - (u[i] - u[i - 1]) / h1) / (h1 + h2);
    const double r =
        e * upp + w2 * u[i] - pair.lambda * problem.nonlinearity(t[i], u[i], h_val);
    out.max_residual = std::max(out.max_residual, std::abs(r));
  }
  out.slopes.left = std::abs(u[1] - u[0]) / (t[1] - t[0]);
  out.slopes.right = std::abs(u[n - 1] - u[n - 2]) / (t[n - 1] - t[n - 2]);
  return out;
}

}  // namespace nbvp
