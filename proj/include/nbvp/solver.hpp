#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nbvp/green_kernel.hpp"
#include "nbvp/grid.hpp"
#include "nbvp/problem.hpp"

namespace nbvp {

struct SolverConfig {
  /// Stop once ||u_new - u|| + |lambda_new - lambda| < tol.
  double tol = 1e-7;
  int max_iter = 1000;
  /// Sign of the eigenvalue being sought.
  Sign sign = Sign::plus;
  /// Starting iterate; must have sup-norm rho. Defaults to the constant rho.
  std::optional<std::vector<double>> initial_u;
  /// Starting eigenvalue, same sign as `sign`. Defaults to +-1.
  std::optional<double> initial_lambda;
  /// Called after every iteration with (iteration, lambda_n, u_n).
  std::function<void(int, double, std::span<const double>)> on_iterate;

  void validate() const;
};

struct BoundarySlopes {
  /// |u_1 - u_0| / h at t = 0.
  double left = 0.0;
  /// |u_{n-1} - u_{n-2}| / h at t = 1.
  double right = 0.0;
};

struct EigenpairApprox {
  double rho = 0.0;
  double lambda = 0.0;
  std::vector<double> u;
  int iterations = 0;
  bool converged = false;
  /// ||u - lambda T u||, recomputed after the loop.
  double consistency_error = 0.0;
  /// Finite-difference residual of eps u'' + omega^2 u - lambda f.
  double bvp_residual = 0.0;
  BoundarySlopes boundary_slopes;
  /// max(|lambda_0|, rho / max F_lower); infinite when F_lower has no
  /// positive value on the grid.
  double c_rho = 0.0;
};

/// Normalized fixed-point iteration
///   lambda_{n+1} = sign * rho / ||T u_n||,   u_{n+1} = lambda_{n+1} T u_n,
/// so every iterate after the first has sup-norm exactly rho.
///
/// Running out of iterations is not an error: the result is returned with
/// `converged == false`. Throws SolverBreakdown if ||T u_n|| == 0 and
/// NumericalFailure on non-finite iterates.
EigenpairApprox fixed_point_solve(double rho, const SolverConfig& config,
                                  const ProblemSpec& problem, const KernelMatrix& kernel,
                                  const Grid& grid);

/// ||u - lambda T u|| for the pair's samples.
double consistency_error(const EigenpairApprox& pair, const ProblemSpec& problem,
                         const KernelMatrix& kernel, const Grid& grid);

struct BvpResidual {
  double max_residual = 0.0;
  BoundarySlopes slopes;
};

/// Checks the pair against the differential form of the problem: second
/// differences at interior nodes away from breakpoints, one-sided slopes at
/// the ends. Throws std::invalid_argument when the grid has fewer than 5 nodes.
BvpResidual bvp_residual(const EigenpairApprox& pair, Sign eps, double omega,
                         const ProblemSpec& problem, const Grid& grid);

}  // namespace nbvp
