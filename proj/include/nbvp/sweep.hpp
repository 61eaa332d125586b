#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nbvp/green_kernel.hpp"
#include "nbvp/grid.hpp"
#include "nbvp/localization.hpp"
#include "nbvp/problem.hpp"
#include "nbvp/solver.hpp"

namespace nbvp {

enum class OutputFormat { csv, json };

struct SweepConfig {
  std::string problem = "example-minus";
  /// Kernel overrides; the preset's own kernel is used when unset.
  std::optional<Sign> eps;
  std::optional<double> omega;
  std::size_t n_grid = 1000;
  double tol = 1e-7;
  int max_iter = 1000;
  double rho_min = 5e-3;
  /// Defaults to 0.25 when eps = -1 and 0.75 when eps = +1.
  std::optional<double> rho_max;
  std::size_t rho_count = 15;
  std::size_t bound_curve_count = 1000;
  OutputFormat format = OutputFormat::csv;
  std::filesystem::path out_dir = ".";
  bool profiles = false;
  /// Worker threads for the rho loop; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
  KernelSpec kernel_for(const Preset& preset) const;
  double effective_rho_max(const KernelSpec& kernel) const;
  std::vector<double> rho_values(const KernelSpec& kernel) const;
};

/// One eigenvalue sign at one rho. `pair` is empty when the iteration broke
/// down, in which case `failure` carries the reason.
struct SignedSolve {
  std::optional<EigenpairApprox> pair;
  std::string failure;
};

struct SweepRow {
  double rho = 0.0;
  SignedSolve plus;
  SignedSolve minus;
  /// rho / max F_lower, present only for rho < rho0.
  std::optional<double> bound;
};

struct SweepSummary {
  std::string problem;
  KernelSpec kernel;
  /// True when the thresholds and bound curve come from the closed-form
  /// integrals of the preset, false when they are computed by quadrature.
  bool closed_form = false;
  Thresholds thresholds;
  std::vector<BoundPoint> bound_curve;
};

struct SweepResult {
  SweepSummary summary;
  std::vector<SweepRow> rows;
  std::vector<double> nodes;
};

/// Thresholds and bound curve only. Skips kernel assembly when the closed
/// forms apply.
SweepSummary compute_bounds(const SweepConfig& config);

/// Solves both signs at every rho of the sweep, ordered by rho. Breakdowns
/// are recorded in the row and do not stop the sweep.
SweepResult run_sweep(const SweepConfig& config);

/// Single solve with the sweep's grid, kernel and solver settings.
EigenpairApprox solve_single(const SweepConfig& config, double rho, Sign sign,
                             std::vector<double>* nodes = nullptr);

}  // namespace nbvp
