#include "nbvp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "nbvp/errors.hpp"

namespace nbvp {

void SweepConfig::validate() const {
  find_preset(problem);
  if (n_grid < 5) throw std::invalid_argument("n_grid must be at least 5");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (!(rho_min > 0.0)) throw std::invalid_argument("rho_min must be positive");
  if (rho_count < 1) throw std::invalid_argument("rho_count must be at least 1");
  if (bound_curve_count < 1) throw std::invalid_argument("bound_curve_count must be at least 1");
  const double hi = effective_rho_max(kernel_for(find_preset(problem)));
  if (rho_count == 1 ? !(rho_min <= hi) : !(rho_min < hi)) {
    throw std::invalid_argument("rho_min must be below rho_max");
  }
}

KernelSpec SweepConfig::kernel_for(const Preset& preset) const {
  KernelSpec k = preset.kernel;
  if (eps) k.eps = *eps;
  if (omega) k.omega = *omega;
  k.validate();
  return k;
}

double SweepConfig::effective_rho_max(const KernelSpec& kernel) const {
  if (rho_max) return *rho_max;
  return kernel.eps == Sign::minus ? 0.25 : 0.75;
}

std::vector<double> SweepConfig::rho_values(const KernelSpec& kernel) const {
  if (rho_count == 1) return {rho_min};
  const double hi = effective_rho_max(kernel);
  std::vector<double> rhos(rho_count);
  const auto last = static_cast<double>(rho_count - 1);
  for (std::size_t k = 0; k < rho_count; ++k) {
    rhos[k] = rho_min + (hi - rho_min) * (static_cast<double>(k) / last);
  }
  rhos.back() = hi;
  return rhos;
}

namespace {

struct Setup {
  Preset preset;
  KernelSpec kernel;
  bool closed_form = false;
};

Setup prepare(const SweepConfig& config) {
  config.validate();
  Setup s{find_preset(config.problem), {}, false};
  s.kernel = config.kernel_for(s.preset);
  s.closed_form = s.kernel == s.preset.kernel;
  return s;
}

SweepSummary summarize(const SweepConfig& config, const Setup& setup, const Grid* grid,
                       const KernelMatrix* kernel) {
  SweepSummary out;
  out.problem = setup.preset.name;
  out.kernel = setup.kernel;
  out.closed_form = setup.closed_form;
  if (setup.closed_form) {
    out.thresholds = compute_rho_threshold(setup.kernel.eps);
    out.bound_curve = analytic_bound_curve(setup.kernel.eps, out.thresholds.rho0,
                                           config.bound_curve_count);
  } else {
    out.thresholds = numeric_rho_threshold(setup.preset.problem, *kernel, *grid);
    out.bound_curve = numeric_bound_curve(setup.preset.problem, *kernel, *grid,
                                          out.thresholds.rho0, config.bound_curve_count);
  }
  return out;
}

SolverConfig solver_config(const SweepConfig& config, Sign sign) {
  SolverConfig sc;
  sc.tol = config.tol;
  sc.max_iter = config.max_iter;
  sc.sign = sign;
  return sc;
}

SignedSolve guarded_solve(const SweepConfig& config, double rho, Sign sign,
                          const ProblemSpec& problem, const KernelMatrix& kernel,
                          const Grid& grid) {
  SignedSolve out;
  try {
    out.pair = fixed_point_solve(rho, solver_config(config, sign), problem, kernel, grid);
  } catch (const SolverBreakdown& e) {
    out.failure = e.what();
  } catch (const NumericalFailure& e) {
    out.failure = e.what();
  }
  return out;
}

}  // namespace

SweepSummary compute_bounds(const SweepConfig& config) {
  const Setup setup = prepare(config);
  if (setup.closed_form) return summarize(config, setup, nullptr, nullptr);
  const Grid grid = make_grid(config.n_grid, setup.preset.problem.breakpoints);
  const KernelMatrix kernel = assemble(setup.kernel, grid);
  return summarize(config, setup, &grid, &kernel);
}

SweepResult run_sweep(const SweepConfig& config) {
  const Setup setup = prepare(config);
  const ProblemSpec& problem = setup.preset.problem;
  const Grid grid = make_grid(config.n_grid, problem.breakpoints);
  const KernelMatrix kernel = assemble(setup.kernel, grid);

  SweepResult result;
  result.summary = summarize(config, setup, &grid, &kernel);
  result.nodes.assign(grid.nodes().begin(), grid.nodes().end());
  const double rho0 = result.summary.thresholds.rho0;

  const auto rhos = config.rho_values(setup.kernel);
  result.rows.resize(rhos.size());
  for (std::size_t k = 0; k < rhos.size(); ++k) result.rows[k].rho = rhos[k];

  // Each task is one (rho, sign) solve or one row's localization; tasks only
  // write to their own slot.
  const std::size_t n_tasks = 3 * rhos.size();
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t task = next++; task < n_tasks; task = next++) {
      SweepRow& row = result.rows[task / 3];
      try {
        switch (task % 3) {
          case 0:
            row.plus = guarded_solve(config, row.rho, Sign::plus, problem, kernel, grid);
            break;
          case 1:
            row.minus = guarded_solve(config, row.rho, Sign::minus, problem, kernel, grid);
            break;
          default:
            if (row.rho < rho0) {
              row.bound = localize(row.rho, result.summary.thresholds,
                                   problem.envelope(row.rho), kernel, grid)
                              .bound;
            }
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };

  std::size_t n_threads = config.threads != 0 ? config.threads
                                              : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, n_tasks);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return result;
}

EigenpairApprox solve_single(const SweepConfig& config, double rho, Sign sign,
                             std::vector<double>* nodes) {
  const Setup setup = prepare(config);
  const Grid grid = make_grid(config.n_grid, setup.preset.problem.breakpoints);
  const KernelMatrix kernel = assemble(setup.kernel, grid);
  if (nodes) nodes->assign(grid.nodes().begin(), grid.nodes().end());
  return fixed_point_solve(rho, solver_config(config, sign), setup.preset.problem, kernel,
                           grid);
}

}  // namespace nbvp
