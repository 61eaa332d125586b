#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbvp/solver.hpp"
#include "nbvp/sweep.hpp"

namespace nbvp {

inline constexpr std::string_view kResultsHeader =
    "rho,lambda_plus,err_plus,converged_plus,lambda_minus,err_minus,converged_minus,"
    "bound,bvp_residual_plus,bvp_residual_minus";

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

std::string results_csv(const SweepResult& result);
std::string results_json(const SweepResult& result);
std::string bound_curve_csv(std::span<const BoundPoint> curve);
std::string bound_curve_json(std::span<const BoundPoint> curve);
std::string summary_json(const SweepSummary& summary);
std::string config_json(const SweepConfig& config);

/// Writes the results table, bound curve, summary, config echo and (when
/// requested) the eigenfunction profiles into config.out_dir. Returns the
/// paths written. Throws IoError naming the offending path.
std::vector<std::filesystem::path> emit_outputs(const SweepResult& result,
                                                const SweepConfig& config);

/// Summary, bound curve and config echo for the thresholds-only run.
std::vector<std::filesystem::path> emit_bounds(const SweepSummary& summary,
                                               const SweepConfig& config);

/// Profile (t, u) of a single solve.
std::filesystem::path emit_single_profile(const EigenpairApprox& pair,
                                          std::span<const double> nodes, Sign sign,
                                          const SweepConfig& config);

void write_file(const std::filesystem::path& path, std::string_view contents);

/// One parsed line of a results CSV. Empty fields come back as nullopt.
struct ResultsCsvRow {
  double rho = 0.0;
  std::optional<double> lambda_plus;
  std::optional<double> err_plus;
  bool converged_plus = false;
  std::optional<double> lambda_minus;
  std::optional<double> err_minus;
  bool converged_minus = false;
  std::optional<double> bound;
  std::optional<double> bvp_residual_plus;
  std::optional<double> bvp_residual_minus;
};

/// Parses a results CSV written by emit_outputs. Throws std::invalid_argument
/// on a malformed header or field, IoError if the file cannot be read.
std::vector<ResultsCsvRow> parse_results_csv(std::string_view text);
std::vector<ResultsCsvRow> read_results_csv(const std::filesystem::path& path);

}  // namespace nbvp
