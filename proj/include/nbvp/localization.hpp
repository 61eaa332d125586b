#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nbvp/golden_section.hpp"
#include "nbvp/green_kernel.hpp"
#include "nbvp/grid.hpp"
#include "nbvp/problem.hpp"

namespace nbvp {

/// Kernel integrals of the envelope bounds,
///   lower(t) = int k(t,s) f_lower(s) ds,  upper(t) = int k(t,s) f_upper(s) ds,
/// sampled on the grid nodes.
struct EnvelopeTransforms {
  std::vector<double> lower;
  std::vector<double> upper;
};

EnvelopeTransforms envelope_transforms(const EnvelopeBounds& envelope,
                                       const KernelMatrix& kernel, const Grid& grid);

/// Nystrom interpolant sum_j w_j k(t, s_j) g_j at an arbitrary t in [0,1].
double nystrom_at(const KernelSpec& spec, const Grid& grid,
                  std::span<const double> g, double t);

/// Closed-form kernel integrals of the bundled examples' forcing sin(3 pi s/2):
///   A(t) = int_0^{2/3} k(t,s) sin ds,  B(t) = int_{2/3}^1 k(t,s) sin ds   (t <= 2/3)
///   C(t) = int_0^{2/3} k(t,s) sin ds,  D(t) = int_{2/3}^1 k(t,s) sin ds   (t >= 2/3)
/// for the preset kernels (eps=-1, omega=1) and (eps=+1, omega=pi/2).
/// All four are evaluated at any t; callers restrict to the valid branch.
struct ClosedFormIntegrals {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
};

ClosedFormIntegrals analytic_ABCD(Sign eps, double t);

/// Lower envelope transform of the bundled examples from the closed forms.
double analytic_lower_transform(Sign eps, double rho, double t);
double analytic_upper_transform(Sign eps, double rho, double t);

/// Maximum over [0,1] of the closed-form lower transform: dense sampling on
/// `search_points` nodes per branch, then golden-section refinement.
Extremum analytic_max_lower(Sign eps, double rho, int search_points = 2000);

/// Admissibility thresholds. rho1 comes from the [0,2/3] branch, rho2 from
/// [2/3,1]; a branch whose ratio never becomes positive is left empty.
struct Thresholds {
  std::optional<double> rho1;
  std::optional<double> rho2;
  double rho0 = 0.0;
  std::optional<double> argmax1;
  std::optional<double> argmax2;
};

/// rho_b = log(max(-A/B)) / 4 on [0,2/3] and log(max(-C/D)) / 4 on [2/3,1].
/// Throws std::invalid_argument if search_points < 100 and ThresholdUndefined
/// if neither branch admits a threshold.
Thresholds compute_rho_threshold(Sign eps, int search_points = 2000);

/// Threshold found from quadrature alone, for problems without closed forms:
/// bisection in rho on the sign of max F_lower over the nodes of
/// [0, split] and [split, 1]. Assumes max F_lower is decreasing in rho.
Thresholds numeric_rho_threshold(const ProblemSpec& problem, const KernelMatrix& kernel,
                                 const Grid& grid, double split = 2.0 / 3.0,
                                 double tol = 1e-10);

enum class Condition {
  none,
  upper_negative,  // F_upper(t) < 0 somewhere, bound -rho / F_upper(t)
  lower_positive,  // F_lower(t) > 0 somewhere, bound  rho / F_lower(t)
};

std::string_view to_string(Condition c) noexcept;

struct LocalizationReport {
  double rho = 0.0;
  std::optional<double> rho1;
  std::optional<double> rho2;
  double rho0 = 0.0;
  Condition active = Condition::none;
  /// Extremal point of the active transform, refined off-grid.
  double t_extremal = 0.0;
  /// Grid node with the extremal nodal value.
  std::size_t extremal_node = 0;
  /// Transform value at t_extremal.
  double extremal_value = 0.0;
  /// Upper estimate of |lambda| for eigenfunctions of norm rho.
  std::optional<double> bound;
  std::vector<double> f_lower_curve;
  std::vector<double> f_upper_curve;
};

/// Checks which sign condition holds at this rho and computes the eigenvalue
/// bound. When both could hold, the lower-positive branch is reported.
LocalizationReport localize(double rho, const Thresholds& thresholds,
                            const EnvelopeBounds& envelope, const KernelMatrix& kernel,
                            const Grid& grid);

/// Convenience overload using the closed-form thresholds for `eps`.
LocalizationReport localize(double rho, Sign eps, const EnvelopeBounds& envelope,
                            const KernelMatrix& kernel, const Grid& grid);

struct BoundPoint {
  double rho = 0.0;
  double bound = 0.0;
};

/// a(rho) = rho / max F_lower at `count` equispaced points strictly inside
/// (0, rho0), from the closed forms.
std::vector<BoundPoint> analytic_bound_curve(Sign eps, double rho0, std::size_t count);

/// Same curve from quadrature of the problem's envelopes.
std::vector<BoundPoint> numeric_bound_curve(const ProblemSpec& problem,
                                            const KernelMatrix& kernel, const Grid& grid,
                                            double rho0, std::size_t count);

}  // namespace nbvp
