#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbvp/green_kernel.hpp"
#include "nbvp/grid.hpp"

namespace nbvp {

/// Bounds on the right-hand side over the box
///   [0,1] x [-rho, rho] x [h_lower, h_upper]
/// that u(t) and H[u] range over when ||u|| <= rho.
struct EnvelopeBounds {
  double rho = 0.0;
  std::function<double(double)> f_lower;
  std::function<double(double)> f_upper;
  double h_lower = 0.0;
  double h_upper = 0.0;
};

/// Right-hand side f(t, u, H[u]) of a Hammerstein equation with a scalar
/// functional term.
///
/// Callers supplying their own problem are responsible for the envelope
/// being valid and for H being continuous on the closed rho-ball; neither is
/// checked here.
struct ProblemSpec {
  std::string description;
  std::function<double(double t, double u, double v)> nonlinearity;
  std::function<double(std::span<const double> u, const Grid& grid)> functional;
  std::function<EnvelopeBounds(double rho)> envelope;
  /// Points where the envelopes may have kinks; grids should contain them.
  std::vector<double> breakpoints;
};

/// A bundled problem together with the kernel it is posed with.
struct Preset {
  std::string name;
  ProblemSpec problem;
  KernelSpec kernel;
};

/// -u'' + u = lambda sin(3 pi t / 2) e^u / int e^u  (eps = -1, omega = 1).
Preset example_minus();
/// u'' + (pi^2/4) u = lambda sin(3 pi t / 2) e^u / int e^u  (eps = +1, omega = pi/2).
Preset example_plus();

std::vector<std::string> preset_names();
/// Throws std::invalid_argument for an unknown name.
Preset find_preset(std::string_view name);

double eval_functional(const ProblemSpec& problem, std::span<const double> u,
                       const Grid& grid);
double eval_nonlinearity(const ProblemSpec& problem, double t, double u, double v);

/// (Tu)(t_i) = sum_j w_j G_ij f(t_j, u_j, H[u]); the operator without lambda.
std::vector<double> apply_hammerstein(const ProblemSpec& problem,
                                      const KernelMatrix& kernel, const Grid& grid,
                                      std::span<const double> u);

/// Same as above, writing into caller storage. `f_scratch` must have grid size.
void apply_hammerstein(const ProblemSpec& problem, const KernelMatrix& kernel,
                       const Grid& grid, std::span<const double> u,
                       std::span<double> f_scratch, std::span<double> out);

}  // namespace nbvp
