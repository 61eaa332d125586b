#include "nbvp/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nbvp {

namespace {

constexpr double kTwoThirds = 2.0 / 3.0;

double sin_forcing(double t) { return std::sin(1.5 * std::numbers::pi * t); }

double exp_integral(std::span<const double> u, const Grid& grid) {
  std::vector<double> e(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) e[i] = std::exp(u[i]);
  return integrate(grid, e);
}

// sin(3 pi t/2) e^u / H[u]. With |u| <= rho and H in [e^-rho, e^rho], the
// factor e^u / H lies in [e^-2rho, e^2rho]; the forcing is >= 0 on [0,2/3]
// and <= 0 on [2/3,1].
ProblemSpec exponential_ratio_problem(std::string description) {
  ProblemSpec p;
  p.description = std::move(description);
  p.nonlinearity = [](double t, double u, double v) {
    if (v == 0.0) {
      throw std::domain_error("nonlinearity: functional value H[u] is zero");
    }
    return sin_forcing(t) * std::exp(u) / v;
  };
  p.functional = exp_integral;
  p.envelope = [](double rho) {
    const double shrink = std::exp(-2.0 * rho);
    const double grow = std::exp(2.0 * rho);
    EnvelopeBounds env;
    env.rho = rho;
    env.f_lower = [=](double t) {
      return (t <= kTwoThirds ? shrink : grow) * sin_forcing(t);
    };
    env.f_upper = [=](double t) {
      return (t <= kTwoThirds ? grow : shrink) * sin_forcing(t);
    };
    env.h_lower = std::exp(-rho);
    env.h_upper = std::exp(rho);
    return env;
  };
  p.breakpoints = {kTwoThirds};
  return p;
}

}  // namespace

Preset example_minus() {
  return {"example-minus",
          exponential_ratio_problem(
              "-u'' + u = lambda sin(3 pi t/2) e^u / int_0^1 e^u, u'(0)=u'(1)=0"),
          KernelSpec{Sign::minus, 1.0}};
}

Preset example_plus() {
  return {"example-plus",
          exponential_ratio_problem(
              "u'' + (pi^2/4) u = lambda sin(3 pi t/2) e^u / int_0^1 e^u, u'(0)=u'(1)=0"),
          KernelSpec{Sign::plus, std::numbers::pi / 2}};
}

std::vector<std::string> preset_names() { return {"example-minus", "example-plus"}; }

Preset find_preset(std::string_view name) {
  if (name == "example-minus") return example_minus();
  if (name == "example-plus") return example_plus();
  throw std::invalid_argument("unknown problem '" + std::string(name) +
                              "' (expected example-minus or example-plus)");
}

double eval_functional(const ProblemSpec& problem, std::span<const double> u,
                       const Grid& grid) {
  if (u.size() != grid.size()) {
    throw std::invalid_argument("eval_functional: sample count does not match grid");
  }
  return problem.functional(u, grid);
}

double eval_nonlinearity(const ProblemSpec& problem, double t, double u, double v) {
  return problem.nonlinearity(t, u, v);
}

void apply_hammerstein(const ProblemSpec& problem, const KernelMatrix& kernel,
                       const Grid& grid, std::span<const double> u,
                       std::span<double> f_scratch, std::span<double> out) {
  if (f_scratch.size() != u.size()) {
    throw std::invalid_argument("apply_hammerstein: scratch size does not match grid");
  }
  const double h = eval_functional(problem, u, grid);
  const auto t = grid.nodes();
  for (std::size_t j = 0; j < u.size(); ++j) {
    f_scratch[j] = problem.nonlinearity(t[j], u[j], h);
  }
  kernel.integrate_against(grid, f_scratch, out);
}

std::vector<double> apply_hammerstein(const ProblemSpec& problem,
                                      const KernelMatrix& kernel, const Grid& grid,
                                      std::span<const double> u) {
  std::vector<double> f(u.size());
  std::vector<double> out(u.size());
  apply_hammerstein(problem, kernel, grid, u, f, out);
  return out;
}

}  // namespace nbvp
