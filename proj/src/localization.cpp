#include "nbvp/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nbvp/errors.hpp"

namespace nbvp {

namespace {

constexpr double kJunction = 2.0 / 3.0;
constexpr double kRefineTol = 1e-10;

std::vector<double> sample(const std::function<double(double)>& f, const Grid& grid) {
  std::vector<double> out(grid.size());
  const auto t = grid.nodes();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(t[i]);
  return out;
}

// Dense scan of [a,b] followed by golden-section refinement around the best
// sample. Ties in the scan go to the larger abscissa.
template <class F>
Extremum scan_and_refine(F&& f, double a, double b, int points) {
  const int last = points - 1;
  auto at = [&](int k) {
    return k == last ? b : a + (b - a) * (static_cast<double>(k) / last);
  };
  int best = 0;
  double best_value = f(a);
  for (int k = 1; k <= last; ++k) {
    const double v = f(at(k));
    if (v >= best_value) {
      best = k;
      best_value = v;
    }
  }
  const double lo = at(std::max(best - 1, 0));
  const double hi = at(std::min(best + 1, last));
  const Extremum refined = golden_section_max(f, lo, hi, kRefineTol);
  return refined.value >= best_value ? refined : Extremum{at(best), best_value};
}

double lower_from_parts(const ClosedFormIntegrals& p, double rho, double t) {
  const double shrink = std::exp(-2.0 * rho);
  const double grow = std::exp(2.0 * rho);
  return t <= kJunction ? shrink * p.A + grow * p.B : shrink * p.C + grow * p.D;
}

double upper_from_parts(const ClosedFormIntegrals& p, double rho, double t) {
  const double shrink = std::exp(-2.0 * rho);
  const double grow = std::exp(2.0 * rho);
  return t <= kJunction ? grow * p.A + shrink * p.B : grow * p.C + shrink * p.D;
}

// Largest nodal value of `curve`, refined between the neighbouring nodes
// through the Nystrom interpolant of `g`. `sense` is +1 for a maximum and -1
// for a minimum.
struct NodalExtremum {
  std::size_t node = 0;
  double t = 0.0;
  double value = 0.0;
};

NodalExtremum refine_extremum(const std::vector<double>& curve,
                              const std::vector<double>& g, double sense,
                              const KernelSpec& spec, const Grid& grid) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (sense * curve[i] >= sense * curve[best]) best = i;
  }
  const double lo = grid.node(best == 0 ? 0 : best - 1);
  const double hi = grid.node(std::min(best + 1, curve.size() - 1));
  const Extremum refined = golden_section_max(
      [&](double t) { return sense * nystrom_at(spec, grid, g, t); }, lo, hi,
      kRefineTol);
  if (refined.value >= sense * curve[best]) {
    return {best, refined.x, sense * refined.value};
  }
  return {best, grid.node(best), curve[best]};
}

}  // namespace

EnvelopeTransforms envelope_transforms(const EnvelopeBounds& envelope,
                                       const KernelMatrix& kernel, const Grid& grid) {
  if (!envelope.f_lower || !envelope.f_upper) {
    throw std::invalid_argument("envelope_transforms: envelope functions not set");
  }
  return {kernel.integrate_against(grid, sample(envelope.f_lower, grid)),
          kernel.integrate_against(grid, sample(envelope.f_upper, grid))};
}

double nystrom_at(const KernelSpec& spec, const Grid& grid, std::span<const double> g,
                  double t) {
  if (g.size() != grid.size()) {
    throw std::invalid_argument("nystrom_at: sample count does not match grid");
  }
  const auto s = grid.nodes();
  const auto w = grid.weights();
  double acc = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    acc += kernel_value(spec, t, s[j]) * (w[j] * g[j]);
  }
  return acc;
}

ClosedFormIntegrals analytic_ABCD(Sign eps, double t) {
  using std::numbers::pi;
  if (eps == Sign::minus) {
    const double b = 1.5 * pi;
    const double sh1 = std::sinh(1.0);
    const double q = 1.0 / ((1.0 + b * b) * sh1);
    const double sin_bt = std::sin(b * t);
    return {
        q * sin_bt * sh1 + q * b * (std::cosh(1.0 - t) + std::cosh(1.0 / 3.0) * std::cosh(t)),
        -q * b * std::cosh(1.0 / 3.0) * std::cosh(t),
        q * b * (std::cosh(2.0 / 3.0) + 1.0) * std::cosh(1.0 - t),
        q * (sh1 * sin_bt - b * std::cosh(2.0 / 3.0) * std::cosh(1.0 - t)),
    };
  }
  const double c = 1.0 / (4.0 * pi * pi);
  const double s = std::sin(0.5 * pi * t);
  const double co = std::cos(0.5 * pi * t);
  const double root27 = 3.0 * std::sqrt(3.0);
  return {
      c * (8.0 * s * s * s + root27 * co),
      -c * root27 * co,
      9.0 * c * s,
      -c * s * (9.0 - 8.0 * s * s),
  };
}

double analytic_lower_transform(Sign eps, double rho, double t) {
  return lower_from_parts(analytic_ABCD(eps, t), rho, t);
}

double analytic_upper_transform(Sign eps, double rho, double t) {
  return upper_from_parts(analytic_ABCD(eps, t), rho, t);
}

Extremum analytic_max_lower(Sign eps, double rho, int search_points) {
  if (search_points < 2) {
    throw std::invalid_argument("analytic_max_lower: need at least 2 search points");
  }
  const double shrink = std::exp(-2.0 * rho);
  const double grow = std::exp(2.0 * rho);
  auto left = [&](double t) {
    const auto p = analytic_ABCD(eps, t);
    return shrink * p.A + grow * p.B;
  };
  auto right = [&](double t) {
    const auto p = analytic_ABCD(eps, t);
    return shrink * p.C + grow * p.D;
  };
  const Extremum a = scan_and_refine(left, 0.0, kJunction, search_points);
  const Extremum b = scan_and_refine(right, kJunction, 1.0, search_points);
  return b.value >= a.value ? b : a;
}

Thresholds compute_rho_threshold(Sign eps, int search_points) {
  if (search_points < 100) {
    throw std::invalid_argument("compute_rho_threshold: search_points must be >= 100, got " +
                                std::to_string(search_points));
  }
  constexpr double kNoRatio = -std::numeric_limits<double>::infinity();
  auto left_ratio = [&](double t) {
    const auto p = analytic_ABCD(eps, t);
    return p.B < 0.0 ? -p.A / p.B : kNoRatio;
  };
  auto right_ratio = [&](double t) {
    const auto p = analytic_ABCD(eps, t);
    return p.D < 0.0 ? -p.C / p.D : kNoRatio;
  };

  Thresholds th;
  const Extremum left = scan_and_refine(left_ratio, 0.0, kJunction, search_points);
  if (left.value > 0.0) {
    th.rho1 = 0.25 * std::log(left.value);
    th.argmax1 = left.x;
  }
  const Extremum right = scan_and_refine(right_ratio, kJunction, 1.0, search_points);
  if (right.value > 0.0) {
    th.rho2 = 0.25 * std::log(right.value);
    th.argmax2 = right.x;
  }
  if (!th.rho1 && !th.rho2) {
    throw ThresholdUndefined("compute_rho_threshold: -A/B and -C/D are non-positive");
  }
  th.rho0 = std::max(th.rho1.value_or(kNoRatio), th.rho2.value_or(kNoRatio));
  return th;
}

Thresholds numeric_rho_threshold(const ProblemSpec& problem, const KernelMatrix& kernel,
                                 const Grid& grid, double split, double tol) {
  const auto t = grid.nodes();
  auto branch_max = [&](double rho, bool left) {
    const auto tr = envelope_transforms(problem.envelope(rho), kernel, grid);
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (left ? t[i] <= split : t[i] >= split) m = std::max(m, tr.lower[i]);
    }
    return m;
  };
  auto solve_branch = [&](bool left) -> std::optional<double> {
    constexpr double kTiny = 1e-12;
    constexpr double kLimit = 1024.0;
    if (!(branch_max(kTiny, left) > 0.0)) return std::nullopt;
    double lo = kTiny;
    double hi = 0.5;
    while (branch_max(hi, left) > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > kLimit) return std::nullopt;
    }
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      (branch_max(mid, left) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  Thresholds th;
  th.rho1 = solve_branch(true);
  th.rho2 = solve_branch(false);
  if (!th.rho1 && !th.rho2) {
    throw ThresholdUndefined("numeric_rho_threshold: lower transform never positive");
  }
  th.rho0 = std::max(th.rho1.value_or(0.0), th.rho2.value_or(0.0));
  return th;
}

std::string_view to_string(Condition c) noexcept {
  switch (c) {
    case Condition::lower_positive:
      return "5b";
    case Condition::upper_negative:
      return "5a";
    case Condition::none:
      break;
  }
  return "none";
}

LocalizationReport localize(double rho, const Thresholds& thresholds,
                            const EnvelopeBounds& envelope, const KernelMatrix& kernel,
                            const Grid& grid) {
  if (!(rho > 0.0)) {
    throw std::invalid_argument("localize: rho must be positive");
  }
  LocalizationReport r;
  r.rho = rho;
  r.rho1 = thresholds.rho1;
  r.rho2 = thresholds.rho2;
  r.rho0 = thresholds.rho0;

  auto tr = envelope_transforms(envelope, kernel, grid);
  const auto lower_g = sample(envelope.f_lower, grid);
  const NodalExtremum top = refine_extremum(tr.lower, lower_g, 1.0, kernel.spec(), grid);

  if (top.value > 0.0) {
    r.active = Condition::lower_positive;
    r.t_extremal = top.t;
    r.extremal_node = top.node;
    r.extremal_value = top.value;
    r.bound = rho / top.value;
  } else {
    const auto upper_g = sample(envelope.f_upper, grid);
    const NodalExtremum bottom =
        refine_extremum(tr.upper, upper_g, -1.0, kernel.spec(), grid);
    if (bottom.value < 0.0) {
      r.active = Condition::upper_negative;
      r.t_extremal = bottom.t;
      r.extremal_node = bottom.node;
      r.extremal_value = bottom.value;
      r.bound = -rho / bottom.value;
    } else {
      r.t_extremal = top.t;
      r.extremal_node = top.node;
      r.extremal_value = top.value;
    }
  }
  r.f_lower_curve = std::move(tr.lower);
  r.f_upper_curve = std::move(tr.upper);
  return r;
}

LocalizationReport localize(double rho, Sign eps, const EnvelopeBounds& envelope,
                            const KernelMatrix& kernel, const Grid& grid) {
  return localize(rho, compute_rho_threshold(eps), envelope, kernel, grid);
}

namespace {

std::vector<double> curve_abscissae(double rho0, std::size_t count) {
  if (!(rho0 > 0.0) || count == 0) {
    throw std::invalid_argument("bound curve: need rho0 > 0 and count >= 1");
  }
  std::vector<double> rhos(count);
  for (std::size_t k = 0; k < count; ++k) {
    rhos[k] = rho0 * static_cast<double>(k + 1) / static_cast<double>(count + 1);
  }
  return rhos;
}

}  // namespace

std::vector<BoundPoint> analytic_bound_curve(Sign eps, double rho0, std::size_t count) {
  std::vector<BoundPoint> out;
  out.reserve(count);
  for (double rho : curve_abscissae(rho0, count)) {
    out.push_back({rho, rho / analytic_max_lower(eps, rho).value});
  }
  return out;
}

std::vector<BoundPoint> numeric_bound_curve(const ProblemSpec& problem,
                                            const KernelMatrix& kernel, const Grid& grid,
                                            double rho0, std::size_t count) {
  std::vector<BoundPoint> out;
  out.reserve(count);
  for (double rho : curve_abscissae(rho0, count)) {
    const auto tr = envelope_transforms(problem.envelope(rho), kernel, grid);
    const double m = *std::max_element(tr.lower.begin(), tr.lower.end());
    out.push_back({rho, rho / m});
  }
  return out;
}

}  // namespace nbvp
