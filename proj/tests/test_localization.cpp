#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nbvp/errors.hpp"
#include "nbvp/localization.hpp"
#include "oracle.hpp"

using namespace nbvp;
using std::numbers::pi;

namespace {

const std::vector<double> kBreak{2.0 / 3.0};

struct Fixture {
  Preset preset;
  Grid grid;
  KernelMatrix kernel;
  explicit Fixture(Preset p, std::size_t n = 1000)
      : preset(std::move(p)), grid(make_grid(n, kBreak)), kernel(assemble(preset.kernel, grid)) {}
};

double closed_form_max_plus(double rho) {
  return (9.0 * std::exp(-2.0 * rho) - std::exp(2.0 * rho)) / (4.0 * pi * pi);
}

}  // namespace

TEST_CASE("closed-form integrals match direct quadrature of the kernel") {
  for (double t : {0.0, 0.1, 0.25, 0.5, 0.6, 2.0 / 3.0}) {
    const auto m = analytic_ABCD(Sign::minus, t);
    auto km = [](double x, double s) { return oracle::green_minus(1.0, x, s); };
    CHECK(m.A == doctest::Approx(oracle::kernel_integral(km, oracle::forcing, t, 0, 2.0 / 3)).epsilon(1e-10));
    CHECK(m.B == doctest::Approx(oracle::kernel_integral(km, oracle::forcing, t, 2.0 / 3, 1)).epsilon(1e-10));
    const auto p = analytic_ABCD(Sign::plus, t);
    auto kp = [](double x, double s) { return oracle::green_plus(pi / 2, x, s); };
    CHECK(p.A == doctest::Approx(oracle::kernel_integral(kp, oracle::forcing, t, 0, 2.0 / 3)).epsilon(1e-10));
    CHECK(p.B == doctest::Approx(oracle::kernel_integral(kp, oracle::forcing, t, 2.0 / 3, 1)).epsilon(1e-10));
  }
  for (double t : {2.0 / 3.0, 0.7, 0.8, 0.9, 1.0}) {
    const auto m = analytic_ABCD(Sign::minus, t);
    auto km = [](double x, double s) { return oracle::green_minus(1.0, x, s); };
    CHECK(m.C == doctest::Approx(oracle::kernel_integral(km, oracle::forcing, t, 0, 2.0 / 3)).epsilon(1e-10));
    CHECK(m.D == doctest::Approx(oracle::kernel_integral(km, oracle::forcing, t, 2.0 / 3, 1)).epsilon(1e-10));
    const auto p = analytic_ABCD(Sign::plus, t);
    auto kp = [](double x, double s) { return oracle::green_plus(pi / 2, x, s); };
    CHECK(p.C == doctest::Approx(oracle::kernel_integral(kp, oracle::forcing, t, 0, 2.0 / 3)).epsilon(1e-10));
    CHECK(p.D == doctest::Approx(oracle::kernel_integral(kp, oracle::forcing, t, 2.0 / 3, 1)).epsilon(1e-10));
  }
}

TEST_CASE("closed-form values at the ends") {
  const auto one = analytic_ABCD(Sign::plus, 1.0);
  CHECK(one.C == doctest::Approx(9.0 / (4 * pi * pi)).epsilon(1e-14));
  CHECK(one.C == doctest::Approx(0.227973).epsilon(1e-5));
  CHECK(one.D == doctest::Approx(-1.0 / (4 * pi * pi)).epsilon(1e-14));
  CHECK(one.D == doctest::Approx(-0.025330).epsilon(1e-4));
  const auto zero = analytic_ABCD(Sign::plus, 0.0);
  CHECK(zero.A == doctest::Approx(3 * std::sqrt(3.0) / (4 * pi * pi)).epsilon(1e-14));
  CHECK(zero.A == doctest::Approx(0.131624).epsilon(1e-5));
  CHECK(zero.B == doctest::Approx(-3 * std::sqrt(3.0) / (4 * pi * pi)).epsilon(1e-14));
}

TEST_CASE("two-branch representations agree at the junction") {
  for (Sign eps : {Sign::minus, Sign::plus}) {
    const auto p = analytic_ABCD(eps, 2.0 / 3.0);
    for (double rho : {0.0, 0.01, 0.1, 0.3, 1.0, 2.0}) {
      const double left = std::exp(-2 * rho) * p.A + std::exp(2 * rho) * p.B;
      const double right = std::exp(-2 * rho) * p.C + std::exp(2 * rho) * p.D;
      CHECK(std::abs(left - right) <= 1e-12);
    }
  }
}

TEST_CASE("envelope transforms for eps=+1") {
  Fixture fx(example_plus());
  SUBCASE("small rho collapses both transforms onto (2/pi^2) sin^3") {
    const auto tr = envelope_transforms(fx.preset.problem.envelope(1e-9), fx.kernel, fx.grid);
    for (std::size_t i = 0; i < fx.grid.size(); ++i) {
      const double s = std::sin(0.5 * pi * fx.grid.node(i));
      const double expected = 2.0 / (pi * pi) * s * s * s;
      REQUIRE(std::abs(tr.lower[i] - expected) < 1e-4);
      REQUIRE(std::abs(tr.upper[i] - expected) < 1e-4);
    }
  }
  SUBCASE("F_lower(1) at rho = 0.3") {
    const auto tr = envelope_transforms(fx.preset.problem.envelope(0.3), fx.kernel, fx.grid);
    CHECK(std::abs(tr.lower.back() - closed_form_max_plus(0.3)) < 1e-4);
    CHECK(std::abs(tr.lower.back() - 0.078918) < 1e-4);
    for (std::size_t i = 0; i < fx.grid.size(); ++i) REQUIRE(tr.lower[i] <= tr.upper[i]);
  }
  SUBCASE("coinciding envelopes give identical curves") {
    EnvelopeBounds env;
    env.rho = 0.1;
    env.f_lower = [](double t) { return std::cos(4 * t); };
    env.f_upper = env.f_lower;
    const auto tr = envelope_transforms(env, fx.kernel, fx.grid);
    CHECK(tr.lower == tr.upper);
  }
}

TEST_CASE("thresholds for eps=+1 are log(3)/4 and log(3)/2") {
  const Thresholds th = compute_rho_threshold(Sign::plus);
  REQUIRE(th.rho1);
  REQUIRE(th.rho2);
  CHECK(std::abs(*th.rho1 - std::log(3.0) / 4) < 1e-6);
  CHECK(std::abs(*th.rho2 - std::log(3.0) / 2) < 1e-6);
  CHECK(th.rho0 == *th.rho2);
  REQUIRE(th.argmax2);
  CHECK(*th.argmax2 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*th.argmax1 == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("threshold for eps=-1 is about 0.2252") {
  const Thresholds th = compute_rho_threshold(Sign::minus);
  CHECK(std::abs(th.rho0 - 0.2252) < 5e-4);
  CHECK(th.rho0 == std::max(*th.rho1, *th.rho2));
  CHECK_THROWS_AS(compute_rho_threshold(Sign::minus, 99), std::invalid_argument);
}

TEST_CASE("quadrature thresholds agree with the closed forms") {
  for (const Preset& p : {example_minus(), example_plus()}) {
    Fixture fx(p);
    const Thresholds numeric = numeric_rho_threshold(fx.preset.problem, fx.kernel, fx.grid);
    const Thresholds closed = compute_rho_threshold(p.kernel.eps);
    CHECK(numeric.rho0 == doctest::Approx(closed.rho0).epsilon(1e-4));
    CHECK(*numeric.rho1 == doctest::Approx(*closed.rho1).epsilon(1e-4));
    CHECK(*numeric.rho2 == doctest::Approx(*closed.rho2).epsilon(1e-4));
  }
}

TEST_CASE("quadrature threshold reports an undefined branch") {
  Fixture fx(example_minus(), 200);
  ProblemSpec negative = fx.preset.problem;
  negative.envelope = [](double rho) {
    EnvelopeBounds env;
    env.rho = rho;
    env.f_lower = [](double) { return -1.0; };
    env.f_upper = [](double) { return -0.5; };
    return env;
  };
  CHECK_THROWS_AS(numeric_rho_threshold(negative, fx.kernel, fx.grid), ThresholdUndefined);
}

TEST_CASE("localize: eps=+1 below and above the threshold") {
  Fixture fx(example_plus());
  const LocalizationReport below = localize(0.2, Sign::plus, fx.preset.problem.envelope(0.2),
                                            fx.kernel, fx.grid);
  CHECK(below.active == Condition::lower_positive);
  CHECK(to_string(below.active) == "5b");
  CHECK(below.extremal_node == fx.grid.size() - 1);
  CHECK(below.t_extremal == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(below.bound);
  CHECK(std::abs(*below.bound - 0.2 / closed_form_max_plus(0.2)) < 1e-4);
  CHECK(std::abs(*below.bound - 1.738733) < 1e-4);
  CHECK(below.rho0 == std::max(*below.rho1, *below.rho2));
  CHECK(below.bound == doctest::Approx(below.rho / below.extremal_value));

  const LocalizationReport above = localize(0.6, Sign::plus, fx.preset.problem.envelope(0.6),
                                            fx.kernel, fx.grid);
  CHECK(above.active == Condition::none);
  CHECK_FALSE(above.bound);
}

TEST_CASE("localize with a unit envelope gives bound rho") {
  Fixture fx(example_minus());
  EnvelopeBounds env;
  env.rho = 0.3;
  env.f_lower = [](double) { return 1.0; };
  env.f_upper = [](double) { return 1.0; };
  const LocalizationReport r = localize(0.3, Sign::minus, env, fx.kernel, fx.grid);
  CHECK(r.active == Condition::lower_positive);
  for (double v : r.f_lower_curve) REQUIRE(std::abs(v - 1.0) < 1e-4);
  REQUIRE(r.bound);
  CHECK(std::abs(*r.bound - 0.3) < 1e-4);
}

TEST_CASE("localize falls back to the upper-negative condition") {
  Fixture fx(example_minus(), 300);
  EnvelopeBounds env;
  env.rho = 0.4;
  env.f_lower = [](double) { return -2.0; };
  env.f_upper = [](double) { return -1.0; };
  const LocalizationReport r = localize(0.4, Sign::minus, env, fx.kernel, fx.grid);
  CHECK(r.active == Condition::upper_negative);
  CHECK(to_string(r.active) == "5a");
  REQUIRE(r.bound);
  CHECK(std::abs(*r.bound - 0.4) < 1e-3);
  CHECK(r.extremal_value < 0.0);
}

TEST_CASE("condition 5b holds exactly below rho0 for the presets") {
  for (const Preset& p : {example_minus(), example_plus()}) {
    Fixture fx(p);
    const Thresholds th = compute_rho_threshold(p.kernel.eps);
    for (double factor : {0.1, 0.5, 0.9, 0.995}) {
      const double rho = factor * th.rho0;
      CHECK(localize(rho, th, p.problem.envelope(rho), fx.kernel, fx.grid).active ==
            Condition::lower_positive);
    }
    for (double factor : {1.005, 1.2, 2.0}) {
      const double rho = factor * th.rho0;
      CHECK(localize(rho, th, p.problem.envelope(rho), fx.kernel, fx.grid).active ==
            Condition::none);
    }
  }
}

TEST_CASE("quadrature transforms follow the closed forms on random rho") {
  std::mt19937_64 rng(29);
  for (const Preset& p : {example_minus(), example_plus()}) {
    Fixture fx(p);
    const double rho0 = compute_rho_threshold(p.kernel.eps).rho0;
    std::uniform_real_distribution<double> dist(1e-6, rho0);
    for (int trial = 0; trial < 50; ++trial) {
      const double rho = dist(rng);
      const auto tr = envelope_transforms(p.problem.envelope(rho), fx.kernel, fx.grid);
      double err = 0.0;
      for (std::size_t i = 0; i < fx.grid.size(); ++i) {
        const double t = fx.grid.node(i);
        err = std::max(err, std::abs(tr.lower[i] - analytic_lower_transform(p.kernel.eps, rho, t)));
        err = std::max(err, std::abs(tr.upper[i] - analytic_upper_transform(p.kernel.eps, rho, t)));
      }
      REQUIRE(err <= 1e-3);
    }
  }
}

TEST_CASE("max F_lower decreases strictly in rho") {
  for (const Preset& p : {example_minus(), example_plus()}) {
    Fixture fx(p, 400);
    double previous = std::numeric_limits<double>::infinity();
    for (double rho = 0.01; rho < 1.0; rho += 0.02) {
      const auto tr = envelope_transforms(p.problem.envelope(rho), fx.kernel, fx.grid);
      const double m = *std::max_element(tr.lower.begin(), tr.lower.end());
      CHECK(m < previous);
      previous = m;
    }
  }
}

TEST_CASE("F_lower has first-order end slopes") {
  for (const Preset& p : {example_minus(), example_plus()}) {
    double left_prev = 0.0, right_prev = 0.0;
    for (std::size_t n : {201u, 402u, 804u}) {
      const Grid g = make_grid(n, kBreak);
      const KernelMatrix k = assemble(p.kernel, g);
      const auto tr = envelope_transforms(p.problem.envelope(0.1), k, g);
      const double left = std::abs(tr.lower[1] - tr.lower[0]) / (g.node(1) - g.node(0));
      const double right = std::abs(tr.lower[n - 1] - tr.lower[n - 2]) / (g.node(n - 1) - g.node(n - 2));
      if (left_prev > 0.0) {
        CHECK(left_prev / left > 1.7);
        CHECK(right_prev / right > 1.7);
      }
      left_prev = left;
      right_prev = right;
    }
  }
}

TEST_CASE("eps=+1 maximum of F_lower sits at t=1") {
  Fixture fx(example_plus());
  const double rho0 = compute_rho_threshold(Sign::plus).rho0;
  for (double rho = 0.02; rho < rho0; rho += 0.05) {
    const auto tr = envelope_transforms(fx.preset.problem.envelope(rho), fx.kernel, fx.grid);
    const auto it = std::max_element(tr.lower.begin(), tr.lower.end());
    CHECK(static_cast<std::size_t>(it - tr.lower.begin()) == fx.grid.size() - 1);
    CHECK(std::abs(*it - closed_form_max_plus(rho)) < 1e-4);
    const Extremum e = analytic_max_lower(Sign::plus, rho);
    CHECK(e.x == 1.0);
    CHECK(e.value == doctest::Approx(closed_form_max_plus(rho)).epsilon(1e-12));
  }
}

TEST_CASE("bound curves") {
  const double rho0 = compute_rho_threshold(Sign::minus).rho0;
  const auto analytic = analytic_bound_curve(Sign::minus, rho0, 40);
  REQUIRE(analytic.size() == 40);
  CHECK(analytic.front().rho > 0.0);
  CHECK(analytic.back().rho < rho0);
  for (std::size_t k = 1; k < analytic.size(); ++k) {
    CHECK(analytic[k].bound > analytic[k - 1].bound);
  }
  Fixture fx(example_minus());
  const auto numeric = numeric_bound_curve(fx.preset.problem, fx.kernel, fx.grid, rho0, 40);
  for (std::size_t k = 0; k + 3 < numeric.size(); ++k) {
    CHECK(numeric[k].rho == analytic[k].rho);
    CHECK(numeric[k].bound == doctest::Approx(analytic[k].bound).epsilon(1e-3));
  }
  CHECK_THROWS_AS(analytic_bound_curve(Sign::minus, 0.0, 10), std::invalid_argument);
}
