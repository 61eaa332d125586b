// Command-line driver: thresholds, single eigenpairs and full rho sweeps.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbvp/errors.hpp"
#include "nbvp/output.hpp"
#include "nbvp/sweep.hpp"

namespace {

using nbvp::OutputFormat;
using nbvp::Sign;
using nbvp::SweepConfig;
using json = nlohmann::ordered_json;

Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1" || s == "plus") return Sign::plus;
  if (s == "-" || s == "-1" || s == "minus") return Sign::minus;
  throw std::invalid_argument("sign must be + or -, got '" + s + "'");
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void print_bounds(const nbvp::SweepSummary& s, OutputFormat format) {
  if (format == OutputFormat::json) {
    std::cout << nbvp::summary_json(s);
    return;
  }
  auto line = [](const char* key, const std::optional<double>& v) {
    std::cout << key << ": " << (v ? nbvp::format_double(*v) : "undefined") << '\n';
  };
  std::cout << "problem: " << s.problem << '\n'
            << "eps: " << static_cast<int>(s.kernel.eps) << '\n'
            << "omega: " << nbvp::format_double(s.kernel.omega) << '\n'
            << "method: " << (s.closed_form ? "closed-form" : "quadrature") << '\n';
  line("rho1", s.thresholds.rho1);
  line("rho2", s.thresholds.rho2);
  line("rho0", s.thresholds.rho0);
}

void print_pair(const nbvp::EigenpairApprox& p, Sign sign, OutputFormat format) {
  if (format == OutputFormat::json) {
    json j;
    j["rho"] = p.rho;
    j["sign"] = static_cast<int>(sign);
    j["lambda"] = p.lambda;
    j["iterations"] = p.iterations;
    j["converged"] = p.converged;
    j["consistency_error"] = p.consistency_error;
    j["bvp_residual"] = p.bvp_residual;
    j["boundary_slope_left"] = p.boundary_slopes.left;
    j["boundary_slope_right"] = p.boundary_slopes.right;
    j["c_rho"] = std::isfinite(p.c_rho) ? json(p.c_rho) : json(nullptr);
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "rho: " << nbvp::format_double(p.rho) << '\n'
            << "lambda: " << nbvp::format_double(p.lambda) << '\n'
            << "iterations: " << p.iterations << '\n'
            << "converged: " << (p.converged ? "true" : "false") << '\n'
            << "consistency_error: " << nbvp::format_double(p.consistency_error) << '\n'
            << "bvp_residual: " << nbvp::format_double(p.bvp_residual) << '\n';
}

void print_sweep(const nbvp::SweepResult& r) {
  std::size_t unconverged = 0;
  std::size_t failed = 0;
  for (const auto& row : r.rows) {
    for (const auto* s : {&row.plus, &row.minus}) {
      if (!s->pair) {
        ++failed;
        std::cerr << "rho " << nbvp::format_double(row.rho) << ": " << s->failure << '\n';
      } else if (!s->pair->converged) {
        ++unconverged;
      }
    }
  }
  std::cout << "rows: " << r.rows.size() << '\n'
            << "rho0: " << nbvp::format_double(r.summary.thresholds.rho0) << '\n'
            << "unconverged: " << unconverged << '\n'
            << "failed: " << failed << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenpairs of Neumann problems with a functional term"};
  app.require_subcommand(1);

  SweepConfig config;
  std::string eps_text;
  std::string format_text = "csv";
  std::string out_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--problem", config.problem, "example-minus | example-plus")
        ->capture_default_str();
    sub->add_option("--eps", eps_text, "Override kernel sign (+1 | -1)");
    sub->add_option("--omega", config.omega, "Override kernel frequency");
    sub->add_option("--n-grid", config.n_grid, "Grid nodes")->capture_default_str();
    sub->add_option("--format", format_text, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", out_text, "Output directory");
  };

  auto* bounds = app.add_subcommand("bounds", "Admissibility thresholds and bound curve");
  add_common(bounds);
  bounds->add_option("--bound-count", config.bound_curve_count, "Bound-curve points")
      ->capture_default_str();

  double rho = 0.0;
  std::string sign_text = "+";
  auto* solve = app.add_subcommand("solve", "Single eigenpair at a given norm");
  add_common(solve);
  solve->add_option("--rho", rho, "Sup-norm of the eigenfunction")->required();
  solve->add_option("--sign", sign_text, "Eigenvalue sign (+ | -)")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Both eigenvalue signs over a range of norms");
  add_common(sweep);
  sweep->add_option("--rho-min", config.rho_min, "Smallest rho")->capture_default_str();
  sweep->add_option("--rho-max", config.rho_max, "Largest rho (0.25 for eps=-1, 0.75 for eps=+1)");
  sweep->add_option("--rho-count", config.rho_count, "Equispaced rho values")->capture_default_str();
  sweep->add_option("--bound-count", config.bound_curve_count, "Bound-curve points")->capture_default_str();
  sweep->add_flag("--profiles", config.profiles, "Write eigenfunction profiles");
  sweep->add_option("--threads", config.threads, "Worker threads (0 = all cores)");

  for (auto* sub : {solve, sweep}) {
    sub->add_option("--tol", config.tol, "Fixed-point stopping tolerance")->capture_default_str();
    sub->add_option("--max-iter", config.max_iter, "Iteration cap")->capture_default_str();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (!eps_text.empty()) config.eps = parse_sign(eps_text);
    config.format = format_text == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!out_text.empty()) config.out_dir = out_text;

    if (bounds->parsed()) {
      const auto summary = nbvp::compute_bounds(config);
      print_bounds(summary, config.format);
      if (!out_text.empty()) nbvp::emit_bounds(summary, config);
    } else if (solve->parsed()) {
      const Sign sign = parse_sign(sign_text);
      std::vector<double> nodes;
      const auto pair = nbvp::solve_single(config, rho, sign, &nodes);
      print_pair(pair, sign, config.format);
      if (!out_text.empty()) nbvp::emit_single_profile(pair, nodes, sign, config);
    } else {
      const auto result = nbvp::run_sweep(config);
      nbvp::emit_outputs(result, config);
      print_sweep(result);
    }
  } catch (const nbvp::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
