#include "nbvp/output.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"
#include "nbvp/errors.hpp"

namespace nbvp {

namespace {

using json = nlohmann::ordered_json;

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string_view sign_label(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

std::optional<double> lambda_of(const SignedSolve& s) {
  return s.pair ? std::optional(s.pair->lambda) : std::nullopt;
}
std::optional<double> err_of(const SignedSolve& s) {
  return s.pair ? std::optional(s.pair->consistency_error) : std::nullopt;
}
std::optional<double> residual_of(const SignedSolve& s) {
  return s.pair ? std::optional(s.pair->bvp_residual) : std::nullopt;
}
bool converged_of(const SignedSolve& s) { return s.pair && s.pair->converged; }

json thresholds_json(const Thresholds& th) {
  json j;
  j["rho1"] = opt_json(th.rho1);
  j["rho2"] = opt_json(th.rho2);
  j["rho0"] = th.rho0;
  j["argmax1"] = opt_json(th.argmax1);
  j["argmax2"] = opt_json(th.argmax2);
  return j;
}

json summary_object(const SweepSummary& s) {
  json j;
  j["problem"] = s.problem;
  j["eps"] = static_cast<int>(s.kernel.eps);
  j["omega"] = s.kernel.omega;
  j["closed_form"] = s.closed_form;
  j["thresholds"] = thresholds_json(s.thresholds);
  j["bound_curve_points"] = s.bound_curve.size();
  return j;
}

std::string profile_name(double rho, std::string_view ext) {
  return "profile_rho_" + format_double(rho) + "." + std::string(ext);
}

std::string profile_csv(std::span<const double> nodes, const SweepRow& row) {
  std::string out = "t,u_plus,u_minus\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out += format_double(nodes[i]);
    out += ',';
    if (row.plus.pair) out += format_double(row.plus.pair->u[i]);
    out += ',';
    if (row.minus.pair) out += format_double(row.minus.pair->u[i]);
    out += '\n';
  }
  return out;
}

std::string profile_json(std::span<const double> nodes, const SweepRow& row) {
  json j;
  j["rho"] = row.rho;
  j["t"] = std::vector<double>(nodes.begin(), nodes.end());
  j["u_plus"] = row.plus.pair ? json(row.plus.pair->u) : json(nullptr);
  j["u_minus"] = row.minus.pair ? json(row.minus.pair->u) : json(nullptr);
  return j.dump(2) + "\n";
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument("results csv: bad number '" + std::string(field) + "'");
  }
  return v;
}

std::optional<double> parse_optional(std::string_view field) {
  if (field.empty()) return std::nullopt;
  return parse_double(field);
}

bool parse_bool(std::string_view field) {
  if (field == "true") return true;
  if (field == "false") return false;
  throw std::invalid_argument("results csv: bad flag '" + std::string(field) + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, ptr};
}

std::string results_csv(const SweepResult& result) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const auto& row : result.rows) {
    out += format_double(row.rho) + ',' + opt(lambda_of(row.plus)) + ',' +
           opt(err_of(row.plus)) + ',' + (converged_of(row.plus) ? "true" : "false") +
           ',' + opt(lambda_of(row.minus)) + ',' + opt(err_of(row.minus)) + ',' +
           (converged_of(row.minus) ? "true" : "false") + ',' + opt(row.bound) + ',' +
           opt(residual_of(row.plus)) + ',' + opt(residual_of(row.minus)) + '\n';
  }
  return out;
}

std::string results_json(const SweepResult& result) {
  json rows = json::array();
  for (const auto& row : result.rows) {
    json r;
    r["rho"] = row.rho;
    r["lambda_plus"] = opt_json(lambda_of(row.plus));
    r["err_plus"] = opt_json(err_of(row.plus));
    r["converged_plus"] = converged_of(row.plus);
    r["lambda_minus"] = opt_json(lambda_of(row.minus));
    r["err_minus"] = opt_json(err_of(row.minus));
    r["converged_minus"] = converged_of(row.minus);
    r["bound"] = opt_json(row.bound);
    r["bvp_residual_plus"] = opt_json(residual_of(row.plus));
    r["bvp_residual_minus"] = opt_json(residual_of(row.minus));
    rows.push_back(std::move(r));
  }
  json j;
  j["summary"] = summary_object(result.summary);
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string bound_curve_csv(std::span<const BoundPoint> curve) {
  std::string out = "rho,bound,negative_bound\n";
  for (const auto& p : curve) {
    out += format_double(p.rho) + ',' + format_double(p.bound) + ',' +
           format_double(-p.bound) + '\n';
  }
  return out;
}

std::string bound_curve_json(std::span<const BoundPoint> curve) {
  json arr = json::array();
  for (const auto& p : curve) {
    arr.push_back({{"rho", p.rho}, {"bound", p.bound}, {"negative_bound", -p.bound}});
  }
  return arr.dump(2) + "\n";
}

std::string summary_json(const SweepSummary& summary) {
  return summary_object(summary).dump(2) + "\n";
}

std::string config_json(const SweepConfig& c) {
  json j;
  j["problem"] = c.problem;
  j["eps"] = c.eps ? json(static_cast<int>(*c.eps)) : json(nullptr);
  j["omega"] = opt_json(c.omega);
  j["n_grid"] = c.n_grid;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["rho_min"] = c.rho_min;
  j["rho_max"] = opt_json(c.rho_max);
  j["rho_count"] = c.rho_count;
  j["bound_curve_count"] = c.bound_curve_count;
  j["format"] = c.format == OutputFormat::csv ? "csv" : "json";
  j["profiles"] = c.profiles;
  return j.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw IoError(path.string(), "write failed");
}

namespace {

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError(dir.string(), ec ? ec.message() : "not a directory");
  }
}

}  // namespace

std::vector<std::filesystem::path> emit_bounds(const SweepSummary& summary,
                                               const SweepConfig& config) {
  ensure_dir(config.out_dir);
  const bool csv = config.format == OutputFormat::csv;
  std::vector<std::filesystem::path> written{
      config.out_dir / "summary.json",
      config.out_dir / (csv ? "bound_curve.csv" : "bound_curve.json"),
      config.out_dir / "config.json",
  };
  write_file(written[0], summary_json(summary));
  write_file(written[1], csv ? bound_curve_csv(summary.bound_curve)
                             : bound_curve_json(summary.bound_curve));
  write_file(written[2], config_json(config));
  return written;
}

std::vector<std::filesystem::path> emit_outputs(const SweepResult& result,
                                                const SweepConfig& config) {
  if (result.rows.empty()) throw std::invalid_argument("emit_outputs: no rows");
  auto written = emit_bounds(result.summary, config);
  const bool csv = config.format == OutputFormat::csv;
  const auto results = config.out_dir / (csv ? "results.csv" : "results.json");
  write_file(results, csv ? results_csv(result) : results_json(result));
  written.push_back(results);
  if (config.profiles) {
    for (const auto& row : result.rows) {
      const auto path = config.out_dir / profile_name(row.rho, csv ? "csv" : "json");
      write_file(path, csv ? profile_csv(result.nodes, row) : profile_json(result.nodes, row));
      written.push_back(path);
    }
  }
  return written;
}

std::filesystem::path emit_single_profile(const EigenpairApprox& pair,
                                          std::span<const double> nodes, Sign sign,
                                          const SweepConfig& config) {
  ensure_dir(config.out_dir);
  const bool csv = config.format == OutputFormat::csv;
  const auto path = config.out_dir / ("profile_rho_" + format_double(pair.rho) + "_" +
                                      std::string(sign_label(sign)) + (csv ? ".csv" : ".json"));
  if (csv) {
    std::string out = "t,u\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      out += format_double(nodes[i]) + ',' + format_double(pair.u[i]) + '\n';
    }
    write_file(path, out);
  } else {
    json j;
    j["rho"] = pair.rho;
    j["lambda"] = pair.lambda;
    j["t"] = std::vector<double>(nodes.begin(), nodes.end());
    j["u"] = pair.u;
    write_file(path, j.dump(2) + "\n");
  }
  return path;
}

std::vector<ResultsCsvRow> parse_results_csv(std::string_view text) {
  std::vector<ResultsCsvRow> rows;
  bool header = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (header) {
      if (line != kResultsHeader) {
        throw std::invalid_argument("results csv: unexpected header '" + std::string(line) + "'");
      }
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 10) {
      throw std::invalid_argument("results csv: expected 10 fields, got " +
                                  std::to_string(f.size()));
    }
    rows.push_back({parse_double(f[0]), parse_optional(f[1]), parse_optional(f[2]),
                    parse_bool(f[3]), parse_optional(f[4]), parse_optional(f[5]),
                    parse_bool(f[6]), parse_optional(f[7]), parse_optional(f[8]),
                    parse_optional(f[9])});
  }
  if (header) throw std::invalid_argument("results csv: empty input");
  return rows;
}

std::vector<ResultsCsvRow> read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_results_csv(ss.str());
}

}  // namespace nbvp
