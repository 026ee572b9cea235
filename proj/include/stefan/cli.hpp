#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stefan/asymptotics.hpp"
#include "stefan/dirichlet.hpp"
#include "stefan/model.hpp"
#include "stefan/oracle.hpp"
#include "stefan/robin.hpp"

// Command-line front end: flat key=value configs in, CSV/JSON/SVG out.
// Exit codes: 0 ok, 2 input error, 3 solver error, 4 validation/invariant
// failure.

namespace stefan::cli {

using ordered_json = nlohmann::ordered_json;

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { dirichlet, robin, converge, validate };

struct RunManifest {
  Subcommand subcommand = Subcommand::dirichlet;
  std::string input_path;
  std::string output_dir;
  int grid_points = 512;
  std::set<std::string> formats = {"csv", "json", "svg"};
  int steps = 10000;  // shooting-oracle integration steps (validate)
};

// validate-subcommand thresholds, pinned here
inline constexpr double kLambdaGapTol = 1e-6;
inline constexpr double kProfileGapTol = 1e-6;
inline constexpr double kOdeResidualTol = 1e-4;
inline constexpr double kFluxResidualTol = 1e-4;
inline constexpr double kStefanResidualTol = 1e-4;
inline constexpr double kConvectiveResidualFactor = 1e-4;  // times gamma

// ---------------------------------------------------------------- formatting

// Shortest decimal that round-trips the double.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::runtime_error("format_double: non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw config_error("write failed: " + path.string());
}

// ------------------------------------------------------------- config files

// Flat `key = value` text; '#' starts a comment, lists are comma-separated.
inline std::map<std::string, std::vector<double>> parse_config_text(const std::string& text) {
  std::map<std::string, std::vector<double>> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    const auto last = s.find_last_not_of(" \t\r");
    return (first == std::string::npos) ? std::string{} : s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw config_error("config line " + std::to_string(lineno) + ": empty key or value");
    if (entries.count(key))
      throw config_error("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= value.size()) {
      auto comma = value.find(',', pos);
      if (comma == std::string::npos) comma = value.size();
      const std::string token = trim(value.substr(pos, comma - pos));
      if (token.empty())
        throw config_error("config line " + std::to_string(lineno) + ": empty list entry");
      double parsed = 0.0;
      const char* begin = token.data();
      const char* end = begin + token.size();
      const auto res = std::from_chars(begin, end, parsed);
      if (res.ec != std::errc{} || res.ptr != end)
        throw config_error("config line " + std::to_string(lineno) + ": cannot parse number '" +
                           token + "'");
      values.push_back(parsed);
      pos = comma + 1;
    }
    entries.emplace(key, std::move(values));
  }
  return entries;
}

inline std::map<std::string, std::vector<double>> parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

struct TemperatureLattice {
  double x_max = 0.0;
  double t_max = 0.0;
  int x_nodes = 0;
  int t_nodes = 0;
};

struct ProblemInput {
  bool dimensional = false;
  std::optional<MaterialSpec> material;
  DimensionlessConfig base;           // gamma filled for Robin-type runs
  std::vector<double> p_values;       // one entry unless the subcommand allows a list
  std::vector<double> gamma_grid;     // converge only
  std::optional<TemperatureLattice> lattice;
  bool robin = false;                 // boundary implied by the config (validate)
};

namespace detail {

inline const std::set<std::string> kDimensionalKeys = {"rho", "c0", "k0", "latent",
                                                       "T0",  "Tf", "h"};
inline const std::set<std::string> kDimensionlessKeys = {"ste", "gamma", "diffusivity_a"};
inline const std::set<std::string> kSharedKeys = {"delta", "p"};
inline const std::set<std::string> kLatticeKeys = {"x_max", "t_max", "x_nodes", "t_nodes"};

inline double single_value(const std::map<std::string, std::vector<double>>& entries,
                           const std::string& key) {
  const auto it = entries.find(key);
  if (it == entries.end()) throw config_error("missing required field '" + key + "'");
  if (it->second.size() != 1)
    throw config_error("field '" + key + "' expects a single value");
  return it->second.front();
}

inline std::optional<double> optional_value(
    const std::map<std::string, std::vector<double>>& entries, const std::string& key) {
  const auto it = entries.find(key);
  if (it == entries.end()) return std::nullopt;
  if (it->second.size() != 1)
    throw config_error("field '" + key + "' expects a single value");
  return it->second.front();
}

inline int integer_value(const std::map<std::string, std::vector<double>>& entries,
                         const std::string& key) {
  const double v = single_value(entries, key);
  if (!(v >= 1) || v != std::floor(v) || v > 1e7)
    throw config_error("field '" + key + "' expects a positive integer");
  return static_cast<int>(v);
}

}  // namespace detail

inline ProblemInput load_problem(const RunManifest& manifest) {
  const auto entries = parse_config_file(manifest.input_path);

  bool has_dimensional = false, has_dimensionless = false, has_lattice = false;
  for (const auto& [key, values] : entries) {
    if (detail::kDimensionalKeys.count(key)) has_dimensional = true;
    else if (detail::kDimensionlessKeys.count(key)) has_dimensionless = true;
    else if (detail::kLatticeKeys.count(key)) has_lattice = true;
    else if (!detail::kSharedKeys.count(key))
      throw config_error("unknown config field '" + key + "'");
  }
  if (has_dimensional && has_dimensionless)
    throw config_error("config mixes dimensional (MaterialSpec) and dimensionless "
                       "(ste/gamma) fields; provide one set only");

  const Subcommand sub = manifest.subcommand;
  ProblemInput input;
  input.dimensional = has_dimensional;

  // p: a list for the profile-overlay subcommands, single otherwise
  if (const auto it = entries.find("p"); it != entries.end()) {
    if (it->second.empty()) throw config_error("field 'p' must not be empty");
    const bool list_ok = (sub == Subcommand::dirichlet || sub == Subcommand::robin);
    if (!list_ok && it->second.size() != 1)
      throw config_error("field 'p' expects a single value for this subcommand");
    input.p_values = it->second;
  } else {
    input.p_values = {1.0};
  }
  const double delta = detail::optional_value(entries, "delta").value_or(0.0);

  if (has_lattice) {
    if (sub != Subcommand::dirichlet && sub != Subcommand::robin)
      throw config_error("temperature lattice fields are only valid for the dirichlet and "
                         "robin subcommands");
    if (!has_dimensional)
      throw config_error("temperature lattice requires dimensional (MaterialSpec) input "
                         "so T0/Tf/a are defined");
    TemperatureLattice lattice;
    lattice.x_max = detail::single_value(entries, "x_max");
    lattice.t_max = detail::single_value(entries, "t_max");
    lattice.x_nodes = detail::integer_value(entries, "x_nodes");
    lattice.t_nodes = detail::integer_value(entries, "t_nodes");
    if (!(lattice.x_max > 0.0) || !(lattice.t_max > 0.0))
      throw config_error("x_max and t_max must be positive");
    input.lattice = lattice;
  }

  const bool robin_like = (sub == Subcommand::robin) ||
                          (sub == Subcommand::validate &&
                           (entries.count("gamma") || entries.count("h")));
  input.robin = robin_like;

  try {
    if (has_dimensional) {
      if (sub == Subcommand::converge)
        throw config_error("converge requires dimensionless input with a gamma list");
      MaterialSpec spec;
      spec.rho = detail::single_value(entries, "rho");
      spec.c0 = detail::single_value(entries, "c0");
      spec.k0 = detail::single_value(entries, "k0");
      spec.latent = detail::single_value(entries, "latent");
      spec.T0 = detail::single_value(entries, "T0");
      spec.Tf = detail::single_value(entries, "Tf");
      spec.delta = delta;
      spec.p = input.p_values.front();
      if (const auto h = detail::optional_value(entries, "h")) spec.h = *h;
      if (robin_like && !entries.count("h"))
        throw config_error("missing required field 'h' (Robin boundary)");
      if (!robin_like && entries.count("h"))
        std::cerr << "warning: h is ignored under the dirichlet boundary\n";
      input.material = spec;
      input.base = reduce(spec, robin_like ? BoundaryKind::robin : BoundaryKind::dirichlet);
    } else {
      DimensionlessConfig cfg;
      cfg.ste = detail::single_value(entries, "ste");
      cfg.delta = delta;
      cfg.p = input.p_values.front();
      if (const auto a = detail::optional_value(entries, "diffusivity_a"))
        cfg.diffusivity_a = *a;
      if (sub == Subcommand::converge) {
        const auto it = entries.find("gamma");
        if (it == entries.end() || it->second.empty())
          throw config_error("converge requires a non-empty 'gamma' list");
        input.gamma_grid = it->second;
        for (std::size_t i = 0; i < input.gamma_grid.size(); ++i) {
          if (!(input.gamma_grid[i] > 0.0))
            throw config_error("field 'gamma' entries must be positive");
          if (i > 0 && !(input.gamma_grid[i] > input.gamma_grid[i - 1]))
            throw config_error("field 'gamma' must be strictly ascending");
        }
      } else if (robin_like) {
        const auto gamma = detail::optional_value(entries, "gamma");
        if (!gamma) throw config_error("missing required field 'gamma'");
        cfg.gamma = *gamma;
      } else if (entries.count("gamma")) {
        std::cerr << "warning: gamma is ignored under the dirichlet boundary\n";
      }
      cfg.validate();
      input.base = cfg;
    }
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());  // field-level validation message
  }
  return input;
}

// ------------------------------------------------------------------ outputs

struct PlotCurve {
  std::string label;
  double lambda = 0.0;
  std::vector<double> xs;
  std::vector<double> ys;
};

namespace detail {

inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

inline const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace detail

// Minimal fixed-size line plot: one polyline per curve, legend of
// (label, lambda). Intended for eyeball comparison, not pixel fidelity.
inline std::string render_svg(const std::vector<PlotCurve>& curves, const std::string& x_label,
                              const std::string& y_label) {
  constexpr double kW = 800.0, kH = 600.0;
  constexpr double kLeft = 62.0, kRight = 178.0, kTop = 20.0, kBottom = 48.0;
  double x_max = 0.0, y_max = 0.0;
  for (const auto& c : curves) {
    for (double x : c.xs) x_max = std::max(x_max, x);
    for (double y : c.ys) y_max = std::max(y_max, y);
  }
  if (!(x_max > 0.0)) x_max = 1.0;
  y_max = std::max(y_max, 1.0) * 1.05;

  auto sx = [&](double x) { return kLeft + x / x_max * (kW - kLeft - kRight); };
  auto sy = [&](double y) { return kH - kBottom - y / y_max * (kH - kTop - kBottom); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  using detail::px;
  using detail::tick;
  // axes
  svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kH - kBottom) + "\" x2=\"" +
         px(kW - kRight) + "\" y2=\"" + px(kH - kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(kLeft) +
         "\" y2=\"" + px(kH - kBottom) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_max * i / 5.0;
    const double yv = y_max * i / 5.0;
    svg += "<line x1=\"" + px(sx(xv)) + "\" y1=\"" + px(kH - kBottom) + "\" x2=\"" +
           px(sx(xv)) + "\" y2=\"" + px(kH - kBottom + 4) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + px(sx(xv)) + "\" y=\"" + px(kH - kBottom + 18) +
           "\" text-anchor=\"middle\">" + tick(xv) + "</text>\n";
    svg += "<line x1=\"" + px(kLeft - 4) + "\" y1=\"" + px(sy(yv)) + "\" x2=\"" + px(kLeft) +
           "\" y2=\"" + px(sy(yv)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(sy(yv) + 4) +
           "\" text-anchor=\"end\">" + tick(yv) + "</text>\n";
  }
  svg += "<text x=\"" + px((kLeft + kW - kRight) / 2) + "\" y=\"" + px(kH - 10) +
         "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  svg += "<text x=\"16\" y=\"" + px((kTop + kH - kBottom) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         px((kTop + kH - kBottom) / 2) + ")\">" + y_label + "</text>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const char* color = detail::kPalette[k % 8];
    std::string points;
    for (std::size_t i = 0; i < curves[k].xs.size(); ++i)
      points += px(sx(curves[k].xs[i])) + "," + px(sy(curves[k].ys[i])) + " ";
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    const double ly = kTop + 14 + 18.0 * static_cast<double>(k);
    svg += "<line x1=\"" + px(kW - kRight + 12) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" +
           px(kW - kRight + 36) + "\" y2=\"" + px(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    char lam[48];
    std::snprintf(lam, sizeof(lam), "%.6g", curves[k].lambda);
    svg += "<text x=\"" + px(kW - kRight + 42) + "\" y=\"" + px(ly) + "\">" +
           curves[k].label + " (lambda=" + lam + ")</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

inline std::string profile_csv(const std::vector<double>& etas, const std::vector<double>& ys) {
  std::string csv = "eta,y\n";
  for (std::size_t i = 0; i < etas.size(); ++i)
    csv += format_double(etas[i]) + "," + format_double(ys[i]) + "\n";
  return csv;
}

namespace detail {

inline std::filesystem::path ensure_output_dir(const RunManifest& manifest) {
  const std::filesystem::path dir(manifest.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw config_error("output_dir not writable: " + manifest.output_dir);
  return dir;
}

inline void check_manifest(const RunManifest& manifest) {
  if (manifest.grid_points < 2) throw config_error("--grid must be >= 2");
  if (manifest.steps < 100) throw config_error("--steps must be >= 100");
  if (manifest.formats.empty()) throw config_error("--formats must not be empty");
  for (const auto& f : manifest.formats)
    if (f != "csv" && f != "json" && f != "svg")
      throw config_error("unknown format '" + f + "' (expected csv, json, svg)");
}

// Common eta grid with zero extension beyond each curve's own front.
inline std::vector<double> common_grid(double eta_max, int n) {
  std::vector<double> etas(n);
  for (int i = 0; i < n; ++i) etas[i] = eta_max * (static_cast<double>(i) / (n - 1));
  return etas;
}

inline std::vector<double> extended_values(const std::vector<double>& etas, double lambda,
                                           const std::function<double(double)>& y_eval) {
  std::vector<double> ys(etas.size());
  for (std::size_t i = 0; i < etas.size(); ++i)
    ys[i] = (etas[i] <= lambda) ? y_eval(etas[i]) : 0.0;
  return ys;
}

inline double functional_residual(const std::vector<double>& etas,
                                  const std::vector<double>& ys, double lambda, double ste,
                                  double delta, double p) {
  double worst = 0.0;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (etas[i] > lambda) continue;
    worst = std::max(worst, std::abs(big_f(ys[i], delta, p) - big_g(etas[i], lambda, ste)));
  }
  return worst;
}

inline void write_temperature_lattice(const std::filesystem::path& dir,
                                      const TemperatureLattice& lattice,
                                      const MaterialSpec& spec, double front_coefficient,
                                      const std::function<double(double, double)>& temp) {
  // rows beyond the front take the phase-change temperature Tf
  std::string csv = "x,t,T\n";
  const double a = std::sqrt(spec.k0 / (spec.rho * spec.c0));
  for (int j = 1; j <= lattice.t_nodes; ++j) {
    const double t = lattice.t_max * (static_cast<double>(j) / lattice.t_nodes);
    const double s_t = 2.0 * a * front_coefficient * std::sqrt(t);
    for (int i = 0; i <= lattice.x_nodes; ++i) {
      const double x = lattice.x_max * (static_cast<double>(i) / lattice.x_nodes);
      const double T = (x <= s_t) ? temp(x, t) : spec.Tf;
      csv += format_double(x) + "," + format_double(t) + "," + format_double(T) + "\n";
    }
  }
  write_file(dir / "temperature.csv", csv);
}

}  // namespace detail

// ------------------------------------------------------------- subcommands

inline int run_dirichlet(const RunManifest& manifest) {
  try {
    detail::check_manifest(manifest);
    const ProblemInput input = load_problem(manifest);
    const auto dir = detail::ensure_output_dir(manifest);

    std::vector<DirichletSolution> solutions;
    for (double p : input.p_values) {
      DimensionlessConfig cfg = input.base;
      cfg.p = p;
      solutions.push_back(solve_lambda(cfg));
    }

    double eta_max = 0.0;
    for (const auto& sol : solutions) eta_max = std::max(eta_max, sol.lambda);
    const auto etas = detail::common_grid(eta_max, manifest.grid_points);

    ordered_json summary = ordered_json::array();
    std::vector<PlotCurve> curves;
    for (const auto& sol : solutions) {
      const auto ys = detail::extended_values(
          etas, sol.lambda, [&](double eta) { return profile_y(sol, eta); });
      if (manifest.formats.count("csv"))
        write_file(dir / ("profile_p" + format_double(sol.config.p) + ".csv"),
                   profile_csv(etas, ys));
      auto y_eval = [&](double eta) { return profile_y(sol, eta); };
      ordered_json entry;
      entry["boundary"] = "dirichlet";
      entry["ste"] = sol.config.ste;
      entry["delta"] = sol.config.delta;
      entry["p"] = sol.config.p;
      entry["lambda"] = sol.lambda;
      entry["functional_residual"] = detail::functional_residual(
          etas, ys, sol.lambda, sol.config.ste, sol.config.delta, sol.config.p);
      entry["flux_residual"] =
          flux_constant_residual(y_eval, sol.lambda, sol.config.delta, sol.config.p, 256);
      entry["stefan_residual"] = stefan_residual(y_eval, sol.lambda, sol.config.ste);
      summary.push_back(entry);
      curves.push_back({"p=" + format_double(sol.config.p), sol.lambda, etas, ys});
      std::cout << "dirichlet: p=" << format_double(sol.config.p)
                << " lambda=" << format_double(sol.lambda) << "\n";
    }

    if (manifest.formats.count("json"))
      write_file(dir / "summary.json", summary.dump(2) + "\n");
    if (manifest.formats.count("svg"))
      write_file(dir / "profiles.svg", render_svg(curves, "eta", "y"));
    if (input.lattice && manifest.formats.count("csv")) {
      const auto& sol = solutions.front();
      detail::write_temperature_lattice(dir, *input.lattice, *input.material, sol.lambda,
                                        [&](double x, double t) {
                                          return temperature(sol, *input.material, x, t);
                                        });
    }
    return 0;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
}

inline int run_robin(const RunManifest& manifest) {
  try {
    detail::check_manifest(manifest);
    const ProblemInput input = load_problem(manifest);
    const auto dir = detail::ensure_output_dir(manifest);

    std::vector<RobinSolution> solutions;
    for (double p : input.p_values) {
      DimensionlessConfig cfg = input.base;
      cfg.p = p;
      solutions.push_back(solve_lambda_gamma(cfg));
    }

    double eta_max = 0.0;
    for (const auto& sol : solutions) eta_max = std::max(eta_max, sol.lambda_gamma);
    const auto etas = detail::common_grid(eta_max, manifest.grid_points);

    ordered_json summary = ordered_json::array();
    std::vector<PlotCurve> curves;
    for (const auto& sol : solutions) {
      const auto ys = detail::extended_values(
          etas, sol.lambda_gamma, [&](double eta) { return profile_y_gamma(sol, eta); });
      if (manifest.formats.count("csv"))
        write_file(dir / ("profile_p" + format_double(sol.config.p) + ".csv"),
                   profile_csv(etas, ys));
      auto y_eval = [&](double eta) { return profile_y_gamma(sol, eta); };
      ordered_json entry;
      entry["boundary"] = "robin";
      entry["ste"] = sol.config.ste;
      entry["delta"] = sol.config.delta;
      entry["p"] = sol.config.p;
      entry["gamma"] = *sol.config.gamma;
      entry["lambda0"] = sol.lambda0;
      entry["lambda_gamma"] = sol.lambda_gamma;
      entry["surface_y0"] = sol.surface_y0;
      entry["functional_residual"] = detail::functional_residual(
          etas, ys, sol.lambda_gamma, sol.config.ste, sol.config.delta, sol.config.p);
      entry["flux_residual"] = flux_constant_residual(y_eval, sol.lambda_gamma,
                                                      sol.config.delta, sol.config.p, 256);
      entry["stefan_residual"] = stefan_residual(y_eval, sol.lambda_gamma, sol.config.ste);
      entry["convective_residual"] =
          convective_residual(sol, 1e-6 * std::max(1.0, sol.lambda_gamma));
      summary.push_back(entry);
      curves.push_back({"p=" + format_double(sol.config.p), sol.lambda_gamma, etas, ys});
      std::cout << "robin: p=" << format_double(sol.config.p)
                << " lambda_gamma=" << format_double(sol.lambda_gamma) << "\n";
    }

    if (manifest.formats.count("json"))
      write_file(dir / "summary.json", summary.dump(2) + "\n");
    if (manifest.formats.count("svg"))
      write_file(dir / "profiles.svg", render_svg(curves, "eta", "y"));
    if (input.lattice && manifest.formats.count("csv")) {
      const auto& sol = solutions.front();
      detail::write_temperature_lattice(
          dir, *input.lattice, *input.material, sol.lambda_gamma, [&](double x, double t) {
            return temperature_gamma(sol, *input.material, x, t);
          });
    }
    return 0;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
}

inline int run_converge(const RunManifest& manifest) {
  ConvergenceReport report;
  try {
    detail::check_manifest(manifest);
    const ProblemInput input = load_problem(manifest);
    const auto dir = detail::ensure_output_dir(manifest);

    report = converge_study(input.base, input.gamma_grid, manifest.grid_points);

    const auto etas = detail::common_grid(report.lambda_limit, manifest.grid_points);
    std::vector<PlotCurve> curves;
    for (std::size_t k = 0; k < report.gamma_grid.size(); ++k) {
      DimensionlessConfig cfg = input.base;
      cfg.gamma = report.gamma_grid[k];
      const RobinSolution sol = solve_lambda_gamma(cfg);
      const auto ys = detail::extended_values(
          etas, sol.lambda_gamma, [&](double eta) { return profile_y_gamma(sol, eta); });
      if (manifest.formats.count("csv"))
        write_file(dir / ("profile_gamma" + format_double(report.gamma_grid[k]) + ".csv"),
                   profile_csv(etas, ys));
      curves.push_back(
          {"gamma=" + format_double(report.gamma_grid[k]), sol.lambda_gamma, etas, ys});
    }
    DimensionlessConfig limit_cfg = input.base;
    limit_cfg.gamma.reset();
    const DirichletSolution limit = solve_lambda(limit_cfg);
    const auto limit_ys = detail::extended_values(
        etas, limit.lambda, [&](double eta) { return profile_y(limit, eta); });
    if (manifest.formats.count("csv"))
      write_file(dir / "profile_dirichlet.csv", profile_csv(etas, limit_ys));
    curves.push_back({"dirichlet", limit.lambda, etas, limit_ys});

    if (manifest.formats.count("json")) {
      ordered_json out;
      out["boundary"] = "converge";
      out["ste"] = input.base.ste;
      out["delta"] = input.base.delta;
      out["p"] = input.base.p;
      out["gamma_grid"] = report.gamma_grid;
      out["lambdas"] = report.lambdas;
      out["lambda_limit"] = report.lambda_limit;
      out["sup_errors"] = report.sup_errors;
      out["monotone"] = report.monotone;
      out["bounded"] = report.bounded;
      write_file(dir / "report.json", out.dump(2) + "\n");
    }
    if (manifest.formats.count("svg"))
      write_file(dir / "profiles.svg", render_svg(curves, "eta", "y"));

    std::cout << "converge: lambda_limit=" << format_double(report.lambda_limit)
              << " monotone=" << (report.monotone ? "true" : "false")
              << " bounded=" << (report.bounded ? "true" : "false") << "\n";
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  if (!report.monotone || !report.bounded) {
    std::cerr << "invariant violation: lambda_gamma sequence not monotone/bounded\n";
    return 4;
  }
  return 0;
}

inline int run_validate(const RunManifest& manifest) {
  bool pass = false;
  try {
    detail::check_manifest(manifest);
    const ProblemInput input = load_problem(manifest);
    const auto dir = detail::ensure_output_dir(manifest);

    const DimensionlessConfig cfg = input.base;
    ordered_json score;
    score["boundary"] = input.robin ? "robin" : "dirichlet";
    score["ste"] = cfg.ste;
    score["delta"] = cfg.delta;
    score["p"] = cfg.p;
    if (input.robin) score["gamma"] = *cfg.gamma;
    score["steps"] = manifest.steps;

    double lambda_functional = 0.0;
    std::function<double(double)> y_eval;
    std::optional<RobinSolution> robin_sol;
    std::optional<DirichletSolution> dirichlet_sol;
    if (input.robin) {
      robin_sol = solve_lambda_gamma(cfg);
      lambda_functional = robin_sol->lambda_gamma;
      y_eval = [sol = *robin_sol](double eta) { return profile_y_gamma(sol, eta); };
    } else {
      dirichlet_sol = solve_lambda(cfg);
      lambda_functional = dirichlet_sol->lambda;
      y_eval = [sol = *dirichlet_sol](double eta) { return profile_y(sol, eta); };
    }

    const ShootingResult shot =
        shoot(cfg, input.robin ? BoundaryKind::robin : BoundaryKind::dirichlet, {},
              manifest.steps, lambda_functional);
    const double lambda_gap = std::abs(shot.lambda_shoot - lambda_functional);
    double profile_gap = 0.0;
    for (std::size_t i = 0; i < shot.profile.etas.size(); ++i) {
      const double eta = std::min(shot.profile.etas[i], lambda_functional);
      profile_gap = std::max(profile_gap, std::abs(shot.profile.values[i] - y_eval(eta)));
    }
    const double ode_res = ode_residual(y_eval, lambda_functional, cfg, 1000);
    const double flux_res =
        flux_constant_residual(y_eval, lambda_functional, cfg.delta, cfg.p, 512);
    const double stefan_res = stefan_residual(y_eval, lambda_functional, cfg.ste);

    score["lambda_functional"] = lambda_functional;
    score["lambda_shoot"] = shot.lambda_shoot;
    score["lambda_gap"] = lambda_gap;
    score["profile_gap"] = profile_gap;
    score["ode_residual"] = ode_res;
    score["flux_residual"] = flux_res;
    score["stefan_residual"] = stefan_res;

    std::vector<std::string> failures;
    if (!(lambda_gap <= kLambdaGapTol)) failures.push_back("lambda_gap");
    if (!(profile_gap <= kProfileGapTol)) failures.push_back("profile_gap");
    if (!(ode_res <= kOdeResidualTol)) failures.push_back("ode_residual");
    if (!(flux_res <= kFluxResidualTol)) failures.push_back("flux_residual");
    if (!(stefan_res <= kStefanResidualTol)) failures.push_back("stefan_residual");
    if (input.robin) {
      const double conv_res = convective_residual(
          *robin_sol, 1e-6 * std::max(1.0, robin_sol->lambda_gamma));
      score["convective_residual"] = conv_res;
      if (!(conv_res <= kConvectiveResidualFactor * *cfg.gamma))
        failures.push_back("convective_residual");
    }
    score["failures"] = failures;
    pass = failures.empty();
    score["pass"] = pass;

    if (manifest.formats.count("json"))
      write_file(dir / "scorecard.json", score.dump(2) + "\n");
    std::cout << "validate: " << (pass ? "pass" : "FAIL") << " lambda_gap="
              << format_double(lambda_gap) << " profile_gap=" << format_double(profile_gap)
              << "\n";
    if (!pass)
      for (const auto& f : failures) std::cerr << "failed check: " << f << "\n";
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  return pass ? 0 : 4;
}

inline int run_manifest(const RunManifest& manifest) {
  switch (manifest.subcommand) {
    case Subcommand::dirichlet: return run_dirichlet(manifest);
    case Subcommand::robin: return run_robin(manifest);
    case Subcommand::converge: return run_converge(manifest);
    case Subcommand::validate: return run_validate(manifest);
  }
  return 2;
}

}  // namespace stefan::cli
