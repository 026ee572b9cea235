#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stefan/cli.hpp"

// Argument parsing for the `stefan` binary, separated from cli.hpp so the
// output/runner layer stays usable without CLI11.

namespace stefan::cli {

// args excludes the program name. Returns the process exit code.
inline int run(std::vector<std::string> args) {
  CLI::App app{"similarity solutions of one-phase Stefan melting problems"};
  app.require_subcommand(1);

  RunManifest manifest;
  std::string formats = "csv,json,svg";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", manifest.input_path, "flat key=value config file")->required();
    sub->add_option("--out", manifest.output_dir, "output directory")->required();
    sub->add_option("--grid", manifest.grid_points, "profile grid nodes (default 512)");
    sub->add_option("--formats", formats, "subset of csv,json,svg (default all)");
    sub->add_option("--steps", manifest.steps,
                    "shooting-oracle integration steps (default 10000)");
  };

  CLI::App* dirichlet = app.add_subcommand("dirichlet", "fixed-temperature face profile run");
  CLI::App* robin = app.add_subcommand("robin", "convective face profile run");
  CLI::App* converge =
      app.add_subcommand("converge", "Robin-to-Dirichlet convergence study over a gamma list");
  CLI::App* validate =
      app.add_subcommand("validate", "cross-check the functional solution against the "
                                     "shooting oracle and residual battery");
  for (auto* sub : {dirichlet, robin, converge, validate}) add_common(sub);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (dirichlet->parsed()) manifest.subcommand = Subcommand::dirichlet;
  if (robin->parsed()) manifest.subcommand = Subcommand::robin;
  if (converge->parsed()) manifest.subcommand = Subcommand::converge;
  if (validate->parsed()) manifest.subcommand = Subcommand::validate;

  manifest.formats.clear();
  std::size_t pos = 0;
  while (pos <= formats.size()) {
    auto comma = formats.find(',', pos);
    if (comma == std::string::npos) comma = formats.size();
    const std::string token = formats.substr(pos, comma - pos);
    if (!token.empty()) manifest.formats.insert(token);
    pos = comma + 1;
  }

  return run_manifest(manifest);
}

}  // namespace stefan::cli
