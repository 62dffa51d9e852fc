// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

// spinor-efimov <task> --config <path> [--out <dir>] [--format csv,json,svg] [--strict]

#include "spinor_efimov/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace se = spinor_efimov;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<se::Format> parse_formats(const std::vector<std::string>& names) {
  std::vector<se::Format> out;
  for (const std::string& n : names) {
    if (n == "csv") out.push_back(se::Format::csv);
    else if (n == "json") out.push_back(se::Format::json);
    else if (n == "svg") out.push_back(se::Format::svg);
    else throw std::runtime_error("unknown format '" + n + "' (expected csv, json, svg)");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Efimov channel exponents, adiabatic potentials and trimer ladders"};
  app.set_version_flag("--version", se::kVersion);
  std::string task_name, config_path, out_dir;
  std::vector<std::string> formats;
  bool strict = false;
  app.add_option("task", task_name, "roots | theta-sweep | r-sweep | ladder | invariance-suite")
      ->required();
  app.add_option("--config", config_path, "run file")->required();
  app.add_option("--out", out_dir, "output directory (overrides out_dir)");
  app.add_option("--format", formats, "subset of csv,json,svg")->delimiter(',');
  app.add_flag("--strict", strict, "treat unknown config keys as errors");
  CLI11_PARSE(app, argc, argv);

  const auto task = se::parse_task(task_name);
  if (!task) {
    std::cerr << "error: unknown task '" << task_name << "'\n";
    return 2;
  }

  try {
    se::ParsedConfig parsed = se::parse_config(read_file(config_path), strict, *task);
    se::RunConfig& cfg = parsed.config;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!formats.empty()) cfg.formats = parse_formats(formats);

    se::ResultBundle bundle = se::run(cfg);
    bundle.warnings.insert(bundle.warnings.begin(), parsed.warnings.begin(), parsed.warnings.end());
    for (const std::string& path : se::write_outputs(bundle, cfg.out_dir, cfg.formats))
      std::cout << "wrote " << path << '\n';
    for (const std::string& w : bundle.warnings) std::cerr << "warning: " << w << '\n';
    for (const std::string& e : bundle.errors) std::cerr << "error: " << e << '\n';
    return bundle.errors.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
