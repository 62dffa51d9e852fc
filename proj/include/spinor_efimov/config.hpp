// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file config.hpp
 * @brief Run-file format: flat `key = value` lines, `#` comments,
 *        comma-separated lists. See README for the key reference.
 */

#pragma once

#include "spinor_efimov/hyperangular.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace spinor_efimov {

enum class Task { roots, theta_sweep, r_sweep, ladder, invariance_suite };
enum class Format { csv, json, svg };

std::string to_string(Task t);
std::string to_string(Format f);
std::optional<Task> parse_task(std::string_view s);

/// Raw upper triangle (A11, A12, A13, A22, A23, A33).
struct RawMatrixInput {
  std::array<double, 6> entries{};
  bool operator==(const RawMatrixInput&) const = default;
};

/// Toy form (A11, A22, A12, A33) with A13 = A23 = 0.
struct ToyInput {
  double a11 = 0, a22 = 0, a12 = 0, a33 = 0;
  bool operator==(const ToyInput&) const = default;
};

/// Mixing angle plus fixed eigenchannel lengths.
struct AngleInput {
  std::optional<double> theta;  // absent for theta-sweep
  std::array<ScatteringLength, 3> lengths{ScatteringLength::closed(), ScatteringLength::unitary(),
                                          ScatteringLength::closed()};
  bool operator==(const AngleInput&) const = default;
};

using MatrixInput = std::variant<std::monostate, RawMatrixInput, ToyInput, AngleInput>;

struct RunConfig {
  Task task = Task::roots;
  MatrixInput input;
  Mode mode = Mode::asymptotic;
  double R = 1.0;

  double theta_min = 0.0;
  double theta_max = std::numbers::pi / 2;
  int theta_count = 201;

  double r_min = 0.1;
  double r_max = 1e7;
  int r_count = 161;

  std::optional<double> kappa_max;
  double s_max = 6.0;
  bool real_roots = false;

  std::optional<double> kappa;  // ladder
  double r0 = 1e-3;
  int levels = 4;

  int samples = 50;  // invariance-suite
  std::uint64_t seed = 20160401;

  std::string out_dir = ".";
  std::vector<Format> formats{Format::csv, Format::json, Format::svg};

  bool operator==(const RunConfig&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedConfig {
  RunConfig config;
  std::vector<std::string> warnings;
};

/// Parses and validates. In strict mode unknown keys are errors, otherwise
/// they are reported as warnings. `task` may come from the text or from
/// `task_override`; if both are present they must agree.
ParsedConfig parse_config(std::string_view text, bool strict = true,
                          std::optional<Task> task_override = std::nullopt);

/// Cross-field validation; throws ConfigError.
void validate(const RunConfig& cfg);

/// Inverse of parse_config (full precision).
std::string serialize_config(const RunConfig& cfg);

/// Channel set described by the matrix input (throws when absent).
TwoBodyChannelSet channel_set(const RunConfig& cfg);

}  // namespace spinor_efimov
