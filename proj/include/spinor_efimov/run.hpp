// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file run.hpp
 * @brief Task dispatch and result serialization for the spinor-efimov CLI.
 *
 * Every task produces a ResultBundle whose first table is written to
 * `<task>.csv`; the whole bundle goes to `<task>.json`; sweep tasks also
 * render `<task>.svg`. Floats carry 12 significant digits in both CSV and JSON.
 */

#pragma once

#include "spinor_efimov/config.hpp"
#include "spinor_efimov/figure.hpp"
#include "spinor_efimov/hyperradial.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace spinor_efimov {

inline constexpr const char* kVersion = "0.1.0";

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct ResultBundle {
  Task task = Task::roots;
  std::string config_text;  // serialize_config echo
  std::string timestamp;    // UTC, ISO 8601
  std::vector<Table> tables;  // tables.front() is the primary table
  std::vector<std::string> warnings;
  std::vector<std::string> errors;

  std::optional<SweepTable> sweep;  // sweep tasks only
  FigureAxis figure_axis = FigureAxis::theta;

  const Table* table(const std::string& name) const;
};

/// Column layout shared by roots, theta-sweep and r-sweep tables.
std::vector<std::string> sweep_columns();

/// Runs the configured task. Library errors propagate as exceptions with the
/// task name prefixed; failed checks are recorded in `errors`.
ResultBundle run(const RunConfig& cfg);

struct InvarianceReport {
  double max_rotation_deviation = 0.0;
  double max_sign_flip_deviation = 0.0;
  int mismatched_lists = 0;
  Table table;
};

/// One-body rotation and eigenvector sign-flip checks on `samples` seeded
/// random (A, phi) pairs in finite mode at hyperradius R.
InvarianceReport invariance_suite(int samples, std::uint64_t seed, double R, double s_max);

/// Largest difference between two root lists after expanding multiplicities;
/// +inf when the expanded lists differ in length or axis pattern.
double root_list_deviation(const std::vector<ChannelRoot>& a, const std::vector<ChannelRoot>& b);

std::string format_number(double x);  // %.12g; "nan"/"inf" spelled out
std::string to_csv(const Table& t);
std::string to_json(const ResultBundle& b);

/// Writes the requested formats into out_dir; returns the written paths.
std::vector<std::string> write_outputs(ResultBundle& b, const std::string& out_dir,
                                       const std::vector<Format>& formats);

}  // namespace spinor_efimov
