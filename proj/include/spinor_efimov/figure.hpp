// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "spinor_efimov/hyperangular.hpp"

#include <string>
#include <vector>

namespace spinor_efimov {

enum class FigureAxis { theta, log_radius };

struct FigureOptions {
  FigureAxis x_axis = FigureAxis::theta;
  bool include_real = true;
  int width = 720;
  int height = 480;
};

struct Figure {
  std::string svg;
  std::vector<std::string> warnings;
};

/// Static plot of |s_nu| per labeled curve: solid for imaginary roots, dashed
/// for real ones. Curve endpoints carry data-x / data-y / data-multiplicity
/// attributes in data units. Output depends only on the table.
Figure render_figure(const SweepTable& table, const FigureOptions& opts = {});

/// Renders and writes to `path`; throws std::runtime_error if the table has no
/// roots or the file cannot be written.
Figure emit_figure(const SweepTable& table, const std::string& path,
                   const FigureOptions& opts = {});

}  // namespace spinor_efimov
