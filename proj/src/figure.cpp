// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinor_efimov/figure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace spinor_efimov {

namespace {

constexpr int kLeft = 80, kRight = 24, kTop = 36, kBottom = 64;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double x, const char* f = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Point {
  double x, y;
  int multiplicity;
};

struct Curve {
  Axis axis;
  std::vector<Point> points;
};

double nice_step(double range, int target) {
  const double raw = range / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

}  // namespace

Figure render_figure(const SweepTable& table, const FigureOptions& opts) {
  Figure fig;
  std::map<int, Curve> curves;
  double x_lo = 0.0, x_hi = std::numbers::pi / 2;
  if (opts.x_axis == FigureAxis::log_radius) {
    x_lo = std::numeric_limits<double>::infinity();
    x_hi = -x_lo;
  }

  bool any = false;
  for (const SweepRow& row : table.rows) {
    double x = row.theta;
    if (opts.x_axis == FigureAxis::log_radius) {
      if (!row.R) continue;
      x = std::log10(*row.R);
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
    bool drawn = false;
    for (std::size_t r = 0; r < row.roots.size(); ++r) {
      const ChannelRoot& root = row.roots[r];
      if (root.axis == Axis::real && !opts.include_real) continue;
      for (int id : row.curves[r]) {
        curves[id].axis = root.axis;
        curves[id].points.push_back({x, root.value, root.multiplicity});
        drawn = true;
      }
    }
    if (!drawn) {
      std::string where = opts.x_axis == FigureAxis::theta ? "theta=" + num(row.theta, "%.6g")
                                                           : "R=" + num(*row.R, "%.6g");
      fig.warnings.push_back("figure: row " + where + " has no roots; skipped");
    }
    any = any || drawn;
  }
  if (!any) throw std::runtime_error("figure: table contains no roots to plot");
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;

  double y_max = 0.0;
  for (const auto& [id, c] : curves)
    for (const Point& p : c.points) y_max = std::max(y_max, p.y);
  const double y_step = nice_step(std::max(y_max, 0.1), 5);
  const double y_hi = y_step * std::ceil(y_max * 1.05 / y_step);

  const int pw = opts.width - kLeft - kRight;
  const int ph = opts.height - kTop - kBottom;
  auto px = [&](double x) { return kLeft + pw * (x - x_lo) / (x_hi - x_lo); };
  auto py = [&](double y) { return kTop + ph * (1.0 - y / y_hi); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
     << opts.height << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<g font-family=\"sans-serif\" font-size=\"12\">\n";

  // frame and grid
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double y = 0.0; y <= y_hi + 1e-12; y += y_step) {
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py(y)) << "\" x2=\"" << kLeft + pw
       << "\" y2=\"" << num(py(y)) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py(y) + 4) << "\" text-anchor=\"end\">"
       << num(y, "%g") << "</text>\n";
  }
  if (opts.x_axis == FigureAxis::theta) {
    const char* labels[] = {"0", "π/8", "π/4", "3π/8", "π/2"};
    for (int k = 0; k <= 4; ++k) {
      const double x = px(k * std::numbers::pi / 8);
      os << "<line x1=\"" << num(x) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(x)
         << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
      os << "<text x=\"" << num(x) << "\" y=\"" << kTop + ph + 20 << "\" text-anchor=\"middle\">"
         << labels[k] << "</text>\n";
    }
  } else {
    const double step = nice_step(x_hi - x_lo, 8);
    for (double x = step * std::ceil(x_lo / step); x <= x_hi + 1e-9; x += step) {
      os << "<line x1=\"" << num(px(x)) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(px(x))
         << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
      os << "<text x=\"" << num(px(x)) << "\" y=\"" << kTop + ph + 20
         << "\" text-anchor=\"middle\">" << num(x, "%g") << "</text>\n";
    }
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << opts.height - 18
     << "\" text-anchor=\"middle\">"
     << (opts.x_axis == FigureAxis::theta ? "θ (rad)" : "log10 R") << "</text>\n";
  os << "<text x=\"20\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << kTop + ph / 2 << ")\">|sν|</text>\n";

  // curves
  int color = 0;
  for (const auto& [id, c] : curves) {
    const char* stroke = kPalette[color++ % std::size(kPalette)];
    os << "<polyline data-curve=\"" << id << "\" data-axis=\"" << to_string(c.axis)
       << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.8\""
       << (c.axis == Axis::real ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
    for (std::size_t k = 0; k < c.points.size(); ++k)
      os << (k ? " " : "") << num(px(c.points[k].x)) << ',' << num(py(c.points[k].y));
    os << "\"/>\n";
    for (const Point* p : {&c.points.front(), &c.points.back()}) {
      os << "<circle data-curve=\"" << id << "\" data-x=\"" << num(p->x, "%.6g")
         << "\" data-y=\"" << num(p->y, "%.6g") << "\" data-multiplicity=\"" << p->multiplicity
         << "\" cx=\"" << num(px(p->x)) << "\" cy=\"" << num(py(p->y)) << "\" r=\"3\" fill=\""
         << stroke << "\"/>\n";
      if (p->multiplicity > 1)
        os << "<text x=\"" << num(px(p->x) + 6) << "\" y=\"" << num(py(p->y) - 6) << "\">×"
           << p->multiplicity << "</text>\n";
      if (c.points.size() == 1) break;
    }
  }
  os << "</g>\n</svg>\n";
  fig.svg = os.str();
  return fig;
}

Figure emit_figure(const SweepTable& table, const std::string& path, const FigureOptions& opts) {
  Figure fig = render_figure(table, opts);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("figure: cannot write '" + path + "'");
  out << fig.svg;
  if (!out) throw std::runtime_error("figure: write failed for '" + path + "'");
  return fig;
}

}  // namespace spinor_efimov
