// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "lopa/errors.hpp"
#include "lopa/trace_io.hpp"

namespace lopa {

namespace {

constexpr double kW = 820, kH = 540;
constexpr double kL = 80, kR = 210, kT = 40, kB = 60;  // margins
constexpr double kLogFloor = 1e-300;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                          "#bcbd22", "#e377c2"};

struct Series {
  std::string label;
  std::vector<double> x, y;
  bool clamped = false;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double to_axis(double v, bool log) { return log ? std::log10(v) : v; }

std::vector<double> ticks(double lo, double hi, bool log) {
  std::vector<double> t;
  if (log) {
    const int a = static_cast<int>(std::ceil(lo - 1e-9));
    const int b = static_cast<int>(std::floor(hi + 1e-9));
    const int step = std::max(1, (b - a) / 6);
    for (int e = a; e <= b; e += step) t.push_back(e);
    if (t.empty()) t = {lo, hi};
    return t;
  }
  const double span = hi - lo;
  if (span <= 0) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double mult : {1.0, 2.0, 5.0, 10.0})
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step)
    t.push_back(v);
  return t;
}

}  // namespace

void emit_svg_plot(const std::vector<std::string>& trace_files,
                   const std::string& y_column, bool logx, bool logy,
                   const std::string& out_path) {
  if (trace_files.empty()) throw InvalidParams("emit_svg_plot: no input traces");
  if (!is_trace_column(y_column))
    throw ColumnMissing("emit_svg_plot: unknown column '" + y_column + "'");

  std::vector<Series> series;
  for (const auto& file : trace_files) {
    Trace t = parse_csv(file);
    Series s;
    s.label = std::filesystem::path(file).stem().string();
    for (const TraceRow& row : t.rows) {
      const auto v = trace_column(row, y_column);
      if (!v) continue;
      double x = static_cast<double>(row.k);
      double y = *v;
      if (logx && x <= 0.0) continue;  // k=0 has no place on a log axis
      if (logy && y <= 0.0) {
        y = kLogFloor;
        s.clamped = true;
      }
      s.x.push_back(x);
      s.y.push_back(y);
    }
    if (s.x.empty())
      throw ColumnMissing("emit_svg_plot: no plottable values of '" + y_column +
                          "' in " + file);
    series.push_back(std::move(s));
  }

  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const auto& s : series) {
    for (double v : s.x) {
      xlo = std::min(xlo, to_axis(v, logx));
      xhi = std::max(xhi, to_axis(v, logx));
    }
    for (double v : s.y) {
      ylo = std::min(ylo, to_axis(v, logy));
      yhi = std::max(yhi, to_axis(v, logy));
    }
  }
  if (xhi <= xlo) xhi = xlo + 1.0;
  if (yhi <= ylo) yhi = ylo + 1.0;
  const double px = (kW - kL - kR) / (xhi - xlo);
  const double py = (kH - kT - kB) / (yhi - ylo);
  auto X = [&](double v) { return kL + (to_axis(v, logx) - xlo) * px; };
  auto Y = [&](double v) { return kH - kB - (to_axis(v, logy) - ylo) * py; };

  std::ofstream os(out_path);
  if (!os) throw IoError("emit_svg_plot: cannot open " + out_path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
     << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
     << "\" height=\"" << kH - kT - kB
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  // axis ticks and labels
  for (double t : ticks(xlo, xhi, logx)) {
    const double sx = kL + (t - xlo) * px;
    os << "<line x1=\"" << sx << "\" y1=\"" << kH - kB << "\" x2=\"" << sx
       << "\" y2=\"" << kH - kB + 5 << "\" stroke=\"black\"/>\n";
    const std::string lbl = logx ? ("1e" + num(t)) : num(t);
    os << "<text x=\"" << sx << "\" y=\"" << kH - kB + 20
       << "\" font-size=\"12\" text-anchor=\"middle\">" << lbl << "</text>\n";
  }
  for (double t : ticks(ylo, yhi, logy)) {
    const double sy = kH - kB - (t - ylo) * py;
    os << "<line x1=\"" << kL - 5 << "\" y1=\"" << sy << "\" x2=\"" << kL
       << "\" y2=\"" << sy << "\" stroke=\"black\"/>\n";
    const std::string lbl = logy ? ("1e" + num(t)) : num(t);
    os << "<text x=\"" << kL - 8 << "\" y=\"" << sy + 4
       << "\" font-size=\"12\" text-anchor=\"end\">" << lbl << "</text>\n";
  }
  os << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 15
     << "\" font-size=\"14\" text-anchor=\"middle\">k</text>\n";
  os << "<text x=\"20\" y=\"" << (kT + kH - kB) / 2
     << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << (kT + kH - kB) / 2 << ")\">" << y_column << "</text>\n";

  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % 10];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < series[s].x.size(); ++i)
      os << num(X(series[s].x[i])) << "," << num(Y(series[s].y[i])) << " ";
    os << "\"/>\n";
    const double ly = kT + 20 + 18 * static_cast<double>(s);
    os << "<line x1=\"" << kW - kR + 10 << "\" y1=\"" << ly - 4 << "\" x2=\""
       << kW - kR + 34 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kW - kR + 40 << "\" y=\"" << ly
       << "\" font-size=\"12\">" << series[s].label
       << (series[s].clamped ? " (clamped)" : "") << "</text>\n";
  }
  os << "</svg>\n";
  if (!os) throw IoError("emit_svg_plot: write failed for " + out_path);
}

}  // namespace lopa
