// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace lopa {

// Renders one polyline per input trace file (y column vs k) into a
// self-contained SVG. Legend entries come from the file stems. Under a log
// axis, nonpositive values are clamped to 1e-300 and the legend entry is
// flagged "(clamped)".
void emit_svg_plot(const std::vector<std::string>& trace_files,
                   const std::string& y_column, bool logx, bool logy,
                   const std::string& out_path);

}  // namespace lopa
