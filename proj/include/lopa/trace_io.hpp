// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "lopa/trace.hpp"

namespace lopa {

// Stable column contract for emitted traces.
extern const char* const kCsvHeader;

void emit_csv(const Trace& trace, std::ostream& os);
void emit_csv(const Trace& trace, const std::string& path);
void emit_jsonl(const Trace& trace, std::ostream& os);
void emit_jsonl(const Trace& trace, const std::string& path);

Trace parse_csv(std::istream& is, const std::string& name = "stream");
Trace parse_csv(const std::string& path);

// Column access by CSV name; nullopt when the field is empty for this row.
std::optional<double> trace_column(const TraceRow& row, const std::string& name);
bool is_trace_column(const std::string& name);

}  // namespace lopa
