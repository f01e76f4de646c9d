// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "lopa/errors.hpp"

namespace lopa {

const char* const kCsvHeader =
    "k,stationarity,consensus_err,grad_err,hv_err,inner_err,ave_var_err,"
    "var_err,lyapunov,hessian_calls,grad_calls,wall_time_ms";

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  out.push_back(field);
  return out;
}

}  // namespace

void emit_csv(const Trace& trace, std::ostream& os) {
  if (trace.empty()) throw InvalidParams("emit_csv: empty trace");
  os << kCsvHeader << "\n";
  for (const TraceRow& r : trace.rows) {
    os << r.k << ',' << fmt(r.stationarity) << ',' << fmt(r.consensus_err) << ','
       << fmt(r.grad_err) << ',' << fmt_opt(r.hv_err) << ',' << fmt_opt(r.inner_err)
       << ',' << fmt(r.ave_var_err) << ',' << fmt(r.var_err) << ','
       << fmt_opt(r.lyapunov) << ',' << r.hessian_calls << ',' << r.grad_calls
       << ',' << fmt(r.wall_time_ms) << "\n";
  }
}

void emit_csv(const Trace& trace, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("emit_csv: cannot open " + path);
  emit_csv(trace, os);
  if (!os) throw IoError("emit_csv: write failed for " + path);
}

void emit_jsonl(const Trace& trace, std::ostream& os) {
  if (trace.empty()) throw InvalidParams("emit_jsonl: empty trace");
  for (const TraceRow& r : trace.rows) {
    nlohmann::ordered_json j;
    j["k"] = r.k;
    j["stationarity"] = r.stationarity;
    j["consensus_err"] = r.consensus_err;
    j["grad_err"] = r.grad_err;
    j["hv_err"] = r.hv_err ? nlohmann::json(*r.hv_err) : nlohmann::json(nullptr);
    j["inner_err"] =
        r.inner_err ? nlohmann::json(*r.inner_err) : nlohmann::json(nullptr);
    j["ave_var_err"] = r.ave_var_err;
    j["var_err"] = r.var_err;
    j["lyapunov"] =
        r.lyapunov ? nlohmann::json(*r.lyapunov) : nlohmann::json(nullptr);
    j["hessian_calls"] = r.hessian_calls;
    j["grad_calls"] = r.grad_calls;
    j["wall_time_ms"] = r.wall_time_ms;
    os << j.dump() << "\n";
  }
}

void emit_jsonl(const Trace& trace, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("emit_jsonl: cannot open " + path);
  emit_jsonl(trace, os);
}

Trace parse_csv(std::istream& is, const std::string& name) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(name + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw ParseError(name + ": unexpected CSV header '" + line + "'");
  Trace trace;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 12)
      throw ParseError(name + ":" + std::to_string(lineno) + ": expected 12 fields");
    auto req = [&](int idx) -> double {
      try {
        return std::stod(fields[idx]);
      } catch (const std::exception&) {
        throw ParseError(name + ":" + std::to_string(lineno) + ": bad number '" +
                         fields[idx] + "'");
      }
    };
    auto opt = [&](int idx) -> std::optional<double> {
      if (fields[idx].empty()) return std::nullopt;
      return req(idx);
    };
    TraceRow r;
    r.k = static_cast<long>(req(0));
    r.stationarity = req(1);
    r.consensus_err = req(2);
    r.grad_err = req(3);
    r.hv_err = opt(4);
    r.inner_err = opt(5);
    r.ave_var_err = req(6);
    r.var_err = req(7);
    r.lyapunov = opt(8);
    r.hessian_calls = static_cast<long>(req(9));
    r.grad_calls = static_cast<long>(req(10));
    r.wall_time_ms = req(11);
    trace.rows.push_back(r);
  }
  return trace;
}

Trace parse_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("parse_csv: cannot open " + path);
  return parse_csv(is, path);
}

std::optional<double> trace_column(const TraceRow& row, const std::string& name) {
  if (name == "k") return static_cast<double>(row.k);
  if (name == "stationarity") return row.stationarity;
  if (name == "consensus_err") return row.consensus_err;
  if (name == "grad_err") return row.grad_err;
  if (name == "hv_err") return row.hv_err;
  if (name == "inner_err") return row.inner_err;
  if (name == "ave_var_err") return row.ave_var_err;
  if (name == "var_err") return row.var_err;
  if (name == "lyapunov") return row.lyapunov;
  if (name == "hessian_calls") return static_cast<double>(row.hessian_calls);
  if (name == "grad_calls") return static_cast<double>(row.grad_calls);
  if (name == "wall_time_ms") return row.wall_time_ms;
  throw ColumnMissing("trace_column: no column named '" + name + "'");
}

bool is_trace_column(const std::string& name) {
  static const char* names[] = {"k",           "stationarity", "consensus_err",
                                "grad_err",    "hv_err",       "inner_err",
                                "ave_var_err", "var_err",      "lyapunov",
                                "hessian_calls", "grad_calls", "wall_time_ms"};
  for (const char* n : names)
    if (name == n) return true;
  return false;
}

}  // namespace lopa
