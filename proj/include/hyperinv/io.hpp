// SPDX-License-Identifier: Apache-2.0
#ifndef HYPERINV_IO_HPP
#define HYPERINV_IO_HPP

// State files, operator files and fingerprint/report serialization.
//
// Files use JSON with complex numbers as explicit [re, im] pairs:
//   {"kind": "density", "dims": [2, 2], "matrix": [[[re, im], ...], ...]}
//   {"kind": "pure", "dims": [2, 2, 2], "amplitudes": [[re, im], ...]}
//   {"kind": "operator", "group": "unitary", "dims": [...], "ops": [matrix, ...]}
// Every number written by this header uses 17 significant digits.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hyperinv/audit.hpp"
#include "hyperinv/bloch.hpp"
#include "hyperinv/invariants.hpp"

namespace hyperinv::io {

inline constexpr double kLoadHermitianTol = 1e-8;

using State = std::variant<DensityState, PureState>;

inline std::string number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string pair(Complex z) { return "[" + number(z.real()) + ", " + number(z.imag()) + "]"; }

/// Real part alone when the imaginary part is exactly zero, else "re im".
inline std::string scalar(Complex z) {
  return z.imag() == 0.0 ? number(z.real()) : number(z.real()) + " " + number(z.imag());
}

inline std::string dims_json(const Dims& dims) {
  std::string out = "[";
  for (std::size_t k = 0; k < dims.size(); ++k) out += (k ? ", " : "") + std::to_string(dims[k]);
  return out + "]";
}

inline std::string matrix_json(const Matrix& m, const std::string& indent) {
  std::string out = "[\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += indent + "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + pair(m(i, j));
    out += i + 1 < m.rows() ? "],\n" : "]\n";
  }
  return out + indent + "]";
}

// ---------------------------------------------------------------------------
// loading

namespace detail {

inline Complex parse_complex(const nlohmann::json& j) {
  hyperinv::detail::require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
                            "complex values must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Dims parse_dims(const nlohmann::json& j) {
  hyperinv::detail::require(j.contains("dims") && j["dims"].is_array() && !j["dims"].empty(),
                            "state file needs a non-empty \"dims\" array");
  Dims dims;
  for (const auto& d : j["dims"]) {
    hyperinv::detail::require(d.is_number_integer() && d.get<long long>() >= 1, "dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  hyperinv::detail::require_dims(dims);
  return dims;
}

inline Matrix parse_matrix(const nlohmann::json& j, std::size_t n) {
  hyperinv::detail::require(j.is_array() && j.size() == n, "matrix must have " + std::to_string(n) + " rows");
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    hyperinv::detail::require(j[r].is_array() && j[r].size() == n, "matrix rows must have " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(j[r][c]);
  }
  return m;
}

inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

inline State parse_state(const std::string& text) {
  const nlohmann::json j = detail::parse_json(text);
  hyperinv::detail::require(j.is_object() && j.contains("kind") && j["kind"].is_string(),
                            "state file needs a \"kind\" string");
  const std::string kind = j["kind"].get<std::string>();
  const Dims dims = detail::parse_dims(j);
  const std::size_t total = hyperinv::detail::total_dim(dims);
  if (kind == "density") {
    hyperinv::detail::require(j.contains("matrix"), "density state file needs \"matrix\"");
    return DensityState(dims, detail::parse_matrix(j["matrix"], total), kLoadHermitianTol);
  }
  hyperinv::detail::require(kind == "pure", "state kind must be \"density\" or \"pure\"");
  hyperinv::detail::require(j.contains("amplitudes") && j["amplitudes"].is_array() && j["amplitudes"].size() == total,
                            "pure state file needs " + std::to_string(total) + " amplitudes");
  std::vector<Complex> amps;
  for (const auto& a : j["amplitudes"]) amps.push_back(detail::parse_complex(a));
  return PureState(HyperMatrix(dims, std::move(amps)));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  hyperinv::detail::require(static_cast<bool>(in), "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline State load_state(const std::string& path) { return parse_state(read_file(path)); }

inline LocalOperatorChain parse_operator(const std::string& text) {
  const nlohmann::json j = detail::parse_json(text);
  hyperinv::detail::require(j.is_object() && j.value("kind", "") == "operator", "operator file needs kind \"operator\"");
  const Dims dims = detail::parse_dims(j);
  const std::string group = j.value("group", "general-linear");
  GroupTag tag = GroupTag::GeneralLinear;
  if (group == "unitary") tag = GroupTag::Unitary;
  else if (group == "special-linear") tag = GroupTag::SpecialLinear;
  else hyperinv::detail::require(group == "general-linear", "unknown operator group " + group);
  hyperinv::detail::require(j.contains("ops") && j["ops"].is_array() && j["ops"].size() == dims.size(),
                            "operator file needs one matrix per party");
  std::vector<Matrix> ops;
  for (std::size_t k = 0; k < dims.size(); ++k) ops.push_back(detail::parse_matrix(j["ops"][k], dims[k]));
  return LocalOperatorChain(std::move(ops), tag);
}

// ---------------------------------------------------------------------------
// writing

inline std::string state_json(const DensityState& rho) {
  return "{\n  \"kind\": \"density\",\n  \"dims\": " + dims_json(rho.dims()) + ",\n  \"matrix\": " +
         matrix_json(rho.matrix(), "  ") + "\n}\n";
}

inline std::string state_json(const PureState& phi) {
  std::string out = "{\n  \"kind\": \"pure\",\n  \"dims\": " + dims_json(phi.dims()) + ",\n  \"amplitudes\": [";
  const auto amps = phi.amplitudes().entries();
  for (std::size_t i = 0; i < amps.size(); ++i) out += (i ? ", " : "") + pair(amps[i]);
  return out + "]\n}\n";
}

inline std::string state_json(const State& s) {
  return std::visit([](const auto& x) { return state_json(x); }, s);
}

inline std::string operator_json(const LocalOperatorChain& g) {
  std::string out = "{\n  \"kind\": \"operator\",\n  \"group\": \"" + std::string(to_string(g.tag())) +
                    "\",\n  \"dims\": " + dims_json(g.dims()) + ",\n  \"ops\": [\n";
  for (std::size_t k = 0; k < g.ops().size(); ++k)
    out += "    " + matrix_json(g.ops()[k], "    ") + (k + 1 < g.ops().size() ? ",\n" : "\n");
  return out + "  ]\n}\n";
}

inline std::string fingerprint_json(const InvariantFingerprint& fp) {
  std::string out = "{\n  \"kind\": \"" + std::string(to_string(fp.kind)) + "\",\n  \"dims\": " + dims_json(fp.dims) +
                    ",\n  \"family\": \"" + fp.family + "\",\n  \"convention\": \"" + fp.convention +
                    "\",\n  \"entries\": [\n";
  for (std::size_t i = 0; i < fp.entries.size(); ++i) {
    const auto& e = fp.entries[i];
    out += "    {\"name\": \"" + e.name + "\", \"value\": " + pair(e.value) + ", \"guaranteed\": \"" +
           to_string(e.guaranteed) + "\", \"constant\": " + (e.constant ? "true" : "false") + "}" +
           (i + 1 < fp.entries.size() ? ",\n" : "\n");
  }
  return out + "  ]\n}\n";
}

inline std::string fingerprint_csv(const InvariantFingerprint& fp) {
  std::string out = "name,re,im,guaranteed,constant\n";
  for (const auto& e : fp.entries)
    out += e.name + "," + number(e.value.real()) + "," + number(e.value.imag()) + "," + to_string(e.guaranteed) + "," +
           (e.constant ? "true" : "false") + "\n";
  return out;
}

inline std::string report_json(const std::vector<AuditReport>& reports) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out += "  {\"invariant\": \"" + r.invariant + "\", \"group\": \"" + to_string(r.group) +
           "\", \"trials\": " + std::to_string(r.trials) + ", \"max_relative_deviation\": " +
           number(r.max_relative_deviation) + ", \"median_relative_deviation\": " + number(r.median_relative_deviation) +
           ", \"verdict\": \"" + to_string(r.verdict) + "\", \"tol\": " + number(r.tol) +
           ", \"seed\": " + std::to_string(r.seed) + ", \"cond_cap\": " + number(r.cond_cap) + "}" +
           (i + 1 < reports.size() ? ",\n" : "\n");
  }
  return out + "]\n";
}

inline std::string report_table(const std::vector<AuditReport>& reports) {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-18s %-15s %6s %-24s %-24s %s\n", "invariant", "group", "trials", "max_rel_dev",
                "median_rel_dev", "verdict");
  out += line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-18s %-15s %6zu %-24s %-24s %s\n", r.invariant.c_str(), to_string(r.group),
                  r.trials, number(r.max_relative_deviation).c_str(), number(r.median_relative_deviation).c_str(),
                  to_string(r.verdict));
    out += line;
  }
  if (!reports.empty())
    out += "seed " + std::to_string(reports.front().seed) + ", tol " + number(reports.front().tol) +
           ", SL condition cap " + number(reports.front().cond_cap) + "\n";
  return out;
}

}  // namespace hyperinv::io

#endif  // HYPERINV_IO_HPP
