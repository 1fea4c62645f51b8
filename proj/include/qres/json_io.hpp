#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "qres/states.hpp"

namespace qres {

// A state file failed to parse or validate. `invariant` names the violated
// condition ("json-syntax", "dims", "matrix-shape", "entry-format", or one of
// the DensityMatrix invariants).
struct StateFormatError : std::runtime_error {
  StateFormatError(std::string which, const std::string& message)
      : std::runtime_error(message), invariant(std::move(which)) {}
  std::string invariant;
};

// JSON state format: {"dims": [d_a, d_b] or [d], "matrix": [rows...]} with
// each entry a [re, im] pair. A single dim is embedded as (d, 1).
inline BipartiteState state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("matrix")) {
    throw StateFormatError("json-syntax", "state object must contain \"dims\" and \"matrix\"");
  }
  const auto& dims = j["dims"];
  if (!dims.is_array() || dims.empty() || dims.size() > 2) {
    throw StateFormatError("dims", "\"dims\" must be an array of one or two positive integers");
  }
  int d_a = 0, d_b = 1;
  try {
    d_a = dims[0].get<int>();
    if (dims.size() == 2) d_b = dims[1].get<int>();
  } catch (const nlohmann::json::exception&) {
    throw StateFormatError("dims", "\"dims\" entries must be integers");
  }
  if (d_a < 1 || d_b < 1) throw StateFormatError("dims", "\"dims\" entries must be positive");
  const long total = static_cast<long>(d_a) * d_b;
  if (total > max_dim()) {
    throw UnsupportedDimension("state dimension " + std::to_string(total) +
                               " exceeds configured maximum " + std::to_string(max_dim()));
  }

  const auto& rows = j["matrix"];
  if (!rows.is_array() || static_cast<long>(rows.size()) != total) {
    throw StateFormatError("matrix-shape", "\"matrix\" must have " + std::to_string(total) +
                                               " rows");
  }
  Matrix m(total, total);
  for (long r = 0; r < total; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || static_cast<long>(row.size()) != total) {
      throw StateFormatError("matrix-shape", "row " + std::to_string(r) + " must have " +
                                                 std::to_string(total) + " entries");
    }
    for (long c = 0; c < total; ++c) {
      const auto& entry = row[c];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw StateFormatError("entry-format", "entry (" + std::to_string(r) + "," +
                                                   std::to_string(c) + ") must be a [re, im] pair");
      }
      m(r, c) = complexd(entry[0].get<double>(), entry[1].get<double>());
    }
  }

  try {
    return {d_a, d_b, DensityMatrix(std::move(m))};
  } catch (const ValidationError& e) {
    throw StateFormatError(e.invariant, e.what());
  }
}

inline BipartiteState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StateFormatError("io", "cannot open state file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw StateFormatError("json-syntax", std::string("invalid JSON: ") + e.what());
  }
  return state_from_json(j);
}

inline nlohmann::json state_to_json(const BipartiteState& rho) {
  nlohmann::json j;
  if (rho.dim_b() == 1) {
    j["dims"] = {rho.dim_a()};
  } else {
    j["dims"] = {rho.dim_a(), rho.dim_b()};
  }
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < rho.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < rho.dim(); ++c) {
      row.push_back({rho.mat()(r, c).real(), rho.mat()(r, c).imag()});
    }
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

inline void save_state(const BipartiteState& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StateFormatError("io", "cannot open output file: " + path);
  out << state_to_json(rho).dump(1) << "\n";
}

}  // namespace qres
