#pragma once

// JSON state files.
//   mixed: {"dims": [2,2,2], "matrix": [[[re, im], ...], ...]}   (row-major)
//   pure:  {"dims": [2,2,2], "vector": [[re, im], ...]}
// "dims" may be omitted for 8-dimensional states (three qubits assumed).

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "croof/errors.hpp"
#include "croof/qlinalg.hpp"

namespace croof::io {

using nlohmann::json;

namespace detail {

inline cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("state file: complex entries must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace detail

inline DensityMatrix parse_state(const json& doc) {
  if (!doc.is_object()) throw InputError("state file: top level must be an object");
  const bool has_m = doc.contains("matrix"), has_v = doc.contains("vector");
  if (has_m == has_v) throw InputError("state file: exactly one of \"matrix\" or \"vector\" is required");

  Dims dims;
  if (doc.contains("dims")) {
    if (!doc["dims"].is_array()) throw InputError("state file: \"dims\" must be an array");
    for (const auto& d : doc["dims"]) {
      if (!d.is_number_integer() || d.get<int>() < 1) throw InputError("state file: dims must be positive integers");
      dims.push_back(d.get<int>());
    }
  }

  if (has_v) {
    const auto& v = doc["vector"];
    if (!v.is_array() || v.empty()) throw InputError("state file: \"vector\" must be a non-empty array");
    std::vector<cplx> amps;
    for (const auto& e : v) amps.push_back(detail::parse_complex(e));
    if (dims.empty()) dims = amps.size() == 8 ? Dims{2, 2, 2} : Dims{static_cast<int>(amps.size())};
    if (total_dim(dims) != static_cast<int>(amps.size())) throw InputError("state file: vector length does not match dims");
    return DensityMatrix::from_pure(PureState(dims, std::move(amps)));
  }

  const auto& m = doc["matrix"];
  if (!m.is_array() || m.empty()) throw InputError("state file: \"matrix\" must be a non-empty array of rows");
  const int n = static_cast<int>(m.size());
  ComplexMatrix mat(n, n);
  for (int i = 0; i < n; ++i) {
    if (!m[i].is_array() || static_cast<int>(m[i].size()) != n) throw InputError("state file: matrix must be square");
    for (int j = 0; j < n; ++j) mat(i, j) = detail::parse_complex(m[i][j]);
  }
  if (dims.empty()) dims = n == 8 ? Dims{2, 2, 2} : Dims{n};
  if (total_dim(dims) != n) throw InputError("state file: matrix size does not match dims");
  return DensityMatrix(dims, mat);
}

inline DensityMatrix parse_state(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("state file: invalid JSON: ") + e.what());
  }
  return parse_state(doc);
}

inline DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str());
}

inline json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(detail::complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json state_json(const DensityMatrix& rho) {
  return json{{"dims", rho.dims()}, {"matrix", matrix_json(rho.matrix())}};
}

}  // namespace croof::io
