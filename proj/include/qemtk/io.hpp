// Copyright 2026 The qemtk authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEMTK_IO_HPP
#define QEMTK_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "qemtk/circuits.hpp"
#include "qemtk/inverses.hpp"
#include "qemtk/matrep.hpp"

// JSON formats:
//   channel  {"dim_in": n, "dim_out": m, "rep": "choi"|"natural"|"kraus",
//             "data": matrix or list of matrices}
//   state    {"dim": d, "data": matrix}
//   circuit  {"input": state, "layers": [{"ideal": channel,
//             "true_noise": channel, "estimated_noise": channel}, ...]}
// A matrix is a row-major array of rows; each complex entry is a
// two-element array [re, im]. Real parts may be exact-rational strings
// "p/q", which parse to double.

namespace qemtk {

using json = nlohmann::json;

class ParseError : public Error {
public:
  using Error::Error;
};

//=========================================================================
// Scalars
//=========================================================================

inline double parse_real(const json &v, const std::string &context) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return std::stod(s);
      const double num = std::stod(s.substr(0, slash));
      const double den = std::stod(s.substr(slash + 1));
      if (den == 0.0) throw ParseError(context + ": zero denominator");
      return num / den;
    } catch (const std::invalid_argument &) {
      throw ParseError(context + ": cannot parse number '" + s + "'");
    } catch (const std::out_of_range &) {
      throw ParseError(context + ": number out of range '" + s + "'");
    }
  }
  throw ParseError(context + ": expected a number or a \"p/q\" string");
}

inline complex_t parse_complex(const json &v, const std::string &context) {
  if (v.is_number() || v.is_string()) return complex_t(parse_real(v, context), 0.0);
  if (v.is_array() && v.size() == 2)
    return complex_t(parse_real(v[0], context + "[re]"),
                     parse_real(v[1], context + "[im]"));
  throw ParseError(context + ": complex entries are [re, im] pairs");
}

inline json complex_to_json(const complex_t &z) {
  return json::array({z.real(), z.imag()});
}

//=========================================================================
// Matrices, states, channels
//=========================================================================

inline ComplexMatrix matrix_from_json(const json &v,
                                      const std::string &context) {
  if (!v.is_array() || v.empty() || !v[0].is_array())
    throw ParseError(context + ": matrix must be an array of rows");
  const std::size_t rows = v.size();
  const std::size_t cols = v[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols)
      throw ParseError(context + ": ragged matrix row " + std::to_string(i));
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = parse_complex(v[i][j], context + "[" + std::to_string(i) +
                                           "][" + std::to_string(j) + "]");
  }
  return m;
}

inline json matrix_to_json(const ComplexMatrix &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ChannelRep channel_from_json(const json &v) {
  if (!v.is_object()) throw ParseError("channel: expected a JSON object");
  for (const char *key : {"dim_in", "dim_out", "rep", "data"})
    if (!v.contains(key))
      throw ParseError(std::string("channel: missing field '") + key + "'");
  const auto din = v["dim_in"].get<std::size_t>();
  const auto dout = v["dim_out"].get<std::size_t>();
  const std::string rep = v["rep"].get<std::string>();
  if (rep == "kraus") {
    if (!v["data"].is_array())
      throw ParseError("channel: Kraus data must be a list of matrices");
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < v["data"].size(); ++k)
      ops.push_back(matrix_from_json(v["data"][k],
                                     "kraus[" + std::to_string(k) + "]"));
    ChannelRep ch = ChannelRep::from_kraus(std::move(ops));
    if (ch.dim_in() != din || ch.dim_out() != dout)
      throw ParseError("channel: Kraus shapes contradict declared dims");
    return ch;
  }
  const ComplexMatrix m = matrix_from_json(v["data"], "channel data");
  if (rep == "choi") return ChannelRep::from_choi(din, dout, m);
  if (rep == "natural") return ChannelRep::from_natural(din, dout, m);
  throw ParseError("channel: rep must be choi, natural or kraus");
}

inline json channel_to_json(const ChannelRep &ch) {
  json v;
  v["dim_in"] = ch.dim_in();
  v["dim_out"] = ch.dim_out();
  v["rep"] = to_string(ch.kind());
  if (ch.kind() == RepKind::Kraus) {
    json ops = json::array();
    for (const auto &k : ch.kraus_ops()) ops.push_back(matrix_to_json(k));
    v["data"] = std::move(ops);
  } else {
    v["data"] = matrix_to_json(ch.payload());
  }
  return v;
}

inline DensityMatrix state_from_json(const json &v,
                                     const Tolerances &tol = {}) {
  if (!v.is_object() || !v.contains("data"))
    throw ParseError("state: expected an object with a 'data' matrix");
  const ComplexMatrix m = matrix_from_json(v["data"], "state data");
  if (v.contains("dim") && v["dim"].get<std::size_t>() != m.rows())
    throw ParseError("state: declared dim contradicts the data shape");
  return DensityMatrix::from_matrix(m, tol);
}

inline json state_to_json(const ComplexMatrix &m) {
  json v;
  v["dim"] = m.rows();
  v["data"] = matrix_to_json(m);
  return v;
}

inline json state_to_json(const DensityMatrix &rho) {
  return state_to_json(rho.matrix());
}

inline LayeredCircuit circuit_from_json(const json &v,
                                        const Tolerances &tol = {}) {
  if (!v.is_object() || !v.contains("input") || !v.contains("layers"))
    throw ParseError("circuit: expected fields 'input' and 'layers'");
  DensityMatrix input = state_from_json(v["input"], tol);
  std::vector<CircuitLayer> layers;
  for (std::size_t i = 0; i < v["layers"].size(); ++i) {
    const json &lj = v["layers"][i];
    const std::string ctx = "layers[" + std::to_string(i) + "]";
    for (const char *key : {"ideal", "true_noise", "estimated_noise"})
      if (!lj.contains(key))
        throw ParseError(ctx + ": missing field '" + key + "'");
    layers.push_back(CircuitLayer{channel_from_json(lj["ideal"]),
                                  channel_from_json(lj["true_noise"]),
                                  channel_from_json(lj["estimated_noise"])});
  }
  return LayeredCircuit(std::move(layers), std::move(input), tol);
}

//=========================================================================
// Verdicts
//=========================================================================

inline json verdict_to_json(const PropertyVerdict &v) {
  json out;
  out["is_cp"] = v.is_cp;
  out["is_tp"] = v.is_tp;
  out["is_hp"] = v.is_hp;
  out["min_choi_eigenvalue"] = v.min_choi_eigenvalue;
  out["tp_residual"] = v.tp_residual;
  if (std::isnan(v.spectral_radius))
    out["spectral_radius"] = nullptr;
  else
    out["spectral_radius"] = v.spectral_radius;
  return out;
}

inline json eigenvalues_to_json(const std::vector<complex_t> &eigs) {
  json out = json::array();
  for (const auto &e : eigs) out.push_back(complex_to_json(e));
  return out;
}

//=========================================================================
// Files
//=========================================================================

inline json load_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json v;
  try {
    in >> v;
  } catch (const json::parse_error &e) {
    throw ParseError("parse error in " + path + ": " + e.what());
  }
  return v;
}

inline void save_json(const std::string &path, const json &v) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << v.dump(2) << "\n";
}

} // namespace qemtk

#endif // QEMTK_IO_HPP
