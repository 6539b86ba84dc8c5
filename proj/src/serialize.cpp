// Copyright 2026 The qevo developers.
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

#include "qevo/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <utility>
#include <vector>

namespace qevo {

std::string format_double(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

namespace {

[[noreturn]] void parse_fail(const std::string& context,
                             const std::string& what) {
  throw Error(errc::parse_error, context + ": " + what);
}

const Json& require_field(const Json& j, const char* key,
                          const std::string& context) {
  if (!j.is_object() || !j.contains(key))
    parse_fail(context, std::string("missing field '") + key + "'");
  return j.at(key);
}

Index parse_index(const Json& j, const std::string& context) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    parse_fail(context, "expected a positive integer");
  return static_cast<Index>(j.get<long long>());
}

std::string parse_string(const Json& j, const std::string& context) {
  if (!j.is_string()) parse_fail(context, "expected a string");
  return j.get<std::string>();
}

void check_format_version(const Json& j, const std::string& context) {
  std::string version =
      parse_string(require_field(j, "format_version", context),
                   context + ".format_version");
  if (version != "1")
    parse_fail(context, "unsupported format_version '" + version + "'");
}

}  // namespace

double parse_double(const Json& j, const std::string& context) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) parse_fail(context, "expected a decimal string");
  const std::string s = j.get<std::string>();
  char* end = nullptr;
  double value = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    parse_fail(context, "cannot parse number '" + s + "'");
  return value;
}

Json complex_to_json(Complex z) {
  return Json::array({format_double(z.real()), format_double(z.imag())});
}

Complex complex_from_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2)
    parse_fail(context, "expected a [re, im] pair");
  return {parse_double(j[0], context + "[0]"),
          parse_double(j[1], context + "[1]")};
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) parse_fail(context, "expected a matrix");
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array() || j[0].empty())
    parse_fail(context, "expected nested arrays");
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      parse_fail(context, "ragged matrix rows");
    for (Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(row[static_cast<size_t>(c)],
                                  context + " entry");
  }
  return m;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::parse_error, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(errc::parse_error, path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(errc::parse_error, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

namespace {

QuantumOperation operation_from_fields(const Json& j, Index d_in, Index d_out,
                                       const std::string& context,
                                       std::string* representation) {
  std::string rep = parse_string(require_field(j, "representation", context),
                                 context + ".representation");
  if (representation) *representation = rep;
  const Json& data = require_field(j, "data", context);
  if (rep == "choi") {
    Matrix choi = matrix_from_json(data, context + ".data");
    if (choi.rows() != d_out * d_in || choi.cols() != d_out * d_in)
      parse_fail(context, "choi shape inconsistent with dims");
    return QuantumOperation(d_in, d_out, std::move(choi));
  }
  if (rep == "kraus") {
    if (!data.is_array() || data.empty())
      parse_fail(context, "kraus data must be a nonempty list");
    std::vector<Matrix> ops;
    for (const Json& item : data) {
      Matrix k = matrix_from_json(item, context + ".data[]");
      if (k.rows() != d_out || k.cols() != d_in)
        parse_fail(context, "kraus operator shape inconsistent with dims");
      ops.push_back(std::move(k));
    }
    return choi_from_kraus(make_kraus_form(std::move(ops)));
  }
  parse_fail(context, "representation must be 'kraus' or 'choi'");
}

}  // namespace

ChannelSpec read_channel_spec(const std::string& path) {
  Json j = load_json_file(path);
  check_format_version(j, path);
  Index d_in = parse_index(require_field(j, "d_in", path), path + ".d_in");
  Index d_out = parse_index(require_field(j, "d_out", path), path + ".d_out");
  std::string representation;
  QuantumOperation op =
      operation_from_fields(j, d_in, d_out, path, &representation);
  ChannelSpec spec{std::move(op),
                   parse_string(require_field(j, "name", path), path + ".name"),
                   std::move(representation),
                   {}};
  if (j.contains("metadata")) {
    for (const auto& [key, value] : j.at("metadata").items())
      spec.metadata[key] = value.is_string() ? value.get<std::string>()
                                             : value.dump();
  }
  return spec;
}

void write_channel_spec(const std::string& path, const CpMap& map,
                        const std::string& name,
                        const std::map<std::string, std::string>& metadata) {
  Json j;
  j["format_version"] = "1";
  j["name"] = name;
  j["d_in"] = map.d_in;
  j["d_out"] = map.d_out;
  j["representation"] = "choi";
  j["data"] = matrix_to_json(map.choi);
  Json meta = Json::object();
  if (!map.provenance.empty()) meta["provenance"] = map.provenance;
  for (const auto& [key, value] : metadata) meta[key] = value;
  j["metadata"] = std::move(meta);
  save_json_file(path, j);
}

StateSpec read_state_spec(const std::string& path) {
  Json j = load_json_file(path);
  check_format_version(j, path);
  Index dim = parse_index(require_field(j, "dim", path), path + ".dim");
  Matrix m = matrix_from_json(require_field(j, "data", path), path + ".data");
  if (m.rows() != dim || m.cols() != dim)
    parse_fail(path, "state shape inconsistent with dim");
  return StateSpec{DensityMatrix(std::move(m)),
                   parse_string(require_field(j, "name", path), path + ".name")};
}

void write_state_spec(const std::string& path, const DensityMatrix& state,
                      const std::string& name) {
  Json j;
  j["format_version"] = "1";
  j["name"] = name;
  j["dim"] = state.dim();
  j["data"] = matrix_to_json(state.matrix());
  save_json_file(path, j);
}

InstrumentSpec read_instrument_spec(const std::string& path) {
  Json j = load_json_file(path);
  check_format_version(j, path);
  Index d_in = parse_index(require_field(j, "d_in", path), path + ".d_in");
  Index d_out = parse_index(require_field(j, "d_out", path), path + ".d_out");
  const Json& branches = require_field(j, "branches", path);
  if (!branches.is_array() || branches.empty())
    parse_fail(path, "branches must be a nonempty list");
  std::vector<QuantumOperation> ops;
  for (size_t i = 0; i < branches.size(); ++i)
    ops.push_back(operation_from_fields(
        branches[i], d_in, d_out, path + ".branches[" + std::to_string(i) + "]",
        nullptr));
  // Parsed as a plain collection; validity is the caller's concern so that
  // defective instruments can be inspected and reported.
  return InstrumentSpec{
      Instrument{std::move(ops)},
      parse_string(require_field(j, "name", path), path + ".name")};
}

void write_instrument_spec(const std::string& path, const Instrument& inst,
                           const std::string& name) {
  Json j;
  j["format_version"] = "1";
  j["name"] = name;
  j["d_in"] = inst.d_in();
  j["d_out"] = inst.d_out();
  Json branches = Json::array();
  for (size_t i = 0; i < inst.branches.size(); ++i) {
    Json b;
    b["representation"] = "choi";
    b["data"] = matrix_to_json(inst.branches[i].choi());
    branches.push_back(std::move(b));
  }
  j["branches"] = std::move(branches);
  save_json_file(path, j);
}

SuperMapSpec read_supermap_spec(const std::string& path) {
  Json j = load_json_file(path);
  check_format_version(j, path);
  Index d_in = parse_index(require_field(j, "d_in", path), path + ".d_in");
  Index d_out = parse_index(require_field(j, "d_out", path), path + ".d_out");
  Index k_in = parse_index(require_field(j, "k_in", path), path + ".k_in");
  Index k_out = parse_index(require_field(j, "k_out", path), path + ".k_out");
  Matrix m = matrix_from_json(require_field(j, "matrix", path), path + ".matrix");
  SuperMap map;
  try {
    map = make_supermap(d_in, d_out, k_in, k_out, std::move(m));
  } catch (const Error& e) {
    parse_fail(path, e.what());
  }
  return SuperMapSpec{std::move(map), parse_string(require_field(j, "name", path),
                                                   path + ".name")};
}

void write_supermap_spec(const std::string& path, const SuperMap& map,
                         const std::string& name) {
  Json j;
  j["format_version"] = "1";
  j["name"] = name;
  j["d_in"] = map.d_in;
  j["d_out"] = map.d_out;
  j["k_in"] = map.k_in;
  j["k_out"] = map.k_out;
  j["matrix"] = matrix_to_json(map.m);
  save_json_file(path, j);
}

}  // namespace qevo
