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

// Regenerates the fixture corpus under fixtures/. The committed files are
// the source of truth for tests; rerun this tool only when the formats or
// the named objects change, and re-freeze the golden reports afterwards.

#include <iostream>
#include <string>
#include <vector>

#include "qevo/serialize.hpp"
#include "qevo/symmetry.hpp"
#include "qevo/time_symmetric.hpp"

using namespace qevo;

namespace {

void write_kraus_channel(const std::string& path, const std::string& name,
                         Index d_in, Index d_out,
                         const std::vector<Matrix>& ops) {
  Json j;
  j["format_version"] = "1";
  j["name"] = name;
  j["d_in"] = d_in;
  j["d_out"] = d_out;
  j["representation"] = "kraus";
  Json data = Json::array();
  for (const Matrix& k : ops) data.push_back(matrix_to_json(k));
  j["data"] = std::move(data);
  j["metadata"] = Json::object();
  save_json_file(path, j);
}

void write_kraus_instrument(const std::string& path, const std::string& name,
                            Index d_in, Index d_out,
                            const std::vector<Matrix>& branch_kraus) {
  Json j;
  j["format_version"] = "1";
  j["name"] = name;
  j["d_in"] = d_in;
  j["d_out"] = d_out;
  Json branches = Json::array();
  for (const Matrix& k : branch_kraus) {
    Json b;
    b["representation"] = "kraus";
    b["data"] = Json::array({matrix_to_json(k)});
    branches.push_back(std::move(b));
  }
  j["branches"] = std::move(branches);
  save_json_file(path, j);
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";

  Matrix eye2 = Matrix::Identity(2, 2);
  Matrix pauli_x(2, 2), pauli_y(2, 2), pauli_z(2, 2);
  pauli_x << 0, 1, 1, 0;
  pauli_y << 0, Complex(0, -1), Complex(0, 1), 0;
  pauli_z << 1, 0, 0, -1;

  write_kraus_channel(dir + "/identity_channel.json", "identity-channel", 2, 2,
                      {eye2});
  write_kraus_channel(dir + "/c0_depolarizing.json", "c0-uniform-pauli-mixture",
                      2, 2,
                      {0.5 * eye2, 0.5 * pauli_x, 0.5 * pauli_y, 0.5 * pauli_z});

  Matrix discard0 = Matrix::Zero(2, 2), discard1 = Matrix::Zero(2, 2);
  discard0(0, 0) = 1.0;  // |0><0|
  discard1(0, 1) = 1.0;  // |0><1|
  write_kraus_channel(dir + "/discard_prepare_zero.json",
                      "discard-and-prepare-zero", 2, 2, {discard0, discard1});

  write_supermap_spec(dir + "/identity_supermap_d2.json", identity_supermap(2, 2),
                      "identity-supermap");
  write_supermap_spec(dir + "/double_transpose_supermap_d2.json",
                      double_transpose_supermap(2, 2),
                      "double-transpose-supermap");
  write_supermap_spec(dir + "/weak_adjoint_supermap_d2.json",
                      weak_adjoint_supermap(2), "weak-adjoint-supermap");

  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  write_kraus_instrument(dir + "/vn_z_instrument_d2.json",
                         "von-neumann-z-basis", 2, 2, {p0, p1});

  Matrix l0 = Matrix::Zero(3, 3), l1 = Matrix::Zero(3, 3);
  l0(0, 0) = 1.0;
  l0(1, 1) = 1.0;
  l1(2, 2) = 1.0;
  write_kraus_instrument(dir + "/luders_instrument_d3.json",
                         "luders-rank2-rank1", 3, 3, {l0, l1});

  // A valid instrument whose single branch is not time symmetric.
  {
    Json j;
    j["format_version"] = "1";
    j["name"] = "deterministic-preparation";
    j["d_in"] = 2;
    j["d_out"] = 2;
    Json branch;
    branch["representation"] = "kraus";
    branch["data"] = Json::array(
        {matrix_to_json(discard0), matrix_to_json(discard1)});
    j["branches"] = Json::array({branch});
    save_json_file(dir + "/prepare_zero_instrument.json", j);
  }

  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  write_state_spec(dir + "/plus_state.json", DensityMatrix(plus), "plus-state");
  write_state_spec(dir + "/zero_state.json", DensityMatrix(projector(Vector(
                                                 Vector::Unit(2, 0)))),
                   "zero-state");
  write_state_spec(dir + "/maximally_mixed_d2.json", maximally_mixed(2),
                   "maximally-mixed");

  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
