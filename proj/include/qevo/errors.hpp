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

#pragma once

#include <stdexcept>
#include <string>

namespace qevo {

/// Failure codes carried by every qevo::Error. Grouped by how the CLI maps
/// them to exit codes: parse (2), invariant (3), precondition (4),
/// not-a-symmetry (5).
enum class errc {
  // parse
  parse_error,
  // invariant violations
  non_square,
  not_hermitian,
  not_psd,
  convergence_failure,
  dimension_mismatch,
  invalid_trace,
  not_normalized,
  not_unit_vector,
  zero_trace,
  invalid_kraus,
  not_cp,
  empty_instrument,
  invalid_instrument,
  not_orthonormal,
  incomplete_basis,
  not_projector,
  not_complete,
  not_orthogonal,
  not_psd_effect,
  not_normalized_povm,
  // transform preconditions
  not_time_symmetric,
  support_mismatch,
  not_channel,
  not_complementary,
  // symmetry decomposition
  mixed_kinds,
  not_a_symmetry,
  // everything else
  internal,
};

const char* errc_name(errc code);

/// Exit code the CLI uses for a given failure (exit-code contract:
/// 0 ok, 2 parse, 3 invariant, 4 precondition, 5 not-a-symmetry).
int exit_code_for(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace qevo
