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

#include <map>
#include <string>

#include <json.hpp>

#include "qevo/operations.hpp"
#include "qevo/symmetry.hpp"

namespace qevo {

using Json = nlohmann::ordered_json;

// Numbers are serialized as decimal strings with 17 significant digits so
// doubles round-trip bit-for-bit through the text format. Complex entries
// are two-element arrays [re, im].

std::string format_double(double x);
double parse_double(const Json& j, const std::string& context);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& context);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& context);

// ---------------------------------------------------------------------------
// Spec files (format_version "1")
// ---------------------------------------------------------------------------

struct ChannelSpec {
  QuantumOperation op;
  std::string name;
  std::string representation;  // as stored in the file
  std::map<std::string, std::string> metadata;
};

ChannelSpec read_channel_spec(const std::string& path);

/// Writes the choi representation, with optional metadata (provenance of
/// reversal outputs, reference-state names, ...).
void write_channel_spec(const std::string& path, const CpMap& map,
                        const std::string& name,
                        const std::map<std::string, std::string>& metadata);

struct StateSpec {
  DensityMatrix state;
  std::string name;
};

StateSpec read_state_spec(const std::string& path);
void write_state_spec(const std::string& path, const DensityMatrix& state,
                      const std::string& name);

struct InstrumentSpec {
  Instrument instrument;
  std::string name;
};

InstrumentSpec read_instrument_spec(const std::string& path);
void write_instrument_spec(const std::string& path, const Instrument& inst,
                           const std::string& name);

struct SuperMapSpec {
  SuperMap map;
  std::string name;
};

SuperMapSpec read_supermap_spec(const std::string& path);
void write_supermap_spec(const std::string& path, const SuperMap& map,
                         const std::string& name);

// Shared plumbing for the writers and the fixture generator.
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace qevo
