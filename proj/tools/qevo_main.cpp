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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qevo/reversal.hpp"
#include "qevo/serialize.hpp"
#include "qevo/symmetry.hpp"
#include "qevo/time_symmetric.hpp"

namespace {

using namespace qevo;

std::string basename_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

Json report_skeleton(const std::string& command) {
  Json j;
  j["schema_version"] = "1";
  j["command"] = command;
  j["inputs"] = Json::object();
  j["flags"] = Json::object();
  j["defects"] = Json::object();
  j["outputs"] = Json::object();
  j["provenance"] = Json::object();
  j["provenance"]["tool"] = "qevo";
  return j;
}

void emit(const Json& report, bool as_json) {
  if (as_json) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  // Human-readable: flat key/value lines per section.
  for (const char* section : {"inputs", "flags", "defects", "outputs"}) {
    const Json& s = report.at(section);
    for (const auto& [key, value] : s.items()) {
      if (value.is_structured()) continue;  // matrices only in --json output
      std::cout << section << "." << key << ": "
                << (value.is_string() ? value.get<std::string>() : value.dump())
                << "\n";
    }
  }
}

int cmd_classify(const std::string& input, bool as_json) {
  ChannelSpec spec = read_channel_spec(input);
  ClassifyReport c = classify(spec.op.cp());
  TSReport ts = ts_classify(spec.op.cp());

  Json report = report_skeleton("classify");
  report["inputs"] = {{"file", basename_of(input)},
                      {"name", spec.name},
                      {"d_in", spec.op.d_in()},
                      {"d_out", spec.op.d_out()},
                      {"representation", spec.representation}};
  report["flags"] = {{"cp", c.cp},
                     {"trace_nonincreasing", c.trace_nonincreasing},
                     {"trace_preserving", c.trace_preserving},
                     {"bistochastic", c.bistochastic},
                     {"unitary", c.unitary},
                     {"time_symmetric", c.time_symmetric},
                     {"ts_operation", ts.is_ts_operation},
                     {"ts_channel", ts.is_ts_channel}};
  report["defects"] = {{"cp_defect", format_double(c.cp_defect)},
                       {"tni_defect", format_double(c.tni_defect)},
                       {"tp_defect", format_double(c.tp_defect)},
                       {"unital_defect", format_double(c.unital_defect)},
                       {"ts_defect_in", format_double(ts.defect_in)},
                       {"ts_defect_out", format_double(ts.defect_out)}};
  emit(report, as_json);
  return 0;
}

int cmd_reverse(const std::string& input, const std::string& transform,
                const std::string& omega_a_path,
                const std::string& omega_b_path, const std::string& rho0_path,
                const std::string& out_path, bool as_json) {
  ChannelSpec spec = read_channel_spec(input);
  std::map<std::string, std::string> metadata;
  metadata["transform"] = transform;
  metadata["source"] = basename_of(input);

  CpMap result;
  if (transform == "double-transpose") {
    result = double_transpose(spec.op).cp();
  } else if (transform == "theta") {
    result = theta_scaled(spec.op).cp();
  } else if (transform == "theta-prime") {
    result = theta_prime_scaled(spec.op).cp();
  } else if (transform == "weak-adjoint") {
    result = weak_adjoint(spec.op).cp();
  } else if (transform == "petz") {
    if (omega_a_path.empty() || omega_b_path.empty())
      throw Error(errc::parse_error,
                  "petz requires --omega-a and --omega-b state files");
    StateSpec a = read_state_spec(omega_a_path);
    StateSpec b = read_state_spec(omega_b_path);
    result = petz_reversal(spec.op.cp(), a.state, b.state);
    metadata["omega_a"] = a.name;
    metadata["omega_b"] = b.name;
  } else if (transform == "crooks") {
    if (rho0_path.empty())
      throw Error(errc::parse_error, "crooks requires a --rho0 state file");
    StateSpec r0 = read_state_spec(rho0_path);
    result = crooks_reversal(spec.op, r0.state);
    metadata["rho0"] = r0.name;
  } else {
    throw Error(errc::parse_error, "unknown transform '" + transform + "'");
  }

  write_channel_spec(out_path, result, spec.name + "-" + transform, metadata);

  Json report = report_skeleton("reverse");
  report["inputs"] = {{"file", basename_of(input)},
                      {"name", spec.name},
                      {"transform", transform}};
  report["outputs"] = {{"file", basename_of(out_path)},
                       {"d_in", result.d_in},
                       {"d_out", result.d_out}};
  report["provenance"]["transform"] = result.provenance;
  emit(report, as_json);
  return 0;
}

int cmd_decompose(const std::string& input, bool as_json) {
  SuperMapSpec spec = read_supermap_spec(input);
  auto [s1, s2] = decompose_operation_symmetry(spec.map);
  double residual =
      (build_operation_symmetry(s1, s2).m - spec.map.m).norm();

  Json report = report_skeleton("decompose");
  report["inputs"] = {{"file", basename_of(input)},
                      {"name", spec.name},
                      {"d_in", spec.map.d_in},
                      {"d_out", spec.map.d_out}};
  report["flags"] = {{"kind", symmetry_kind_name(s1.kind)}};
  report["defects"] = {{"residual", format_double(residual)}};
  report["outputs"] = {{"s1_unitary", matrix_to_json(s1.u)},
                       {"s2_unitary", matrix_to_json(s2.u)}};
  emit(report, as_json);
  if (!as_json)
    std::cout << "outputs.kind: " << symmetry_kind_name(s1.kind) << "\n";
  return 0;
}

int cmd_nogo(Index dim, const std::string& target_name, int samples,
             int restarts, std::uint64_t seed, bool as_json) {
  NogoTarget target;
  if (target_name == "dagger") target = NogoTarget::dagger;
  else if (target_name == "transpose") target = NogoTarget::transpose;
  else if (target_name == "identity") target = NogoTarget::identity;
  else
    throw Error(errc::parse_error, "unknown target '" + target_name + "'");

  NogoResult result = nogo_residual(dim, target, samples, restarts, seed);

  Json report = report_skeleton("nogo");
  report["inputs"] = {{"dim", dim},
                      {"target", target_name},
                      {"samples", samples},
                      {"restarts", restarts},
                      {"seed", seed}};
  report["outputs"] = {{"residual", format_double(result.residual)},
                       {"branch", symmetry_kind_name(result.branch)},
                       {"best_w", matrix_to_json(result.w)},
                       {"best_v", matrix_to_json(result.v)}};
  emit(report, as_json);
  return 0;
}

int cmd_simulate(const std::string& instrument_path,
                 const std::string& state_path, int shots, std::uint64_t seed,
                 bool require_ts, bool as_json) {
  InstrumentSpec inst = read_instrument_spec(instrument_path);
  StateSpec state = read_state_spec(state_path);

  InstrumentReport valid = validate_instrument(inst.instrument);
  if (!valid.valid)
    throw Error(errc::invalid_instrument,
                "branch sum is not a channel, defect " +
                    format_double(valid.tp_defect));
  if (require_ts) {
    TsInstrumentReport ts = validate_ts_instrument(inst.instrument);
    if (!ts.valid) {
      std::string which =
          ts.first_invalid_branch >= 0
              ? "branch " + std::to_string(ts.first_invalid_branch) +
                    " is not a time-symmetric operation"
              : "branch sum is not a time-symmetric channel";
      throw Error(errc::invalid_instrument, which);
    }
  }

  const int n = static_cast<int>(inst.instrument.branches.size());
  std::vector<long long> counts(n, 0);
  std::vector<Matrix> post_sums(
      n, Matrix::Zero(inst.instrument.d_out(), inst.instrument.d_out()));
  Rng rng(seed);
  for (int s = 0; s < shots; ++s) {
    auto [outcome, post] = sample_instrument(inst.instrument, state.state, rng);
    counts[outcome] += 1;
    post_sums[outcome] += post.matrix();
  }

  Json histogram = Json::array();
  Json born = Json::array();
  Json posts = Json::array();
  for (int i = 0; i < n; ++i) {
    histogram.push_back(counts[i]);
    double p = act(inst.instrument.branches[i].cp(), state.state.matrix())
                   .trace()
                   .real();
    born.push_back(format_double(p));
    posts.push_back(counts[i] > 0
                        ? matrix_to_json(post_sums[i] /
                                         static_cast<double>(counts[i]))
                        : Json());
  }

  Json report = report_skeleton("simulate");
  report["inputs"] = {{"instrument", basename_of(instrument_path)},
                      {"instrument_name", inst.name},
                      {"state", basename_of(state_path)},
                      {"state_name", state.name},
                      {"shots", shots},
                      {"seed", seed}};
  report["outputs"] = {{"histogram", histogram},
                       {"born_probabilities", born},
                       {"mean_post_states", posts}};
  emit(report, as_json);
  if (!as_json) {
    for (int i = 0; i < n; ++i)
      std::cout << "outcome " << i << ": " << counts[i] << " / " << shots
                << " (born " << born[i].get<std::string>() << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qevo: classify quantum operations, apply time-reversal transforms, "
      "decompose operation-space symmetries, search the no-go residual, and "
      "simulate instruments"};
  app.require_subcommand(1);

  if (const char* scale_env = std::getenv("QEVO_TOL_SCALE")) {
    char* end = nullptr;
    double scale = std::strtod(scale_env, &end);
    if (end == scale_env || *end != '\0' || scale <= 0.0) {
      std::cerr << "QEVO_TOL_SCALE must be a positive number\n";
      return 2;
    }
    tolerances().scale(scale);
  }

  std::string input, out_path, transform, omega_a, omega_b, rho0;
  std::string instrument_path, state_path, target = "dagger";
  bool as_json = false, require_ts = false;
  Index dim = 2;
  int samples = 200, restarts = 20, shots = 10000;
  std::uint64_t seed = 1;

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "classify a channel spec file");
  classify_cmd->add_option("input", input)->required();
  classify_cmd->add_flag("--json", as_json);

  CLI::App* reverse_cmd =
      app.add_subcommand("reverse", "apply a time-reversal transform");
  reverse_cmd->add_option("input", input)->required();
  reverse_cmd
      ->add_option("--transform", transform,
                   "double-transpose|theta|theta-prime|weak-adjoint|petz|crooks")
      ->required();
  reverse_cmd->add_option("--omega-a", omega_a, "petz input reference state");
  reverse_cmd->add_option("--omega-b", omega_b, "petz output reference state");
  reverse_cmd->add_option("--rho0", rho0, "crooks reference state");
  reverse_cmd->add_option("--out", out_path)->required();
  reverse_cmd->add_flag("--json", as_json);

  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose", "decompose an operation-space symmetry supermap");
  decompose_cmd->add_option("input", input)->required();
  decompose_cmd->add_flag("--json", as_json);

  CLI::App* nogo_cmd =
      app.add_subcommand("nogo", "numerical witness of the time-reversal no-go");
  nogo_cmd->add_option("--dim", dim)->check(CLI::PositiveNumber);
  nogo_cmd->add_option("--target", target, "dagger|transpose|identity");
  nogo_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
  nogo_cmd->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
  nogo_cmd->add_option("--seed", seed);
  nogo_cmd->add_flag("--json", as_json);

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "sample an instrument on a state");
  simulate_cmd->add_option("instrument", instrument_path)->required();
  simulate_cmd->add_option("state", state_path)->required();
  simulate_cmd->add_option("--shots", shots)->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", seed);
  simulate_cmd->add_flag("--require-ts", require_ts);
  simulate_cmd->add_flag("--json", as_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) return cmd_classify(input, as_json);
    if (reverse_cmd->parsed())
      return cmd_reverse(input, transform, omega_a, omega_b, rho0, out_path,
                         as_json);
    if (decompose_cmd->parsed()) return cmd_decompose(input, as_json);
    if (nogo_cmd->parsed())
      return cmd_nogo(dim, target, samples, restarts, seed, as_json);
    if (simulate_cmd->parsed())
      return cmd_simulate(instrument_path, state_path, shots, seed, require_ts,
                          as_json);
  } catch (const qevo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qevo::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
