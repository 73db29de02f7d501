// SPDX-License-Identifier: Apache-2.0
#include "rzk/machines.h"

#include "rzk/errors.h"

namespace rzk {

namespace {

const std::set<Register>& permitted(Machine m) {
  static const std::set<Register> kVerifier = {Register::s0, Register::n1, Register::n2};
  static const std::set<Register> kFirst = {Register::s1, Register::n1};
  static const std::set<Register> kSecond = {Register::s2, Register::n2};
  switch (m) {
    case Machine::verifier:
      return kVerifier;
    case Machine::first_prover:
      return kFirst;
    case Machine::second_prover:
      return kSecond;
  }
  throw ConfigError("unknown machine");
}

void check_action(const MachineAction& action, Machine m) {
  if (!action.act) throw ConfigError(to_string(m) + " has no action");
  for (Register r : action.access) {
    if (!permitted(m).contains(r)) {
      throw ConfigError(to_string(m) + " may not access register " + to_string(r));
    }
  }
}

void run_action(const MachineAction& action, Machine m, RegisterFile& file, int round) {
  RegisterAccess access(file, action.access, m);
  action.act(access, round);
}

}  // namespace

std::string to_string(Register r) {
  switch (r) {
    case Register::s0:
      return "S0";
    case Register::s1:
      return "S1";
    case Register::s2:
      return "S2";
    case Register::n1:
      return "N1";
    case Register::n2:
      return "N2";
  }
  return "?";
}

std::string to_string(Machine m) {
  switch (m) {
    case Machine::verifier:
      return "M0";
    case Machine::first_prover:
      return "M1";
    case Machine::second_prover:
      return "M2";
  }
  return "?";
}

nlohmann::json& RegisterAccess::operator[](Register r) {
  if (!allowed_.contains(r)) {
    throw ConfigError(to_string(machine_) + " touched undeclared register " + to_string(r));
  }
  return file_[static_cast<std::size_t>(r)];
}

void validate_config(const MachineConfig& config) {
  check_action(config.verifier, Machine::verifier);
  check_action(config.first_prover, Machine::first_prover);
  check_action(config.second_prover, Machine::second_prover);
}

RegisterFile run_rounds(const MachineConfig& config, int rounds, RegisterFile initial) {
  if (rounds < 1) throw ConfigError("need at least one round");
  validate_config(config);
  RegisterFile file = std::move(initial);
  for (int round = 1; round <= rounds; ++round) {
    run_action(config.verifier, Machine::verifier, file, round);
    run_action(config.first_prover, Machine::first_prover, file, round);
    run_action(config.second_prover, Machine::second_prover, file, round);
  }
  return file;
}

QuantumRoundsOutcome run_rounds(const QuantumMachineConfig& config, int rounds, Vector shared_state,
                                RegisterFile initial, Rng& rng) {
  if (rounds < 1) throw ConfigError("need at least one round");
  check_action(config.verifier, Machine::verifier);
  if (!config.first_prover || !config.second_prover) throw ConfigError("prover action missing");
  const std::vector<int> dims = {config.first_dim, config.second_dim};
  if (shared_state.size() != config.first_dim * config.second_dim) {
    throw ConfigError("shared state does not match the prover dimensions");
  }
  QuantumRoundsOutcome out{std::move(initial), std::move(shared_state)};
  auto& file = out.registers;
  for (int round = 1; round <= rounds; ++round) {
    run_action(config.verifier, Machine::verifier, file, round);
    const LocalActivation first = config.first_prover(file[static_cast<std::size_t>(Register::n1)], round);
    const LocalActivation second = config.second_prover(file[static_cast<std::size_t>(Register::n2)], round);
    if (!is_unitary(first.unitary) || !is_unitary(second.unitary)) {
      throw ConfigError("prover activation is not unitary");
    }
    out.state = apply_local(out.state, first.unitary, dims, 0);
    out.state = apply_local(out.state, second.unitary, dims, 1);
    const std::array<const LocalActivation*, 2> acts = {&first, &second};
    for (int site = 0; site < 2; ++site) {
      const auto& m = acts[static_cast<std::size_t>(site)]->measurement;
      if (!m) continue;
      const ProjectorFamily local(m->projectors());
      std::vector<Matrix> lifted;
      for (const auto& w : local.projectors()) lifted.push_back(embed(w, dims, site));
      const auto r = measure_projective(out.state, ProjectorFamily::unchecked(std::move(lifted)), rng);
      out.state = r.post_state;
      file[static_cast<std::size_t>(site == 0 ? Register::n1 : Register::n2)] = r.outcome;
    }
  }
  return out;
}

}  // namespace rzk
