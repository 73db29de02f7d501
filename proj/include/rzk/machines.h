// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "rzk/quantum.h"
#include "rzk/random.h"

namespace rzk {

/// The five registers of the three-machine model: private workspaces S0
/// (verifier), S1, S2 (provers) and the message registers N1, N2 shared by
/// the verifier with each prover.
enum class Register { s0, s1, s2, n1, n2 };
enum class Machine { verifier, first_prover, second_prover };

std::string to_string(Register r);
std::string to_string(Machine m);

/// Classical register contents.
using RegisterFile = std::array<nlohmann::json, 5>;

/// The registers one machine may touch during its action.
class RegisterAccess {
 public:
  RegisterAccess(RegisterFile& file, const std::set<Register>& allowed, Machine machine)
      : file_(file), allowed_(allowed), machine_(machine) {}

  /// Throws ConfigError for registers outside the declared access set.
  nlohmann::json& operator[](Register r);

 private:
  RegisterFile& file_;
  const std::set<Register>& allowed_;
  Machine machine_;
};

struct MachineAction {
  std::set<Register> access;
  std::function<void(RegisterAccess&, int round)> act;
};

/// M0 may use S0, N1, N2; M1 only S1, N1; M2 only S2, N2.
struct MachineConfig {
  MachineAction verifier;
  MachineAction first_prover;
  MachineAction second_prover;
};

/// Throws ConfigError if an action declares a register its machine may not use.
void validate_config(const MachineConfig& config);

/// Runs `rounds` rounds of (M0 acts) then (M1 and M2 act locally) and
/// returns the final register contents. Rounds are numbered from 1.
RegisterFile run_rounds(const MachineConfig& config, int rounds, RegisterFile initial);

/// What a quantum prover does on receiving a classical message: a local
/// unitary followed by an optional projective measurement whose outcome
/// index is written back to its message register.
struct LocalActivation {
  Matrix unitary;
  std::optional<ProjectorFamily> measurement;
};

/// Provers hold S1 ⊗ S2 in a joint pure state. Each prover's behaviour is a
/// function of its own message only, which enforces non-communication.
struct QuantumMachineConfig {
  MachineAction verifier;
  int first_dim = 0;
  int second_dim = 0;
  std::function<LocalActivation(const nlohmann::json& message, int round)> first_prover;
  std::function<LocalActivation(const nlohmann::json& message, int round)> second_prover;
};

struct QuantumRoundsOutcome {
  RegisterFile registers;
  Vector state;
};

QuantumRoundsOutcome run_rounds(const QuantumMachineConfig& config, int rounds, Vector shared_state,
                                RegisterFile initial, Rng& rng);

}  // namespace rzk
