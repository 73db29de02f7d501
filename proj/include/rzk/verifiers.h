// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rzk/quantum.h"

namespace rzk {

/// Outcome of checking one lower bound F2 >= rhs on one instance.
/// `applicable` is false when the bound's hypothesis on F1 fails, in which
/// case `holds` is true by convention.
struct BoundCheck {
  double f1 = 0.0;
  double f2 = 0.0;
  double rhs = 0.0;
  bool applicable = false;
  bool holds = true;
  double margin() const { return f2 - rhs; }
};

/// Two consecutive measurements: F2 >= (2 / max|S_i|) (F1 - 1/2)^2 when F1 > 1/2.
BoundCheck check_two_meas_bound(const ProjectorFamily& first, const ProjectorFamily& second,
                                const Matrix& sigma);

/// c families: F2 >= (F1 - 1/c)^3 / (64 max|S_i|) when F1 >= 1/c.
BoundCheck check_cha_bound(const std::vector<ProjectorFamily>& families, const Matrix& sigma);

/// t consecutive random projections: F_t >= F1^(2t-1). f2 holds F_t.
BoundCheck check_don_bound(const std::vector<Matrix>& projectors, const Vector& psi, int t);

/// Disturbance of an effect: lhs = ||sigma - sqrt(X) sigma sqrt(X)||_1,
/// rhs = 2 sqrt(1 - Tr[X sigma]).
struct GentleCheck {
  double acceptance = 0.0;  // Tr[X sigma]
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  double margin() const { return rhs - lhs; }
};
GentleCheck check_gentle(const Matrix& sigma, const Matrix& effect);

/// Disturbance of rho_12 when prover 1 measures a complete family on a
/// tripartite pure state with equal local dimensions.
struct Claim20Check {
  double lhs = 0.0;
  double pi_12 = 0.0;  // sum_o Tr[(W^o ⊗ W^o) rho_12]
  double pi_13 = 0.0;  // sum_o Tr[(W^o ⊗ Id ⊗ W^o) rho_123]
  double rhs = 0.0;        // 6 sqrt(1 - pi_12)
  double tight_rhs = 0.0;  // 4 sqrt(1 - pi_13)
  bool holds = true;
  bool tight_holds = true;
  double margin() const { return rhs - lhs; }
};
Claim20Check check_claim20(const Vector& psi, int local_dim, const ProjectorFamily& family);

/// Two-party game with a binary question for Bob, uniform questions, and a
/// fixed entangled strategy.
struct GameSpec {
  int num_x = 0;
  int num_a = 0;
  int num_b = 0;
  /// wins[((a * num_b + b) * num_x + x) * 2 + y]
  std::vector<bool> wins;
  int alice_dim = 0;
  int bob_dim = 0;
  Vector state;
  std::vector<ProjectorFamily> alice;  // per x, num_a outcomes
  std::vector<ProjectorFamily> bob;    // per y in {0,1}, num_b outcomes

  bool win(int a, int b, int x, int y) const {
    return wins[static_cast<std::size_t>(((a * num_b + b) * num_x + x) * 2 + y)];
  }
  void validate() const;
};

struct CouplingCheck {
  double omega = 0.0;
  double omega_coup = 0.0;
  double rhs = 0.0;
  int s_max = 0;
  bool applicable = false;
  bool holds = true;
  double margin() const { return omega_coup - rhs; }
};
/// omega_coup: Bob measures his family for y, then for the other question.
CouplingCheck coupling_game_eval(const GameSpec& game);

enum class Theorem { two_meas, cha, don, gentle, claim20, coupling };

std::string to_string(Theorem t);
/// Throws ConfigError for unknown names.
Theorem parse_theorem(const std::string& name);
const std::vector<Theorem>& all_theorems();

/// One row of a randomized verifier suite.
struct SuiteRow {
  std::string instance_id;
  std::uint64_t seed = 0;
  double f1 = 0.0;
  double f2_or_ft = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = true;
};

/// `count` random instances; instance i draws from Rng(seed).split(i).
/// With corrupt_first set, instance 0 is built from a family that is not
/// idempotent and is reported as a violation.
std::vector<SuiteRow> run_suite(Theorem theorem, int count, std::uint64_t seed,
                                bool corrupt_first = false);

/// One random instance of each kind, exposed for tests.
BoundCheck random_two_meas_instance(Rng& rng);
BoundCheck random_cha_instance(Rng& rng);
BoundCheck random_don_instance(Rng& rng);
GentleCheck random_gentle_instance(Rng& rng);
Claim20Check random_claim20_instance(Rng& rng);
CouplingCheck random_coupling_instance(Rng& rng);

}  // namespace rzk
