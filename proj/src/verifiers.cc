// SPDX-License-Identifier: Apache-2.0
#include "rzk/verifiers.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "rzk/errors.h"

namespace rzk {

namespace {

double expectation(const Matrix& op, const Matrix& rho) { return (op * rho).trace().real(); }

void require_state(const Matrix& sigma, int dim) {
  if (sigma.rows() != dim || sigma.cols() != dim) throw ConfigError("state dimension mismatch");
  if (!is_density(sigma, 1e-8)) throw ConfigError("sigma is not a density operator");
}

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
}

/// A state weighted toward the ranges of the given projectors, so that
/// rejection sampling on F1 terminates quickly.
Vector biased_state(const std::vector<Matrix>& ranges, int dim, Rng& rng) {
  Vector v = random_state(dim, rng) * rng.uniform01();
  for (const auto& w : ranges) v += w * random_state(dim, rng) * (0.5 + rng.uniform01());
  if (v.norm() < 1e-9) return random_state(dim, rng);
  return v / v.norm();
}

Matrix biased_density(const std::vector<Matrix>& ranges, int dim, Rng& rng) {
  if (rng.coin()) return density(biased_state(ranges, dim, rng));
  const int terms = uniform_int(rng, 2, 3);
  Matrix rho = Matrix::Zero(dim, dim);
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    const double p = rng.uniform01() + 1e-3;
    rho += p * density(biased_state(ranges, dim, rng));
    total += p;
  }
  return rho / total;
}

/// Complete family with num_outcomes labels on C^dim; labels beyond the
/// dimension get zero projectors and the labels are shuffled.
ProjectorFamily random_labeled_measurement(int dim, int num_outcomes, Rng& rng) {
  const int nonzero = std::min(dim, num_outcomes);
  const ProjectorFamily base = random_family(dim, nonzero, true, rng);
  std::vector<Matrix> ps(static_cast<std::size_t>(num_outcomes), Matrix::Zero(dim, dim));
  std::vector<int> labels(static_cast<std::size_t>(num_outcomes));
  for (int i = 0; i < num_outcomes; ++i) labels[static_cast<std::size_t>(i)] = i;
  rng.shuffle(labels);
  for (int i = 0; i < nonzero; ++i) ps[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] = base[i];
  return ProjectorFamily(std::move(ps));
}

ProjectorFamily corrupted_family(int dim) {
  Matrix w = Matrix::Zero(dim, dim);
  w(0, 0) = 1.5;
  return ProjectorFamily::unchecked({w});
}

constexpr int kMaxRejections = 100000;

}  // namespace

BoundCheck check_two_meas_bound(const ProjectorFamily& first, const ProjectorFamily& second,
                                const Matrix& sigma) {
  first.validate();
  second.validate();
  const int d = first.dim();
  if (second.dim() != d) throw ConfigError("families act on different spaces");
  require_state(sigma, d);
  BoundCheck r;
  r.f1 = (expectation(first.total(), sigma) + expectation(second.total(), sigma)) / 2.0;
  double f2 = 0.0;
  for (int s1 = 0; s1 < first.size(); ++s1) {
    const Matrix after_first = first[s1] * sigma * first[s1];
    for (int s2 = 0; s2 < second.size(); ++s2) {
      f2 += expectation(second[s2], after_first);
      f2 += expectation(first[s1], second[s2] * sigma * second[s2]);
    }
  }
  r.f2 = f2 / 2.0;
  const int s_max = std::max(first.size(), second.size());
  r.rhs = 2.0 / s_max * (r.f1 - 0.5) * (r.f1 - 0.5);
  r.applicable = r.f1 > 0.5;
  r.holds = !r.applicable || r.f2 >= r.rhs - kBoundTolerance;
  return r;
}

BoundCheck check_cha_bound(const std::vector<ProjectorFamily>& families, const Matrix& sigma) {
  const int c = static_cast<int>(families.size());
  if (c < 2) throw ConfigError("need at least two families");
  const int d = families.front().dim();
  int s_max = 0;
  for (const auto& f : families) {
    f.validate();
    if (f.dim() != d) throw ConfigError("families act on different spaces");
    s_max = std::max(s_max, f.size());
  }
  require_state(sigma, d);
  std::vector<Matrix> totals;
  for (const auto& f : families) totals.push_back(f.total());
  BoundCheck r;
  for (const auto& w : totals) r.f1 += expectation(w, sigma);
  r.f1 /= c;
  double f2 = 0.0;
  for (int i = 0; i < c; ++i) {
    const auto& fi = families[static_cast<std::size_t>(i)];
    for (int s = 0; s < fi.size(); ++s) {
      const Matrix after = fi[s] * sigma * fi[s];
      for (int j = 0; j < c; ++j) {
        if (j != i) f2 += expectation(totals[static_cast<std::size_t>(j)], after);
      }
    }
  }
  r.f2 = f2 / (static_cast<double>(c) * (c - 1));
  const double excess = r.f1 - 1.0 / c;
  r.rhs = excess * excess * excess / (64.0 * s_max);
  r.applicable = r.f1 >= 1.0 / c;
  r.holds = !r.applicable || r.f2 >= r.rhs - kBoundTolerance;
  return r;
}

BoundCheck check_don_bound(const std::vector<Matrix>& projectors, const Vector& psi, int t) {
  if (t < 1) throw ConfigError("t must be at least 1");
  const int c = static_cast<int>(projectors.size());
  if (c < 1) throw ConfigError("need at least one projector");
  for (const auto& w : projectors) {
    if (w.rows() != psi.size() || w.cols() != psi.size()) throw ConfigError("dimension mismatch");
    ProjectorFamily({w}).validate();
  }
  BoundCheck r;
  for (const auto& w : projectors) r.f1 += (w * psi).squaredNorm();
  r.f1 /= c;
  double sum = 0.0;
  std::function<void(const Vector&, int)> descend = [&](const Vector& v, int depth) {
    if (depth == t) {
      sum += v.squaredNorm();
      return;
    }
    for (const auto& w : projectors) descend(w * v, depth + 1);
  };
  descend(psi, 0);
  r.f2 = sum / std::pow(static_cast<double>(c), t);
  r.rhs = std::pow(r.f1, 2 * t - 1);
  r.applicable = true;
  r.holds = r.f2 >= r.rhs - kBoundTolerance;
  return r;
}

GentleCheck check_gentle(const Matrix& sigma, const Matrix& effect) {
  if (!is_effect(effect)) throw ConfigError("X must satisfy 0 <= X <= Id");
  require_state(sigma, static_cast<int>(effect.rows()));
  const Matrix root = psd_sqrt(effect);
  GentleCheck r;
  r.lhs = trace_norm_distance(sigma, root * sigma * root);
  r.acceptance = expectation(effect, sigma);
  r.rhs = 2.0 * std::sqrt(std::max(0.0, 1.0 - r.acceptance));
  r.holds = r.lhs <= r.rhs + kBoundTolerance;
  return r;
}

Claim20Check check_claim20(const Vector& psi, int local_dim, const ProjectorFamily& family) {
  family.validate();
  if (!family.is_complete()) throw ConfigError("Claim 20 needs a complete measurement");
  const int d = local_dim;
  if (family.dim() != d || psi.size() != d * d * d) throw ConfigError("dimension mismatch");
  if (d > 4) throw CapacityError("Claim 20 check limited to local dimension 4");
  const std::vector<int> dims = {d, d, d};
  const Matrix rho123 = density(psi);
  const Matrix rho12 = partial_trace(rho123, dims, {0, 1});
  Claim20Check r;
  Matrix dephased = Matrix::Zero(d * d, d * d);
  for (int o = 0; o < family.size(); ++o) {
    const Matrix w1 = kron(family[o], identity(d));
    dephased += w1 * rho12 * w1;
    r.pi_12 += expectation(kron(family[o], family[o]), rho12);
    Vector v = apply_local(apply_local(psi, family[o], dims, 0), family[o], dims, 2);
    r.pi_13 += v.squaredNorm();
  }
  r.lhs = trace_norm_distance(rho12, dephased);
  r.rhs = 6.0 * std::sqrt(std::max(0.0, 1.0 - r.pi_12));
  r.tight_rhs = 4.0 * std::sqrt(std::max(0.0, 1.0 - r.pi_13));
  r.holds = r.lhs <= r.rhs + kBoundTolerance;
  r.tight_holds = r.lhs <= r.tight_rhs + kBoundTolerance;
  return r;
}

void GameSpec::validate() const {
  if (num_x < 1 || num_a < 1 || num_b < 1) throw ConfigError("game needs nonempty question/answer sets");
  if (wins.size() != static_cast<std::size_t>(num_a * num_b * num_x * 2)) {
    throw ConfigError("predicate table has the wrong size");
  }
  if (state.size() != alice_dim * bob_dim || std::abs(state.norm() - 1.0) > kStructuralTolerance) {
    throw ConfigError("shared state must be a unit vector on the joint space");
  }
  if (static_cast<int>(alice.size()) != num_x || bob.size() != 2) {
    throw ConfigError("need one family per question");
  }
  for (const auto& f : alice) {
    f.validate();
    if (f.dim() != alice_dim || f.size() != num_a || !f.is_complete()) {
      throw ConfigError("Alice's measurements must be complete with one projector per answer");
    }
  }
  for (const auto& f : bob) {
    f.validate();
    if (f.dim() != bob_dim || f.size() != num_b || !f.is_complete()) {
      throw ConfigError("Bob's measurements must be complete with one projector per answer");
    }
  }
}

CouplingCheck coupling_game_eval(const GameSpec& game) {
  game.validate();
  const std::vector<int> dims = {game.alice_dim, game.bob_dim};
  CouplingCheck r;
  double omega = 0.0;
  double coup = 0.0;
  for (int x = 0; x < game.num_x; ++x) {
    for (int a = 0; a < game.num_a; ++a) {
      const Vector after_alice = apply_local(game.state, game.alice[static_cast<std::size_t>(x)][a], dims, 0);
      if (after_alice.squaredNorm() == 0.0) continue;
      for (int y = 0; y < 2; ++y) {
        const auto& first = game.bob[static_cast<std::size_t>(y)];
        const auto& second = game.bob[static_cast<std::size_t>(1 - y)];
        int accepted = 0;
        for (int b = 0; b < game.num_b; ++b) {
          if (!game.win(a, b, x, y)) continue;
          ++accepted;
          const Vector v = apply_local(after_alice, first[b], dims, 1);
          omega += v.squaredNorm();
          for (int b2 = 0; b2 < game.num_b; ++b2) {
            if (game.win(a, b2, x, 1 - y)) coup += apply_local(v, second[b2], dims, 1).squaredNorm();
          }
        }
        r.s_max = std::max(r.s_max, accepted);
      }
    }
  }
  // S_max ranges over all (a, x, y), including answers Alice never gives.
  for (int x = 0; x < game.num_x; ++x) {
    for (int a = 0; a < game.num_a; ++a) {
      for (int y = 0; y < 2; ++y) {
        int accepted = 0;
        for (int b = 0; b < game.num_b; ++b) accepted += game.win(a, b, x, y) ? 1 : 0;
        r.s_max = std::max(r.s_max, accepted);
      }
    }
  }
  r.omega = omega / (2.0 * game.num_x);
  r.omega_coup = coup / (2.0 * game.num_x);
  r.applicable = r.omega > 0.5 && r.s_max > 0;
  r.rhs = r.s_max > 0 ? 2.0 / r.s_max * (r.omega - 0.5) * (r.omega - 0.5) : 0.0;
  r.holds = !r.applicable || r.omega_coup >= r.rhs - kBoundTolerance;
  return r;
}

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::two_meas:
      return "two-meas";
    case Theorem::cha:
      return "cha";
    case Theorem::don:
      return "don";
    case Theorem::gentle:
      return "gentle";
    case Theorem::claim20:
      return "claim20";
    case Theorem::coupling:
      return "coupling";
  }
  return "unknown";
}

Theorem parse_theorem(const std::string& name) {
  for (Theorem t : all_theorems()) {
    if (to_string(t) == name) return t;
  }
  throw ConfigError("unknown theorem '" + name + "'");
}

const std::vector<Theorem>& all_theorems() {
  static const std::vector<Theorem> kAll = {Theorem::two_meas, Theorem::cha,     Theorem::don,
                                            Theorem::gentle,   Theorem::claim20, Theorem::coupling};
  return kAll;
}

BoundCheck random_two_meas_instance(Rng& rng) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const int d = uniform_int(rng, 2, 8);
    const ProjectorFamily f1 = random_family(d, uniform_int(rng, 1, std::min(4, d)), false, rng);
    const ProjectorFamily f2 = random_family(d, uniform_int(rng, 1, std::min(4, d)), false, rng);
    const Matrix sigma = biased_density({f1.total(), f2.total()}, d, rng);
    const BoundCheck r = check_two_meas_bound(f1, f2, sigma);
    if (r.applicable) return r;
  }
  throw CapacityError("could not draw an instance with F1 > 1/2");
}

BoundCheck random_cha_instance(Rng& rng) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const int d = uniform_int(rng, 2, 8);
    const int c = uniform_int(rng, 2, 4);
    std::vector<ProjectorFamily> families;
    std::vector<Matrix> ranges;
    for (int i = 0; i < c; ++i) {
      families.push_back(random_family(d, uniform_int(rng, 1, std::min(4, d)), false, rng));
      ranges.push_back(families.back().total());
    }
    const BoundCheck r = check_cha_bound(families, biased_density(ranges, d, rng));
    if (r.applicable) return r;
  }
  throw CapacityError("could not draw an instance with F1 >= 1/c");
}

BoundCheck random_don_instance(Rng& rng) {
  const int d = uniform_int(rng, 2, 8);
  const int c = uniform_int(rng, 2, 4);
  const int t = uniform_int(rng, 1, 4);
  std::vector<Matrix> projectors;
  for (int i = 0; i < c; ++i) projectors.push_back(random_family(d, 1, false, rng)[0]);
  return check_don_bound(projectors, biased_state(projectors, d, rng), t);
}

GentleCheck random_gentle_instance(Rng& rng) {
  const int d = uniform_int(rng, 2, 8);
  const Matrix effect = rng.coin() ? random_effect(d, rng) : random_family(d, 1, false, rng)[0];
  const Matrix sigma = rng.coin() ? biased_density({effect}, d, rng) : random_density(d, rng);
  return check_gentle(sigma, effect);
}

Claim20Check random_claim20_instance(Rng& rng) {
  constexpr int d = 3;
  const ProjectorFamily family = random_family(d, uniform_int(rng, 1, d), true, rng);
  Vector psi = random_symmetric_state(d, rng);
  if (rng.coin()) {
    // Mix toward a state perfectly correlated in the family's eigenbasis.
    Vector correlated = Vector::Zero(d * d * d);
    Matrix weighted = Matrix::Zero(d, d);
    for (int o = 0; o < family.size(); ++o) weighted += static_cast<double>(o + 1) * family[o];
    Eigen::SelfAdjointEigenSolver<Matrix> solver(weighted);
    for (int k = 0; k < d; ++k) {
      const Vector e = solver.eigenvectors().col(k);
      correlated += kron(kron(e, e), e);
    }
    psi = correlated / correlated.norm() * (1.0 + 3.0 * rng.uniform01()) + psi;
    psi /= psi.norm();
  }
  return check_claim20(psi, d, family);
}

CouplingCheck random_coupling_instance(Rng& rng) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    GameSpec g;
    g.num_x = uniform_int(rng, 1, 3);
    g.num_a = uniform_int(rng, 2, 3);
    g.num_b = uniform_int(rng, 2, 3);
    g.alice_dim = uniform_int(rng, 2, 3);
    g.bob_dim = uniform_int(rng, 2, 3);
    const double density_of_wins = 0.4 + 0.5 * rng.uniform01();
    g.wins.resize(static_cast<std::size_t>(g.num_a * g.num_b * g.num_x * 2));
    for (std::size_t i = 0; i < g.wins.size(); ++i) g.wins[i] = rng.uniform01() < density_of_wins;
    g.state = random_state(g.alice_dim * g.bob_dim, rng);
    for (int x = 0; x < g.num_x; ++x) {
      g.alice.push_back(random_labeled_measurement(g.alice_dim, g.num_a, rng));
    }
    for (int y = 0; y < 2; ++y) g.bob.push_back(random_labeled_measurement(g.bob_dim, g.num_b, rng));
    const CouplingCheck r = coupling_game_eval(g);
    if (r.applicable) return r;
  }
  throw CapacityError("could not draw a game with omega > 1/2");
}

std::vector<SuiteRow> run_suite(Theorem theorem, int count, std::uint64_t seed, bool corrupt_first) {
  if (count < 1) throw ConfigError("instance count must be at least 1");
  const Rng root(seed);
  std::vector<SuiteRow> rows;
  rows.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    SuiteRow row;
    row.instance_id = to_string(theorem) + "-" + std::to_string(i);
    row.seed = rng.seed();
    if (corrupt_first && i == 0) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.f1 = row.f2_or_ft = row.rhs = row.margin = nan;
      row.holds = false;
      try {
        const Matrix sigma = density(Vector::Unit(2, 0));
        if (theorem == Theorem::gentle) {
          check_gentle(sigma, 1.5 * identity(2));
        } else {
          check_two_meas_bound(corrupted_family(2), corrupted_family(2), sigma);
        }
        row.holds = true;  // the detector missed the corruption
      } catch (const ConfigError&) {
      }
      rows.push_back(row);
      continue;
    }
    switch (theorem) {
      case Theorem::two_meas:
      case Theorem::cha:
      case Theorem::don: {
        const BoundCheck r = theorem == Theorem::two_meas ? random_two_meas_instance(rng)
                             : theorem == Theorem::cha    ? random_cha_instance(rng)
                                                          : random_don_instance(rng);
        row.f1 = r.f1;
        row.f2_or_ft = r.f2;
        row.rhs = r.rhs;
        row.margin = r.margin();
        row.holds = r.holds;
        break;
      }
      case Theorem::gentle: {
        const GentleCheck r = random_gentle_instance(rng);
        row.f1 = r.acceptance;
        row.f2_or_ft = r.lhs;
        row.rhs = r.rhs;
        row.margin = r.margin();
        row.holds = r.holds;
        break;
      }
      case Theorem::claim20: {
        const Claim20Check r = random_claim20_instance(rng);
        row.f1 = r.pi_12;
        row.f2_or_ft = r.lhs;
        row.rhs = r.rhs;
        row.margin = r.margin();
        row.holds = r.holds;
        break;
      }
      case Theorem::coupling: {
        const CouplingCheck r = random_coupling_instance(rng);
        row.f1 = r.omega;
        row.f2_or_ft = r.omega_coup;
        row.rhs = r.rhs;
        row.margin = r.margin();
        row.holds = r.holds;
        break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rzk
