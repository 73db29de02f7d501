// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rzk/bounds.h"
#include "rzk/errors.h"
#include "rzk/hamiltonian.h"
#include "rzk/quantum.h"
#include "rzk/rational.h"
#include "rzk/rewind.h"
#include "rzk/sigma.h"
#include "rzk/subset_sum.h"
#include "rzk/three_coloring.h"

namespace rzk {

/// What a special extractor returns: its candidate witness and whether the
/// candidate checks out against the instance.
template <class W>
struct SpecialExtraction {
  W witness;
  bool valid = false;
};

/// K0 for Hamiltonian cycle: Pi^{-1}(C') from one full and one cycle opening,
/// given in either order.
struct HcSpecialExtractor {
  const Graph* graph;
  SpecialExtraction<CycleEdges> operator()(const HcResponse& first, const HcResponse& second) const;
};

/// K0 for subset-sum: x ⊕ z.
struct SubsetSpecialExtractor {
  const SubsetSumInstance* instance;
  SpecialExtraction<Bits> operator()(const SubsetResponse& first, const SubsetResponse& second) const;
};

nlohmann::json witness_json(const CycleEdges& edges);
nlohmann::json witness_json(const Bits& bits);

template <SigmaProtocol P, class W>
struct ClassicalExtraction {
  typename P::Rand rand;
  typename P::Com com;
  typename P::Challenge ch;
  typename P::Response resp;
  typename P::Challenge ch2;
  typename P::Response resp2;
  bool first_accepts = false;
  bool second_accepts = false;
  /// Set only when both conversations accept.
  std::optional<SpecialExtraction<W>> extraction;

  bool succeeded() const { return extraction && extraction->valid; }
};

/// One commit phase, a challenge to the second prover, a rewind, and a
/// second distinct challenge; K0 runs when both conversations accept.
template <SigmaProtocol P, class First, class Second, class K0>
  requires FirstProver<First, P> && SecondProver<Second, P>
auto canonical_extract_classical(const P& protocol, First& first, Second& second, const K0& k0, Rng& rng) {
  using W = decltype(k0(std::declval<typename P::Response>(), std::declval<typename P::Response>()).witness);
  auto [rand, ch] = sample_questions(protocol, rng);
  const std::vector<typename P::Challenge> space = protocol.challenges();
  std::vector<typename P::Challenge> others;
  for (const auto& c : space) {
    if (!(c == ch)) others.push_back(c);
  }
  if (others.empty()) throw ConfigError("extraction needs at least two challenges");
  const auto ch2 = others[rng.uniform_below(others.size())];

  auto com = first.commit(rand);
  RewindableHandle<Second> handle(second);
  auto resp = handle.activate(ch);
  handle.rewind();
  auto resp2 = handle.activate(ch2);
  handle.rewind();

  ClassicalExtraction<P, W> out;
  out.rand = rand;
  out.com = com;
  out.ch = ch;
  out.resp = resp;
  out.ch2 = ch2;
  out.resp2 = resp2;
  out.first_accepts = protocol.verify(rand, com, ch, resp).ok;
  out.second_accepts = protocol.verify(rand, com, ch2, resp2).ok;
  if (out.first_accepts && out.second_accepts) out.extraction = k0(resp, resp2);
  return out;
}

/// Special soundness of K0 for Hamiltonian cycle against provers that fix
/// both openings in advance while the first prover sees B.
///
/// An adversary is a permutation Pi, a pad A, a directed Hamiltonian cycle C'
/// on n vertices and opened values on C'. The best first prover commits
/// Y = A + B ∘ M(Pi(G)), so both conversations accept exactly when every
/// opened entry agrees; K0 fails when C' leaves Pi(G).
struct DoubleOpeningReport {
  std::uint64_t q = 0;
  std::int64_t adversaries = 0;           // with at least one doubly accepting B
  std::int64_t violations = 0;            // fail fraction > 1/(q p_both)
  std::int64_t both_accepting = 0;        // summed over adversaries and B
  std::int64_t failures = 0;              // doubly accepting with invalid K0 output
  std::int64_t b_count = 0;               // B values per adversary
  Rational worst_ratio{0};                // max fail_fraction * q * p_both
  bool full = false;
};

enum class EnumerationMode {
  full,         // every entry of A, B and the opened values
  cycle_only,   // only entries on C' (the rest cannot affect either check)
};

/// Throws CapacityError when the enumeration would exceed ~2e8 checks.
DoubleOpeningReport enumerate_hc_double_openings(const FieldSpec& field, const Graph& g, EnumerationMode mode);

// ---------------------------------------------------------------------------
// Quantum provers and the canonical quantum extractor.

/// Two provers sharing a pure state on S1 ⊗ S2. The first prover applies a
/// unitary chosen by rand and then measures its register in the
/// computational basis, each basis state carrying a commitment label. The
/// second prover applies a unitary chosen by the challenge and measures in
/// its labeled basis.
template <SigmaProtocol P>
struct QuantumProverSpec {
  int first_dim = 0;
  int second_dim = 0;
  Vector initial;
  std::vector<typename P::Rand> rands;
  std::vector<Matrix> first_unitaries;
  std::vector<typename P::Com> com_labels;
  std::vector<typename P::Challenge> challenges;
  std::vector<Matrix> second_unitaries;
  std::vector<typename P::Response> resp_labels;
  std::string name;

  /// Throws ConfigError on shape, normalization or unitarity problems.
  void validate() const {
    if (first_dim < 1 || second_dim < 1 || first_dim > 64 || second_dim > 64) {
      throw ConfigError("prover registers must have dimension 1..64");
    }
    if (initial.size() != first_dim * second_dim) throw ConfigError("initial state has the wrong dimension");
    if (std::abs(initial.norm() - 1.0) > kStructuralTolerance) throw ConfigError("initial state is not normalized");
    if (rands.empty() || rands.size() != first_unitaries.size()) throw ConfigError("one unitary per rand is required");
    if (challenges.size() < 2 || challenges.size() != second_unitaries.size()) {
      throw ConfigError("one unitary per challenge, at least two challenges");
    }
    if (static_cast<int>(com_labels.size()) != first_dim || static_cast<int>(resp_labels.size()) != second_dim) {
      throw ConfigError("every basis state needs a label");
    }
    for (const auto& u : first_unitaries) {
      if (u.rows() != first_dim || !is_unitary(u)) throw ConfigError("first prover operator is not unitary");
    }
    for (const auto& u : second_unitaries) {
      if (u.rows() != second_dim || !is_unitary(u)) throw ConfigError("second prover operator is not unitary");
    }
  }
};

/// Groups basis states with equal labels into projectors.
template <class Label>
struct LabeledMeasurement {
  std::vector<Label> labels;
  ProjectorFamily family;
  std::vector<std::vector<int>> members;
};

template <class Label>
LabeledMeasurement<Label> labeled_measurement(const std::vector<Label>& per_state) {
  LabeledMeasurement<Label> m;
  const int dim = static_cast<int>(per_state.size());
  for (int i = 0; i < dim; ++i) {
    std::size_t k = 0;
    while (k < m.labels.size() && !(m.labels[k] == per_state[static_cast<std::size_t>(i)])) ++k;
    if (k == m.labels.size()) {
      m.labels.push_back(per_state[static_cast<std::size_t>(i)]);
      m.members.emplace_back();
    }
    m.members[k].push_back(i);
  }
  std::vector<Matrix> projectors;
  for (const auto& group : m.members) {
    Matrix p = Matrix::Zero(dim, dim);
    for (int i : group) p(i, i) = 1.0;
    projectors.push_back(p);
  }
  m.family = ProjectorFamily::unchecked(std::move(projectors));
  return m;
}

/// Zeroes every coordinate of the given site outside `keep`.
Vector project_coordinates(const Vector& psi, const std::vector<int>& dims, int site, const std::vector<int>& keep);

struct LedgerEntry {
  int rand = 0;
  int com = 0;
  int ch = 0;
  int ch2 = 0;
  int resp = 0;
  int resp2 = 0;
  double probability = 0.0;
  bool both_accept = false;
  bool valid = false;
};

struct QuantumExtractionReport {
  std::string name;
  double acceptance = 0.0;           // Pr[V accepts] for one honest run
  double both_accept = 0.0;          // Pr[both recorded conversations accept]
  double success = 0.0;              // Pr[K0 returns a valid witness]
  double ledger_total = 0.0;
  double knowledge_error = 0.0;      // 1/c
  double delta_ss = 0.0;
  double ra_max = 0.0;
  double bound_rhs = 0.0;
  std::vector<LedgerEntry> ledger;   // branches with probability > 0
  std::optional<nlohmann::json> sampled_witness;
  bool sampled_success = false;
};

nlohmann::json to_json(const QuantumExtractionReport& r, bool include_ledger);

/// Exact branch-by-branch evaluation of the canonical extractor on a
/// quantum prover spec, plus one sampled run through rewindable handles.
/// `field_size` instantiates delta_ss = 1/(q * Pr[both accept]).
template <SigmaProtocol P, class K0>
QuantumExtractionReport canonical_extract_quantum(const P& protocol, const QuantumProverSpec<P>& spec, const K0& k0,
                                                  double field_size, double ra_max, Rng& rng) {
  spec.validate();
  const auto coms = labeled_measurement(spec.com_labels);
  const auto resps = labeled_measurement(spec.resp_labels);
  const std::vector<int> dims{spec.first_dim, spec.second_dim};
  const int r_count = static_cast<int>(spec.rands.size());
  const int c = static_cast<int>(spec.challenges.size());
  const double branch_weight = 1.0 / (static_cast<double>(r_count) * c * (c - 1));

  QuantumExtractionReport rep;
  rep.name = spec.name;
  rep.knowledge_error = 1.0 / c;
  rep.ra_max = ra_max;

  for (int r = 0; r < r_count; ++r) {
    const Vector after_first = apply_local(spec.initial, spec.first_unitaries[static_cast<std::size_t>(r)], dims, 0);
    for (std::size_t k = 0; k < coms.labels.size(); ++k) {
      const Vector sigma = project_coordinates(after_first, dims, 0, coms.members[k]);
      if (sigma.squaredNorm() == 0.0) continue;
      for (int x = 0; x < c; ++x) {
        const Matrix& vx = spec.second_unitaries[static_cast<std::size_t>(x)];
        const Vector answered = apply_local(sigma, vx, dims, 1);
        for (std::size_t s = 0; s < resps.labels.size(); ++s) {
          const Vector collapsed = project_coordinates(answered, dims, 1, resps.members[s]);
          const double w = collapsed.squaredNorm();
          if (w == 0.0) continue;
          const bool ok1 = protocol.verify(spec.rands[static_cast<std::size_t>(r)], coms.labels[k],
                                           spec.challenges[static_cast<std::size_t>(x)], resps.labels[s]).ok;
          if (ok1) rep.acceptance += w / (r_count * c);
          const Vector rewound = apply_local(collapsed, vx.adjoint(), dims, 1);
          for (int y = 0; y < c; ++y) {
            if (y == x) continue;
            const Vector again = apply_local(rewound, spec.second_unitaries[static_cast<std::size_t>(y)], dims, 1);
            for (std::size_t t = 0; t < resps.labels.size(); ++t) {
              const double p = project_coordinates(again, dims, 1, resps.members[t]).squaredNorm() * branch_weight;
              if (p == 0.0) continue;
              LedgerEntry e{r, static_cast<int>(k), x, y, static_cast<int>(s), static_cast<int>(t), p};
              const bool ok2 = protocol.verify(spec.rands[static_cast<std::size_t>(r)], coms.labels[k],
                                               spec.challenges[static_cast<std::size_t>(y)], resps.labels[t]).ok;
              e.both_accept = ok1 && ok2;
              if (e.both_accept) {
                e.valid = k0(resps.labels[s], resps.labels[t]).valid;
                rep.both_accept += p;
                if (e.valid) rep.success += p;
              }
              rep.ledger_total += p;
              rep.ledger.push_back(e);
            }
          }
        }
      }
    }
  }
  rep.delta_ss = rep.both_accept > 0.0 ? std::min(1.0, 1.0 / (field_size * rep.both_accept)) : 1.0;
  rep.bound_rhs = qpok_extraction_lower(rep.acceptance, c, rep.delta_ss, ra_max);

  Vector state = spec.initial;
  const int r = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(r_count)));
  const int x = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(c)));
  int y = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(c - 1)));
  if (y >= x) ++y;
  QuantumRewindHandle first(state, dims, 0);
  first.activate(spec.first_unitaries[static_cast<std::size_t>(r)]);
  const int k = first.measure(coms.family, rng);
  QuantumRewindHandle second(state, dims, 1);
  second.activate(spec.second_unitaries[static_cast<std::size_t>(x)]);
  const int s = second.measure(resps.family, rng);
  second.rewind();
  second.activate(spec.second_unitaries[static_cast<std::size_t>(y)]);
  const int t = second.measure(resps.family, rng);
  const auto& rand = spec.rands[static_cast<std::size_t>(r)];
  const auto& com = coms.labels[static_cast<std::size_t>(k)];
  if (protocol.verify(rand, com, spec.challenges[static_cast<std::size_t>(x)], resps.labels[static_cast<std::size_t>(s)]).ok &&
      protocol.verify(rand, com, spec.challenges[static_cast<std::size_t>(y)], resps.labels[static_cast<std::size_t>(t)]).ok) {
    const auto out = k0(resps.labels[static_cast<std::size_t>(s)], resps.labels[static_cast<std::size_t>(t)]);
    rep.sampled_success = out.valid;
    if (out.valid) rep.sampled_witness = witness_json(out.witness);
  }
  return rep;
}

/// Largest entrywise difference between the state after the rewind of the
/// second prover, computed as a vector along the extractor's steps, and
/// V_ch^† W V_ch σ V_ch^† W V_ch formed from density matrices.
template <SigmaProtocol P>
double rewind_state_discrepancy(const QuantumProverSpec<P>& spec, int rand_index, int com_index, int ch_index,
                                int resp_index) {
  const auto coms = labeled_measurement(spec.com_labels);
  const auto resps = labeled_measurement(spec.resp_labels);
  const std::vector<int> dims{spec.first_dim, spec.second_dim};
  const Matrix& u = spec.first_unitaries[static_cast<std::size_t>(rand_index)];
  const Matrix& v = spec.second_unitaries[static_cast<std::size_t>(ch_index)];

  Vector stepwise = apply_local(spec.initial, u, dims, 0);
  stepwise = project_coordinates(stepwise, dims, 0, coms.members[static_cast<std::size_t>(com_index)]);
  stepwise = apply_local(stepwise, v, dims, 1);
  stepwise = project_coordinates(stepwise, dims, 1, resps.members[static_cast<std::size_t>(resp_index)]);
  stepwise = apply_local(stepwise, v.adjoint(), dims, 1);

  const Matrix w_com = embed(coms.family[com_index] * u, dims, 0);
  const Matrix sigma = w_com * density(spec.initial) * w_com.adjoint();
  const Matrix w_prime = embed(v.adjoint() * resps.family[resp_index] * v, dims, 1);
  const Matrix rho5 = w_prime * sigma * w_prime;
  return (rho5 - density(stepwise)).cwiseAbs().maxCoeff();
}

/// Constructed toy subset-sum provers (n = 1). Each branch k of an
/// entangled state sqrt(w_k)|k>|k> runs a classical commitment table, and
/// the second prover answers each challenge with a superposition over
/// response slots.
struct SubsetBranch {
  double weight = 1.0;
  SubsetSecret secret;
  /// Amplitudes over {honest answer to ch, perturbed answer to ch} per
  /// challenge; {1, 0} is honest.
  std::array<std::array<Complex, 2>, 2> answer{{{Complex(1), Complex(0)}, {Complex(1), Complex(0)}}};
  /// When set, the first prover commits so that the ch = forged_challenge
  /// opening passes whatever rand is, ignoring the secret's witness.
  std::optional<int> forged_challenge;
};

QuantumProverSpec<SubsetSumProtocol> subset_quantum_spec(const SubsetSumProtocol& protocol,
                                                         const std::vector<SubsetBranch>& branches,
                                                         std::string name);

/// The fixed catalogue of constructed specs: honest embeddings, one-branch
/// cheaters, superposed rotations, entangled mixtures and guessing provers
/// for q in {3, 5, 7}. Deterministic in the seed.
std::vector<std::pair<SubsetSumProtocol, QuantumProverSpec<SubsetSumProtocol>>> subset_spec_catalogue(
    int count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// 3-coloring extractors.

struct ColoringExtraction {
  std::vector<int> coloring;
  std::vector<bool> question_marked;
  bool proper = false;
  int queries = 0;
};

/// The final stage on recorded answers: vertices marked by passing
/// edge-verification tests keep their marks; question-marked vertices take
/// the first proper completion over their recorded colors (searched in
/// order of majority, then lowest color), else their majority color.
ColoringExtraction extract_3col_from_tables(const Graph& g, const PairDistribution& d, const AnswerTable& first,
                                            const AnswerTable& second);

/// A prover that answers from a fixed table.
struct TableProver {
  AnswerTable table;
  Answer respond(const Question& q) const { return table[static_cast<std::size_t>(q.index())]; }
};

/// Queries every question pair in the support of the distribution through
/// rewindable handles, then resolves the marks.
template <class First, class Second>
ColoringExtraction extract_3col_classical(const Graph& g, const PairDistribution& d, First& first, Second& second) {
  const int n = d.question_count();
  AnswerTable f1(static_cast<std::size_t>(n)), f2(static_cast<std::size_t>(n));
  RewindableHandle<First> h1(first);
  RewindableHandle<Second> h2(second);
  int queries = 0;
  for (const auto& e : d.support()) {
    f1[static_cast<std::size_t>(e.q1)] = h1.activate(Question::from_index(e.q1));
    f2[static_cast<std::size_t>(e.q2)] = h2.activate(Question::from_index(e.q2));
    h1.rewind();
    h2.rewind();
    ++queries;
  }
  ColoringExtraction out = extract_3col_from_tables(g, d, f1, f2);
  out.queries = queries;
  return out;
}

/// A symmetric three-prover strategy: one shared pure state on (C^d)^{⊗3}
/// and, per question, a complete family of 9 projectors indexed by answer.
struct ThreeColQuantumStrategy {
  int local_dim = 1;
  Vector state;
  std::vector<ProjectorFamily> families;

  /// Throws ConfigError on dimension or completeness problems.
  void validate(const Graph& g) const;
};

/// Shared randomness over labelings: sum_k sqrt(w_k)|k,k,k> with diagonal
/// projectors answering from labeling k.
ThreeColQuantumStrategy embed_labelings(const Graph& g, const std::vector<Labeling>& labelings,
                                        const std::vector<double>& weights);
/// Rotates every family by exp(i * angle * H_q) with random Hermitian H_q.
ThreeColQuantumStrategy rotate_families(const ThreeColQuantumStrategy& s, double angle, Rng& rng);

double quantum_acceptance_3p(const Graph& g, const TripleDistribution& d, const ThreeColQuantumStrategy& s);

struct QuantumColoringExtraction {
  double acceptance_3p = 0.0;            // p_q
  double classical_value = 0.0;          // p_c of the recorded tables
  double distance_bound = 0.0;           // 16|H| sqrt(1 - p_q)
  bool within_bound = false;
  AnswerTable first;
  AnswerTable second;
  ColoringExtraction coloring;
};

/// Sequentially measures the first prover on every question (both b per
/// edge, keeping the collapse), then the second, then resolves the tables.
/// p_c is computed exactly from the measured-and-rewound reduced states.
QuantumColoringExtraction extract_3col_quantum(const Graph& g, const Rational& epsilon,
                                               const ThreeColQuantumStrategy& s, Rng& rng);

}  // namespace rzk
