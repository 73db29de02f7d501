// SPDX-License-Identifier: Apache-2.0
#include "rzk/extractors.h"

#include <gtest/gtest.h>

#include <cmath>

namespace rzk {
namespace {

const Rational kThird(1, 3);

TEST(HcSpecialExtractor, IdentityPermutationReturnsCycle) {
  const Graph g = Graph::complete(3);
  const FieldSpec f(7);
  const HcOpenAll all{Permutation::identity(3), FieldMatrix(3)};
  const HcOpenCycle cyc{{{0, 1}, {1, 2}, {2, 0}}, {f.zero(), f.zero(), f.zero()}};
  const auto out = HcSpecialExtractor{&g}(all, cyc);
  EXPECT_TRUE(out.valid);
  EXPECT_EQ(out.witness, cyc.cycle);
  const auto swapped = HcSpecialExtractor{&g}(cyc, all);
  EXPECT_EQ(swapped.witness, cyc.cycle);
}

TEST(HcSpecialExtractor, InversePermutationByHand) {
  // pi: 0->1, 1->2, 2->0 on a path 0-1-2 plus edge 0-2 (triangle).
  const Graph g = Graph::complete(3);
  const HcOpenAll all{Permutation{{1, 2, 0}}, FieldMatrix(3)};
  const HcOpenCycle cyc{{{1, 2}, {2, 0}, {0, 1}}, {}};
  const auto out = HcSpecialExtractor{&g}(all, cyc);
  const CycleEdges expected{{0, 1}, {1, 2}, {2, 0}};
  EXPECT_EQ(out.witness, expected);
  EXPECT_TRUE(out.valid);
}

TEST(HcSpecialExtractor, BadPermutationIsInvalid) {
  const Graph g = Graph::complete(3);
  const HcOpenAll all{Permutation{{0, 0, 1}}, FieldMatrix(3)};
  const HcOpenCycle cyc{{{0, 1}, {1, 2}, {2, 0}}, {}};
  EXPECT_FALSE(HcSpecialExtractor{&g}(all, cyc).valid);
  EXPECT_FALSE(HcSpecialExtractor{&g}(all, all).valid);
}

TEST(SubsetSpecialExtractor, XorRecoversWitness) {
  const FieldSpec f(7);
  const SubsetSumInstance inst{f, {f.element(1), f.element(2), f.element(3)}, f.element(3)};
  const SubsetOpenAll all{{0, 1, 1}, {}, {}};
  const SubsetOpenSum sum{{1, 0, 1}, f.zero()};
  const auto out = SubsetSpecialExtractor{&inst}(all, sum);
  EXPECT_EQ(out.witness, (Bits{1, 1, 0}));
  EXPECT_TRUE(out.valid);
  const SubsetOpenAll zero{{0, 0, 0}, {}, {}};
  EXPECT_EQ(SubsetSpecialExtractor{&inst}(sum, zero).witness, sum.x);
  const SubsetOpenSum short_sum{{1}, f.zero()};
  EXPECT_FALSE(SubsetSpecialExtractor{&inst}(all, short_sum).valid);
}

TEST(CanonicalClassical, HonestHamiltonianAlwaysExtracts) {
  const Graph g = Graph::cycle(5);
  const HamiltonianCycleProtocol protocol(FieldSpec(11), g);
  const HcSpecialExtractor k0{&protocol.graph()};
  const Rng root(3);
  for (int i = 0; i < 500; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    auto [first, second] = make_honest_hc_provers(protocol, {0, 1, 2, 3, 4}, rng);
    const auto out = canonical_extract_classical(protocol, first, second, k0, rng);
    ASSERT_TRUE(out.succeeded()) << i;
    EXPECT_NE(out.ch, out.ch2);
  }
}

TEST(CanonicalClassical, FirstChallengeOnlyProverNeverExtracts) {
  const Graph g = Graph::complete(4);
  const HamiltonianCycleProtocol protocol(FieldSpec(11), g);
  const HcSpecialExtractor k0{&protocol.graph()};
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    auto [first, honest] = make_honest_hc_provers(protocol, {0, 1, 2, 3}, rng);
    HcFirstChallengeOnlyResponder second{honest.witness, protocol.field()};
    const auto out = canonical_extract_classical(protocol, first, second, k0, rng);
    EXPECT_FALSE(out.first_accepts && out.second_accepts);
    EXPECT_FALSE(out.extraction.has_value());
  }
}

TEST(CanonicalClassical, HonestSubsetSumWitnessSums) {
  const FieldSpec f(101);
  const SubsetSumProtocol protocol(SubsetSumInstance{f, {f.element(1), f.element(2), f.element(3)}, f.element(3)});
  const SubsetSpecialExtractor k0{&protocol.instance()};
  Rng rng(9);
  for (int i = 0; i < 500; ++i) {
    auto [first, second] = make_honest_subset_provers(protocol, {1, 1, 0}, rng);
    const auto out = canonical_extract_classical(protocol, first, second, k0, rng);
    ASSERT_TRUE(out.succeeded());
    EXPECT_TRUE(is_subset_witness(protocol.instance(), out.extraction->witness));
  }
}

TEST(DoubleOpenings, FullEnumerationOverBinaryField) {
  const auto triangle = enumerate_hc_double_openings(FieldSpec(2), Graph::complete(3), EnumerationMode::full);
  EXPECT_EQ(triangle.violations, 0);
  EXPECT_EQ(triangle.failures, 0);
  EXPECT_GT(triangle.adversaries, 0);
  EXPECT_EQ(triangle.b_count, 512);

  const auto path = enumerate_hc_double_openings(FieldSpec(2), Graph::path(3), EnumerationMode::full);
  EXPECT_EQ(path.violations, 0);
  EXPECT_GT(path.failures, 0);
  EXPECT_EQ(path.failures, path.both_accepting);
  EXPECT_LE(path.worst_ratio, Rational(1));
}

TEST(DoubleOpenings, CycleEntriesOverLargerFields) {
  for (std::uint64_t q : {3, 5}) {
    const auto rep = enumerate_hc_double_openings(FieldSpec(q), Graph::path(3), EnumerationMode::cycle_only);
    EXPECT_EQ(rep.violations, 0) << q;
    EXPECT_GT(rep.failures, 0);
    EXPECT_LE(rep.worst_ratio, Rational(1));
  }
}

TEST(DoubleOpenings, RefusesOversizedEnumeration) {
  EXPECT_THROW(enumerate_hc_double_openings(FieldSpec(3), Graph::complete(4), EnumerationMode::full), CapacityError);
}

SubsetSumProtocol toy_protocol(std::uint64_t q, std::uint64_t s, std::uint64_t k) {
  const FieldSpec f(q);
  return SubsetSumProtocol(SubsetSumInstance{f, {f.element(s)}, f.element(k)});
}

QuantumExtractionReport run_spec(const SubsetSumProtocol& protocol, const QuantumProverSpec<SubsetSumProtocol>& spec,
                                 std::uint64_t seed = 1) {
  Rng rng(seed);
  return canonical_extract_quantum(protocol, spec, SubsetSpecialExtractor{&protocol.instance()},
                                   static_cast<double>(protocol.instance().field.q()),
                                   std::ldexp(1.0, protocol.instance().size()), rng);
}

TEST(CanonicalQuantum, EmbeddedHonestProverAlwaysExtracts) {
  const auto protocol = toy_protocol(5, 2, 2);
  Rng rng(1);
  SubsetBranch b;
  b.secret = SubsetSecret::random(protocol.instance(), {1}, rng);
  const auto spec = subset_quantum_spec(protocol, {b}, "honest");
  const auto rep = run_spec(protocol, spec);
  EXPECT_NEAR(rep.acceptance, 1.0, 1e-12);
  EXPECT_NEAR(rep.success, 1.0, 1e-12);
  EXPECT_NEAR(rep.ledger_total, 1.0, 1e-10);
  EXPECT_TRUE(rep.sampled_success);
  EXPECT_EQ(*rep.sampled_witness, nlohmann::json::array({1}));
}

TEST(CanonicalQuantum, FirstChallengeOnlyProver) {
  const auto protocol = toy_protocol(7, 3, 3);
  Rng rng(2);
  SubsetBranch b;
  b.secret = SubsetSecret::random(protocol.instance(), {1}, rng);
  b.answer[1] = {Complex(0), Complex(1)};
  const auto rep = run_spec(protocol, subset_quantum_spec(protocol, {b}, "garbage"));
  EXPECT_NEAR(rep.acceptance, 0.5, 1e-12);
  EXPECT_NEAR(rep.success, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(rep.bound_rhs, 0.0);
  EXPECT_NEAR(rep.ledger_total, 1.0, 1e-10);
}

TEST(CanonicalQuantum, RewindStateMatchesDensityFormula) {
  const auto catalogue = subset_spec_catalogue(18, 4);
  for (const auto& [protocol, spec] : catalogue) {
    const auto coms = labeled_measurement(spec.com_labels);
    const auto resps = labeled_measurement(spec.resp_labels);
    for (int r = 0; r < 2; ++r) {
      for (int k = 0; k < static_cast<int>(coms.labels.size()); ++k) {
        for (int s = 0; s < static_cast<int>(resps.labels.size()); ++s) {
          EXPECT_LT(rewind_state_discrepancy(spec, r, k, 1, s), 1e-10) << spec.name;
        }
      }
    }
  }
}

TEST(CanonicalQuantum, CatalogueSatisfiesExtractionBound) {
  const auto catalogue = subset_spec_catalogue(60, 11);
  int applicable = 0;
  for (const auto& [protocol, spec] : catalogue) {
    const auto rep = run_spec(protocol, spec);
    EXPECT_NEAR(rep.ledger_total, 1.0, 1e-10) << spec.name;
    EXPECT_GE(rep.success + kBoundTolerance, rep.bound_rhs) << spec.name;
    EXPECT_LE(rep.both_accept, rep.acceptance + 1e-12);
    if (rep.acceptance > 0.5) ++applicable;
  }
  EXPECT_GE(applicable, 40);
}

TEST(CanonicalQuantum, GuessingProverOnUnsolvableInstance) {
  // s = 1, k = 2 over F_5: neither {} nor {s} sums to k.
  const auto protocol = toy_protocol(5, 1, 2);
  for (int forged : {0, 1}) {
    Rng rng(7);
    SubsetBranch b;
    b.secret = SubsetSecret::random(protocol.instance(), {1}, rng);
    b.forged_challenge = forged;
    const auto rep = run_spec(protocol, subset_quantum_spec(protocol, {b}, "guess"));
    EXPECT_NEAR(rep.acceptance, 0.6, 1e-12);
    EXPECT_NEAR(rep.success, 0.0, 1e-12);
    EXPECT_NEAR(rep.both_accept, 0.2, 1e-12);
    EXPECT_NEAR(rep.delta_ss, 1.0, 1e-12);
  }
}

TEST(CanonicalQuantum, RejectsNonUnitarySpec) {
  const auto protocol = toy_protocol(3, 1, 1);
  Rng rng(1);
  SubsetBranch b;
  b.secret = SubsetSecret::random(protocol.instance(), {1}, rng);
  auto spec = subset_quantum_spec(protocol, {b}, "broken");
  spec.second_unitaries[0](0, 0) *= 2.0;
  EXPECT_THROW(run_spec(protocol, spec), ConfigError);
}

TEST(ReportJson, CarriesLedgerOnRequest) {
  const auto catalogue = subset_spec_catalogue(1, 3);
  const auto rep = run_spec(catalogue[0].first, catalogue[0].second);
  const auto j = to_json(rep, true);
  for (const char* key : {"witness", "success_probability", "acceptance_probability", "bound_rhs", "branch_ledger"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_FALSE(to_json(rep, false).contains("branch_ledger"));
}

AnswerTable honest_table(const Graph& g, const std::vector<int>& coloring, std::uint64_t seed) {
  Rng rng(seed);
  return Labeling::random(coloring, rng).table(g);
}

TEST(ThreeColClassical, HonestProversYieldProperColoring) {
  const Graph g(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 0}});
  const std::vector<int> coloring{0, 1, 2, 0, 1};
  const PairDistribution d(g, kThird);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TableProver first{honest_table(g, coloring, seed)};
    TableProver second = first;
    const auto out = extract_3col_classical(g, d, first, second);
    EXPECT_TRUE(out.proper);
    EXPECT_EQ(out.queries, static_cast<int>(d.support().size()));
    EXPECT_TRUE(std::none_of(out.question_marked.begin(), out.question_marked.end(), [](bool b) { return b; }));
  }
}

TEST(ThreeColClassical, CorruptedVertexIsQuestionMarked) {
  const Graph g(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 0}});
  const std::vector<int> coloring{0, 1, 2, 0, 1};
  const PairDistribution d(g, kThird);
  Rng rng(4);
  Labeling lab = Labeling::random(coloring, rng);
  const AnswerTable honest = lab.table(g);
  lab.labels[3][0] = static_cast<std::uint8_t>((lab.labels[3][0] + 1) % 3);
  TableProver first{honest};
  TableProver second{lab.table(g)};
  const auto out = extract_3col_classical(g, d, first, second);
  EXPECT_TRUE(out.question_marked[3]);
  EXPECT_FALSE(out.question_marked[0]);
  EXPECT_FALSE(out.question_marked[1]);
  for (int v : {0, 1, 2, 4}) {
    EXPECT_EQ(out.coloring[static_cast<std::size_t>(v)], coloring[static_cast<std::size_t>(v)]) << v;
  }
  EXPECT_TRUE(out.proper);
}

TEST(ThreeColClassical, CompleteGraphNeverProper) {
  const Graph g = Graph::complete(4);
  const PairDistribution d(g, kThird);
  const auto best = best_labeling_table(g, kThird);
  TableProver first{best.best.table(g)};
  TableProver second = first;
  EXPECT_FALSE(extract_3col_classical(g, d, first, second).proper);
}

TEST(ThreeColClassical, MixtureMeetsExtractionBound) {
  const Graph g(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  const std::vector<int> coloring{0, 1, 2, 0};
  const PairDistribution d(g, kThird);
  const double kappa = 1.0 - 1.0 / (3.0 * g.edge_count());
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const AnswerTable perfect = honest_table(g, coloring, static_cast<std::uint64_t>(trial));
    AnswerTable flawed = perfect;
    const auto q = rng.uniform_below(flawed.size());
    flawed[q][rng.uniform_below(2)] = static_cast<std::uint8_t>((flawed[q][0] + 1 + rng.uniform_below(2)) % 3);
    const double flawed_acc = boost::rational_cast<double>(acceptance_2p(g, d, flawed, flawed));
    const double w = 0.9 + 0.1 * rng.uniform01();
    const double p = w + (1.0 - w) * flawed_acc;
    if (p <= kappa) continue;
    TableProver a{perfect}, b{perfect}, c{flawed}, e{flawed};
    const bool perfect_ok = extract_3col_classical(g, d, a, b).proper;
    const bool flawed_ok = extract_3col_classical(g, d, c, e).proper;
    EXPECT_TRUE(perfect_ok);
    const double success = w * perfect_ok + (1.0 - w) * flawed_ok;
    EXPECT_GE(success + kBoundTolerance, classical_3col_extraction_lower(g.edge_count(), p));
  }
}

TEST(ThreeColQuantum, EmbeddedLabelingsRecoverColoring) {
  const Graph g = Graph::complete(3);
  const std::vector<int> coloring{0, 1, 2};
  Rng rng(6);
  const std::vector<Labeling> labs{Labeling::random(coloring, rng, true), Labeling::random(coloring, rng, true)};
  const auto s = embed_labelings(g, labs, {0.3, 0.7});
  const auto out = extract_3col_quantum(g, kThird, s, rng);
  EXPECT_NEAR(out.acceptance_3p, 1.0, 1e-12);
  EXPECT_NEAR(out.classical_value, 1.0, 1e-12);
  EXPECT_TRUE(out.within_bound);
  EXPECT_EQ(out.first, out.second);
  EXPECT_TRUE(out.coloring.proper);
}

TEST(ThreeColQuantum, RotatedStrategiesStayWithinDistanceBound) {
  const Graph g = Graph::complete(3);
  const std::vector<int> coloring{0, 1, 2};
  Rng rng(12);
  for (int trial = 0; trial < 6; ++trial) {
    const std::vector<Labeling> labs{Labeling::random(coloring, rng, true), Labeling::random(coloring, rng, true)};
    const auto base = embed_labelings(g, labs, {0.5, 0.5});
    const auto s = rotate_families(base, 0.05 * trial, rng);
    const auto out = extract_3col_quantum(g, kThird, s, rng);
    EXPECT_TRUE(out.within_bound) << trial;
    EXPECT_LE(out.acceptance_3p, 1.0 + 1e-12);
  }
}

TEST(ThreeColQuantum, ValidateRejectsWrongFamilyCount) {
  const Graph g = Graph::complete(3);
  Rng rng(1);
  auto s = embed_labelings(g, {Labeling::random({0, 1, 2}, rng)}, {1.0});
  s.families.pop_back();
  EXPECT_THROW(s.validate(g), ConfigError);
}

}  // namespace
}  // namespace rzk
