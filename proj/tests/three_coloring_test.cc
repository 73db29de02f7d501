// SPDX-License-Identifier: Apache-2.0
#include "rzk/three_coloring.h"

#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "rzk/errors.h"

namespace rzk {
namespace {

const Rational kThird(1, 3);

Graph triangle() { return Graph::complete(3); }

TEST(Verify2p, EdgeVerification) {
  const Graph g = triangle();
  const Question q0{0, 0}, q1{0, 1};
  EXPECT_TRUE(threecol_2p_verify(g, q0, q1, {0, 1}, {0, 0}));
  EXPECT_FALSE(threecol_2p_verify(g, q0, q1, {1, 0}, {0, 1}));
}

TEST(Verify2p, WellDefinitionOnSharedVertex) {
  const Graph g = triangle();  // edges (0,1), (0,2), (1,2)
  const Question q{0, 1}, q2{1, 1};
  EXPECT_TRUE(threecol_2p_verify(g, q, q2, {2, 0}, {2, 1}));
  EXPECT_FALSE(threecol_2p_verify(g, q, q2, {2, 0}, {1, 1}));
  EXPECT_FALSE(threecol_2p_verify(g, q, q, {2, 0}, {2, 1}));
}

TEST(Verify2p, VacuousOnUnrelatedQuestions) {
  const Graph g(4, {{0, 1}, {2, 3}});
  EXPECT_TRUE(threecol_2p_verify(g, {0, 0}, {1, 0}, {0, 0}, {1, 1}));
  EXPECT_TRUE(threecol_2p_verify(g, {0, 0}, {1, 1}, {0, 0}, {1, 1}));
}

TEST(Verify2p, HonestStrategyPassesEveryPair) {
  const Graph g(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
  Rng rng(3);
  const Labeling l = Labeling::random({0, 1, 2, 0, 1}, rng);
  for (int a = 0; a < 2 * g.edge_count(); ++a) {
    for (int b = 0; b < 2 * g.edge_count(); ++b) {
      const Question qa = Question::from_index(a), qb = Question::from_index(b);
      EXPECT_TRUE(threecol_2p_verify(g, qa, qb, l.answer(g, qa), l.answer(g, qb)));
    }
  }
}

TEST(Verify3p, ConsistencyAndVacuity) {
  const Graph g(6, {{0, 1}, {2, 3}, {4, 5}});
  Rng rng(4);
  const Labeling l = Labeling::random({0, 1, 0, 1, 0, 1}, rng);
  const QuestionTriple q{Question{0, 0}, Question{1, 1}, Question{0, 0}};
  const std::array<Answer, 3> honest{l.answer(g, q[0]), l.answer(g, q[1]), l.answer(g, q[2])};
  EXPECT_TRUE(threecol_3p_verify(g, q, honest));
  auto bad = honest;
  bad[2][0] = static_cast<std::uint8_t>((bad[2][0] + 1) % 3);
  EXPECT_FALSE(threecol_3p_verify(g, q, bad));
  const QuestionTriple disjoint{Question{0, 0}, Question{1, 1}, Question{2, 0}};
  EXPECT_TRUE(threecol_3p_verify(g, disjoint, {Answer{0, 0}, Answer{1, 2}, Answer{2, 2}}));
}

TEST(Verify3p, HonestStrategyPassesEveryTriple) {
  const Graph g = triangle();
  Rng rng(5);
  const Labeling l = Labeling::random({0, 1, 2}, rng, true);
  const TripleDistribution d(g, kThird);
  for (const auto& e : d.support()) {
    const QuestionTriple q{Question::from_index(e.q1), Question::from_index(e.q2), Question::from_index(e.q3)};
    EXPECT_TRUE(threecol_3p_verify(g, q, {l.answer(g, q[0]), l.answer(g, q[1]), l.answer(g, q[2])}));
  }
}

TEST(Labeling, SumsAreColors) {
  Rng rng(1);
  const Labeling l = Labeling::random({0, 1, 2, 1}, rng, true);
  for (std::size_t v = 0; v < 4; ++v) EXPECT_EQ((l.labels[v][0] + l.labels[v][1]) % 3, l.colors[v]);
  EXPECT_THROW(Labeling::random({3}, rng), ConfigError);
}

TEST(PrintedFormulas, TriangleExamples) {
  const Graph g = triangle();  // edge 0 = (0,1), edge 1 = (0,2)
  EXPECT_EQ(dg_eval_wdt(g, kThird, 0, 0, 1), Rational(1, 36));
  EXPECT_EQ(dg_eval_evt(g, kThird, 0, 0), Rational(1, 9));
  EXPECT_EQ(dg_eval_wdt(g, Rational(1), 0, 0, 1), Rational(0));
}

TEST(PairDistribution, TotalsAreOne) {
  for (const Graph& g : {triangle(), Graph::complete(4), Graph::cycle(5), Graph::star(6), Graph::path(4)}) {
    for (const Rational& eps : {Rational(0), kThird, Rational(1, 2), Rational(1)}) {
      EXPECT_EQ(PairDistribution(g, eps).total(), Rational(1));
      EXPECT_EQ(TripleDistribution(g, eps).total(), Rational(1));
    }
  }
}

TEST(PairDistribution, EdgeVerificationBranchMass) {
  const PairDistribution d(triangle(), kThird);
  EXPECT_EQ(d(Question{0, 0}.index(), Question{0, 1}.index()), Rational(1, 18));
}

TEST(PairDistribution, MatchesPrintedWdtOffDiagonal) {
  for (const Graph& g : {triangle(), Graph::complete(4)}) {
    const PairDistribution d(g, kThird);
    for (int e = 0; e < g.edge_count(); ++e) {
      for (int e2 = 0; e2 < g.edge_count(); ++e2) {
        if (e2 == e) continue;
        for (int b = 0; b < 2; ++b) {
          EXPECT_EQ(d(Question{e, b}.index(), Question{e2, b}.index()), dg_eval_wdt(g, kThird, e, b, e2));
        }
      }
    }
  }
}

TEST(PairDistribution, EvtMassDiffersFromPrintedFormula) {
  const PairDistribution d(triangle(), kThird);
  EXPECT_EQ(d(0, 1), Rational(1, 18));
  EXPECT_NE(d(0, 1), dg_eval_evt(triangle(), kThird, 0, 0));
}

TEST(Sampler, PureEdgeVerification) {
  const Graph g = Graph::complete(4);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto p = dg_sample(g, Rational(1), rng);
    EXPECT_EQ(p.first.edge, p.second.edge);
    EXPECT_NE(p.first.b, p.second.b);
  }
}

TEST(Sampler, PureWellDefinitionSharesVertex) {
  const Graph g = triangle();
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const auto p = dg_sample(g, Rational(0), rng);
    const Edge& a = g.edge(p.first.edge);
    const Edge& b = g.edge(p.second.edge);
    EXPECT_TRUE(b.touches(a.u) || b.touches(a.v));
    EXPECT_EQ(p.first.b, p.second.b);
  }
}

TEST(Sampler, RejectsBadArguments) {
  Rng rng(1);
  EXPECT_THROW(dg_sample(Graph::complete(3), Rational(3, 2), rng), DomainError);
  EXPECT_THROW(dg_sample(Graph(3, {}), kThird, rng), DomainError);
}

/// Every observed count within 5 sigma of the exact mass.
template <class Key>
void expect_frequencies(const std::map<Key, int>& counts, int draws, const std::function<double(const Key&)>& mass) {
  for (const auto& [key, count] : counts) {
    const double p = mass(key);
    ASSERT_GT(p, 0.0);
    const double sigma = std::sqrt(p * (1 - p) / draws);
    EXPECT_NEAR(static_cast<double>(count) / draws, p, 5 * sigma);
  }
}

TEST(Sampler, PairFrequenciesMatchExactMasses) {
  for (const Graph& g : {triangle(), Graph::complete(4)}) {
    const PairDistribution d(g, kThird);
    Rng rng(7);
    const int draws = 1000000;
    std::map<std::pair<int, int>, int> counts;
    for (int i = 0; i < draws; ++i) {
      const auto p = dg_sample(g, kThird, rng);
      ++counts[{p.first.index(), p.second.index()}];
    }
    EXPECT_EQ(counts.size(), d.support().size());
    expect_frequencies<std::pair<int, int>>(counts, draws,
                                            [&](const auto& k) { return to_double(d(k.first, k.second)); });
  }
}

TEST(TripleSampler, SlotMarginalsMatchPairMarginal) {
  const Graph g = triangle();
  const PairDistribution d(g, kThird);
  Rng rng(8);
  const int draws = 1000000;
  std::array<std::map<int, int>, 3> counts;
  std::map<std::array<int, 3>, int> triples;
  for (int i = 0; i < draws; ++i) {
    const auto t = dg_sample_triple(g, kThird, rng);
    for (std::size_t s = 0; s < 3; ++s) ++counts[s][t[s].index()];
    ++triples[{t[0].index(), t[1].index(), t[2].index()}];
  }
  for (const auto& c : counts) {
    expect_frequencies<int>(c, draws, [&](const int& q) { return to_double(d.first_marginal(q)); });
  }
  const TripleDistribution td(g, kThird);
  expect_frequencies<std::array<int, 3>>(triples, draws,
                                         [&](const auto& k) { return to_double(td(k[0], k[1], k[2])); });
}

TEST(TripleSampler, SymmetricUnderSlotPermutation) {
  const Graph g = Graph::complete(4);
  const TripleDistribution td(g, kThird);
  const int n = td.question_count();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        const Rational& m = td(a, b, c);
        EXPECT_EQ(m, td(b, a, c));
        EXPECT_EQ(m, td(a, c, b));
        EXPECT_EQ(m, td(c, b, a));
      }
    }
  }
}

TEST(TripleSampler, SymmetryChiSquare) {
  // Pool the 6 orderings of each unordered triple; under symmetry every
  // ordering of a triple with distinct entries is equally likely.
  const Graph g = triangle();
  Rng rng(9);
  const int draws = 1000000;
  std::map<std::array<int, 3>, int> counts;
  for (int i = 0; i < draws; ++i) {
    const auto t = dg_sample_triple(g, kThird, rng);
    ++counts[{t[0].index(), t[1].index(), t[2].index()}];
  }
  std::map<std::array<int, 3>, std::vector<int>> classes;
  for (const auto& [k, c] : counts) {
    auto key = k;
    std::sort(key.begin(), key.end());
    classes[key].push_back(c);
  }
  double chi2 = 0.0;
  int dof = 0;
  for (const auto& [key, cs] : classes) {
    if (cs.size() < 2) continue;
    const double mean = std::accumulate(cs.begin(), cs.end(), 0.0) / static_cast<double>(cs.size());
    for (int c : cs) chi2 += (c - mean) * (c - mean) / mean;
    dof += static_cast<int>(cs.size()) - 1;
  }
  ASSERT_GT(dof, 0);
  // Mean dof, standard deviation sqrt(2 dof); 5 sigma.
  EXPECT_LT(chi2, dof + 5 * std::sqrt(2.0 * dof));
}

TEST(TripleSampler, PureEdgeVerificationDuplicatesASlot) {
  Rng rng(10);
  for (int i = 0; i < 1000; ++i) {
    const auto t = dg_sample_triple(triangle(), Rational(1), rng);
    const int dup = (t[0] == t[1]) + (t[0] == t[2]) + (t[1] == t[2]);
    EXPECT_EQ(dup, 1);
  }
}

TEST(Acceptance, HonestTablesAcceptWithCertainty) {
  const Graph g = Graph::cycle(6);
  Rng rng(11);
  const Labeling l = Labeling::random({0, 1, 0, 1, 0, 2}, rng);
  const auto t = l.table(g);
  EXPECT_EQ(acceptance_2p(g, PairDistribution(g, kThird), t, t), Rational(1));
  EXPECT_EQ(acceptance_3p(g, TripleDistribution(g, kThird), t, t, t), Rational(1));
}

TEST(SoundnessCeiling, CompleteGraphOnFourVertices) {
  const Graph g = Graph::complete(4);
  const auto r = best_labeling_table(g, kThird);
  EXPECT_EQ(r.acceptance, Rational(17, 18));
  EXPECT_EQ(r.acceptance, Rational(1) - Rational(1, 3 * g.edge_count()));
  EXPECT_EQ(r.tables_searched, 6561);
  const auto t = r.best.table(g);
  EXPECT_EQ(acceptance_2p(g, PairDistribution(g, kThird), t, t), Rational(17, 18));
}

TEST(SoundnessCeiling, RefusesLargeGraphs) {
  EXPECT_THROW(best_labeling_table(Graph::complete(7), kThird), CapacityError);
}

/// Shared answer functions that are not labelings can exceed the labeling
/// ceiling on K4: a local search reaches 26/27.
TEST(SoundnessCeiling, ArbitraryAnswerFunctionsExceedLabelings) {
  const Graph g = Graph::complete(4);
  const PairDistribution d(g, kThird);
  Rng rng(5);
  Rational best(0);
  for (int rep = 0; rep < 40 && best < Rational(26, 27); ++rep) {
    AnswerTable t(12);
    for (auto& a : t) a = answer_from_index(static_cast<int>(rng.uniform_below(9)));
    Rational cur = acceptance_2p(g, d, t, t);
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t q = 0; q < t.size(); ++q) {
        for (int x = 0; x < 9; ++x) {
          const Answer old = t[q];
          t[q] = answer_from_index(x);
          const Rational p = acceptance_2p(g, d, t, t);
          if (p > cur) {
            cur = p;
            improved = true;
          } else {
            t[q] = old;
          }
        }
      }
    }
    best = std::max(best, cur);
  }
  EXPECT_EQ(best, Rational(26, 27));
  EXPECT_GT(best, Rational(17, 18));
}

TEST(Parsing, RationalsAndColorings) {
  EXPECT_EQ(parse_rational("1/3"), kThird);
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("1"), Rational(1));
  EXPECT_THROW(parse_rational("x"), ConfigError);
  EXPECT_THROW(parse_rational("1/0"), ConfigError);
  EXPECT_EQ(parse_coloring(nlohmann::json::array({0, 1, 2})), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(parse_coloring({{"coloring", {2, 1}}}), (std::vector<int>{2, 1}));
}

}  // namespace
}  // namespace rzk
