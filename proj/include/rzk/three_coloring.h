// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rzk/graph.h"
#include "rzk/random.h"
#include "rzk/rational.h"

namespace rzk {

/// (edge, b). Questions are indexed 2 * edge + b.
struct Question {
  int edge = 0;
  int b = 0;

  int index() const { return 2 * edge + b; }
  static Question from_index(int index) { return {index / 2, index % 2}; }
  friend bool operator==(const Question&, const Question&) = default;
};

/// Labels in F_3 at the lower and higher endpoint of the asked edge.
using Answer = std::array<std::uint8_t, 2>;

inline int answer_index(const Answer& a) { return 3 * a[0] + a[1]; }
inline Answer answer_from_index(int index) {
  return {static_cast<std::uint8_t>(index / 3), static_cast<std::uint8_t>(index % 3)};
}

struct QuestionPair {
  Question first;
  Question second;
};

using QuestionTriple = std::array<Question, 3>;

/// A deterministic answer function, one answer per question (2|H| entries).
using AnswerTable = std::vector<Answer>;

/// Per-vertex label pair (l^0, l^1) with l^0 + l^1 = color mod 3.
struct Labeling {
  std::vector<int> colors;
  std::vector<std::array<std::uint8_t, 2>> labels;

  /// Uniform l^0 per vertex. With permute_colors the colors are first
  /// relabeled by a uniformly random permutation of F_3.
  static Labeling random(const std::vector<int>& coloring, Rng& rng, bool permute_colors = false);
  /// Arbitrary label pairs; colors are their sums.
  static Labeling from_labels(std::vector<std::array<std::uint8_t, 2>> labels);

  Answer answer(const Graph& g, const Question& q) const;
  AnswerTable table(const Graph& g) const;
};

/// The 2-prover check phase: edge verification on the same edge with
/// b != b', well-definition on shared vertices with b = b', otherwise vacuous.
bool threecol_2p_verify(const Graph& g, const Question& q1, const Question& q2, const Answer& a1,
                        const Answer& a2);

/// Consistency of the third prover against each of the first two on an
/// identical question, plus the 2-prover tests on the first two.
bool threecol_3p_verify(const Graph& g, const QuestionTriple& q, const std::array<Answer, 3>& a);

/// With probability epsilon an edge-verification pair ((e,b),(e,b̄));
/// otherwise ((e,b),(e',b)) with e' uniform over the edges incident to a
/// uniformly chosen endpoint of e (e' = e possible). Throws DomainError
/// for an edgeless graph or epsilon outside [0,1].
QuestionPair dg_sample(const Graph& g, const Rational& epsilon, Rng& rng);

/// A pair from dg_sample, a third question copying one of the two by a
/// fair coin, then a uniformly random ordering of the three slots.
QuestionTriple dg_sample_triple(const Graph& g, const Rational& epsilon, Rng& rng);

/// Exact masses of dg_sample over ordered question pairs.
class PairDistribution {
 public:
  PairDistribution(const Graph& g, const Rational& epsilon);

  int question_count() const { return n_; }
  const Rational& operator()(int q1, int q2) const { return mass_[static_cast<std::size_t>(q1 * n_ + q2)]; }
  /// Marginal of the first slot.
  Rational first_marginal(int q) const;
  Rational total() const;

  /// Pairs with nonzero mass, as (q1, q2, integer weight); weights share
  /// the common denominator().
  struct Entry {
    int q1;
    int q2;
    std::int64_t weight;
  };
  const std::vector<Entry>& support() const { return support_; }
  std::int64_t denominator() const { return denominator_; }

 private:
  int n_;
  std::vector<Rational> mass_;
  std::vector<Entry> support_;
  std::int64_t denominator_ = 1;
};

/// Exact masses of dg_sample_triple over ordered question triples.
class TripleDistribution {
 public:
  TripleDistribution(const Graph& g, const Rational& epsilon);

  int question_count() const { return n_; }
  const Rational& operator()(int q1, int q2, int q3) const {
    return mass_[static_cast<std::size_t>((q1 * n_ + q2) * n_ + q3)];
  }
  Rational total() const;

  struct Entry {
    int q1;
    int q2;
    int q3;
    std::int64_t weight;
  };
  const std::vector<Entry>& support() const { return support_; }
  std::int64_t denominator() const { return denominator_; }

 private:
  int n_;
  std::vector<Rational> mass_;
  std::vector<Entry> support_;
  std::int64_t denominator_ = 1;
};

/// The printed mass for a well-definition pair ((e,b),(e',b)).
Rational dg_eval_wdt(const Graph& g, const Rational& epsilon, int e, int b, int e_prime);
/// The printed mass for an edge-verification pair ((e,b),(e,b̄)).
Rational dg_eval_evt(const Graph& g, const Rational& epsilon, int e, int b);

/// Exact acceptance of deterministic answer tables.
Rational acceptance_2p(const Graph& g, const PairDistribution& d, const AnswerTable& first,
                       const AnswerTable& second);
Rational acceptance_3p(const Graph& g, const TripleDistribution& d, const AnswerTable& first,
                       const AnswerTable& second, const AnswerTable& third);

/// Best shared labeling table by exhaustive search over all 9^|V| label
/// pairs; throws CapacityError above 6 vertices.
struct LabelingSearchResult {
  Labeling best;
  Rational acceptance;
  std::int64_t tables_searched = 0;
};
LabelingSearchResult best_labeling_table(const Graph& g, const Rational& epsilon);

/// Parses "p/q" or a decimal literal into an exact rational.
/// Throws ConfigError on malformed input.
Rational parse_rational(const std::string& text);

/// Coloring from a JSON array, or an object with a "coloring" array.
std::vector<int> parse_coloring(const nlohmann::json& j);

nlohmann::json to_json_question(const Graph& g, const Question& q);

}  // namespace rzk
