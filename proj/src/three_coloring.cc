// SPDX-License-Identifier: Apache-2.0
#include "rzk/three_coloring.h"

#include <algorithm>
#include <numeric>

#include "rzk/errors.h"

namespace rzk {

namespace {

std::uint8_t mod3(int x) { return static_cast<std::uint8_t>(((x % 3) + 3) % 3); }

int label_at(const Graph& g, const Question& q, const Answer& a, int vertex) {
  const Edge& e = g.edge(q.edge);
  if (e.u == vertex) return a[0];
  if (e.v == vertex) return a[1];
  return -1;
}

void check_epsilon(const Rational& epsilon) {
  if (epsilon < Rational(0) || epsilon > Rational(1)) throw DomainError("epsilon must lie in [0,1]");
}

bool draw(const Rational& p, Rng& rng) {
  return rng.uniform_below(static_cast<std::uint64_t>(p.denominator())) <
         static_cast<std::uint64_t>(p.numerator());
}

template <class Entry>
std::int64_t scale_support(const std::vector<Rational>& mass, std::vector<Entry>& support,
                           const std::function<Entry(std::size_t, std::int64_t)>& make) {
  std::int64_t lcm = 1;
  for (const auto& m : mass) {
    if (m != Rational(0)) lcm = std::lcm(lcm, m.denominator());
  }
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] == Rational(0)) continue;
    support.push_back(make(i, mass[i].numerator() * (lcm / mass[i].denominator())));
  }
  return lcm;
}

}  // namespace

Labeling Labeling::random(const std::vector<int>& coloring, Rng& rng, bool permute_colors) {
  std::array<int, 3> relabel{0, 1, 2};
  if (permute_colors) rng.shuffle(relabel.begin(), relabel.end());
  Labeling l;
  for (int c : coloring) {
    if (c < 0 || c > 2) throw ConfigError("colors must lie in {0,1,2}");
    const int color = relabel[static_cast<std::size_t>(c)];
    const auto first = static_cast<std::uint8_t>(rng.uniform_below(3));
    l.colors.push_back(color);
    l.labels.push_back({first, mod3(color - first)});
  }
  return l;
}

Labeling Labeling::from_labels(std::vector<std::array<std::uint8_t, 2>> labels) {
  Labeling l;
  for (const auto& p : labels) l.colors.push_back(mod3(p[0] + p[1]));
  l.labels = std::move(labels);
  return l;
}

Answer Labeling::answer(const Graph& g, const Question& q) const {
  const Edge& e = g.edge(q.edge);
  const auto b = static_cast<std::size_t>(q.b);
  return {labels[static_cast<std::size_t>(e.u)][b], labels[static_cast<std::size_t>(e.v)][b]};
}

AnswerTable Labeling::table(const Graph& g) const {
  AnswerTable t;
  for (int i = 0; i < 2 * g.edge_count(); ++i) t.push_back(answer(g, Question::from_index(i)));
  return t;
}

bool threecol_2p_verify(const Graph& g, const Question& q1, const Question& q2, const Answer& a1,
                        const Answer& a2) {
  if (q1.edge == q2.edge) {
    if (q1.b != q2.b) return mod3(a1[0] + a2[0]) != mod3(a1[1] + a2[1]);
    return a1 == a2;
  }
  if (q1.b != q2.b) return true;
  const Edge& e = g.edge(q1.edge);
  for (int x : {e.u, e.v}) {
    const int other = label_at(g, q2, a2, x);
    if (other >= 0 && other != label_at(g, q1, a1, x)) return false;
  }
  return true;
}

bool threecol_3p_verify(const Graph& g, const QuestionTriple& q, const std::array<Answer, 3>& a) {
  if (q[0] == q[2] && a[0] != a[2]) return false;
  if (q[1] == q[2] && a[1] != a[2]) return false;
  return threecol_2p_verify(g, q[0], q[1], a[0], a[1]);
}

QuestionPair dg_sample(const Graph& g, const Rational& epsilon, Rng& rng) {
  check_epsilon(epsilon);
  if (g.edge_count() == 0) throw DomainError("question distribution needs at least one edge");
  const bool edge_test = draw(epsilon, rng);
  const int e = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(g.edge_count())));
  const int b = rng.coin() ? 1 : 0;
  if (edge_test) return {{e, b}, {e, 1 - b}};
  const Edge& edge = g.edge(e);
  const int endpoint = rng.coin() ? edge.v : edge.u;
  const auto& around = g.incident(endpoint);
  const int e2 = around[rng.uniform_below(around.size())];
  return {{e, b}, {e2, b}};
}

QuestionTriple dg_sample_triple(const Graph& g, const Rational& epsilon, Rng& rng) {
  const QuestionPair p = dg_sample(g, epsilon, rng);
  QuestionTriple t{p.first, p.second, rng.coin() ? p.second : p.first};
  rng.shuffle(t.begin(), t.end());
  return t;
}

PairDistribution::PairDistribution(const Graph& g, const Rational& epsilon)
    : n_(2 * g.edge_count()), mass_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)) {
  check_epsilon(epsilon);
  if (g.edge_count() == 0) throw DomainError("question distribution needs at least one edge");
  const std::int64_t h = g.edge_count();
  auto at = [&](const Question& a, const Question& b) -> Rational& {
    return mass_[static_cast<std::size_t>(a.index() * n_ + b.index())];
  };
  for (int e = 0; e < g.edge_count(); ++e) {
    for (int b = 0; b < 2; ++b) {
      at({e, b}, {e, 1 - b}) += epsilon / Rational(2 * h);
      for (int endpoint : {g.edge(e).u, g.edge(e).v}) {
        const auto& around = g.incident(endpoint);
        const Rational share = (1 - epsilon) / Rational(4 * h * static_cast<std::int64_t>(around.size()));
        for (int e2 : around) at({e, b}, {e2, b}) += share;
      }
    }
  }
  denominator_ = scale_support<Entry>(mass_, support_, [this](std::size_t i, std::int64_t w) {
    return Entry{static_cast<int>(i) / n_, static_cast<int>(i) % n_, w};
  });
}

Rational PairDistribution::first_marginal(int q) const {
  Rational s = 0;
  for (int q2 = 0; q2 < n_; ++q2) s += (*this)(q, q2);
  return s;
}

Rational PairDistribution::total() const {
  return std::accumulate(mass_.begin(), mass_.end(), Rational(0));
}

TripleDistribution::TripleDistribution(const Graph& g, const Rational& epsilon)
    : n_(2 * g.edge_count()),
      mass_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)) {
  const PairDistribution pairs(g, epsilon);
  static constexpr std::array<std::array<int, 3>, 6> kOrders{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& entry : pairs.support()) {
    const Rational share = pairs(entry.q1, entry.q2) / Rational(12);
    for (int copy : {entry.q1, entry.q2}) {
      const std::array<int, 3> slots{entry.q1, entry.q2, copy};
      for (const auto& order : kOrders) {
        const int a = slots[static_cast<std::size_t>(order[0])];
        const int b = slots[static_cast<std::size_t>(order[1])];
        const int c = slots[static_cast<std::size_t>(order[2])];
        mass_[static_cast<std::size_t>((a * n_ + b) * n_ + c)] += share;
      }
    }
  }
  denominator_ = scale_support<Entry>(mass_, support_, [this](std::size_t i, std::int64_t w) {
    const int k = static_cast<int>(i);
    return Entry{k / (n_ * n_), (k / n_) % n_, k % n_, w};
  });
}

Rational TripleDistribution::total() const {
  return std::accumulate(mass_.begin(), mass_.end(), Rational(0));
}

Rational dg_eval_wdt(const Graph& g, const Rational& epsilon, int e, int /*b*/, int e_prime) {
  const std::int64_t h = g.edge_count();
  const Edge& edge = g.edge(e);
  Rational inner = 0;
  for (int endpoint : {edge.u, edge.v}) {
    const auto& around = g.incident(endpoint);
    if (std::find(around.begin(), around.end(), e_prime) != around.end()) {
      inner += Rational(1, static_cast<std::int64_t>(around.size()));
    }
  }
  return (1 - epsilon) / Rational(4 * h) * inner;
}

Rational dg_eval_evt(const Graph& g, const Rational& epsilon, int e, int /*b*/) {
  const std::int64_t h = g.edge_count();
  const Edge& edge = g.edge(e);
  const Rational inner = Rational(1, static_cast<std::int64_t>(g.incident(edge.u).size())) +
                         Rational(1, static_cast<std::int64_t>(g.incident(edge.v).size()));
  return epsilon / Rational(2 * h) + (1 - epsilon) / Rational(4 * h) * inner;
}

Rational acceptance_2p(const Graph& g, const PairDistribution& d, const AnswerTable& first,
                       const AnswerTable& second) {
  std::int64_t accepted = 0;
  for (const auto& e : d.support()) {
    const auto i = static_cast<std::size_t>(e.q1);
    const auto j = static_cast<std::size_t>(e.q2);
    if (threecol_2p_verify(g, Question::from_index(e.q1), Question::from_index(e.q2), first[i], second[j])) {
      accepted += e.weight;
    }
  }
  return {accepted, d.denominator()};
}

Rational acceptance_3p(const Graph& g, const TripleDistribution& d, const AnswerTable& first,
                       const AnswerTable& second, const AnswerTable& third) {
  std::int64_t accepted = 0;
  for (const auto& e : d.support()) {
    const QuestionTriple q{Question::from_index(e.q1), Question::from_index(e.q2), Question::from_index(e.q3)};
    const std::array<Answer, 3> a{first[static_cast<std::size_t>(e.q1)], second[static_cast<std::size_t>(e.q2)],
                                  third[static_cast<std::size_t>(e.q3)]};
    if (threecol_3p_verify(g, q, a)) accepted += e.weight;
  }
  return {accepted, d.denominator()};
}

LabelingSearchResult best_labeling_table(const Graph& g, const Rational& epsilon) {
  const int n = g.vertex_count();
  if (n > 6) throw CapacityError("exhaustive labeling search is limited to 6 vertices");
  const PairDistribution d(g, epsilon);
  std::int64_t count = 1;
  for (int i = 0; i < n; ++i) count *= 9;
  LabelingSearchResult result{{}, Rational(-1), count};
  std::vector<std::array<std::uint8_t, 2>> labels(static_cast<std::size_t>(n));
  for (std::int64_t code = 0; code < count; ++code) {
    std::int64_t rest = code;
    for (auto& p : labels) {
      p = {static_cast<std::uint8_t>(rest % 3), static_cast<std::uint8_t>((rest / 3) % 3)};
      rest /= 9;
    }
    Labeling l = Labeling::from_labels(labels);
    const AnswerTable t = l.table(g);
    const Rational p = acceptance_2p(g, d, t, t);
    if (p > result.acceptance) {
      result.acceptance = p;
      result.best = std::move(l);
    }
  }
  return result;
}

Rational parse_rational(const std::string& text) {
  const auto bad = [&] { return ConfigError("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  auto digits = [&](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      const std::string num = text.substr(0, slash);
      const std::string den = text.substr(slash + 1);
      if (!digits(num) || !digits(den) || std::stoll(den) == 0) throw bad();
      return {std::stoll(num), std::stoll(den)};
    }
    const auto dot = text.find('.');
    const std::string whole = text.substr(0, dot);
    const std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (!(digits(whole) || (whole.empty() && digits(frac)))) throw bad();
    if (dot != std::string::npos && !digits(frac)) throw bad();
    if (frac.size() > 15) throw bad();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t w = whole.empty() ? 0 : std::stoll(whole);
    const std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
    return Rational(w) + Rational(f, scale);
  } catch (const std::out_of_range&) {
    throw bad();
  }
}

std::vector<int> parse_coloring(const nlohmann::json& j) {
  try {
    const nlohmann::json& arr = j.is_object() ? j.at("coloring") : j;
    std::vector<int> colors = arr.get<std::vector<int>>();
    for (int c : colors) {
      if (c < 0 || c > 2) throw ConfigError("colors must lie in {0,1,2}");
    }
    return colors;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("coloring: ") + e.what());
  }
}

nlohmann::json to_json_question(const Graph& g, const Question& q) {
  const Edge& e = g.edge(q.edge);
  return {{"edge", {e.u, e.v}}, {"b", q.b}};
}

}  // namespace rzk
