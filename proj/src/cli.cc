// SPDX-License-Identifier: Apache-2.0
#include "rzk/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "rzk/bounds.h"
#include "rzk/commitments.h"
#include "rzk/errors.h"
#include "rzk/extractors.h"
#include "rzk/hamiltonian.h"
#include "rzk/sigma.h"
#include "rzk/subset_sum.h"
#include "rzk/three_coloring.h"
#include "rzk/verifiers.h"

namespace rzk::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string protocol = "hc";
  std::string prover = "honest";
  std::string graph;
  std::string witness;
  std::string instance;
  std::uint64_t qmin = 101;
  std::uint64_t qmax = 101;
  std::string epsilon = "1/3";
  int trials = 1000;
  std::uint64_t seed = 1;
  double dist = 1.0;
  double light_speed = 1.0;
  double latency = 0.0;
  std::string out;
  std::string format = "csv";
  std::string transcripts;
  std::string theorem = "all";
  std::optional<int> instances;
  bool corrupt_flag = false;
  int corrupt = 0;
  std::string problem = "hc";
  int n = 5;
  int eta_max = 10;
  bool sweep = false;
};

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_cell(const json& v) {
  std::string s;
  switch (v.type()) {
    case json::value_t::null:
      return "";
    case json::value_t::string:
      s = v.get<std::string>();
      break;
    case json::value_t::number_float:
      return format_double(v.get<double>());
    case json::value_t::boolean:
      return v.get<bool>() ? "true" : "false";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
      return v.dump();
    default:
      s = v.dump();
      break;
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Graph require_graph(const Options& o) {
  if (o.graph.empty()) throw ConfigError("--graph is required for protocol " + o.protocol);
  return Graph::load_edge_list(o.graph);
}

template <class T>
std::vector<T> json_list(const json& j, const char* key) {
  try {
    if (j.is_array()) return j.get<std::vector<T>>();
    if (j.is_object() && j.contains(key)) return j.at(key).get<std::vector<T>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("witness: ") + e.what());
  }
  throw ConfigError(std::string("witness must be an array or an object with \"") + key + "\"");
}

std::vector<int> require_cycle(const Options& o) {
  if (o.witness.empty()) throw ConfigError("--witness is required for honest provers");
  return json_list<int>(read_json_file(o.witness), "cycle");
}

Bits require_subset_witness(const Options& o) {
  if (o.witness.empty()) throw ConfigError("--witness is required for honest provers");
  const auto bits = json_list<int>(read_json_file(o.witness), "v");
  Bits v;
  for (int b : bits) {
    if (b != 0 && b != 1) throw ConfigError("witness entries must be 0 or 1");
    v.push_back(static_cast<std::uint8_t>(b));
  }
  return v;
}

std::vector<int> require_coloring(const Options& o) {
  if (o.witness.empty()) throw ConfigError("--witness is required for honest provers");
  return parse_coloring(read_json_file(o.witness));
}

SubsetSumInstance require_instance(const Options& o) {
  if (o.instance.empty()) throw ConfigError("--instance is required for protocol subset");
  return SubsetSumInstance::load(o.instance);
}

TimingModel timing_of(const Options& o) {
  return TimingModel(SimTime(o.dist), SimTime(o.light_speed), MessageLatency::uniform(SimTime(o.latency)));
}

bool timing_aborts(const TimingModel& timing) {
  const MessageLatency& lat = timing.latency();
  return timing_check(0, lat.rand + lat.com, lat.ch + lat.resp, timing) == TimingResult::abort;
}

double sigma_of(double p, int n) { return std::sqrt(std::max(0.0, p * (1.0 - p)) / n); }

void check_trials(const Options& o) {
  if (o.trials < 1) throw ConfigError("--trials must be at least 1");
}

struct Tally {
  int accepted = 0;
  int rejected = 0;
  int aborted = 0;
  void add(Verdict v) {
    if (v == Verdict::accept) ++accepted;
    if (v == Verdict::reject) ++rejected;
    if (v == Verdict::abort) ++aborted;
  }
};

class TranscriptSink {
 public:
  explicit TranscriptSink(const std::string& path) {
    if (path.empty()) return;
    file_.emplace(path);
    if (!*file_) throw ConfigError("cannot write " + path);
  }
  void write(int trial, json j) {
    if (!file_) return;
    j["trial"] = trial;
    *file_ << j.dump() << '\n';
  }

 private:
  std::optional<std::ofstream> file_;
};

template <SigmaProtocol P, class MakeProvers>
Tally simulate_sigma(const P& protocol, const Options& o, const MakeProvers& make, TranscriptSink& sink) {
  const TimingModel timing = timing_of(o);
  const Rng root(o.seed);
  Tally tally;
  for (int i = 0; i < o.trials; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    auto provers = make(rng);
    const auto t = run_sigma(protocol, provers.first, provers.second, timing, rng);
    tally.add(t.verdict);
    sink.write(i, transcript_to_json(t));
  }
  return tally;
}

AnswerTable random_table(const Graph& g, Rng& rng) {
  AnswerTable t(static_cast<std::size_t>(2 * g.edge_count()));
  for (auto& a : t) a = answer_from_index(static_cast<int>(rng.uniform_below(9)));
  return t;
}

/// Answer tables for one trial: a fresh honest labeling, the best labeling
/// table, or uniformly random answers.
AnswerTable coloring_table(const Graph& g, const Options& o, const std::vector<int>& coloring,
                           const std::optional<AnswerTable>& best, bool permute, Rng& rng) {
  if (o.prover == "honest") return Labeling::random(coloring, rng, permute).table(g);
  if (o.prover == "best-labeling") return *best;
  if (o.prover == "random") return random_table(g, rng);
  throw ConfigError("unknown prover " + o.prover + " for protocol " + o.protocol);
}

json answers_json(const std::vector<Answer>& as) {
  json j = json::array();
  for (const auto& a : as) j.push_back({a[0], a[1]});
  return j;
}

Tally simulate_coloring(const Options& o, TranscriptSink& sink) {
  const Graph g = require_graph(o);
  const Rational eps = parse_rational(o.epsilon);
  const bool three = o.protocol == "3col3p";
  const std::vector<int> coloring = o.prover == "honest" ? require_coloring(o) : std::vector<int>{};
  if (!coloring.empty() && !is_proper_coloring(g, coloring)) throw ConfigError("witness is not a proper coloring");
  std::optional<AnswerTable> best;
  if (o.prover == "best-labeling") best = best_labeling_table(g, eps).best.table(g);
  const bool aborts = timing_aborts(timing_of(o));
  const Rng root(o.seed);
  Tally tally;
  for (int i = 0; i < o.trials; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    const AnswerTable table = coloring_table(g, o, coloring, best, three, rng);
    std::vector<Question> qs;
    if (three) {
      const auto t = dg_sample_triple(g, eps, rng);
      qs.assign(t.begin(), t.end());
    } else {
      const auto p = dg_sample(g, eps, rng);
      qs = {p.first, p.second};
    }
    std::vector<Answer> as;
    for (const auto& q : qs) as.push_back(table[static_cast<std::size_t>(q.index())]);
    Verdict v = Verdict::abort;
    if (!aborts) {
      const bool ok = three ? threecol_3p_verify(g, {qs[0], qs[1], qs[2]}, {as[0], as[1], as[2]})
                            : threecol_2p_verify(g, qs[0], qs[1], as[0], as[1]);
      v = ok ? Verdict::accept : Verdict::reject;
    }
    tally.add(v);
    json qj = json::array();
    for (const auto& q : qs) qj.push_back(to_json_question(g, q));
    sink.write(i, {{"questions", qj}, {"answers", answers_json(as)}, {"verdict", to_string(v)}});
  }
  return tally;
}

int cmd_simulate(const Options& o, Table& t) {
  check_trials(o);
  TranscriptSink sink(o.transcripts);
  Tally tally;
  if (o.protocol == "hc") {
    const HamiltonianCycleProtocol protocol(make_field(o.qmin), require_graph(o));
    const int n = protocol.graph().vertex_count();
    if (o.prover == "honest") {
      const std::vector<int> cycle = require_cycle(o);
      tally = simulate_sigma(protocol, o, [&](Rng& rng) { return make_honest_hc_provers(protocol, cycle, rng); },
                             sink);
    } else if (o.prover == "first-only") {
      const std::vector<int> cycle = require_cycle(o);
      tally = simulate_sigma(protocol, o, [&](Rng& rng) {
        auto [c, r] = make_honest_hc_provers(protocol, cycle, rng);
        return std::make_pair(c, HcFirstChallengeOnlyResponder{r.witness, protocol.field()});
      }, sink);
    } else if (o.prover == "random") {
      tally = simulate_sigma(protocol, o, [&](Rng& rng) {
        return std::make_pair(HcRandomCommitter{protocol.field(), n, rng.split(0)},
                              HcRandomResponder{protocol.field(), n, rng.split(1)});
      }, sink);
    } else {
      throw ConfigError("unknown prover " + o.prover + " for protocol hc");
    }
  } else if (o.protocol == "subset") {
    const SubsetSumProtocol protocol(require_instance(o));
    const Bits witness = require_subset_witness(o);
    if (o.prover == "honest") {
      tally = simulate_sigma(protocol, o, [&](Rng& rng) { return make_honest_subset_provers(protocol, witness, rng); },
                             sink);
    } else if (o.prover == "first-only") {
      tally = simulate_sigma(protocol, o, [&](Rng& rng) {
        auto [c, r] = make_honest_subset_provers(protocol, witness, rng);
        return std::make_pair(c, SubsetFirstChallengeOnlyResponder{r.instance, r.secret});
      }, sink);
    } else {
      throw ConfigError("unknown prover " + o.prover + " for protocol subset");
    }
  } else if (o.protocol == "3col2p" || o.protocol == "3col3p") {
    tally = simulate_coloring(o, sink);
  } else {
    throw ConfigError("unknown protocol " + o.protocol);
  }
  const double p = static_cast<double>(tally.accepted) / o.trials;
  t.columns = {"protocol", "prover", "trials", "accepted", "rejected", "aborted", "acceptance", "std_error"};
  t.rows.push_back({o.protocol, o.prover, o.trials, tally.accepted, tally.rejected, tally.aborted, p,
                    sigma_of(p, o.trials)});
  return kExitOk;
}

double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

template <SigmaProtocol P, class MakeProvers, class K0>
int extract_sigma(const P& protocol, const Options& o, const MakeProvers& make, const K0& k0, double q, double ra_max,
                  Table& t) {
  const Rng root(o.seed);
  int successes = 0, first_accepts = 0, both = 0;
  json witness;
  for (int i = 0; i < o.trials; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    auto provers = make(rng);
    const auto out = canonical_extract_classical(protocol, provers.first, provers.second, k0, rng);
    first_accepts += out.first_accepts;
    both += out.first_accepts && out.second_accepts;
    if (out.succeeded()) {
      ++successes;
      if (witness.is_null()) witness = witness_json(out.extraction->witness);
    }
  }
  const double n = o.trials;
  const double acceptance = first_accepts / n;
  const double both_rate = both / n;
  const double success = successes / n;
  const double delta = both_rate > 0 ? std::min(1.0, 1.0 / (q * both_rate)) : 1.0;
  const double rhs = qpok_extraction_lower(acceptance, 2, delta, ra_max);
  const bool holds = success >= rhs - 3 * sigma_of(success, o.trials) - kBoundTolerance;
  t.columns = {"protocol", "prover", "trials", "successes", "success_rate", "acceptance", "both_accept",
               "delta_ss", "bound_rhs", "holds", "witness"};
  t.rows.push_back({o.protocol, o.prover, o.trials, successes, success, acceptance, both_rate, delta, rhs, holds,
                    witness.is_null() ? json() : json(witness.dump())});
  return holds ? kExitOk : kExitBoundViolation;
}

int extract_quantum_subset(const Options& o, Table& t) {
  std::vector<std::pair<SubsetSumProtocol, QuantumProverSpec<SubsetSumProtocol>>> specs;
  if (o.prover == "quantum") {
    specs = subset_spec_catalogue(o.instances.value_or(50), o.seed);
  } else {
    const FieldSpec f(5);
    SubsetSumProtocol protocol(SubsetSumInstance{f, {f.element(1)}, f.element(1)});
    Rng rng(o.seed);
    SubsetBranch b;
    b.secret = SubsetSecret::random(protocol.instance(), {1}, rng);
    b.answer[1] = {Complex(0), Complex(1)};
    auto spec = subset_quantum_spec(protocol, {b}, "first-only-q5");
    specs.emplace_back(std::move(protocol), std::move(spec));
  }
  t.columns = {"name", "q", "acceptance", "both_accept", "success_probability", "delta_ss", "bound_rhs",
               "ledger_total", "holds", "sampled_success", "witness"};
  const Rng root(o.seed);
  bool all_hold = true;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& [protocol, spec] = specs[i];
    Rng rng = root.split(i);
    const double q = static_cast<double>(protocol.instance().field.q());
    const auto rep = canonical_extract_quantum(protocol, spec, SubsetSpecialExtractor{&protocol.instance()}, q,
                                               std::ldexp(1.0, protocol.instance().size()), rng);
    const bool holds = rep.success + kBoundTolerance >= rep.bound_rhs;
    all_hold = all_hold && holds;
    t.rows.push_back({rep.name, protocol.instance().field.q(), rep.acceptance, rep.both_accept, rep.success,
                      rep.delta_ss, rep.bound_rhs, rep.ledger_total, holds, rep.sampled_success,
                      rep.sampled_witness ? json(rep.sampled_witness->dump()) : json()});
  }
  return all_hold ? kExitOk : kExitBoundViolation;
}

std::string coloring_string(const std::vector<int>& c) {
  std::string s;
  for (int x : c) s += static_cast<char>('0' + x);
  return s;
}

int extract_coloring_2p(const Options& o, Table& t) {
  const Graph g = require_graph(o);
  const Rational eps = parse_rational(o.epsilon);
  const PairDistribution d(g, eps);
  const std::vector<int> coloring = o.prover == "honest" ? require_coloring(o) : std::vector<int>{};
  std::optional<AnswerTable> best;
  if (o.prover == "best-labeling") best = best_labeling_table(g, eps).best.table(g);
  if (o.corrupt < 0 || o.corrupt > 2 * g.edge_count()) throw ConfigError("--inject-corrupt out of range");
  const Rng root(o.seed);
  int proper = 0;
  double acceptance = 0.0;
  std::string last;
  for (int i = 0; i < o.trials; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    TableProver first{coloring_table(g, o, coloring, best, false, rng)};
    TableProver second = first;
    std::vector<std::size_t> qs(second.table.size());
    std::iota(qs.begin(), qs.end(), 0);
    rng.shuffle(qs);
    for (int k = 0; k < o.corrupt; ++k) {
      auto& a = second.table[qs[static_cast<std::size_t>(k)]];
      const auto slot = rng.uniform_below(2);
      a[slot] = static_cast<std::uint8_t>((a[slot] + 1 + rng.uniform_below(2)) % 3);
    }
    acceptance += to_double(acceptance_2p(g, d, first.table, second.table));
    const auto out = extract_3col_classical(g, d, first, second);
    proper += out.proper;
    last = coloring_string(out.coloring);
  }
  acceptance /= o.trials;
  const double success = static_cast<double>(proper) / o.trials;
  const double rhs = classical_3col_extraction_lower(g.edge_count(), acceptance);
  const bool holds = success + kBoundTolerance >= rhs;
  t.columns = {"protocol", "prover", "trials", "corrupted_answers", "proper", "success_rate", "acceptance",
               "kappa_c", "bound_rhs", "holds", "coloring"};
  t.rows.push_back({o.protocol, o.prover, o.trials, o.corrupt, proper, success, acceptance,
                    1.0 - 1.0 / (3.0 * g.edge_count()), rhs, holds, last});
  return holds ? kExitOk : kExitBoundViolation;
}

int extract_coloring_3p(const Options& o, Table& t) {
  const Graph g = require_graph(o);
  const Rational eps = parse_rational(o.epsilon);
  const std::vector<int> coloring = require_coloring(o);
  double angle = 0.0;
  if (o.prover == "rotated") {
    angle = 0.05;
  } else if (o.prover != "honest") {
    throw ConfigError("unknown prover " + o.prover + " for protocol 3col3p");
  }
  const Rng root(o.seed);
  int proper = 0, within = 0;
  double acceptance = 0.0, classical = 0.0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  std::string last;
  for (int i = 0; i < o.trials; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    const std::vector<Labeling> labs{Labeling::random(coloring, rng, true), Labeling::random(coloring, rng, true)};
    auto s = embed_labelings(g, labs, {0.5, 0.5});
    if (angle > 0.0) s = rotate_families(s, angle, rng);
    const auto out = extract_3col_quantum(g, eps, s, rng);
    proper += out.coloring.proper;
    within += out.within_bound;
    acceptance += out.acceptance_3p;
    classical += out.classical_value;
    worst_gap = std::max(worst_gap, std::abs(out.acceptance_3p - out.classical_value) - out.distance_bound);
    last = coloring_string(out.coloring.coloring);
  }
  t.columns = {"protocol", "prover", "trials", "proper", "success_rate", "acceptance_3p", "classical_value",
               "within_bound", "worst_gap_minus_bound", "coloring"};
  t.rows.push_back({o.protocol, o.prover, o.trials, proper, static_cast<double>(proper) / o.trials,
                    acceptance / o.trials, classical / o.trials, within, worst_gap, last});
  return within == o.trials ? kExitOk : kExitBoundViolation;
}

int cmd_extract(const Options& o, Table& t) {
  check_trials(o);
  if (o.protocol == "hc") {
    const HamiltonianCycleProtocol protocol(make_field(o.qmin), require_graph(o));
    const std::vector<int> cycle = require_cycle(o);
    const HcSpecialExtractor k0{&protocol.graph()};
    const double q = static_cast<double>(protocol.field().q());
    const double ra = factorial(protocol.graph().vertex_count());
    if (o.prover == "honest") {
      return extract_sigma(protocol, o, [&](Rng& rng) { return make_honest_hc_provers(protocol, cycle, rng); }, k0, q,
                           ra, t);
    }
    if (o.prover == "first-only") {
      return extract_sigma(protocol, o, [&](Rng& rng) {
        auto [c, r] = make_honest_hc_provers(protocol, cycle, rng);
        return std::make_pair(c, HcFirstChallengeOnlyResponder{r.witness, protocol.field()});
      }, k0, q, ra, t);
    }
    throw ConfigError("unknown prover " + o.prover + " for protocol hc");
  }
  if (o.protocol == "subset") {
    if (o.prover == "quantum" || o.prover == "quantum-first-only") return extract_quantum_subset(o, t);
    const SubsetSumProtocol protocol(require_instance(o));
    const Bits witness = require_subset_witness(o);
    const SubsetSpecialExtractor k0{&protocol.instance()};
    const double q = static_cast<double>(protocol.instance().field.q());
    const double ra = std::ldexp(1.0, protocol.instance().size());
    if (o.prover == "honest") {
      return extract_sigma(protocol, o, [&](Rng& rng) { return make_honest_subset_provers(protocol, witness, rng); },
                           k0, q, ra, t);
    }
    if (o.prover == "first-only") {
      return extract_sigma(protocol, o, [&](Rng& rng) {
        auto [c, r] = make_honest_subset_provers(protocol, witness, rng);
        return std::make_pair(c, SubsetFirstChallengeOnlyResponder{r.instance, r.secret});
      }, k0, q, ra, t);
    }
    throw ConfigError("unknown prover " + o.prover + " for protocol subset");
  }
  if (o.protocol == "3col2p") return extract_coloring_2p(o, t);
  if (o.protocol == "3col3p") return extract_coloring_3p(o, t);
  throw ConfigError("unknown protocol " + o.protocol);
}

int cmd_verify_theorems(const Options& o, Table& t) {
  std::vector<Theorem> theorems;
  if (o.theorem == "all") {
    theorems = all_theorems();
  } else {
    theorems = {parse_theorem(o.theorem)};
  }
  t.columns = {"theorem", "instance_id", "seed", "f1", "f2_or_ft", "rhs", "margin", "holds"};
  bool all_hold = true;
  for (Theorem th : theorems) {
    const int count = o.instances.value_or(th == Theorem::claim20 ? 1000 : 10000);
    if (count < 1) throw ConfigError("--instances must be at least 1");
    for (const auto& r : run_suite(th, count, o.seed, o.corrupt_flag)) {
      all_hold = all_hold && r.holds;
      t.rows.push_back({to_string(th), r.instance_id, r.seed, r.f1, r.f2_or_ft, r.rhs, r.margin, r.holds});
    }
  }
  return all_hold ? kExitOk : kExitBoundViolation;
}

double big_to_double(const BigRational& r) { return static_cast<double>(r); }

int cmd_bounds(const Options& o, Table& t) {
  if (o.problem == "3col") {
    const auto e = threecol_errors(o.n);
    t.columns = {"edges", "kappa_c", "kappa_q", "delta_tilde", "delta_lower", "kappa_c_exact", "delta_lower_exact"};
    t.rows.push_back({o.n, rzk::to_double(e.kappa_c), rzk::to_double(e.kappa_q), rzk::to_double(e.delta_tilde),
                      rzk::to_double(e.delta_lower), rzk::to_string(e.kappa_c), rzk::to_string(e.delta_lower)});
    return kExitOk;
  }
  const Problem p = parse_problem(o.problem);
  if (o.sweep) {
    t.columns = {"problem", "n", "log2_q", "ours", "previous", "ours_raw", "previous_raw", "ours_vacuous",
                 "previous_vacuous"};
    for (int k = 1; k <= 96; ++k) {
      const auto b = soundness(p, o.n, std::ldexp(1.0L, k));
      t.rows.push_back({to_string(p), o.n, k, static_cast<double>(b.ours), static_cast<double>(b.previous),
                        static_cast<double>(b.ours_raw), static_cast<double>(b.previous_raw), b.ours_vacuous,
                        b.previous_vacuous});
    }
    return kExitOk;
  }
  if (o.eta_max < 1) throw ConfigError("--eta-max must be at least 1");
  t.columns = {"problem", "n", "eta", "our_q", "previous_q", "target", "ours", "previous", "ours_exact",
               "previous_exact", "ratio_exact"};
  bool all_match = true;
  for (int eta = 1; eta <= o.eta_max; ++eta) {
    const auto c = check_target(p, o.n, eta);
    const bool ok = c.ours_matches() && c.previous_matches() && c.ratio_matches();
    all_match = all_match && ok;
    t.rows.push_back({to_string(p), o.n, eta, c.sizes.ours.str(), c.sizes.previous.str(), rzk::to_string(c.target),
                      c.ours ? json(big_to_double(*c.ours)) : json(), c.previous ? json(big_to_double(*c.previous)) : json(),
                      c.ours_matches(), c.previous_matches(), c.ratio_matches()});
  }
  return all_match ? kExitOk : kExitBoundViolation;
}

int cmd_binding_search(const Options& o, Table& t) {
  if (o.qmin > o.qmax) throw ConfigError("--qmin must not exceed --qmax");
  if (o.qmax > kMaxBindingSearchModulus) throw CapacityError("binding search is limited to q <= 101");
  t.columns = {"q", "max_success", "max_success_value", "expected", "matches"};
  bool all_match = true;
  for (std::uint64_t q = std::max<std::uint64_t>(o.qmin, 2); q <= o.qmax; ++q) {
    if (!is_prime(q)) continue;
    const Rational r = binding_adversary_search(FieldSpec(q));
    const Rational expected(1, static_cast<std::int64_t>(q));
    const bool ok = r == expected;
    all_match = all_match && ok;
    t.rows.push_back({q, rzk::to_string(r), rzk::to_double(r), rzk::to_string(expected), ok});
  }
  return all_match ? kExitOk : kExitBoundViolation;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "Root seed for all randomness");
  sub->add_option("--out", o.out, "Report path (default stdout)");
  sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

void add_protocol(CLI::App* sub, Options& o) {
  sub->add_option("--protocol", o.protocol, "Protocol")->check(CLI::IsMember({"hc", "subset", "3col2p", "3col3p"}));
  sub->add_option("--prover", o.prover, "Prover strategy");
  sub->add_option("--graph", o.graph, "Edge-list file, one 0-indexed \"u v\" pair per line");
  sub->add_option("--witness", o.witness, "Witness JSON file");
  sub->add_option("--instance", o.instance, "Subset-sum instance JSON file");
  sub->add_option("--qmin", o.qmin, "Field modulus: the smallest prime at least this");
  sub->add_option("--epsilon", o.epsilon, "Edge-verification probability (decimal or p/q)");
  sub->add_option("--trials", o.trials, "Number of seeded trials");
}

}  // namespace

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = nlohmann::ordered_json::parse(row[i].dump());
    rows.push_back(obj);
  }
  out << rows.dump(2) << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Relativistic zero-knowledge protocol simulator", "rzk");
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "Run seeded protocol trials");
  add_common(simulate, o);
  add_protocol(simulate, o);
  simulate->add_option("--dist", o.dist, "Prover separation");
  simulate->add_option("--light-speed", o.light_speed, "Signal speed");
  simulate->add_option("--latency", o.latency, "Delay of each message");
  simulate->add_option("--transcripts", o.transcripts, "Write one JSON transcript per line to this path");

  auto* extract = app.add_subcommand("extract", "Run an extractor and compare with its bound");
  add_common(extract, o);
  add_protocol(extract, o);
  extract->add_option("--instances", o.instances, "Number of quantum prover specs");
  extract->add_option("--inject-corrupt", o.corrupt, "Corrupt this many answers of the second prover (3col2p)");

  auto* verify = app.add_subcommand("verify-theorems", "Randomized inequality suites");
  add_common(verify, o);
  verify->add_option("--theorem", o.theorem, "Suite name or all");
  verify->add_option("--instances", o.instances, "Instances per suite");
  verify->add_flag("--inject-corrupt", o.corrupt_flag, "Replace instance 0 by a broken projector family");

  auto* bounds = app.add_subcommand("bounds", "Soundness and field-size tables");
  add_common(bounds, o);
  bounds->add_option("--problem", o.problem, "hc, subset or 3col")->check(CLI::IsMember({"hc", "subset", "3col"}));
  bounds->add_option("--n", o.n, "Instance size (edge count for 3col)");
  bounds->add_option("--eta-max", o.eta_max, "Rows eta = 1..eta-max");
  bounds->add_flag("--sweep", o.sweep, "Sweep Q = 2^1..2^96 instead");

  auto* binding = app.add_subcommand("binding-search", "Exact best double-opening probability per prime q");
  add_common(binding, o);
  binding->add_option("--qmin", o.qmin, "Smallest modulus");
  binding->add_option("--qmax", o.qmax, "Largest modulus (at most 101)");
  binding->preparse_callback([&o](std::size_t) { o.qmin = 2; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  Table table;
  int code = kExitOk;
  try {
    if (*simulate) {
      code = cmd_simulate(o, table);
    } else if (*extract) {
      code = cmd_extract(o, table);
    } else if (*verify) {
      code = cmd_verify_theorems(o, table);
    } else if (*bounds) {
      code = cmd_bounds(o, table);
    } else {
      code = cmd_binding_search(o, table);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  std::ostringstream buf;
  if (o.format == "json") {
    write_json(table, buf);
  } else {
    write_csv(table, buf);
  }
  if (o.out.empty()) {
    out << buf.str();
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << o.out << '\n';
      return kExitInputError;
    }
    file << buf.str();
  }
  return code;
}

}  // namespace rzk::cli
