// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <concepts>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rzk/rational.h"
#include "rzk/random.h"

namespace rzk {

/// Simulated time and distance are exact rationals; doubles convert exactly.
using SimTime = BigRational;

/// One-way delays for the four messages of a round.
struct MessageLatency {
  SimTime rand = 0;  // verifier -> first prover
  SimTime com = 0;   // first prover -> verifier
  SimTime ch = 0;    // verifier -> second prover
  SimTime resp = 0;  // second prover -> verifier

  static MessageLatency uniform(const SimTime& each) { return {each, each, each, each}; }
};

class TimingModel {
 public:
  /// Throws ConfigError unless dist > 0, light_speed > 0, latencies >= 0.
  TimingModel(SimTime dist, SimTime light_speed, MessageLatency latency);
  /// dist = light_speed = 1 with zero latency.
  static TimingModel instantaneous();

  const SimTime& dist() const { return dist_; }
  const SimTime& light_speed() const { return light_speed_; }
  const MessageLatency& latency() const { return latency_; }
  /// dist / light_speed.
  SimTime deadline() const { return dist_ / light_speed_; }

 private:
  SimTime dist_;
  SimTime light_speed_;
  MessageLatency latency_;
};

enum class TimingResult { pass, abort };

/// Abort iff t3 - t1 >= dist/c or t2 - t1 >= dist/c.
/// Throws DomainError unless t1 <= t2 and t1 <= t3.
TimingResult timing_check(const SimTime& t1, const SimTime& t2, const SimTime& t3,
                          const TimingModel& timing);

enum class Verdict { accept, reject, abort };
std::string to_string(Verdict v);

/// Result of a verification predicate; `diagnostic` names the first failure.
struct Check {
  bool ok = true;
  std::string diagnostic;

  static Check pass() { return {}; }
  static Check fail(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return ok; }
};

/// A two-prover protocol in which the verifier sends `rand` to the first
/// prover and a challenge to the second, simultaneously.
template <class P>
concept SigmaProtocol = requires(const P& p, Rng& rng, const typename P::Rand& rand,
                                 const typename P::Com& com, const typename P::Challenge& ch,
                                 const typename P::Response& resp) {
  { p.sample_rand(rng) } -> std::same_as<typename P::Rand>;
  { p.challenges() } -> std::convertible_to<std::vector<typename P::Challenge>>;
  { p.verify(rand, com, ch, resp) } -> std::same_as<Check>;
};

template <class S, class P>
concept FirstProver = requires(S& s, const typename P::Rand& rand) {
  { s.commit(rand) } -> std::same_as<typename P::Com>;
};

template <class S, class P>
concept SecondProver = requires(S& s, const typename P::Challenge& ch) {
  { s.respond(ch) } -> std::same_as<typename P::Response>;
};

template <SigmaProtocol P>
struct Transcript {
  typename P::Rand rand;
  typename P::Com com;
  typename P::Challenge ch;
  typename P::Response resp;
  SimTime t1 = 0;
  SimTime t2 = 0;
  SimTime t3 = 0;
  Verdict verdict = Verdict::reject;
  bool timing_violation = false;
  std::string diagnostic;
};

/// Field names rand, com, ch, resp, t1, t2, t3, verdict (plus diagnostic when
/// nonempty). Times are exact rationals written as strings.
template <SigmaProtocol P>
nlohmann::json transcript_to_json(const Transcript<P>& t) {
  nlohmann::json j;
  j["rand"] = t.rand;
  j["com"] = t.com;
  j["ch"] = t.ch;
  j["resp"] = t.resp;
  j["t1"] = to_string(t.t1);
  j["t2"] = to_string(t.t2);
  j["t3"] = to_string(t.t3);
  j["verdict"] = to_string(t.verdict);
  if (!t.diagnostic.empty()) j["diagnostic"] = t.diagnostic;
  return j;
}

/// Draws rand and ch from rng (in that order), so two runs with equal rng
/// states put identical questions to the provers.
template <SigmaProtocol P>
std::pair<typename P::Rand, typename P::Challenge> sample_questions(const P& protocol, Rng& rng) {
  auto rand = protocol.sample_rand(rng);
  const std::vector<typename P::Challenge> space = protocol.challenges();
  auto ch = space[rng.uniform_below(space.size())];
  return {std::move(rand), std::move(ch)};
}

/// Stamps times, applies the abort rule, then verifies.
template <SigmaProtocol P>
void finalize(const P& protocol, Transcript<P>& t, const TimingModel& timing) {
  const MessageLatency& lat = timing.latency();
  t.t1 = 0;
  t.t2 = t.t1 + lat.rand + lat.com;
  t.t3 = t.t1 + lat.ch + lat.resp;
  if (timing_check(t.t1, t.t2, t.t3, timing) == TimingResult::abort) {
    t.timing_violation = true;
    t.verdict = Verdict::abort;
    t.diagnostic = "timing";
    return;
  }
  const Check c = protocol.verify(t.rand, t.com, t.ch, t.resp);
  t.verdict = c.ok ? Verdict::accept : Verdict::reject;
  t.diagnostic = c.diagnostic;
}

/// One execution: commit phase with the first prover and unveil phase with
/// the second, simultaneously, then the timing and verification checks.
template <SigmaProtocol P, class First, class Second>
  requires FirstProver<First, P> && SecondProver<Second, P>
Transcript<P> run_sigma(const P& protocol, First& first, Second& second, const TimingModel& timing,
                        Rng& rng) {
  auto [rand, ch] = sample_questions(protocol, rng);
  Transcript<P> t;
  t.rand = rand;
  t.com = first.commit(rand);
  t.ch = ch;
  t.resp = second.respond(ch);
  finalize(protocol, t, timing);
  return t;
}

}  // namespace rzk
