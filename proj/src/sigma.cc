// SPDX-License-Identifier: Apache-2.0
#include "rzk/sigma.h"

#include "rzk/errors.h"

namespace rzk {

TimingModel::TimingModel(SimTime dist, SimTime light_speed, MessageLatency latency)
    : dist_(std::move(dist)), light_speed_(std::move(light_speed)), latency_(std::move(latency)) {
  if (dist_ <= 0) throw ConfigError("dist must be positive");
  if (light_speed_ <= 0) throw ConfigError("light speed must be positive");
  for (const SimTime* l : {&latency_.rand, &latency_.com, &latency_.ch, &latency_.resp}) {
    if (*l < 0) throw ConfigError("latencies must be nonnegative");
  }
}

TimingModel TimingModel::instantaneous() { return TimingModel(1, 1, MessageLatency{}); }

TimingResult timing_check(const SimTime& t1, const SimTime& t2, const SimTime& t3,
                          const TimingModel& timing) {
  if (t2 < t1 || t3 < t1) throw DomainError("timestamps must not precede t1");
  const SimTime deadline = timing.deadline();
  if (t3 - t1 >= deadline || t2 - t1 >= deadline) return TimingResult::abort;
  return TimingResult::pass;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::accept:
      return "accept";
    case Verdict::reject:
      return "reject";
    case Verdict::abort:
      return "abort";
  }
  return "unknown";
}

}  // namespace rzk
