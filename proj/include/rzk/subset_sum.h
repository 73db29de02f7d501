// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rzk/field.h"
#include "rzk/sigma.h"

namespace rzk {

using Bits = std::vector<std::uint8_t>;

/// Find v in {0,1}^n with sum_i v_i s_i = k in F_q.
struct SubsetSumInstance {
  FieldSpec field;
  std::vector<FieldElement> s;
  FieldElement k;

  int size() const { return static_cast<int>(s.size()); }
  /// From {"s": [...], "k": int, "q_min": int}; q is the smallest prime
  /// >= q_min. Throws ConfigError on malformed input.
  static SubsetSumInstance from_json(const nlohmann::json& j);
  static SubsetSumInstance load(const std::string& path);
};

bool is_subset_witness(const SubsetSumInstance& instance, const Bits& v);

/// The provers' shared secret: witness v, mask z and pads c0, c1.
struct SubsetSecret {
  Bits v;
  Bits z;
  std::vector<FieldElement> c0;
  std::vector<FieldElement> c1;

  static SubsetSecret random(const SubsetSumInstance& instance, Bits v, Rng& rng);
};

struct SubsetCommitment {
  std::vector<FieldElement> w0;  // a (s ∗ z) + c0
  std::vector<FieldElement> w1;  // a (s ∗ z̄) + c1
  friend bool operator==(const SubsetCommitment&, const SubsetCommitment&) = default;
};

struct SubsetOpenAll {
  Bits z;
  std::vector<FieldElement> c0;
  std::vector<FieldElement> c1;
  friend bool operator==(const SubsetOpenAll&, const SubsetOpenAll&) = default;
};

struct SubsetOpenSum {
  Bits x;              // v ⊕ z
  FieldElement c_sum;  // sum_i (c_{x_i})_i
  friend bool operator==(const SubsetOpenSum&, const SubsetOpenSum&) = default;
};

using SubsetResponse = std::variant<SubsetOpenAll, SubsetOpenSum>;

SubsetCommitment subset_commit(const SubsetSumInstance& instance, FieldElement a,
                               const SubsetSecret& secret);
/// Throws DomainError unless ch is 0 or 1.
SubsetResponse subset_respond(int ch, const SubsetSumInstance& instance, const SubsetSecret& secret);
Check subset_verify(const SubsetSumInstance& instance, FieldElement a, const SubsetCommitment& com,
                    int ch, const SubsetResponse& resp);

/// x ⊕ z. Throws ExtractionError on length mismatch.
Bits k0_subset(const SubsetOpenAll& open_all, const SubsetOpenSum& open_sum);

class SubsetSumProtocol {
 public:
  using Rand = FieldElement;
  using Com = SubsetCommitment;
  using Challenge = int;
  using Response = SubsetResponse;

  explicit SubsetSumProtocol(SubsetSumInstance instance) : instance_(std::move(instance)) {}

  Rand sample_rand(Rng& rng) const { return instance_.field.sample(rng); }
  std::vector<Challenge> challenges() const { return {0, 1}; }
  Check verify(const Rand& a, const Com& com, const Challenge& ch, const Response& resp) const {
    return subset_verify(instance_, a, com, ch, resp);
  }
  const SubsetSumInstance& instance() const { return instance_; }

 private:
  SubsetSumInstance instance_;
};

struct SubsetCommitter {
  SubsetSumInstance instance;
  SubsetSecret secret;
  SubsetCommitment commit(const FieldElement& a) const { return subset_commit(instance, a, secret); }
};

struct SubsetResponder {
  SubsetSumInstance instance;
  SubsetSecret secret;
  SubsetResponse respond(int ch) const { return subset_respond(ch, instance, secret); }
};

std::pair<SubsetCommitter, SubsetResponder> make_honest_subset_provers(
    const SubsetSumProtocol& protocol, const Bits& witness, Rng& rng);

/// Answers ch = 0 honestly and ch = 1 with c' off by one.
struct SubsetFirstChallengeOnlyResponder {
  SubsetSumInstance instance;
  SubsetSecret secret;
  SubsetResponse respond(int ch) const;
};

void to_json(nlohmann::json& j, FieldElement x);
void to_json(nlohmann::json& j, const SubsetCommitment& c);
void to_json(nlohmann::json& j, const SubsetResponse& r);

}  // namespace rzk
