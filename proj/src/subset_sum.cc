// SPDX-License-Identifier: Apache-2.0
#include "rzk/subset_sum.h"

#include <fstream>

#include "rzk/errors.h"

namespace rzk {

namespace {

bool is_bits(const Bits& b, std::size_t n) {
  if (b.size() != n) return false;
  for (auto x : b) {
    if (x > 1) return false;
  }
  return true;
}

bool in_field(const SubsetSumInstance& inst, const std::vector<FieldElement>& xs, std::size_t n) {
  if (xs.size() != n) return false;
  for (const auto& x : xs) {
    if (!inst.field.contains(x.value())) return false;
  }
  return true;
}

nlohmann::json values_json(const std::vector<FieldElement>& xs) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : xs) j.push_back(x.value());
  return j;
}

}  // namespace

SubsetSumInstance SubsetSumInstance::from_json(const nlohmann::json& j) {
  try {
    const auto q_min = j.at("q_min").get<std::int64_t>();
    if (q_min < 2) throw ConfigError("q_min must be at least 2");
    const FieldSpec field = make_field(static_cast<std::uint64_t>(q_min));
    std::vector<FieldElement> s;
    for (const auto& x : j.at("s")) s.push_back(field.element_signed(x.get<std::int64_t>()));
    if (s.empty()) throw ConfigError("instance needs at least one element");
    return {field, std::move(s), field.element_signed(j.at("k").get<std::int64_t>())};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("subset-sum instance: ") + e.what());
  }
}

SubsetSumInstance SubsetSumInstance::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance file " + path);
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("instance file: ") + e.what());
  }
}

bool is_subset_witness(const SubsetSumInstance& instance, const Bits& v) {
  if (!is_bits(v, instance.s.size())) return false;
  FieldElement total = instance.field.zero();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) total = instance.field.add(total, instance.s[i]);
  }
  return total == instance.k;
}

SubsetSecret SubsetSecret::random(const SubsetSumInstance& instance, Bits v, Rng& rng) {
  SubsetSecret secret{std::move(v), {}, {}, {}};
  for (int i = 0; i < instance.size(); ++i) {
    secret.z.push_back(rng.coin() ? 1 : 0);
    secret.c0.push_back(instance.field.sample(rng));
    secret.c1.push_back(instance.field.sample(rng));
  }
  return secret;
}

SubsetCommitment subset_commit(const SubsetSumInstance& instance, FieldElement a,
                               const SubsetSecret& secret) {
  const FieldSpec& f = instance.field;
  SubsetCommitment com;
  for (std::size_t i = 0; i < instance.s.size(); ++i) {
    const FieldElement as = f.mul(a, instance.s[i]);
    com.w0.push_back(f.add(secret.z[i] ? as : f.zero(), secret.c0[i]));
    com.w1.push_back(f.add(secret.z[i] ? f.zero() : as, secret.c1[i]));
  }
  return com;
}

SubsetResponse subset_respond(int ch, const SubsetSumInstance& instance, const SubsetSecret& secret) {
  if (ch == 0) return SubsetOpenAll{secret.z, secret.c0, secret.c1};
  if (ch != 1) throw DomainError("challenge must be 0 or 1");
  SubsetOpenSum open{{}, instance.field.zero()};
  for (std::size_t i = 0; i < secret.z.size(); ++i) {
    const std::uint8_t x = secret.v[i] ^ secret.z[i];
    open.x.push_back(x);
    open.c_sum = instance.field.add(open.c_sum, x ? secret.c1[i] : secret.c0[i]);
  }
  return open;
}

Check subset_verify(const SubsetSumInstance& instance, FieldElement a, const SubsetCommitment& com,
                    int ch, const SubsetResponse& resp) {
  const FieldSpec& f = instance.field;
  const std::size_t n = instance.s.size();
  if (!f.contains(a.value())) return Check::fail("shape: rand outside the field");
  if (!in_field(instance, com.w0, n) || !in_field(instance, com.w1, n)) {
    return Check::fail("shape: commitment length");
  }
  if (ch == 0) {
    const auto* open = std::get_if<SubsetOpenAll>(&resp);
    if (open == nullptr) return Check::fail("shape: expected full opening");
    if (!is_bits(open->z, n) || !in_field(instance, open->c0, n) || !in_field(instance, open->c1, n)) {
      return Check::fail("shape: opening length");
    }
    const SubsetSecret view{Bits(n, 0), open->z, open->c0, open->c1};
    if (!(subset_commit(instance, a, view) == com)) return Check::fail("commitment mismatch");
    return Check::pass();
  }
  if (ch == 1) {
    const auto* open = std::get_if<SubsetOpenSum>(&resp);
    if (open == nullptr) return Check::fail("shape: expected sum opening");
    if (!is_bits(open->x, n) || !f.contains(open->c_sum.value())) return Check::fail("shape: opening length");
    FieldElement lhs = f.zero();
    for (std::size_t i = 0; i < n; ++i) lhs = f.add(lhs, open->x[i] ? com.w1[i] : com.w0[i]);
    if (lhs != f.add(f.mul(a, instance.k), open->c_sum)) return Check::fail("sum does not open to k");
    return Check::pass();
  }
  return Check::fail("challenge outside {0,1}");
}

Bits k0_subset(const SubsetOpenAll& open_all, const SubsetOpenSum& open_sum) {
  if (open_all.z.size() != open_sum.x.size()) throw ExtractionError("opening lengths differ");
  Bits w(open_all.z.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = (open_all.z[i] ^ open_sum.x[i]) & 1;
  return w;
}

std::pair<SubsetCommitter, SubsetResponder> make_honest_subset_provers(
    const SubsetSumProtocol& protocol, const Bits& witness, Rng& rng) {
  if (!is_subset_witness(protocol.instance(), witness)) {
    throw ConfigError("witness does not solve the subset-sum instance");
  }
  SubsetSecret secret = SubsetSecret::random(protocol.instance(), witness, rng);
  return {SubsetCommitter{protocol.instance(), secret}, SubsetResponder{protocol.instance(), secret}};
}

SubsetResponse SubsetFirstChallengeOnlyResponder::respond(int ch) const {
  SubsetResponse r = subset_respond(ch, instance, secret);
  if (ch == 1) {
    auto& open = std::get<SubsetOpenSum>(r);
    open.c_sum = instance.field.add(open.c_sum, instance.field.one());
  }
  return r;
}

void to_json(nlohmann::json& j, FieldElement x) { j = x.value(); }

void to_json(nlohmann::json& j, const SubsetCommitment& c) {
  j = {{"w0", values_json(c.w0)}, {"w1", values_json(c.w1)}};
}

void to_json(nlohmann::json& j, const SubsetResponse& r) {
  if (const auto* all = std::get_if<SubsetOpenAll>(&r)) {
    j = {{"z", all->z}, {"c0", values_json(all->c0)}, {"c1", values_json(all->c1)}};
  } else {
    const auto& open = std::get<SubsetOpenSum>(r);
    j = {{"x", open.x}, {"c_sum", open.c_sum.value()}};
  }
}

}  // namespace rzk
