// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <compare>
#include <ostream>

#include "rzk/random.h"

namespace rzk {

/// An element of a prime field. Only FieldSpec creates these, so the value
/// is always reduced.
class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr std::uint64_t value() const { return value_; }
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;

 private:
  friend class FieldSpec;
  constexpr explicit FieldElement(std::uint64_t v) : value_(v) {}
  std::uint64_t value_ = 0;
};

std::ostream& operator<<(std::ostream& os, FieldElement x);

enum class FieldOp { add, sub, mul, inv };

/// The prime field F_q, q < 2^63.
class FieldSpec {
 public:
  /// Throws DomainError unless q is a prime below 2^63.
  explicit FieldSpec(std::uint64_t q);

  std::uint64_t q() const { return q_; }

  FieldElement element(std::uint64_t v) const { return FieldElement(v % q_); }
  /// Reduces a possibly negative integer.
  FieldElement element_signed(std::int64_t v) const;
  FieldElement zero() const { return FieldElement(0); }
  FieldElement one() const { return FieldElement(1 % q_); }

  FieldElement add(FieldElement x, FieldElement y) const;
  FieldElement sub(FieldElement x, FieldElement y) const;
  FieldElement neg(FieldElement x) const;
  FieldElement mul(FieldElement x, FieldElement y) const;
  /// Throws DomainError for zero.
  FieldElement inv(FieldElement x) const;

  /// Dispatches on op; y is ignored for inv.
  FieldElement apply(FieldOp op, FieldElement x, FieldElement y = {}) const;

  FieldElement sample(Rng& rng) const { return FieldElement(rng.uniform_below(q_)); }

  bool contains(std::uint64_t v) const { return v < q_; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  std::uint64_t q_;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// The field of the smallest prime q >= q_min.
FieldSpec make_field(std::uint64_t q_min);

/// Uniform element; alias of spec.sample(rng).
inline FieldElement sample_uniform(const FieldSpec& spec, Rng& rng) {
  return spec.sample(rng);
}

}  // namespace rzk
