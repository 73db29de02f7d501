// SPDX-License-Identifier: Apache-2.0
#include "rzk/field.h"

#include <string>

#include "rzk/errors.h"

namespace rzk {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 63;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, FieldElement x) { return os << x.value(); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec::FieldSpec(std::uint64_t q) : q_(q) {
  if (q >= kMaxModulus) throw DomainError("field modulus must be below 2^63");
  if (!is_prime(q)) throw DomainError("field modulus " + std::to_string(q) + " is not prime");
}

FieldElement FieldSpec::element_signed(std::int64_t v) const {
  const auto q = static_cast<std::int64_t>(q_);
  std::int64_t r = v % q;
  if (r < 0) r += q;
  return FieldElement(static_cast<std::uint64_t>(r));
}

FieldElement FieldSpec::add(FieldElement x, FieldElement y) const {
  std::uint64_t s = x.value_ + y.value_;  // both < 2^63, no overflow
  if (s >= q_) s -= q_;
  return FieldElement(s);
}

FieldElement FieldSpec::sub(FieldElement x, FieldElement y) const {
  return FieldElement(x.value_ >= y.value_ ? x.value_ - y.value_ : x.value_ + q_ - y.value_);
}

FieldElement FieldSpec::neg(FieldElement x) const { return sub(zero(), x); }

FieldElement FieldSpec::mul(FieldElement x, FieldElement y) const {
  return FieldElement(mulmod(x.value_, y.value_, q_));
}

FieldElement FieldSpec::inv(FieldElement x) const {
  if (x.value_ == 0) throw DomainError("inverse of zero");
  return FieldElement(powmod(x.value_, q_ - 2, q_));
}

FieldElement FieldSpec::apply(FieldOp op, FieldElement x, FieldElement y) const {
  switch (op) {
    case FieldOp::add:
      return add(x, y);
    case FieldOp::sub:
      return sub(x, y);
    case FieldOp::mul:
      return mul(x, y);
    case FieldOp::inv:
      return inv(x);
  }
  throw DomainError("unknown field operation");
}

FieldSpec make_field(std::uint64_t q_min) {
  if (q_min < 2) throw DomainError("make_field: q_min must be at least 2");
  std::uint64_t q = q_min;
  while (!is_prime(q)) ++q;
  return FieldSpec(q);
}

}  // namespace rzk
