// SPDX-License-Identifier: Apache-2.0
#include "rzk/commitments.h"

#include <algorithm>

#include "rzk/errors.h"

namespace rzk {

std::string to_string(const BigRational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

FieldElement commit(const FieldSpec& field, unsigned d, FieldElement a, CommitKey key) {
  if (d > 1) throw DomainError("commit: bit must be 0 or 1");
  return field.add(field.mul(a, field.element(d)), key.c);
}

bool verify_open(const FieldSpec& field, FieldElement w, FieldElement a, unsigned d,
                 FieldElement c) {
  if (d > 1) return false;
  return w == field.add(field.mul(a, field.element(d)), c);
}

Rational binding_adversary_search(const FieldSpec& field) {
  const std::uint64_t q = field.q();
  if (q > kMaxBindingSearchModulus) {
    throw CapacityError("binding search is exhaustive and limited to q <= 101");
  }
  // The first sender's w(a) is chosen independently for every a, so the best
  // map maximizes the success indicator pointwise in a.
  std::uint64_t best = 0;
  for (std::uint64_t c0 = 0; c0 < q; ++c0) {
    for (std::uint64_t c1 = 0; c1 < q; ++c1) {
      std::uint64_t wins = 0;
      for (std::uint64_t a = 0; a < q; ++a) {
        const FieldElement av = field.element(a);
        bool any = false;
        for (std::uint64_t w = 0; w < q && !any; ++w) {
          const FieldElement wv = field.element(w);
          any = verify_open(field, wv, av, 0, field.element(c0)) &&
                verify_open(field, wv, av, 1, field.element(c1));
        }
        wins += any ? 1 : 0;
      }
      best = std::max(best, wins);
    }
  }
  return Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(q));
}

}  // namespace rzk
