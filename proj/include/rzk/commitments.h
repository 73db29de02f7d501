// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rzk/field.h"
#include "rzk/rational.h"

namespace rzk {

/// Randomness pre-shared by the two committing senders.
struct CommitKey {
  FieldElement c;
};

struct CommitmentRecord {
  FieldElement a;  // receiver's challenge to the first sender
  FieldElement w;  // value returned by the first sender
  unsigned d = 0;  // committed bit
};

/// w = a*d + c. Throws DomainError unless d is 0 or 1.
FieldElement commit(const FieldSpec& field, unsigned d, FieldElement a, CommitKey key);

bool verify_open(const FieldSpec& field, FieldElement w, FieldElement a, unsigned d,
                 FieldElement c);

/// Exact maximum, over first-sender maps a -> w(a) and second-sender opening
/// pairs (0, c0), (1, c1) fixed independently of a, of the probability over
/// uniform a that both openings verify. Throws CapacityError for q > 101.
Rational binding_adversary_search(const FieldSpec& field);

inline constexpr std::uint64_t kMaxBindingSearchModulus = 101;

}  // namespace rzk
