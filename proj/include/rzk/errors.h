// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rzk {

/// Arithmetic outside an operation's domain, e.g. inverting zero.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input exceeds what an exhaustive or exact routine can handle.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A value overflowed the representable range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Structurally invalid configuration: bad machine wiring, non-unitary
/// operators, malformed projector families, mismatched dimensions.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Misuse of a stateful protocol object, e.g. rewinding with nothing to undo.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Failure inside a special extractor.
class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rzk
