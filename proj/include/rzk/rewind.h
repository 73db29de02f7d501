// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "rzk/errors.h"
#include "rzk/quantum.h"

namespace rzk {

/// Oracle access to a classical prover: every activation snapshots the
/// prover by value first, and rewind() restores the latest snapshot.
template <class Prover>
class RewindableHandle {
 public:
  explicit RewindableHandle(Prover& prover) : prover_(prover) {}

  template <class Message>
  auto activate(const Message& message) {
    snapshots_.push_back(prover_);
    return prover_.respond(message);
  }

  /// Throws ProtocolError when no activation is left to undo.
  void rewind() {
    if (snapshots_.empty()) throw ProtocolError("rewind past the initial state");
    prover_ = std::move(snapshots_.back());
    snapshots_.pop_back();
  }

  std::size_t depth() const { return snapshots_.size(); }
  Prover& prover() { return prover_; }

 private:
  Prover& prover_;
  std::vector<Prover> snapshots_;
};

/// Oracle access to one party of a shared pure state. Activations apply a
/// local unitary and are undone by its adjoint; measurements in between
/// collapse the state and are not undone.
class QuantumRewindHandle {
 public:
  QuantumRewindHandle(Vector& state, std::vector<int> dims, int site)
      : state_(state), dims_(std::move(dims)), site_(site) {}

  /// Throws ConfigError for non-unitary operators.
  void activate(const Matrix& unitary);
  /// Born-rule sample; keeps the collapsed, renormalized state.
  int measure(const ProjectorFamily& family, Rng& rng);
  /// Applies one projector without renormalizing; returns the branch weight
  /// relative to the incoming norm.
  double project(const Matrix& projector);
  /// Throws ProtocolError when no activation is left to undo.
  void rewind();

  std::size_t depth() const { return unitaries_.size(); }

 private:
  Vector& state_;
  std::vector<int> dims_;
  int site_;
  std::vector<Matrix> unitaries_;
};

}  // namespace rzk
