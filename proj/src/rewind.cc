// SPDX-License-Identifier: Apache-2.0
#include "rzk/rewind.h"

namespace rzk {

void QuantumRewindHandle::activate(const Matrix& unitary) {
  if (!is_unitary(unitary)) throw ConfigError("activation is not unitary");
  state_ = apply_local(state_, unitary, dims_, site_);
  unitaries_.push_back(unitary);
}

int QuantumRewindHandle::measure(const ProjectorFamily& family, Rng& rng) {
  std::vector<Matrix> lifted;
  for (const auto& w : family.projectors()) lifted.push_back(embed(w, dims_, site_));
  const auto r = measure_projective(state_, ProjectorFamily::unchecked(std::move(lifted)), rng);
  state_ = r.post_state;
  return r.outcome;
}

double QuantumRewindHandle::project(const Matrix& projector) {
  const double before = state_.squaredNorm();
  state_ = apply_local(state_, projector, dims_, site_);
  return before > 0.0 ? state_.squaredNorm() / before : 0.0;
}

void QuantumRewindHandle::rewind() {
  if (unitaries_.empty()) throw ProtocolError("rewind past the initial state");
  state_ = apply_local(state_, unitaries_.back().adjoint(), dims_, site_);
  unitaries_.pop_back();
}

}  // namespace rzk
