// Copyright 2026 The rydgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rydgate/metrics.hpp"

#include <cmath>

namespace rydgate {

std::string to_string(MetricKind kind) {
  return kind == MetricKind::Trace ? "trace" : "state_overlap";
}

FidelityReport gate_fidelity(const Unitary& u, const Unitary& target) {
  if (u.dim() != target.dim()) {
    throw Error(ErrorKind::InvalidInput, "gate fidelity: dimension mismatch");
  }
  // tr(G^dagger U) without forming the product
  const Complex tr = (target.matrix().conjugate().array() * u.matrix().array()).sum();
  return FidelityReport::make(std::abs(tr) / static_cast<double>(u.dim()), MetricKind::Trace);
}

FidelityReport state_overlap(const StateVector& psi, const StateVector& target_state) {
  if (psi.dim() != target_state.dim()) {
    throw Error(ErrorKind::InvalidInput, "state overlap: dimension mismatch");
  }
  const Complex amp = target_state.amplitudes().dot(psi.amplitudes());
  return FidelityReport::make(std::abs(amp), MetricKind::StateOverlap);
}

FidelityReport state_overlap(const PulseSequence& seq, const StateVector& target_state,
                             EvolveMethod method) {
  if (target_state.n_qubits() != seq.reg.n_qubits) {
    throw Error(ErrorKind::InvalidInput, "state overlap: dimension mismatch");
  }
  const StateVector psi = evolve_state(seq, StateVector::zeros(seq.reg.n_qubits), method);
  return state_overlap(psi, target_state);
}

FidelityReport state_overlap(const PulseSequence& seq, const Unitary& target) {
  if (target.n_qubits() != seq.reg.n_qubits) {
    throw Error(ErrorKind::InvalidInput, "state overlap: dimension mismatch");
  }
  return state_overlap(seq, target * StateVector::zeros(seq.reg.n_qubits));
}

RVector magnetization_profile(const StateVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-6) {
    throw Error(ErrorKind::InvalidInput, "magnetization needs a normalised state");
  }
  const int n = psi.n_qubits();
  RVector mz = RVector::Zero(n);
  const CVector& a = psi.amplitudes();
  for (Eigen::Index b = 0; b < a.size(); ++b) {
    const double p = std::norm(a(b));
    if (p == 0.0) continue;
    for (int q = 0; q < n; ++q) {
      mz(q) += ((b >> q) & 1) ? -p : p;
    }
  }
  return mz;
}

}  // namespace rydgate
