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

#pragma once

#include <string>

#include "rydgate/propagator.hpp"

namespace rydgate {

enum class MetricKind { Trace, StateOverlap };

struct FidelityReport {
  double fidelity = 0.0;
  double loss = 1.0;  // always exactly 1 - fidelity
  MetricKind kind = MetricKind::Trace;

  static FidelityReport make(double fidelity, MetricKind kind) {
    return FidelityReport{fidelity, 1.0 - fidelity, kind};
  }
};

std::string to_string(MetricKind kind);

/// |tr(G^dagger U)| / dim. Blind to a global phase on either argument.
FidelityReport gate_fidelity(const Unitary& u, const Unitary& target);

/// |<0...0| G^dagger U_seq |0...0>|, with the target state G|0...0> given
/// directly so the check also runs where G cannot be stored densely.
FidelityReport state_overlap(const PulseSequence& seq, const StateVector& target_state,
                             EvolveMethod method = EvolveMethod::Auto);
FidelityReport state_overlap(const PulseSequence& seq, const Unitary& target);

/// |<target|psi>| for two prepared states.
FidelityReport state_overlap(const StateVector& psi, const StateVector& target_state);

/// Per-qubit <sigma_z>; +1 for |0>, -1 for |1>.
RVector magnetization_profile(const StateVector& psi);

}  // namespace rydgate
