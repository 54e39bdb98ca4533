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
#include <variant>
#include <vector>

#include "rydgate/digital.hpp"
#include "rydgate/propagator.hpp"
#include "rydgate/register.hpp"

namespace rydgate {

/// An exact single-qubit gate applied instantaneously to a set of qubits
/// (all qubits when `qubits` is empty). `duration` is only booked in the
/// ledger; no interaction acts while it is applied.
struct IdealGate {
  digital::Matrix2 gate = digital::Matrix2::Identity();
  std::vector<int> qubits;
  double duration = 0.0;
  std::string tag;
};

using ScheduleStep = std::variant<PulseSegment, IdealGate>;

double step_duration(const ScheduleStep& step);
const std::string& step_tag(const ScheduleStep& step);

struct LedgerEntry {
  std::string gate;
  double duration = 0.0;
};

struct CompiledSchedule {
  RegisterSpec reg;
  std::vector<ScheduleStep> steps;
  std::vector<LedgerEntry> ledger;
  bool approximate = false;  // compiled for a register where exactness is not claimed

  explicit CompiledSchedule(RegisterSpec r = {}) : reg(std::move(r)) {}

  double total_duration() const;
  double ledger_total() const;
  bool has_ideal_steps() const;

  /// Appends another schedule on the same register, steps and ledger both.
  void append(const CompiledSchedule& other);

  /// Replaces the ledger with a single entry covering every step.
  void book_as(const std::string& gate);

  /// Pulse-only view; throws Error(InvalidInput) if ideal steps are present.
  PulseSequence to_pulse_sequence() const;
  static CompiledSchedule from_pulse_sequence(const PulseSequence& seq, const std::string& gate);

  Unitary unitary(const DenseLimits& limits = {}) const;
  StateVector evolve(const StateVector& psi0, EvolveMethod method = EvolveMethod::Auto,
                     const DenseLimits& limits = {}) const;
};

}  // namespace rydgate
