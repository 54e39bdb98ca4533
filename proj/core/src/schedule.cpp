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

#include "rydgate/schedule.hpp"

namespace rydgate {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<digital::Matrix2> ideal_layer(int n, const IdealGate& g) {
  std::vector<digital::Matrix2> gates(static_cast<std::size_t>(n), digital::Matrix2::Identity());
  if (g.qubits.empty()) {
    for (auto& m : gates) m = g.gate;
  } else {
    for (int q : g.qubits) {
      if (q < 0 || q >= n) throw Error(ErrorKind::InvalidInput, "ideal gate qubit out of range");
      gates[static_cast<std::size_t>(q)] = g.gate;
    }
  }
  return gates;
}

}  // namespace

double step_duration(const ScheduleStep& step) {
  return std::visit([](const auto& s) { return s.duration; }, step);
}

const std::string& step_tag(const ScheduleStep& step) {
  return std::visit([](const auto& s) -> const std::string& { return s.tag; }, step);
}

double CompiledSchedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : steps) t += step_duration(s);
  return t;
}

double CompiledSchedule::ledger_total() const {
  double t = 0.0;
  for (const auto& e : ledger) t += e.duration;
  return t;
}

bool CompiledSchedule::has_ideal_steps() const {
  for (const auto& s : steps) {
    if (std::holds_alternative<IdealGate>(s)) return true;
  }
  return false;
}

void CompiledSchedule::append(const CompiledSchedule& other) {
  if (!(other.reg == reg)) {
    throw Error(ErrorKind::InvalidInput, "cannot append schedules compiled for different registers");
  }
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  ledger.insert(ledger.end(), other.ledger.begin(), other.ledger.end());
  approximate = approximate || other.approximate;
}

void CompiledSchedule::book_as(const std::string& gate) {
  ledger.assign(1, LedgerEntry{gate, total_duration()});
}

PulseSequence CompiledSchedule::to_pulse_sequence() const {
  PulseSequence seq{reg, {}};
  for (const auto& s : steps) {
    const auto* seg = std::get_if<PulseSegment>(&s);
    if (seg == nullptr) {
      throw Error(ErrorKind::InvalidInput, "schedule contains ideal gates and has no pulse form");
    }
    seq.segments.push_back(*seg);
  }
  return seq;
}

CompiledSchedule CompiledSchedule::from_pulse_sequence(const PulseSequence& seq,
                                                       const std::string& gate) {
  CompiledSchedule out(seq.reg);
  for (const auto& s : seq.segments) out.steps.emplace_back(s);
  out.book_as(gate);
  return out;
}

Unitary CompiledSchedule::unitary(const DenseLimits& limits) const {
  Unitary u = Unitary::identity(reg.n_qubits);
  for (const auto& s : steps) {
    const Unitary step = std::visit(
        overloaded{[&](const PulseSegment& seg) { return segment_unitary(reg, seg, limits); },
                   [&](const IdealGate& g) { return digital::product(ideal_layer(reg.n_qubits, g)); }},
        s);
    u = step * u;
  }
  return u;
}

StateVector CompiledSchedule::evolve(const StateVector& psi0, EvolveMethod method,
                                     const DenseLimits& limits) const {
  StateVector psi = psi0;
  PulseSequence chunk{reg, {}};
  auto flush = [&] {
    if (chunk.segments.empty()) return;
    psi = evolve_state(chunk, psi, method, limits);
    chunk.segments.clear();
  };
  for (const auto& s : steps) {
    if (const auto* seg = std::get_if<PulseSegment>(&s)) {
      chunk.segments.push_back(*seg);
      continue;
    }
    flush();
    const auto& g = std::get<IdealGate>(s);
    if (g.qubits.empty()) {
      apply_single_qubit_gate(psi.amplitudes(), reg.n_qubits, g.gate);
    } else {
      apply_single_qubit_gate(psi.amplitudes(), reg.n_qubits, g.gate, g.qubits);
    }
  }
  flush();
  return psi;
}

}  // namespace rydgate
