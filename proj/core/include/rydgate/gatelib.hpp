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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rydgate/pulseopt.hpp"
#include "rydgate/schedule.hpp"

namespace rydgate {

// Reference hardware: Rb 60S pairs 6.24 um apart, eight 108 ns segments per
// global rotation.
inline constexpr double kReferenceSpacingUm = 6.24;
inline constexpr double kReferenceC6 = 865723.02;  // rad um^6 / us
inline constexpr double kReferenceSegmentUs = 0.108;
inline constexpr double kReferenceRotationUs = 8 * kReferenceSegmentUs;

RegisterSpec reference_register(int n_qubits, Geometry geometry,
                                InteractionMode mode = InteractionMode::NearestNeighbour);

/// The four global +-pi/2 rotations used as building blocks. Either
/// optimised pulse sequences (one base sequence plus phase-shifted copies)
/// or exact instantaneous gates with a nominal duration.
class RotationLibrary {
 public:
  static RotationLibrary ideal(double duration_us);
  static RotationLibrary from_sequence(const PulseSequence& base,
                                       RotationKind base_kind = {digital::Axis::X, +1});

  bool is_ideal() const { return ideal_; }
  /// Duration of one rotation once placed on `reg`.
  double duration(const RegisterSpec& reg) const;
  /// Sequence in the register it was optimised on. Throws for ideal libraries.
  const PulseSequence& sequence(RotationKind kind) const;
  double phase_shift(RotationKind kind) const;
  RotationKind base_kind() const { return base_kind_; }

  /// Steps realising `kind` on `reg`, tagged `tag`.
  std::vector<ScheduleStep> steps(RotationKind kind, const RegisterSpec& reg,
                                  const std::string& tag) const;

  /// Trace fidelity of each rotation on the NN model of `reg`.
  std::array<double, 4> fidelities(const RegisterSpec& reg) const;

 private:
  static std::size_t index(RotationKind kind);

  bool ideal_ = true;
  double ideal_duration_ = 0.0;
  RotationKind base_kind_{};
  std::array<PulseSequence, 4> seqs_{};
  std::array<double, 4> shifts_{};
};

CompiledSchedule compile_rz_layer(std::span<const double> thetas, const RegisterSpec& reg);

CompiledSchedule compile_global_rotation(RotationKind kind, const RegisterSpec& reg,
                                         const RotationLibrary& lib);

/// Rx(theta) = RY(pi/2) Rz(theta) RY(-pi/2) and
/// Ry(theta) = RX(-pi/2) Rz(theta) RX(pi/2), per qubit.
CompiledSchedule compile_local_rotation_layer(digital::Axis axis, std::span<const double> thetas,
                                              const RegisterSpec& reg, const RotationLibrary& lib);

/// X_S (sum K n n) X_S written back in the n basis:
/// sum K'_ij n_i n_j + sum c_k n_k + constant.
struct ConjugatedInteraction {
  RMatrix coupling;
  RVector linear;
  double constant = 0.0;
};

ConjugatedInteraction conjugate_interaction(const RegisterSpec& reg, std::uint64_t flip_mask);

struct RefocusPlan {
  std::vector<std::pair<int, int>> keep;  // normalised, i < j
  std::vector<int> flip;                  // qubits flipped around the first half-pulse
  RVector delta_star;                     // detuning applied in the second half-pulse
  double half_duration = 0.0;

  std::uint64_t flip_mask() const;
};

/// Chooses the flip set for a CZ layer on the NN edges `keep`.
/// Throws Error(Unrealizable) when the periodic parity rule forbids it.
RefocusPlan plan_refocus(std::span<const std::pair<int, int>> keep, const RegisterSpec& reg);

CompiledSchedule compile_cz_layer(std::span<const std::pair<int, int>> keep, const RegisterSpec& reg,
                                  const RotationLibrary& lib);

/// A two-qubit gate written as local Ry layers on (a, b) interleaved with
/// CZ(a, b): ry[0], CZ, ry[1], CZ, ..., ry.back(), in time order.
struct TwoQubitProgram {
  int a = -1;
  int b = -1;
  std::vector<std::pair<double, double>> ry;

  int cz_count() const { return static_cast<int>(ry.size()) - 1; }
};

TwoQubitProgram lower_cnot(int control, int target);
TwoQubitProgram lower_swap(int a, int b);
TwoQubitProgram lower_givens_swap(int i, int j, double theta);

/// Exact unitary of a lowered gate on n qubits.
Unitary program_unitary(const TwoQubitProgram& p, int n_qubits);

CompiledSchedule compile_cnot(int control, int target, const RegisterSpec& reg,
                              const RotationLibrary& lib);

CompiledSchedule compile_swap(int a, int b, const RegisterSpec& reg, const RotationLibrary& lib);

CompiledSchedule compile_givens_swap(int i, int j, double theta, const RegisterSpec& reg,
                                     const RotationLibrary& lib);

/// Parameters for symbolic duration accounting.
struct DurationParams {
  double rotation_time = kReferenceRotationUs;  // T, one global rotation
  double J = 0.0;                               // rad/us

  static DurationParams reference();
  double rz_time() const;
};

/// Closed-form duration of one gate as compiled here. Names: RZ, GLOBAL,
/// LOCAL, CZ, CNOT, SWAP, GSWAP.
double gate_duration(const std::string& gate, const DurationParams& p);

/// Every gate above, in that order.
std::vector<LedgerEntry> duration_table(const DurationParams& p);

}  // namespace rydgate
