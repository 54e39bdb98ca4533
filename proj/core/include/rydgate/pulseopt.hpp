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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rydgate/digital.hpp"
#include "rydgate/metrics.hpp"
#include "rydgate/register.hpp"

namespace rydgate {

/// A global +-pi/2 rotation about X or Y.
struct RotationKind {
  digital::Axis axis = digital::Axis::X;
  int sign = +1;

  /// Angle of the rotation axis in the xy plane, pi added for negative sign.
  double axis_angle() const;
  bool operator==(const RotationKind&) const = default;
};

std::string to_string(RotationKind kind);  // "rx+", "rx-", "ry+", "ry-"
RotationKind parse_rotation_kind(const std::string& text);
Unitary rotation_target(int n_qubits, RotationKind kind);

struct OptimizerConfig {
  int p_max = 3;
  double dt = 0.0;  // us; 0 selects 1.6 / J
  double threshold = 2e-3;
  int max_restarts = 20;
  std::uint64_t seed = 0;
  int max_iterations = 500;  // per stage
  double loss_tolerance = 1e-10;
  double fd_step = 1e-6;
  double bound_margin = 1e-6;  // keeps the strict box inequalities strict, in units of J
  int jobs = 1;

  void validate() const;
  double resolved_dt(double J) const { return dt > 0.0 ? dt : 1.6 / J; }
};

struct StageRecord {
  int stage = 0;
  int n_segments = 1;
  double start_loss = 1.0;
  double loss = 1.0;
  int iterations = 0;
  int evaluations = 0;
};

struct RestartRecord {
  int index = 0;
  std::vector<StageRecord> stages;
  double loss() const { return stages.empty() ? 1.0 : stages.back().loss; }
};

struct OptimizationTrace {
  std::vector<RestartRecord> restarts;
  int best_restart = -1;
  double best_loss = 1.0;
  bool converged = false;
  double wall_seconds = 0.0;

  /// Lowest loss reached at each stage over all restarts.
  std::vector<double> stage_best() const;
};

struct RotationResult {
  PulseSequence sequence;
  OptimizationTrace trace;
};

/// Thrown when every restart misses the threshold. Carries the best attempt.
class OptimizationFailure : public Error {
 public:
  explicit OptimizationFailure(RotationResult best);
  const RotationResult& best() const { return best_; }

 private:
  RotationResult best_;
};

/// Variational synthesis of a global-control pulse sequence. Each restart
/// draws one random segment spanning T = 2^p_max dt, optimises it, then
/// repeatedly halves every segment and re-optimises until 2^p_max segments
/// of length dt remain.
RotationResult optimize_global_rotation(const Unitary& target, const RegisterSpec& reg,
                                        const OptimizerConfig& cfg);

/// Single-restart variant used by the restart loop, exposed for tests.
RestartRecord run_restart(const Unitary& target, const RegisterSpec& reg,
                          const OptimizerConfig& cfg, int restart_index,
                          PulseSequence* sequence_out);

/// 1 - gate fidelity of `seq` against `target`, with the fast global-control
/// propagator used by the optimizer.
double global_control_loss(const PulseSequence& seq, const Unitary& target);

/// Splits every segment into two halves carrying the same parameters.
PulseSequence split_sequence(const PulseSequence& seq);

/// Adds a constant to every segment phase.
PulseSequence shift_phases(const PulseSequence& seq, double delta_phi);

struct DerivedRotation {
  PulseSequence sequence;
  double phase_shift = 0.0;
  double fidelity = 0.0;
  double base_fidelity = 0.0;
};

/// Re-aims a global rotation sequence at another member of the +-pi/2 X/Y
/// family by a constant phase shift. Both shift signs are evaluated on the
/// NN model of the register and the better one is kept.
DerivedRotation derive_rotation_family(const PulseSequence& base, RotationKind from,
                                       RotationKind to);

/// Rescales a sequence optimised on one register onto another: detunings are
/// resized per qubit (they must be uniform) and all rates and durations are
/// rescaled so the sequence keeps its shape in units of J.
PulseSequence retarget(const PulseSequence& seq, const RegisterSpec& reg);

struct ScanPoint {
  double scale = 1.0;
  double duration = 0.0;
  double fidelity = 0.0;
};

struct ScanReport {
  std::vector<ScanPoint> points;
  std::size_t best = 0;
  const ScanPoint& best_point() const { return points.at(best); }
};

using SequenceMetric = std::function<double(const PulseSequence&)>;

/// Evaluates `metric` with segment durations multiplied by each of
/// `n_points` scales spread evenly over [scale_from, scale_to]. When
/// `tag_filter` is non-empty only segments whose tag contains it are
/// rescaled.
ScanReport refine_duration(const PulseSequence& seq, const SequenceMetric& metric,
                           double scale_from, double scale_to, int n_points,
                           const std::string& tag_filter = {});

PulseSequence scale_durations(const PulseSequence& seq, double scale,
                              const std::string& tag_filter = {});

}  // namespace rydgate
