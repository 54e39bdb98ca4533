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
#include <utility>
#include <vector>

#include "rydgate/common.hpp"

namespace rydgate {

// Basis convention used throughout: computational index b encodes
// |q_{N-1} ... q_1 q_0>, qubit 0 is the least significant bit. |1> is the
// Rydberg state, so n|1> = |1> and sigma_z|0> = +|0>.

enum class Geometry { ChainOpen, ChainPeriodic, Ring };
enum class InteractionMode { NearestNeighbour, FullTail };

/// Atom register: geometry plus van der Waals coefficient. Units are
/// micrometres for lengths and rad/us for c6 / r^6 (hbar = 1).
struct RegisterSpec {
  int n_qubits = 2;
  Geometry geometry = Geometry::ChainOpen;
  double spacing_um = 1.0;
  double c6 = 1.0;  // rad * um^6 / us
  InteractionMode interaction = InteractionMode::NearestNeighbour;

  /// Throws Error(InvalidInput) when n < 2, spacing <= 0 or c6 <= 0.
  void validate() const;

  /// Nearest-neighbour coupling J = c6 / r^6.
  double nn_coupling() const;

  /// Builds a register whose nearest-neighbour coupling equals `J`.
  static RegisterSpec with_coupling(int n_qubits, Geometry geometry, double J,
                                    InteractionMode mode = InteractionMode::NearestNeighbour,
                                    double spacing_um = 1.0);

  /// Atom coordinates in the plane. Chains lie on the x axis; rings sit on a
  /// circle whose chord between neighbours equals the spacing.
  std::vector<std::pair<double, double>> positions() const;

  /// Pairwise distance used by the interaction law. Chain PBC uses the
  /// minimum image along the chain.
  double distance(int i, int j) const;

  /// Nearest-neighbour edges (i < j except the PBC / ring closing edge, which
  /// is stored as (N-1, 0)).
  std::vector<std::pair<int, int>> nn_edges() const;

  RegisterSpec with_interaction(InteractionMode mode) const;
  RegisterSpec with_qubits(int n) const;
  RegisterSpec with_geometry(Geometry g) const;

  bool operator==(const RegisterSpec&) const = default;
};

std::string to_string(Geometry g);
std::string to_string(InteractionMode m);

/// Symmetric, non-negative, zero-diagonal coupling matrix K_ij (rad/us).
RMatrix coupling_matrix(const RegisterSpec& spec);

/// One piecewise-constant control segment of the Ising Hamiltonian.
struct PulseSegment {
  double omega = 0.0;   // Rabi frequency, rad/us
  double phi = 0.0;     // laser phase, rad
  RVector delta;        // per-qubit detuning, rad/us
  double duration = 0.0;  // us
  std::string tag;

  static PulseSegment uniform(int n_qubits, double omega, double phi, double delta,
                              double duration, std::string tag = {});
  static PulseSegment free_evolution(int n_qubits, double duration, std::string tag = {});

  bool has_uniform_delta() const;
  /// Omega < J and max |delta| < 2J.
  bool within_global_bounds(double J) const;
  /// Throws on non-positive duration, negative omega or a wrong delta length.
  void validate(int n_qubits) const;
};

/// Time-ordered pulse train: segments.front() acts first.
struct PulseSequence {
  RegisterSpec reg;
  std::vector<PulseSegment> segments;

  double total_duration() const;
  void validate() const;
};

/// Dense Hamiltonian of one segment:
///   H = sum_j (omega/2)(cos phi X_j - sin phi Y_j) - sum_j (delta_j/2) Z_j
///       + sum_{i<j} K_ij n_i n_j.
CMatrix hamiltonian(const RegisterSpec& spec, const PulseSegment& seg,
                    const DenseLimits& limits = {});

/// Diagonal of H (detuning plus interaction part), length 2^N. Shared by the
/// dense and matrix-free paths.
RVector diagonal_energies(const RegisterSpec& spec, const RMatrix& coupling,
                          const RVector& delta);

}  // namespace rydgate
