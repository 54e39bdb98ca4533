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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rydgate/gatelib.hpp"

namespace rydgate {

enum class LayerKind { Rz, LocalRx, LocalRy, GlobalRot, Cz, Cnot, Swap, GivensSwap, Barrier };

struct GateLayer {
  LayerKind kind = LayerKind::Barrier;
  std::vector<double> angles;              // Rz, LocalRx, LocalRy
  std::vector<std::pair<int, int>> edges;  // Cz
  int a = -1;                              // Cnot control, Swap / GivensSwap first qubit
  int b = -1;
  double theta = 0.0;                      // GivensSwap
  RotationKind rotation{};                 // GlobalRot

  static GateLayer rz(std::vector<double> angles);
  static GateLayer local(digital::Axis axis, std::vector<double> angles);
  static GateLayer global(RotationKind kind);
  static GateLayer cz(std::vector<std::pair<int, int>> edges);
  static GateLayer cnot(int control, int target);
  static GateLayer swap(int i, int j);
  static GateLayer givens_swap(int i, int j, double theta);
  static GateLayer barrier();
};

struct CircuitIR {
  int n_qubits = 0;
  std::vector<GateLayer> layers;

  /// Index ranges and angle counts. Connectivity is checked at compile time.
  void validate() const;
};

/// One layer per line:
///   RZ t0 t1 ...      RX t0 t1 ...      RY t0 t1 ...
///   GLOBALROT X +     CZ (0,1) (2,3)    CNOT 0 1
///   SWAP 1 2          GSWAP 1 2 0.7     BARRIER
/// Blank lines and text after '#' are ignored.
CircuitIR parse_circuit(const std::string& text, int n_qubits);
std::string format_circuit(const CircuitIR& circuit);

/// Exact unitary of the circuit with ideal gates.
Unitary circuit_unitary(const CircuitIR& circuit);

/// Ideal circuit applied to a state, gate by gate (no dense unitary).
StateVector circuit_state(const CircuitIR& circuit, const StateVector& psi);

/// Lowers CNOT, SWAP and GSWAP to Ry / CZ stages, runs consecutive gates on
/// disjoint pairs side by side and merges neighbouring Ry layers (local Ry
/// layers of the circuit included). BARRIER stops merging. The ledger lists
/// the primitive layers actually emitted.
CompiledSchedule compile_circuit(const CircuitIR& circuit, const RegisterSpec& reg,
                                 const RotationLibrary& lib);

struct NetworkPayload {
  bool givens = false;          // Givens-SWAPs instead of SWAPs
  std::vector<double> thetas;   // one per gate in network order; empty means all zero
  int layers = -1;              // brick layers, -1 for a full network of n layers
  /// Logical (control, target): a CNOT is inserted the first time the two
  /// logical qubits sit on neighbouring sites.
  std::optional<std::pair<int, int>> cnot;
  bool stop_after_cnot = false;
};

/// Brick pattern of neighbour exchanges on a linear chain. Layer k acts on
/// pairs (p, p+1) with p = k mod 2, so n layers reverse the qubit order and
/// bring every pair of logical qubits together exactly once.
CircuitIR compile_swap_network(int n_qubits, const NetworkPayload& payload = {});

/// Number of two-qubit exchanges in `layers` brick layers on n qubits.
int network_gate_count(int n_qubits, int layers);

/// Site of each logical qubit after the exchange layers of a network.
std::vector<int> network_positions(const CircuitIR& circuit);

}  // namespace rydgate
