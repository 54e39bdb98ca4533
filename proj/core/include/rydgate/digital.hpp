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

#include <span>
#include <utility>
#include <vector>

#include "rydgate/common.hpp"
#include "rydgate/propagator.hpp"

// Exact gate matrices. Conventions:
//   Rz(t) = exp(-i t Z / 2), Rx(t) = exp(-i t X / 2), Ry(t) = exp(-i t Y / 2).
//   Two-qubit 4x4 matrices on qubits (a, b) are indexed by 2 * bit_a + bit_b,
//   i.e. the first listed qubit is the more significant one.
namespace rydgate::digital {

using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

enum class Axis { X, Y };

Matrix2 rz(double theta);
Matrix2 rx(double theta);
Matrix2 ry(double theta);
Matrix2 pauli_x();
Matrix2 pauli_z();

/// Rotation by `theta` about the equatorial axis (cos a, sin a, 0).
Matrix2 equatorial_rotation(double axis_angle, double theta);

/// Same single-qubit gate on every qubit.
Unitary global(int n_qubits, const Matrix2& gate);
/// Per-qubit gates, gates[q] acts on qubit q.
Unitary product(std::span<const Matrix2> gates);

/// Global pi/2 rotation about X or Y with sign +1 / -1.
Unitary global_rotation(int n_qubits, Axis axis, int sign);

Unitary rz_layer(std::span<const double> thetas);
Unitary local_rotation_layer(Axis axis, std::span<const double> thetas);

/// Embeds a two-qubit gate acting on (a, b) into an n-qubit register.
Unitary two_qubit(int n_qubits, int a, int b, const Matrix4& gate);

Matrix4 cz4();
Matrix4 cnot4();  // control = first qubit
Matrix4 swap4();
/// Givens rotation followed by SWAP; block (|01>,|10>) = [[s, c], [c, -s]].
Matrix4 givens_swap4(double theta);

Unitary cz_product(int n_qubits, std::span<const std::pair<int, int>> edges);
Unitary cnot(int n_qubits, int control, int target);
Unitary swap(int n_qubits, int a, int b);
Unitary givens_swap(int n_qubits, int a, int b, double theta);

/// Qubit permutation: the state of qubit q moves to qubit perm[q].
Unitary permutation(std::span<const int> perm);

/// Flips the bits of `flip_mask`, i.e. the X string on that set.
Unitary x_string(int n_qubits, std::uint64_t flip_mask);

}  // namespace rydgate::digital
