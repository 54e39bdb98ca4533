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
#include <span>

#include "rydgate/common.hpp"
#include "rydgate/register.hpp"

namespace rydgate {

/// Dense operator on the 2^N computational space.
class Unitary {
 public:
  Unitary() = default;
  explicit Unitary(CMatrix m);

  static Unitary identity(int n_qubits);

  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  int n_qubits() const;

  Unitary adjoint() const { return Unitary(m_.adjoint()); }
  /// ||U^dagger U - I||_F
  double unitarity_error() const;

  friend Unitary operator*(const Unitary& a, const Unitary& b);

 private:
  CMatrix m_;
};

/// Normalised amplitude vector on the 2^N computational space.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(CVector amplitudes);

  static StateVector basis(int n_qubits, std::uint64_t index);
  static StateVector zeros(int n_qubits) { return basis(n_qubits, 0); }

  const CVector& amplitudes() const { return v_; }
  CVector& amplitudes() { return v_; }
  Eigen::Index dim() const { return v_.size(); }
  int n_qubits() const;
  double norm() const { return v_.norm(); }

 private:
  CVector v_;
};

StateVector operator*(const Unitary& u, const StateVector& psi);

/// exp(-i H t) for one segment via Hermitian eigendecomposition.
Unitary segment_unitary(const RegisterSpec& spec, const PulseSegment& seg,
                        const DenseLimits& limits = {});

/// U_k ... U_2 U_1 with segments[0] = U_1 acting first.
Unitary sequence_unitary(const PulseSequence& seq, const DenseLimits& limits = {});

enum class EvolveMethod {
  Auto,       // dense per-segment exponentials up to 10 qubits, Chebyshev above
  Dense,      // per-segment eigendecomposition applied to the vector
  Chebyshev,  // matrix-free Chebyshev expansion of exp(-iHt) acting on the vector
};

StateVector evolve_state(const PulseSequence& seq, const StateVector& psi0,
                         EvolveMethod method = EvolveMethod::Auto,
                         const DenseLimits& limits = {});

/// Applies one segment's evolution in place, matrix-free. `coupling` must be
/// coupling_matrix(spec); passing it avoids rebuilding it per segment.
void apply_segment_chebyshev(const RegisterSpec& spec, const RMatrix& coupling,
                             const PulseSegment& seg, CVector& psi);

/// Applies the same 2x2 gate to every qubit listed in `qubits` (all when
/// empty). Works at any register size.
void apply_single_qubit_gate(CVector& psi, int n_qubits, const Eigen::Matrix2cd& gate,
                             std::span<const int> qubits = {});

/// Applies a 2x2 gate to one qubit.
void apply_single_qubit_gate(CVector& psi, int n_qubits, const Eigen::Matrix2cd& gate, int qubit);

/// Applies a 4x4 gate to qubits (a, b), indexed by 2 * bit_a + bit_b.
void apply_two_qubit_gate(CVector& psi, const Eigen::Matrix4cd& gate, int a, int b);

/// Bessel J_0..J_kmax at x, by Miller's backward recurrence.
RVector bessel_j_sequence(int kmax, double x);

}  // namespace rydgate
