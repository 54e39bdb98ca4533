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

#include "rydgate/propagator.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

namespace rydgate {
namespace {

int log2_dim(Eigen::Index dim) {
  if (dim <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw Error(ErrorKind::InvalidInput, "dimension is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

// H v for the Ising Hamiltonian with a global drive; `diag` holds the
// detuning and interaction part.
void apply_h(int n, const RVector& diag, Complex up, const CVector& v, CVector& out) {
  out.array() = diag.array().cast<Complex>() * v.array();
  if (up == Complex{0.0, 0.0}) return;
  const Complex down = std::conj(up);
  const Eigen::Index dim = v.size();
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bit = Eigen::Index{1} << q;
    for (Eigen::Index base = 0; base < dim; base += 2 * bit) {
      for (Eigen::Index b = base; b < base + bit; ++b) {
        out(b | bit) += up * v(b);
        out(b) += down * v(b | bit);
      }
    }
  }
}

}  // namespace

Unitary::Unitary(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw Error(ErrorKind::InvalidInput, "unitary must be square");
  }
  log2_dim(m_.rows());
}

Unitary Unitary::identity(int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return Unitary(CMatrix::Identity(dim, dim));
}

int Unitary::n_qubits() const { return log2_dim(m_.rows()); }

double Unitary::unitarity_error() const {
  return (m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols())).norm();
}

Unitary operator*(const Unitary& a, const Unitary& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::InvalidInput, "unitary dimension mismatch");
  }
  return Unitary(a.m_ * b.m_);
}

StateVector::StateVector(CVector amplitudes) : v_(std::move(amplitudes)) { log2_dim(v_.size()); }

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (static_cast<Eigen::Index>(index) >= dim) {
    throw Error(ErrorKind::InvalidInput, "basis index out of range");
  }
  CVector v = CVector::Zero(dim);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

int StateVector::n_qubits() const { return log2_dim(v_.size()); }

StateVector operator*(const Unitary& u, const StateVector& psi) {
  if (u.dim() != psi.dim()) {
    throw Error(ErrorKind::InvalidInput, "state / unitary dimension mismatch");
  }
  return StateVector(u.matrix() * psi.amplitudes());
}

Unitary segment_unitary(const RegisterSpec& spec, const PulseSegment& seg,
                        const DenseLimits& limits) {
  seg.validate(spec.n_qubits);
  const CMatrix h = hamiltonian(spec, seg, limits);
  const double herm_err = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-10 * (1.0 + h.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::Internal, "hamiltonian is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::Internal, "eigendecomposition failed");
  }
  const CVector phases =
      (eig.eigenvalues().array() * (-seg.duration)).unaryExpr([](double a) {
        return std::polar(1.0, a);
      });
  const CMatrix& v = eig.eigenvectors();
  return Unitary(v * phases.asDiagonal() * v.adjoint());
}

Unitary sequence_unitary(const PulseSequence& seq, const DenseLimits& limits) {
  seq.validate();
  Unitary u = Unitary::identity(seq.reg.n_qubits);
  for (const auto& seg : seq.segments) {
    u = segment_unitary(seq.reg, seg, limits) * u;
  }
  return u;
}

RVector bessel_j_sequence(int kmax, double x) {
  RVector j = RVector::Zero(kmax + 1);
  if (x == 0.0) {
    j(0) = 1.0;
    return j;
  }
  const double ax = std::abs(x);
  // start well above both kmax and |x| so the recurrence has settled
  const int start = 2 * ((std::max(kmax, static_cast<int>(ax)) + 30 +
                          static_cast<int>(std::sqrt(40.0 * std::max(kmax, 1)))) /
                         2);
  double next = 0.0;
  double cur = 1e-300;
  double norm = 0.0;
  std::vector<double> tmp(static_cast<std::size_t>(start) + 2, 0.0);
  tmp[static_cast<std::size_t>(start)] = cur;
  for (int k = start; k > 0; --k) {
    const double prev = 2.0 * k / ax * cur - next;
    next = cur;
    cur = prev;
    tmp[static_cast<std::size_t>(k - 1)] = cur;
    if (std::abs(cur) > 1e250) {
      for (int m = k - 1; m <= start; ++m) tmp[static_cast<std::size_t>(m)] *= 1e-250;
      next *= 1e-250;
      cur *= 1e-250;
    }
  }
  // J_0 + 2 sum J_2k = 1
  norm = tmp[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * tmp[static_cast<std::size_t>(k)];
  for (int k = 0; k <= kmax; ++k) {
    double v = tmp[static_cast<std::size_t>(k)] / norm;
    if (x < 0.0 && (k % 2 == 1)) v = -v;
    j(k) = v;
  }
  return j;
}

void apply_segment_chebyshev(const RegisterSpec& spec, const RMatrix& coupling,
                             const PulseSegment& seg, CVector& psi) {
  const int n = spec.n_qubits;
  const RVector diag = diagonal_energies(spec, coupling, seg.delta);
  const double t = seg.duration;
  if (seg.omega == 0.0) {
    psi.array() *= diag.array().unaryExpr([t](double e) { return std::polar(1.0, -e * t); });
    return;
  }
  const Complex up = 0.5 * seg.omega * std::polar(1.0, -seg.phi);
  // Weyl bound: the drive has spectral radius N * omega / 2
  const double drive = 0.5 * n * seg.omega;
  const double lo = diag.minCoeff() - drive;
  const double hi = diag.maxCoeff() + drive;
  const double centre = 0.5 * (hi + lo);
  const double half_width = 0.5 * (hi - lo) * 1.0001 + 1e-12;

  const double x = half_width * t;
  const int kmax = static_cast<int>(x + 10.0 * std::cbrt(x) + 40.0);
  const RVector jk = bessel_j_sequence(kmax, x);
  int kstop = kmax;
  for (int k = static_cast<int>(x) + 1; k <= kmax; ++k) {
    if (std::abs(jk(k)) < 1e-16) {
      kstop = k;
      break;
    }
  }

  const RVector scaled_diag = (diag.array() - centre) / half_width;
  const Complex scaled_up = up / half_width;
  CVector t_prev = psi;
  CVector t_cur(psi.size());
  apply_h(n, scaled_diag, scaled_up, t_prev, t_cur);
  CVector acc = jk(0) * t_prev + 2.0 * Complex(0.0, -1.0) * jk(1) * t_cur;
  CVector t_next(psi.size());
  Complex phase_k(0.0, -1.0);
  for (int k = 2; k <= kstop; ++k) {
    apply_h(n, scaled_diag, scaled_up, t_cur, t_next);
    t_next = 2.0 * t_next - t_prev;
    phase_k *= Complex(0.0, -1.0);
    acc += (2.0 * jk(k)) * phase_k * t_next;
    std::swap(t_prev, t_cur);
    std::swap(t_cur, t_next);
  }
  psi = std::polar(1.0, -centre * t) * acc;
}

StateVector evolve_state(const PulseSequence& seq, const StateVector& psi0, EvolveMethod method,
                         const DenseLimits& limits) {
  seq.validate();
  const int n = seq.reg.n_qubits;
  if (psi0.n_qubits() != n) {
    throw Error(ErrorKind::InvalidInput, "state dimension does not match register");
  }
  if (n > limits.max_state_qubits) {
    throw Error(ErrorKind::TooLarge, "register too large for state-vector mode");
  }
  if (method == EvolveMethod::Auto) {
    method = n <= 10 ? EvolveMethod::Dense : EvolveMethod::Chebyshev;
  }
  CVector psi = psi0.amplitudes();
  if (method == EvolveMethod::Dense) {
    for (const auto& seg : seq.segments) {
      psi = segment_unitary(seq.reg, seg, limits).matrix() * psi;
    }
  } else {
    const RMatrix k = coupling_matrix(seq.reg);
    for (const auto& seg : seq.segments) {
      apply_segment_chebyshev(seq.reg, k, seg, psi);
    }
  }
  return StateVector(std::move(psi));
}

void apply_single_qubit_gate(CVector& psi, int n_qubits, const Eigen::Matrix2cd& gate,
                             int qubit) {
  const Eigen::Index bit = Eigen::Index{1} << qubit;
  const Eigen::Index dim = psi.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * bit) {
    for (Eigen::Index b = base; b < base + bit; ++b) {
      const Complex a0 = psi(b);
      const Complex a1 = psi(b | bit);
      psi(b) = gate(0, 0) * a0 + gate(0, 1) * a1;
      psi(b | bit) = gate(1, 0) * a0 + gate(1, 1) * a1;
    }
  }
  (void)n_qubits;
}

void apply_single_qubit_gate(CVector& psi, int n_qubits, const Eigen::Matrix2cd& gate,
                             std::span<const int> qubits) {
  if (qubits.empty()) {
    for (int q = 0; q < n_qubits; ++q) apply_single_qubit_gate(psi, n_qubits, gate, q);
    return;
  }
  for (int q : qubits) apply_single_qubit_gate(psi, n_qubits, gate, q);
}

void apply_two_qubit_gate(CVector& psi, const Eigen::Matrix4cd& gate, int a, int b) {
  const Eigen::Index ba = Eigen::Index{1} << a;
  const Eigen::Index bb = Eigen::Index{1} << b;
  for (Eigen::Index base = 0; base < psi.size(); ++base) {
    if (base & (ba | bb)) continue;
    const Eigen::Index idx[4] = {base, base | bb, base | ba, base | ba | bb};
    Eigen::Vector4cd v(psi(idx[0]), psi(idx[1]), psi(idx[2]), psi(idx[3]));
    v = gate * v;
    for (int r = 0; r < 4; ++r) psi(idx[r]) = v(r);
  }
}

}  // namespace rydgate
