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

#include "rydgate/digital.hpp"

#include <cmath>

namespace rydgate::digital {
namespace {

const Complex kI(0.0, 1.0);

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void check_qubit(int n_qubits, int q) {
  if (q < 0 || q >= n_qubits) {
    throw Error(ErrorKind::InvalidInput, "qubit index " + std::to_string(q) + " out of range");
  }
}

}  // namespace

Matrix2 rz(double theta) {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = std::polar(1.0, -0.5 * theta);
  m(1, 1) = std::polar(1.0, 0.5 * theta);
  return m;
}

Matrix2 rx(double theta) { return equatorial_rotation(0.0, theta); }
Matrix2 ry(double theta) { return equatorial_rotation(0.5 * kPi, theta); }

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2 pauli_z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}

Matrix2 equatorial_rotation(double axis_angle, double theta) {
  // exp(-i theta/2 (cos a X + sin a Y))
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Matrix2 m;
  m(0, 0) = c;
  m(1, 1) = c;
  m(0, 1) = -kI * s * std::polar(1.0, -axis_angle);
  m(1, 0) = -kI * s * std::polar(1.0, axis_angle);
  return m;
}

Unitary global(int n_qubits, const Matrix2& gate) {
  std::vector<Matrix2> gates(static_cast<std::size_t>(n_qubits), gate);
  return product(gates);
}

Unitary product(std::span<const Matrix2> gates) {
  // qubit 0 is least significant, so it is the rightmost Kronecker factor
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& g : gates) out = kron(g, out);
  return Unitary(std::move(out));
}

Unitary global_rotation(int n_qubits, Axis axis, int sign) {
  const double angle = sign >= 0 ? 0.5 * kPi : -0.5 * kPi;
  return global(n_qubits, axis == Axis::X ? rx(angle) : ry(angle));
}

Unitary rz_layer(std::span<const double> thetas) {
  std::vector<Matrix2> gates;
  for (double t : thetas) gates.push_back(rz(t));
  return product(gates);
}

Unitary local_rotation_layer(Axis axis, std::span<const double> thetas) {
  std::vector<Matrix2> gates;
  for (double t : thetas) gates.push_back(axis == Axis::X ? rx(t) : ry(t));
  return product(gates);
}

Unitary two_qubit(int n_qubits, int a, int b, const Matrix4& gate) {
  check_qubit(n_qubits, a);
  check_qubit(n_qubits, b);
  if (a == b) throw Error(ErrorKind::InvalidInput, "two-qubit gate needs distinct qubits");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  const Eigen::Index ba = Eigen::Index{1} << a;
  const Eigen::Index bb = Eigen::Index{1} << b;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int in = 2 * ((col & ba) ? 1 : 0) + ((col & bb) ? 1 : 0);
    const Eigen::Index rest = col & ~(ba | bb);
    for (int o = 0; o < 4; ++o) {
      const Complex amp = gate(o, in);
      if (amp == Complex(0.0, 0.0)) continue;
      Eigen::Index row = rest;
      if (o & 2) row |= ba;
      if (o & 1) row |= bb;
      out(row, col) += amp;
    }
  }
  return Unitary(std::move(out));
}

Matrix4 cz4() {
  Matrix4 m = Matrix4::Identity();
  m(3, 3) = -1.0;
  return m;
}

Matrix4 cnot4() {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(3, 2) = 1.0;
  m(2, 3) = 1.0;
  return m;
}

Matrix4 swap4() {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = 1.0;
  m(2, 1) = 1.0;
  m(1, 2) = 1.0;
  m(3, 3) = 1.0;
  return m;
}

Matrix4 givens_swap4(double theta) {
  Matrix4 g = Matrix4::Identity();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  g(1, 1) = c;
  g(1, 2) = -s;
  g(2, 1) = s;
  g(2, 2) = c;
  return swap4() * g;
}

Unitary cz_product(int n_qubits, std::span<const std::pair<int, int>> edges) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  CVector d = CVector::Ones(dim);
  for (const auto& [a, b] : edges) {
    check_qubit(n_qubits, a);
    check_qubit(n_qubits, b);
    for (Eigen::Index x = 0; x < dim; ++x) {
      if (((x >> a) & 1) && ((x >> b) & 1)) d(x) = -d(x);
    }
  }
  return Unitary(CMatrix(d.asDiagonal()));
}

Unitary cnot(int n_qubits, int control, int target) {
  return two_qubit(n_qubits, control, target, cnot4());
}

Unitary swap(int n_qubits, int a, int b) { return two_qubit(n_qubits, a, b, swap4()); }

Unitary givens_swap(int n_qubits, int a, int b, double theta) {
  return two_qubit(n_qubits, a, b, givens_swap4(theta));
}

Unitary permutation(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index row = 0;
    for (int q = 0; q < n; ++q) {
      if ((col >> q) & 1) row |= Eigen::Index{1} << perm[static_cast<std::size_t>(q)];
    }
    out(row, col) = 1.0;
  }
  return Unitary(std::move(out));
}

Unitary x_string(int n_qubits, std::uint64_t flip_mask) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    out(col ^ static_cast<Eigen::Index>(flip_mask), col) = 1.0;
  }
  return Unitary(std::move(out));
}

}  // namespace rydgate::digital
