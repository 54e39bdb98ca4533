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

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "rydgate/register.hpp"
#include "testing.hpp"

namespace rydgate {
namespace {

using testing::expect_error;

// Kronecker-product construction, qubit 0 rightmost.
CMatrix embed(int n, int q, const CMatrix& op) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) {
    CMatrix f = (k == q) ? op : CMatrix::Identity(2, 2);
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

CMatrix oracle_hamiltonian(const RegisterSpec& reg, const PulseSegment& seg) {
  const int n = reg.n_qubits;
  CMatrix X(2, 2), Y(2, 2), Z(2, 2), N(2, 2);
  X << 0, 1, 1, 0;
  Y << 0, Complex(0, -1), Complex(0, 1), 0;
  Z << 1, 0, 0, -1;
  N << 0, 0, 0, 1;
  const RMatrix K = coupling_matrix(reg);
  CMatrix h = CMatrix::Zero(1 << n, 1 << n);
  for (int j = 0; j < n; ++j) {
    h += (seg.omega / 2) * (std::cos(seg.phi) * embed(n, j, X) - std::sin(seg.phi) * embed(n, j, Y));
    h -= (seg.delta(j) / 2) * embed(n, j, Z);
    for (int k = j + 1; k < n; ++k) h += K(j, k) * embed(n, j, N) * embed(n, k, N);
  }
  return h;
}

TEST(Register, ValidateRejectsBadInput) {
  RegisterSpec r;
  r.n_qubits = 1;
  expect_error(ErrorKind::InvalidInput, [&] { r.validate(); });
  r.n_qubits = 3;
  r.spacing_um = 0.0;
  expect_error(ErrorKind::InvalidInput, [&] { r.validate(); });
  r.spacing_um = 1.0;
  r.c6 = -1.0;
  expect_error(ErrorKind::InvalidInput, [&] { r.validate(); });
}

TEST(Register, CouplingFromC6) {
  RegisterSpec r;
  r.n_qubits = 3;
  r.spacing_um = 2.0;
  r.c6 = 640.0;
  EXPECT_DOUBLE_EQ(r.nn_coupling(), 10.0);
  auto w = RegisterSpec::with_coupling(5, Geometry::Ring, 3.5, InteractionMode::FullTail, 4.0);
  EXPECT_NEAR(w.nn_coupling(), 3.5, 1e-12);
  EXPECT_EQ(w.interaction, InteractionMode::FullTail);
}

TEST(Register, NearestNeighbourEdges) {
  auto open = RegisterSpec::with_coupling(4, Geometry::ChainOpen, 1.0);
  EXPECT_EQ(open.nn_edges(), (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}}));
  auto pbc = open.with_geometry(Geometry::ChainPeriodic);
  EXPECT_EQ(pbc.nn_edges(), (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  EXPECT_EQ(pbc.with_qubits(2).nn_edges().size(), 1u);
}

TEST(Register, CouplingMatrixNearestNeighbour) {
  auto r = RegisterSpec::with_coupling(5, Geometry::ChainPeriodic, 2.0);
  RMatrix k = coupling_matrix(r);
  EXPECT_TRUE(k.isApprox(k.transpose()));
  EXPECT_DOUBLE_EQ(k(0, 4), 2.0);
  EXPECT_DOUBLE_EQ(k(1, 2), 2.0);
  EXPECT_DOUBLE_EQ(k(0, 2), 0.0);
  EXPECT_DOUBLE_EQ(k.diagonal().cwiseAbs().maxCoeff(), 0.0);
}

TEST(Register, FullTailFollowsInverseSixthPower) {
  auto r = RegisterSpec::with_coupling(6, Geometry::ChainOpen, 1.0, InteractionMode::FullTail);
  RMatrix k = coupling_matrix(r);
  for (int d = 1; d < 6; ++d) EXPECT_NEAR(k(0, d), std::pow(d, -6.0), 1e-14);
  auto pbc = r.with_geometry(Geometry::ChainPeriodic);
  EXPECT_NEAR(coupling_matrix(pbc)(0, 5), 1.0, 1e-14);  // minimum image
  EXPECT_NEAR(coupling_matrix(pbc)(0, 3), std::pow(3.0, -6.0), 1e-14);
}

TEST(Register, RingChordsEqualSpacing) {
  for (int n : {3, 4, 7, 12}) {
    auto r = RegisterSpec::with_coupling(n, Geometry::Ring, 1.0, InteractionMode::FullTail, 6.24);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(r.distance(i, (i + 1) % n), 6.24, 1e-12);
    // Next-nearest chord is 2 s cos(pi / n).
    EXPECT_NEAR(r.distance(0, 2), 2 * 6.24 * std::cos(kPi / n), 1e-12);
  }
}

TEST(Register, HamiltonianMatchesKroneckerOracle) {
  std::mt19937_64 rng(3);
  for (auto g : {Geometry::ChainOpen, Geometry::ChainPeriodic, Geometry::Ring}) {
    for (auto mode : {InteractionMode::NearestNeighbour, InteractionMode::FullTail}) {
      for (int n = 2; n <= 5; ++n) {
        auto r = RegisterSpec::with_coupling(n, g, 7.0, mode);
        auto seg = testing::random_segment(rng, n, 7.0);
        CMatrix h = hamiltonian(r, seg);
        EXPECT_LT((h - oracle_hamiltonian(r, seg)).norm(), 1e-12);
        EXPECT_LT((h - h.adjoint()).norm(), 1e-14);
      }
    }
  }
}

TEST(Register, TwoQubitInteractionOnlyOnDoublyExcited) {
  auto r = RegisterSpec::with_coupling(2, Geometry::ChainOpen, 3.0);
  CMatrix h = hamiltonian(r, PulseSegment::free_evolution(2, 1.0));
  EXPECT_LT((h - Eigen::Vector4cd(0, 0, 0, 3.0).asDiagonal().toDenseMatrix()).norm(), 1e-15);
}

TEST(Register, DiagonalEnergiesAgreeWithDense) {
  std::mt19937_64 rng(4);
  auto r = RegisterSpec::with_coupling(4, Geometry::Ring, 2.0, InteractionMode::FullTail);
  auto seg = testing::random_segment(rng, 4, 2.0);
  seg.omega = 0.0;
  RVector d = diagonal_energies(r, coupling_matrix(r), seg.delta);
  EXPECT_LT((d - hamiltonian(r, seg).diagonal().real()).norm(), 1e-13);
}

TEST(Register, SegmentValidation) {
  auto seg = PulseSegment::uniform(3, 1.0, 0.0, 0.5, 0.1);
  EXPECT_NO_THROW(seg.validate(3));
  expect_error(ErrorKind::InvalidInput, [&] { seg.validate(4); });
  seg.duration = 0.0;
  expect_error(ErrorKind::InvalidInput, [&] { seg.validate(3); });
  seg.duration = 0.1;
  seg.omega = -1.0;
  expect_error(ErrorKind::InvalidInput, [&] { seg.validate(3); });
}

TEST(Register, GlobalBoundsAreStrict) {
  auto seg = PulseSegment::uniform(2, 0.99, 0.0, 1.99, 0.1);
  EXPECT_TRUE(seg.within_global_bounds(1.0));
  seg.omega = 1.0;
  EXPECT_FALSE(seg.within_global_bounds(1.0));
  seg.omega = 0.5;
  seg.delta(1) = -2.0;
  EXPECT_FALSE(seg.within_global_bounds(1.0));
  EXPECT_FALSE(seg.has_uniform_delta());
}

TEST(Register, DenseLimitEnforced) {
  auto r = RegisterSpec::with_coupling(5, Geometry::ChainOpen, 1.0);
  DenseLimits tight;
  tight.max_unitary_qubits = 4;
  expect_error(ErrorKind::TooLarge, [&] { hamiltonian(r, PulseSegment::free_evolution(5, 1.0), tight); });
}

}  // namespace
}  // namespace rydgate
