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

#include "rydgate/gatelib.hpp"
#include "rydgate/io.hpp"
#include "testing.hpp"

namespace rydgate {
namespace {

using Edge = std::pair<int, int>;
using testing::expect_error;

double fid(const CompiledSchedule& s, const Unitary& g) { return gate_fidelity(s.unitary(), g).fidelity; }

RotationLibrary ideal() { return RotationLibrary::ideal(kReferenceRotationUs); }

RotationLibrary obc_library() {
  return RotationLibrary::from_sequence(
      io::parse_schedule(io::read_file(testing::data_path("rotations/rx_plus_4q_obc.json"))));
}

std::vector<double> random_angles(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-3 * kPi, 3 * kPi);
  std::vector<double> t(n);
  for (auto& x : t) x = u(rng);
  return t;
}

TEST(GateLib, ReferenceRegister) {
  auto r = reference_register(4, Geometry::ChainPeriodic);
  EXPECT_DOUBLE_EQ(r.spacing_um, 6.24);
  // Rz time 2 pi / J is 428 ns on the reference hardware.
  EXPECT_NEAR(kTwoPi / r.nn_coupling(), 0.428, 0.001);
  EXPECT_NEAR(angular_to_mhz(r.nn_coupling()), 2.3, 0.05);
}

class RzExact : public ::testing::TestWithParam<std::tuple<int, Geometry>> {};

TEST_P(RzExact, NearestNeighbour) {
  auto [n, g] = GetParam();
  auto reg = reference_register(n, g);
  std::mt19937_64 rng(n);
  for (int k = 0; k < 5; ++k) {
    auto th = random_angles(rng, n);
    auto s = compile_rz_layer(th, reg);
    EXPECT_GE(fid(s, digital::rz_layer(th)), 1 - 1e-10);
    const auto& seg = std::get<PulseSegment>(s.steps.front());
    EXPECT_LE(seg.delta.cwiseAbs().maxCoeff(), reg.nn_coupling() * (1 + 1e-12));
    EXPECT_FALSE(s.approximate);
  }
}

INSTANTIATE_TEST_SUITE_P(Chains, RzExact,
                         ::testing::Combine(::testing::Range(2, 7),
                                            ::testing::Values(Geometry::ChainOpen, Geometry::ChainPeriodic,
                                                              Geometry::Ring)));

TEST(GateLib, RzWithLongRangeTailIsApproximate) {
  auto reg = reference_register(6, Geometry::ChainOpen, InteractionMode::FullTail);
  std::vector<double> th(6, 0.4);
  auto s = compile_rz_layer(th, reg);
  EXPECT_TRUE(s.approximate);
  EXPECT_LT(fid(s, digital::rz_layer(th)), 1 - 1e-4);
}

TEST(GateLib, IdealLibraryLayersAreExact) {
  std::mt19937_64 rng(2);
  for (int n : {2, 3, 5}) {
    auto reg = reference_register(n, Geometry::ChainOpen);
    for (auto axis : {digital::Axis::X, digital::Axis::Y}) {
      auto th = random_angles(rng, n);
      EXPECT_GE(fid(compile_local_rotation_layer(axis, th, reg, ideal()), digital::local_rotation_layer(axis, th)),
                1 - 1e-10);
      for (int sign : {1, -1}) {
        RotationKind k{axis, sign};
        EXPECT_GE(fid(compile_global_rotation(k, reg, ideal()), rotation_target(n, k)), 1 - 1e-12);
      }
    }
  }
}

TEST(GateLib, LibraryFamilyFidelities) {
  auto lib = obc_library();
  auto reg = reference_register(4, Geometry::ChainOpen);
  auto f = lib.fidelities(reg);
  for (double x : f) EXPECT_NEAR(x, f[0], 1e-9);
  EXPECT_GT(f[0], 0.998);
  for (int axis = 0; axis < 2; ++axis) {
    for (int sign : {1, -1}) {
      RotationKind k{axis ? digital::Axis::Y : digital::Axis::X, sign};
      EXPECT_NEAR(fid(compile_global_rotation(k, reg, lib), rotation_target(4, k)), f[0], 1e-9);
    }
  }
  EXPECT_NEAR(lib.duration(reg), lib.sequence(lib.base_kind()).total_duration(), 1e-12);
  expect_error(ErrorKind::InvalidInput, [] { ideal().sequence({}); });
}

TEST(GateLib, ConjugatedInteractionMatchesDense) {
  for (auto g : {Geometry::ChainOpen, Geometry::ChainPeriodic}) {
    for (auto mode : {InteractionMode::NearestNeighbour, InteractionMode::FullTail}) {
      const int n = 5;
      auto reg = reference_register(n, g, mode);
      CMatrix h = hamiltonian(reg, PulseSegment::free_evolution(n, 1.0));
      for (std::uint64_t s = 0; s < (1u << n); ++s) {
        CMatrix x = digital::x_string(n, s).matrix();
        CMatrix conj = x * h * x;
        auto c = conjugate_interaction(reg, s);
        RVector d(1 << n);
        for (int b = 0; b < (1 << n); ++b) {
          d(b) = c.constant;
          for (int i = 0; i < n; ++i) {
            if (!((b >> i) & 1)) continue;
            d(b) += c.linear(i);
            for (int j = i + 1; j < n; ++j)
              if ((b >> j) & 1) d(b) += c.coupling(i, j);
          }
        }
        EXPECT_LT((conj - CMatrix(d.cast<Complex>().asDiagonal())).cwiseAbs().maxCoeff(), 1e-9) << s;
      }
    }
  }
}

TEST(GateLib, RefocusPlans) {
  auto obc = reference_register(4, Geometry::ChainOpen);
  std::vector<Edge> k01{{0, 1}};
  auto p = plan_refocus(k01, obc);
  EXPECT_EQ(p.flip, (std::vector<int>{2}));
  std::vector<Edge> k12{{1, 2}};
  EXPECT_EQ(plan_refocus(k12, obc).flip.size(), 2u);

  auto pbc = reference_register(4, Geometry::ChainPeriodic);
  std::vector<Edge> two{{0, 1}, {2, 3}};
  EXPECT_NO_THROW(plan_refocus(two, pbc));
  expect_error(ErrorKind::Unrealizable, [&] { plan_refocus(k01, pbc); });
  std::vector<Edge> three{{0, 1}, {1, 2}, {2, 3}};
  expect_error(ErrorKind::Unrealizable, [&] { plan_refocus(three, pbc); });
  std::vector<Edge> far{{0, 2}};
  expect_error(ErrorKind::InvalidInput, [&] { plan_refocus(far, obc); });
  std::vector<Edge> dup{{0, 1}, {1, 0}};
  expect_error(ErrorKind::InvalidInput, [&] { plan_refocus(dup, obc); });
}

TEST(GateLib, CzLayerWithIdealRotationsIsExact) {
  for (auto g : {Geometry::ChainOpen, Geometry::ChainPeriodic}) {
    auto reg = reference_register(6, g);
    auto edges = reg.nn_edges();
    for (std::uint64_t m = 1; m < (1u << edges.size()); ++m) {
      std::vector<Edge> keep;
      for (std::size_t e = 0; e < edges.size(); ++e)
        if ((m >> e) & 1) keep.push_back(edges[e]);
      if (g == Geometry::ChainPeriodic && keep.size() % 2) continue;
      auto s = compile_cz_layer(keep, reg, ideal());
      EXPECT_GE(fid(s, digital::cz_product(6, keep)), 1 - 1e-10);
    }
  }
}

TEST(GateLib, CzLayerDurationAndTags) {
  auto reg = reference_register(4, Geometry::ChainOpen);
  auto p = DurationParams::reference();
  std::vector<Edge> keep{{0, 1}};
  auto s = compile_cz_layer(keep, reg, obc_library());
  EXPECT_NEAR(s.total_duration(), 4 * obc_library().duration(reg) + 5 * kPi / p.J, 1e-9);
  ASSERT_EQ(s.ledger.size(), 1u);
  EXPECT_EQ(s.ledger[0].gate, "CZ");
  EXPECT_NEAR(s.ledger_total(), s.total_duration(), 1e-12);
  EXPECT_EQ(step_tag(s.steps.back()), "cz/comp");
}

TEST(GateLib, LoweredProgramsMatchDigitalGates) {
  const int n = 3;
  for (auto [a, b] : {Edge{0, 1}, Edge{1, 0}, Edge{2, 1}}) {
    EXPECT_GE(gate_fidelity(program_unitary(lower_cnot(a, b), n), digital::cnot(n, a, b)).fidelity, 1 - 1e-13);
    EXPECT_GE(gate_fidelity(program_unitary(lower_swap(a, b), n), digital::swap(n, a, b)).fidelity, 1 - 1e-13);
    for (double t : {0.0, 0.3, -1.9, kPi}) {
      EXPECT_GE(gate_fidelity(program_unitary(lower_givens_swap(a, b, t), n), digital::givens_swap(n, a, b, t)).fidelity,
                1 - 1e-13);
    }
  }
  EXPECT_EQ(lower_swap(0, 1).cz_count(), 3);
  EXPECT_EQ(lower_cnot(0, 1).cz_count(), 1);
}

TEST(GateLib, CompiledTwoQubitGatesWithIdealRotations) {
  for (auto g : {Geometry::ChainOpen, Geometry::ChainPeriodic}) {
    auto reg = reference_register(4, g);
    for (auto [a, b] : {Edge{0, 1}, Edge{2, 1}, Edge{3, 0}}) {
      if (g == Geometry::ChainOpen && a == 3) continue;
      if (g == Geometry::ChainPeriodic) {
        // A single CZ on an even ring breaks parity.
        expect_error(ErrorKind::Unrealizable, [&] { compile_cnot(a, b, reg, ideal()); });
        continue;
      }
      EXPECT_GE(fid(compile_cnot(a, b, reg, ideal()), digital::cnot(4, a, b)), 1 - 1e-10);
      EXPECT_GE(fid(compile_swap(a, b, reg, ideal()), digital::swap(4, a, b)), 1 - 1e-10);
      EXPECT_GE(fid(compile_givens_swap(a, b, 0.7, reg, ideal()), digital::givens_swap(4, a, b, 0.7)), 1 - 1e-10);
    }
  }
  auto odd = reference_register(5, Geometry::ChainPeriodic);
  EXPECT_GE(fid(compile_cnot(4, 0, odd, ideal()), digital::cnot(5, 4, 0)), 1 - 1e-10);
}

TEST(GateLib, NonAdjacentPairNeedsRouting) {
  auto reg = reference_register(4, Geometry::ChainOpen);
  try {
    compile_cnot(0, 2, reg, ideal());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("SWAP routing"), std::string::npos);
  }
}

TEST(GateLib, DurationFormulae) {
  DurationParams p;
  p.rotation_time = 1.0;
  p.J = kPi;  // rz time 2, pi / J = 1
  EXPECT_DOUBLE_EQ(gate_duration("RZ", p), 2.0);
  EXPECT_DOUBLE_EQ(gate_duration("GLOBAL", p), 1.0);
  EXPECT_DOUBLE_EQ(gate_duration("LOCAL", p), 4.0);
  EXPECT_DOUBLE_EQ(gate_duration("CZ", p), 9.0);
  EXPECT_DOUBLE_EQ(gate_duration("CNOT", p), 17.0);
  EXPECT_DOUBLE_EQ(gate_duration("SWAP", p), 43.0);
  EXPECT_DOUBLE_EQ(gate_duration("GSWAP", p), 43.0);
  EXPECT_EQ(duration_table(p).size(), 7u);
  expect_error(ErrorKind::InvalidInput, [&] { gate_duration("TOFFOLI", p); });
}

TEST(GateLib, LedgerMatchesClosedForm) {
  auto reg = reference_register(4, Geometry::ChainOpen);
  auto p = DurationParams::reference();
  std::vector<double> th{0.1, 0.2, 0.3, 0.4};
  EXPECT_NEAR(compile_rz_layer(th, reg).ledger_total(), gate_duration("RZ", p), 1e-12);
  EXPECT_NEAR(compile_local_rotation_layer(digital::Axis::Y, th, reg, ideal()).ledger_total(),
              gate_duration("LOCAL", p), 1e-12);
  EXPECT_NEAR(compile_cnot(0, 1, reg, ideal()).ledger_total(), gate_duration("CNOT", p), 1e-12);
  EXPECT_NEAR(compile_swap(0, 1, reg, ideal()).ledger_total(), gate_duration("SWAP", p), 1e-12);
  EXPECT_NEAR(compile_givens_swap(0, 1, 0.2, reg, ideal()).ledger_total(), gate_duration("GSWAP", p), 1e-12);
}

}  // namespace
}  // namespace rydgate
