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

#include <bit>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "rydgate/io.hpp"
#include "rydgate/vqe.hpp"
#include "testing.hpp"

namespace rydgate::vqe {
namespace {

using nlohmann::json;
using rydgate::testing::expect_error;

json load_json(const std::string& rel) { return json::parse(io::read_file(rydgate::testing::data_path(rel))); }

// Dense operator from the term list by Kronecker products, qubit 0 rightmost.
CMatrix oracle_matrix(const PairedHamiltonian& h) {
  const int n = h.n_qubits();
  auto single = [](Op op) {
    CMatrix m(2, 2);
    switch (op) {
      case Op::I: m << 1, 0, 0, 1; break;
      case Op::X: m << 0, 1, 1, 0; break;
      case Op::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
      case Op::Z: m << 1, 0, 0, -1; break;
      case Op::N: m << 0, 0, 0, 1; break;
    }
    return m;
  };
  CMatrix out = h.constant() * CMatrix::Identity(1 << n, 1 << n);
  for (const auto& t : h.terms()) {
    std::vector<Op> ops(n, Op::I);
    for (const auto& f : t.ops) ops[f.qubit] = f.op;
    CMatrix m = CMatrix::Identity(1, 1);
    for (int q = n - 1; q >= 0; --q) m = Eigen::kroneckerProduct(m, single(ops[q])).eval();
    out += t.coeff * m;
  }
  return out;
}

PairedHamiltonian toy(double hop_xx, double hop_yy) {
  std::vector<Term> terms = {
      {-0.5, {{Op::Z, 0}}},
      {0.3, {{Op::N, 1}}},
      {0.2, {{Op::Z, 0}, {Op::Z, 2}}},
      {-0.1, {{Op::N, 1}, {Op::N, 2}}},
      {hop_xx, {{Op::X, 0}, {Op::X, 1}}},
      {hop_yy, {{Op::Y, 0}, {Op::Y, 1}}},
      {0.05, {{Op::X, 1}, {Op::X, 2}}},
      {0.05, {{Op::Y, 1}, {Op::Y, 2}}},
  };
  return PairedHamiltonian(3, 1, 0.7, terms);
}

TEST(Vqe, HartreeFockState) {
  auto hf = hartree_fock_state(6, 2);
  EXPECT_EQ(std::abs(hf.amplitudes()(0b000011)), 1.0);
  EXPECT_DOUBLE_EQ(number_expectation(hf), 2.0);
  expect_error(ErrorKind::InvalidInput, [] { hartree_fock_state(3, 4); });
}

TEST(Vqe, MatrixFreeApplicationMatchesKroneckerOracle) {
  auto h = toy(0.15, 0.15);
  CMatrix oracle = oracle_matrix(h);
  EXPECT_LT((h.matrix() - oracle).norm(), 1e-14);
  std::mt19937_64 rng(1);
  StateVector psi(rydgate::testing::random_state(rng, 8));
  Complex e = psi.amplitudes().dot(oracle * psi.amplitudes());
  EXPECT_NEAR(energy(h, psi), e.real(), 1e-14);
}

TEST(Vqe, SectorGroundEnergyMatchesDenseSpectrum) {
  auto h = toy(0.15, 0.15);
  CMatrix m = oracle_matrix(h);
  for (int pairs = 0; pairs <= 3; ++pairs) {
    std::vector<int> idx;
    for (int b = 0; b < 8; ++b)
      if (std::popcount(static_cast<unsigned>(b)) == pairs) idx.push_back(b);
    CMatrix block(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) block(i, j) = m(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(block);
    EXPECT_NEAR(h.sector_ground_energy(pairs), es.eigenvalues()(0), 1e-13);
  }
}

TEST(Vqe, StructureValidation) {
  EXPECT_NO_THROW(validate_structure(toy(0.15, 0.15)));
  expect_error(ErrorKind::InvalidFixture, [] { validate_structure(toy(0.15, 0.10)); });
  auto with = [](Term t) {
    auto base = toy(0.15, 0.15);
    auto terms = base.terms();
    terms.push_back(std::move(t));
    return PairedHamiltonian(3, 1, 0.7, terms);
  };
  expect_error(ErrorKind::InvalidFixture, [&] { validate_structure(with({0.1, {{Op::X, 0}}})); });
  expect_error(ErrorKind::InvalidFixture, [&] { validate_structure(with({0.1, {{Op::X, 0}, {Op::Z, 1}}})); });
  expect_error(ErrorKind::InvalidFixture, [&] { validate_structure(with({0.1, {{Op::X, 0}, {Op::Y, 1}}})); });
  expect_error(ErrorKind::InvalidFixture,
               [&] { validate_structure(with({0.1, {{Op::Z, 0}, {Op::Z, 1}, {Op::Z, 2}}})); });
  expect_error(ErrorKind::InvalidFixture, [&] { validate_structure(with({0.1, {{Op::Z, 1}, {Op::N, 1}}})); });
  expect_error(ErrorKind::InvalidFixture, [&] { validate_structure(with({NAN, {{Op::Z, 1}}})); });
  expect_error(ErrorKind::InvalidFixture, [] { PairedHamiltonian(3, 1, 0.0, {{1.0, {{Op::Z, 5}}}}); });
  expect_error(ErrorKind::InvalidFixture, [] { PairedHamiltonian(3, 4, 0.0, {}); });
}

TEST(Vqe, FixturesLoadAndAgreeWithStoredEnergies) {
  for (auto file : {"fixtures/h2_631g.json", "fixtures/lih_sto3g.json"}) {
    json j = load_json(file);
    auto h = fixture_from_json(j);
    EXPECT_EQ(h.n_qubits(), j["n_qubits"].get<int>());
    EXPECT_NEAR(h.reference_energy, j["reference_energy"].get<double>(), 1e-9);
    double hf = energy(h, hartree_fock_state(h.n_qubits(), h.n_pairs()));
    EXPECT_NEAR(hf, j["hartree_fock_energy"].get<double>(), 1e-9) << file;
    EXPECT_LT(h.reference_energy, hf);
    EXPECT_LT(h.number_commutator_norm(), 1e-12);
    // Re-serialised fixture parses back to the same operator.
    auto again = fixture_from_json(fixture_to_json(h));
    EXPECT_LT((again.matrix() - h.matrix()).norm(), 1e-12);
  }
}

TEST(Vqe, FixtureErrors) {
  json j = load_json("fixtures/h2_631g.json");
  auto bad = [&](auto mutate) {
    json c = j;
    mutate(c);
    expect_error(ErrorKind::InvalidFixture, [&] { fixture_from_json(c); });
  };
  bad([](json& c) { c.erase("terms"); });
  bad([](json& c) { c["n_qubits"] = "four"; });
  bad([](json& c) { c["reference_energy"] = c["reference_energy"].get<double>() + 1e-3; });
  bad([](json& c) { c["terms"][0]["ops"][0][0] = "Q"; });
  bad([](json& c) { c["terms"].push_back({{"coeff", 0.1}, {"ops", {{"X", 0}}}}); });
  bad([](json& c) { c["terms"].push_back({{"coeff", 0.1}, {"ops", {{"X", 0}, {"X", 1}}}}); });
  bad([](json& c) { c["terms"][0]["coeff"] = "big"; });
}

TEST(Vqe, GivensSwapMatrixEntries) {
  const double t = 0.37;
  auto g = digital::givens_swap4(t);
  EXPECT_EQ(g(0, 0), Complex(1.0));
  EXPECT_EQ(g(3, 3), Complex(1.0));
  EXPECT_NEAR(g(1, 1).real(), std::sin(t), 1e-15);
  EXPECT_NEAR(g(1, 2).real(), std::cos(t), 1e-15);
  EXPECT_NEAR(g(2, 1).real(), std::cos(t), 1e-15);
  EXPECT_NEAR(g(2, 2).real(), -std::sin(t), 1e-15);
  EXPECT_LT((g.adjoint() * g - Eigen::Matrix4cd::Identity()).norm(), 1e-15);
  EXPECT_LT((digital::givens_swap4(0.0) - digital::swap4()).norm(), 1e-15);
}

TEST(Vqe, IdealAnsatzConservesNumberAndMatchesCircuit) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int n : {3, 4, 6}) {
    Ansatz a({n, n, Backend::Ideal});
    RVector th(a.spec().parameter_count());
    for (auto& x : th) x = angle(rng);
    auto hf = hartree_fock_state(n, n / 2);
    auto psi = a.prepare(hf, th);
    EXPECT_NEAR(number_expectation(psi), n / 2, 1e-12);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    EXPECT_LT((psi.amplitudes() - (circuit_unitary(a.circuit(th)) * hf).amplitudes()).norm(), 1e-12);
  }
  Ansatz a({4, 2, Backend::Ideal});
  expect_error(ErrorKind::InvalidInput, [&] { a.prepare(hartree_fock_state(4, 1), RVector::Zero(2)); });
  expect_error(ErrorKind::InvalidInput, [] { Ansatz({4, 2, Backend::Analog}); });
}

TEST(Vqe, AnalogAnsatzWithIdealRotationsMatchesIdeal) {
  const int n = 4;
  auto reg = reference_register(n, Geometry::ChainOpen);
  Ansatz analog({n, 3, Backend::Analog}, reg, RotationLibrary::ideal(kReferenceRotationUs));
  Ansatz ideal({n, 3, Backend::Ideal});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  RVector th(ideal.spec().parameter_count());
  for (auto& x : th) x = angle(rng);
  auto hf = hartree_fock_state(n, 2);
  auto a = analog.prepare(hf, th), b = ideal.prepare(hf, th);
  EXPECT_NEAR(std::abs(a.amplitudes().dot(b.amplitudes())), 1.0, 1e-10);
  expect_error(ErrorKind::Unrealizable, [&] {
    Ansatz({n, 3, Backend::Analog}, reference_register(n, Geometry::ChainPeriodic),
           RotationLibrary::ideal(kReferenceRotationUs));
  });
}

TEST(Vqe, DepthZeroErrorIsHartreeFockGap) {
  auto h = load_fixture(rydgate::testing::data_path("fixtures/h2_631g.json"));
  Ansatz a({h.n_qubits(), 0, Backend::Ideal});
  auto r1 = run_vqe(h, a);
  auto r2 = run_vqe(h, a);
  double hf = energy(h, hartree_fock_state(h.n_qubits(), h.n_pairs()));
  EXPECT_DOUBLE_EQ(r1.error, hf - h.reference_energy);
  EXPECT_EQ(r1.error, r2.error);
  EXPECT_EQ(r1.energies.size(), 1u);
}

TEST(Vqe, IdealH2ReachesChemicalAccuracy) {
  auto h = load_fixture(rydgate::testing::data_path("fixtures/h2_631g.json"));
  Ansatz a({h.n_qubits(), 4, Backend::Ideal});
  auto r = run_vqe(h, a);
  EXPECT_LT(r.error, 1.6e-3);
  EXPECT_GE(r.error, -1e-9);
  EXPECT_FALSE(r.bound_violation);
  ASSERT_EQ(r.best_so_far.size(), r.energies.size());
  for (std::size_t k = 1; k < r.best_so_far.size(); ++k) EXPECT_LE(r.best_so_far[k], r.best_so_far[k - 1]);
  EXPECT_DOUBLE_EQ(r.best_so_far.back(), r.energy);
  EXPECT_EQ(r.best_theta.size(), a.spec().parameter_count());
}

TEST(Vqe, RestartsAreDeterministicForSeed) {
  auto h = load_fixture(rydgate::testing::data_path("fixtures/h2_631g.json"));
  Ansatz a({h.n_qubits(), 2, Backend::Ideal});
  VqeConfig cfg;
  cfg.restarts = 2;
  cfg.seed = 9;
  auto r1 = run_vqe(h, a, cfg), r2 = run_vqe(h, a, cfg);
  EXPECT_EQ(r1.energy, r2.energy);
  EXPECT_EQ(r1.energies, r2.energies);
}

TEST(Vqe, LiHEnergiesRespectVariationalBound) {
  auto h = load_fixture(rydgate::testing::data_path("fixtures/lih_sto3g.json"));
  Ansatz a({h.n_qubits(), 3, Backend::Ideal});
  auto r = run_vqe(h, a);
  EXPECT_FALSE(r.bound_violation);
  for (double e : r.energies) EXPECT_GE(e, h.reference_energy - 1e-9);
  double hf = energy(h, hartree_fock_state(h.n_qubits(), h.n_pairs()));
  EXPECT_LE(r.energy, hf + 1e-12);
}

TEST(Vqe, Names) {
  EXPECT_EQ(parse_backend("analog"), Backend::Analog);
  EXPECT_EQ(to_string(Backend::Ideal), "ideal");
  expect_error(ErrorKind::InvalidInput, [] { parse_backend("quantum"); });
  EXPECT_EQ(default_depths(4), (std::vector<int>{2, 4, 8}));
  EXPECT_EQ(default_depths(3), (std::vector<int>{1, 3, 6}));
}

}  // namespace
}  // namespace rydgate::vqe
