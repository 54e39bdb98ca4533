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
#include <filesystem>

#include "rydgate/gatelib.hpp"
#include "rydgate/io.hpp"
#include "rydgate/schedule.hpp"
#include "testing.hpp"

namespace rydgate {
namespace {

using nlohmann::json;
using testing::expect_error;

PulseSequence random_sequence(std::mt19937_64& rng, bool uniform) {
  const int n = 4;
  PulseSequence seq;
  seq.reg = reference_register(n, Geometry::Ring, InteractionMode::FullTail);
  for (int k = 0; k < 5; ++k) {
    auto s = testing::random_segment(rng, n, seq.reg.nn_coupling());
    if (uniform) s.delta.setConstant(s.delta(0));
    s.tag = "seg" + std::to_string(k);
    seq.segments.push_back(s);
  }
  return seq;
}

TEST(Io, ScheduleRoundTripIsByteIdentical) {
  std::mt19937_64 rng(1);
  for (bool uniform : {true, false}) {
    auto seq = random_sequence(rng, uniform);
    const std::string once = io::emit_schedule(seq);
    const std::string twice = io::emit_schedule(io::parse_schedule(once));
    EXPECT_EQ(once, twice);
    auto back = io::parse_schedule(once);
    EXPECT_EQ(back.reg.geometry, seq.reg.geometry);
    EXPECT_EQ(back.segments.size(), seq.segments.size());
    EXPECT_EQ(back.segments[3].tag, "seg3");
    EXPECT_LT((sequence_unitary(back).matrix() - sequence_unitary(seq).matrix()).norm(), 1e-10);
  }
}

TEST(Io, FrequenciesOnDiskAreInMegahertz) {
  PulseSequence seq;
  seq.reg = RegisterSpec::with_coupling(2, Geometry::ChainOpen, mhz_to_angular(2.0));
  seq.segments.push_back(PulseSegment::uniform(2, mhz_to_angular(1.5), 0.25, mhz_to_angular(-3.0), 0.1, "g"));
  json j = io::schedule_to_json(seq);
  EXPECT_DOUBLE_EQ(j["segments"][0]["omega"].get<double>(), 1.5);
  EXPECT_DOUBLE_EQ(j["segments"][0]["delta"]["uniform"].get<double>(), -3.0);
  EXPECT_DOUBLE_EQ(j["segments"][0]["phi"].get<double>(), 0.25);
  EXPECT_DOUBLE_EQ(j["register"]["c6"].get<double>(), 2.0);  // spacing 1 um
  EXPECT_EQ(j["version"], io::kScheduleVersion);
}

TEST(Io, RejectsUnknownVersionAndMalformedInput) {
  std::mt19937_64 rng(2);
  json j = io::schedule_to_json(random_sequence(rng, true));
  json bad = j;
  bad["version"] = "rydgate-schedule/99";
  expect_error(ErrorKind::InvalidInput, [&] { io::schedule_from_json(bad); });
  bad = j;
  bad.erase("version");
  expect_error(ErrorKind::InvalidInput, [&] { io::schedule_from_json(bad); });
  bad = j;
  bad["segments"][0]["delta"] = json::array({1.0, 2.0});
  expect_error(ErrorKind::InvalidInput, [&] { io::schedule_from_json(bad); });
  bad = j;
  bad["segments"][0]["duration_us"] = -1.0;
  expect_error(ErrorKind::InvalidInput, [&] { io::schedule_from_json(bad); });
  bad = j;
  bad["segments"][0]["omega"] = "fast";
  expect_error(ErrorKind::InvalidInput, [&] { io::schedule_from_json(bad); });
  expect_error(ErrorKind::InvalidInput, [] { io::parse_schedule("{not json"); });
}

TEST(Io, RegisterParsing) {
  json j = {{"n_qubits", 4}, {"geometry", "chain_pbc"}, {"coupling_mhz", 2.5}, {"spacing_um", 5.0}};
  auto r = io::register_from_json(j);
  EXPECT_NEAR(angular_to_mhz(r.nn_coupling()), 2.5, 1e-12);
  EXPECT_EQ(r.geometry, Geometry::ChainPeriodic);
  EXPECT_EQ(r.interaction, InteractionMode::NearestNeighbour);

  auto again = io::register_from_json(io::register_to_json(r));
  EXPECT_NEAR(again.nn_coupling(), r.nn_coupling(), 1e-9);

  auto both = j;
  both["c6"] = 1.0;
  expect_error(ErrorKind::InvalidInput, [&] { io::register_from_json(both); });
  auto neither = j;
  neither.erase("coupling_mhz");
  expect_error(ErrorKind::InvalidInput, [&] { io::register_from_json(neither); });
  auto geo = j;
  geo["geometry"] = "triangle";
  expect_error(ErrorKind::InvalidInput, [&] { io::register_from_json(geo); });
  auto frac = j;
  frac["n_qubits"] = 2.5;
  expect_error(ErrorKind::InvalidInput, [&] { io::register_from_json(frac); });
}

TEST(Io, ReferenceRegisterFilesMatchPreset) {
  for (auto [file, n, g] : {std::tuple{"reference_4q_pbc.json", 4, Geometry::ChainPeriodic},
                            std::tuple{"reference_4q_obc.json", 4, Geometry::ChainOpen},
                            std::tuple{"reference_8q_obc_full.json", 8, Geometry::ChainOpen}}) {
    auto r = io::register_from_json(json::parse(io::read_file(testing::data_path(std::string("registers/") + file))));
    EXPECT_EQ(r.n_qubits, n);
    EXPECT_EQ(r.geometry, g);
    EXPECT_NEAR(r.nn_coupling(), reference_register(n, g).nn_coupling(), 1e-9);
  }
}

TEST(Io, CanonicalIsFixedPoint) {
  for (double v : {0.1, 1.0 / 3.0, -2.0 * kPi, 1e-17, 123456.789012345678}) {
    EXPECT_EQ(io::canonical(io::canonical(v)), io::canonical(v));
    EXPECT_NEAR(io::canonical(v), v, 1e-14 * std::max(1.0, std::abs(v)));
  }
}

TEST(Io, FileHelpers) {
  auto path = std::filesystem::temp_directory_path() / "rydgate_io_test.txt";
  io::write_file(path.string(), "hello\n");
  EXPECT_EQ(io::read_file(path.string()), "hello\n");
  std::filesystem::remove(path);
  expect_error(ErrorKind::InvalidInput, [] { io::read_file("/nonexistent/file.json"); });
}

TEST(Schedule, LedgerAndAppend) {
  auto reg = reference_register(3, Geometry::ChainOpen);
  auto lib = RotationLibrary::ideal(0.5);
  std::vector<double> th{0.1, 0.2, 0.3};
  auto a = compile_rz_layer(th, reg);
  auto b = compile_global_rotation({digital::Axis::X, 1}, reg, lib);
  a.append(b);
  EXPECT_EQ(a.ledger.size(), 2u);
  EXPECT_NEAR(a.ledger_total(), a.total_duration(), 1e-12);
  EXPECT_TRUE(a.has_ideal_steps());
  expect_error(ErrorKind::InvalidInput, [&] { a.to_pulse_sequence(); });
  a.book_as("BLOCK");
  ASSERT_EQ(a.ledger.size(), 1u);
  EXPECT_EQ(a.ledger[0].gate, "BLOCK");
  auto other = compile_rz_layer(std::vector<double>(4, 0.0), reference_register(4, Geometry::ChainOpen));
  expect_error(ErrorKind::InvalidInput, [&] { a.append(other); });
}

TEST(Schedule, PulseRoundTripAndEvolution) {
  std::mt19937_64 rng(3);
  auto seq = random_sequence(rng, false);
  auto s = CompiledSchedule::from_pulse_sequence(seq, "X");
  EXPECT_FALSE(s.has_ideal_steps());
  EXPECT_EQ(io::emit_schedule(s.to_pulse_sequence()), io::emit_schedule(seq));
  StateVector psi(testing::random_state(rng, 16));
  EXPECT_LT((s.evolve(psi).amplitudes() - (s.unitary() * psi).amplitudes()).norm(), 1e-11);

  // Ideal steps act instantaneously.
  CompiledSchedule g(reference_register(2, Geometry::ChainOpen));
  IdealGate x;
  x.gate = digital::pauli_x();
  x.qubits = {1};
  g.steps.emplace_back(x);
  EXPECT_LT((g.unitary().matrix() - digital::x_string(2, 0b10).matrix()).norm(), 1e-15);
}

TEST(Io, LedgerJson) {
  auto reg = reference_register(4, Geometry::ChainOpen);
  auto s = compile_cnot(0, 1, reg, RotationLibrary::ideal(kReferenceRotationUs));
  json j = io::ledger_to_json(s);
  EXPECT_NEAR(j["total_us"].get<double>(), s.ledger_total(), 1e-12);
  EXPECT_EQ(j["entries"].size(), s.ledger.size());
  EXPECT_FALSE(j["approximate"].get<bool>());
}

}  // namespace
}  // namespace rydgate
