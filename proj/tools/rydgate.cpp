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

// rydgate command-line driver.
//
// Exit codes: 0 success, 1 usage or input error, 2 optimisation ended
// best-effort, 3 compilation unrealizable, 4 invalid molecular fixture.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rydgate/circuit.hpp"
#include "rydgate/gatelib.hpp"
#include "rydgate/io.hpp"
#include "rydgate/metrics.hpp"
#include "rydgate/pulseopt.hpp"
#include "rydgate/vqe.hpp"

namespace {

using namespace rydgate;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBestEffort = 2;
constexpr int kExitUnrealizable = 3;
constexpr int kExitFixture = 4;

constexpr const char* kRegisterEnv = "RYDGATE_REGISTER";

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Unrealizable: return kExitUnrealizable;
    case ErrorKind::InvalidFixture: return kExitFixture;
    case ErrorKind::NotConverged: return kExitBestEffort;
    default: return kExitUsage;
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_file(path, text);
  }
}

RegisterSpec load_register(std::string path, const std::string& geometry_override) {
  if (path.empty()) {
    const char* env = std::getenv(kRegisterEnv);
    if (env == nullptr || *env == '\0') {
      throw Error(ErrorKind::InvalidInput,
                  std::string("no register given: pass --register or set ") + kRegisterEnv);
    }
    path = env;
  }
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, "register '" + path + "' is not valid JSON: " + e.what());
  }
  if (!geometry_override.empty()) j["geometry"] = geometry_override;
  return io::register_from_json(j);
}

RotationLibrary load_library(const std::string& spec) {
  if (spec.empty() || spec == "ideal") return RotationLibrary::ideal(kReferenceRotationUs);
  return RotationLibrary::from_sequence(io::parse_schedule(io::read_file(spec)));
}

// Targets: identity | rx+ | rx- | ry+ | ry- | circuit:FILE | matrix:FILE
struct Target {
  std::string text;

  bool is_rotation() const { return text.size() == 3 && (text[0] == 'r'); }

  CircuitIR circuit(int n) const {
    return parse_circuit(io::read_file(text.substr(8)), n);
  }

  Unitary unitary(int n) const {
    if (text == "identity") return Unitary::identity(n);
    if (text.rfind("circuit:", 0) == 0) return circuit_unitary(circuit(n));
    if (text.rfind("matrix:", 0) == 0) return read_matrix(text.substr(7), n);
    return rotation_target(n, parse_rotation_kind(text));
  }

  StateVector state(const StateVector& initial) const {
    const int n = initial.n_qubits();
    if (text == "identity") return initial;
    if (text.rfind("circuit:", 0) == 0) return circuit_state(circuit(n), initial);
    if (text.rfind("matrix:", 0) == 0) return read_matrix(text.substr(7), n) * initial;
    const RotationKind k = parse_rotation_kind(text);
    const double angle = k.sign >= 0 ? 0.5 * kPi : -0.5 * kPi;
    CVector psi = initial.amplitudes();
    apply_single_qubit_gate(psi, n, k.axis == digital::Axis::X ? digital::rx(angle) : digital::ry(angle));
    return StateVector(std::move(psi));
  }

  // {"real": [[...]], "imag": [[...]]}
  static Unitary read_matrix(const std::string& path, int n) {
    const json j = json::parse(io::read_file(path));
    const Eigen::Index dim = Eigen::Index{1} << n;
    const auto& re = j.at("real");
    if (static_cast<Eigen::Index>(re.size()) != dim) {
      throw Error(ErrorKind::InvalidInput, "target matrix is " + std::to_string(re.size()) +
                                               " rows, schedule needs " + std::to_string(dim));
    }
    CMatrix m = CMatrix::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const auto& row = re.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != dim) throw Error(ErrorKind::InvalidInput, "target matrix is not square");
      for (Eigen::Index c = 0; c < dim; ++c) {
        double im = 0.0;
        if (j.contains("imag")) im = j.at("imag").at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>();
        m(r, c) = Complex(row.at(static_cast<std::size_t>(c)).get<double>(), im);
      }
    }
    return Unitary(std::move(m));
  }
};

EvolveMethod parse_method(const std::string& m) {
  if (m == "auto") return EvolveMethod::Auto;
  if (m == "dense") return EvolveMethod::Dense;
  if (m == "chebyshev") return EvolveMethod::Chebyshev;
  throw Error(ErrorKind::InvalidInput, "unknown method '" + m + "' (auto, dense, chebyshev)");
}

// "trace:TARGET", "overlap:TARGET" or "magnetization"
struct Metric {
  std::string kind;
  Target target;

  static Metric parse(const std::string& text) {
    if (text == "magnetization") return {"magnetization", {}};
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorKind::InvalidInput, "metric must be trace:TARGET, overlap:TARGET or magnetization");
    }
    Metric m{text.substr(0, colon), Target{text.substr(colon + 1)}};
    if (m.kind != "trace" && m.kind != "overlap") {
      throw Error(ErrorKind::InvalidInput, "unknown metric '" + m.kind + "'");
    }
    return m;
  }
};

std::string fmt(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------
// optimize

struct OptimizeArgs {
  std::string register_path;
  std::string geometry;
  std::string target = "rx+";
  std::string out;
  std::string trace;
  OptimizerConfig cfg;
};

int run_optimize(const OptimizeArgs& a) {
  const RegisterSpec reg = load_register(a.register_path, a.geometry);
  const Unitary target = a.target == "identity" ? Unitary::identity(reg.n_qubits)
                                                : rotation_target(reg.n_qubits, parse_rotation_kind(a.target));
  RotationResult result;
  bool converged = true;
  try {
    result = optimize_global_rotation(target, reg, a.cfg);
  } catch (const OptimizationFailure& f) {
    result = f.best();
    converged = false;
  }
  emit(a.out, io::emit_schedule(result.sequence));
  if (!a.trace.empty()) io::write_file(a.trace, io::trace_to_json(result.trace).dump(2) + "\n");
  const auto& t = result.trace;
  std::fprintf(stderr, "%s: best loss %.6e (F = %.6f) at restart %d of %zu, %.1f s%s\n", a.target.c_str(),
               t.best_loss, 1.0 - t.best_loss, t.best_restart, t.restarts.size(), t.wall_seconds,
               converged ? "" : " [threshold not met, best effort]");
  for (std::size_t p = 0; p < t.stage_best().size(); ++p) {
    std::fprintf(stderr, "  stage %zu (%d segments): best loss %.6e\n", p, 1 << p, t.stage_best()[p]);
  }
  return converged ? kExitOk : kExitBestEffort;
}

// ---------------------------------------------------------------------------
// compile

struct CompileArgs {
  std::string circuit;
  std::string register_path;
  std::string geometry;
  std::string library = "ideal";
  std::string out;
  std::string ledger;
  bool verify = false;
};

int run_compile(const CompileArgs& a) {
  const RegisterSpec reg = load_register(a.register_path, a.geometry);
  const RotationLibrary lib = load_library(a.library);
  const CircuitIR circuit = parse_circuit(io::read_file(a.circuit), reg.n_qubits);
  const CompiledSchedule s = compile_circuit(circuit, reg, lib);

  std::printf("%-10s %12s\n", "layer", "duration_us");
  for (const auto& e : s.ledger) std::printf("%-10s %12.4f\n", e.gate.c_str(), e.duration);
  std::printf("%-10s %12.4f%s\n", "total", s.ledger_total(), s.approximate ? "  (approximate: full-tail register)" : "");
  if (a.verify) {
    std::printf("fidelity vs ideal circuit: %.8f\n", gate_fidelity(s.unitary(), circuit_unitary(circuit)).fidelity);
  }
  if (!a.ledger.empty()) io::write_file(a.ledger, io::ledger_to_json(s).dump(2) + "\n");
  if (!a.out.empty()) {
    if (s.has_ideal_steps()) {
      throw Error(ErrorKind::InvalidInput,
                  "schedules built from the ideal library contain exact gates and cannot be written as "
                  "pulse files; pass --library with an optimised rotation");
    }
    io::write_file(a.out, io::emit_schedule(s.to_pulse_sequence()));
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string schedule;
  std::string metric = "trace:identity";
  std::string method = "auto";
  std::uint64_t initial = 0;
  std::string out;
};

json simulate(const PulseSequence& seq, const Metric& m, EvolveMethod method, std::uint64_t initial) {
  const int n = seq.reg.n_qubits;
  json report{{"n_qubits", n}, {"duration_us", seq.total_duration()}, {"metric", m.kind}};
  if (m.kind == "trace") {
    report["target"] = m.target.text;
    report["fidelity"] = gate_fidelity(sequence_unitary(seq), m.target.unitary(n)).fidelity;
    return report;
  }
  const StateVector psi0 = StateVector::basis(n, initial);
  const StateVector psi = evolve_state(seq, psi0, method);
  if (m.kind == "overlap") {
    report["target"] = m.target.text;
    report["initial"] = initial;
    report["fidelity"] = state_overlap(psi, m.target.state(psi0)).fidelity;
    return report;
  }
  const RVector z = magnetization_profile(psi);
  report["initial"] = initial;
  report["magnetization"] = std::vector<double>(z.data(), z.data() + z.size());
  return report;
}

int run_simulate(const SimulateArgs& a) {
  const PulseSequence seq = io::parse_schedule(io::read_file(a.schedule));
  const json report = simulate(seq, Metric::parse(a.metric), parse_method(a.method), a.initial);
  emit(a.out, report.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// scan

struct ScanArgs {
  std::string schedule;
  std::string metric = "trace:identity";
  std::string method = "auto";
  std::string tag;
  double from = 0.9;
  double to = 1.1;
  int points = 21;
  std::string out;
};

int run_scan(const ScanArgs& a) {
  const PulseSequence seq = io::parse_schedule(io::read_file(a.schedule));
  const Metric m = Metric::parse(a.metric);
  if (m.kind == "magnetization") throw Error(ErrorKind::InvalidInput, "scan needs a trace or overlap metric");
  const EvolveMethod method = parse_method(a.method);
  const ScanReport rep = refine_duration(
      seq, [&](const PulseSequence& s) { return simulate(s, m, method, 0).at("fidelity").get<double>(); },
      a.from, a.to, a.points, a.tag);
  std::ostringstream csv;
  csv << "scale,duration_us,fidelity\n";
  for (const auto& p : rep.points) csv << fmt(p.scale) << ',' << fmt(p.duration) << ',' << fmt(p.fidelity, 12) << '\n';
  emit(a.out, csv.str());
  const auto& best = rep.best_point();
  std::fprintf(stderr, "best fidelity %.6f at scale %.4f (%.4f us)\n", best.fidelity, best.scale, best.duration);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// vqe

struct VqeArgs {
  std::string fixture;
  std::string backend = "ideal";
  std::vector<int> depths;
  std::string library;
  std::string geometry = "chain_obc";
  std::uint64_t seed = 0;
  int restarts = 0;
  double gtol = 1e-7;
  std::string trace;
  std::string summary;
};

int run_vqe_cmd(const VqeArgs& a) {
  const vqe::PairedHamiltonian h = vqe::load_fixture(a.fixture);
  const vqe::Backend backend = vqe::parse_backend(a.backend);
  if (backend == vqe::Backend::Analog && a.library.empty()) {
    throw Error(ErrorKind::InvalidInput, "the analog backend needs --library (an optimised rotation schedule)");
  }
  const std::vector<int> depths = a.depths.empty() ? vqe::default_depths(h.n_qubits()) : a.depths;
  std::optional<RotationLibrary> lib;
  if (backend == vqe::Backend::Analog) lib = load_library(a.library);
  const RegisterSpec reg = reference_register(h.n_qubits(), io::parse_geometry(a.geometry));

  vqe::VqeConfig cfg;
  cfg.seed = a.seed;
  cfg.restarts = a.restarts;
  cfg.gradient_tolerance = a.gtol;

  std::ostringstream csv;
  csv << "depth,iteration,energy,best_energy,error_mha\n";
  json runs = json::array();
  double best_error = std::numeric_limits<double>::infinity();
  for (int depth : depths) {
    const vqe::AnsatzSpec spec{h.n_qubits(), depth, backend};
    const vqe::Ansatz ansatz = backend == vqe::Backend::Ideal ? vqe::Ansatz(spec) : vqe::Ansatz(spec, reg, *lib);
    const vqe::VqeResult r = vqe::run_vqe(h, ansatz, cfg);
    for (std::size_t k = 0; k < r.energies.size(); ++k) {
      csv << depth << ',' << k << ',' << fmt(r.energies[k], 15) << ',' << fmt(r.best_so_far[k], 15) << ','
          << fmt(1e3 * (r.best_so_far[k] - r.reference), 10) << '\n';
    }
    json run{{"depth", depth},
             {"parameters", spec.parameter_count()},
             {"energy", r.energy},
             {"error_mha", 1e3 * r.error},
             {"iterations", r.iterations},
             {"evaluations", r.evaluations},
             {"converged", r.converged},
             {"theta", std::vector<double>(r.best_theta.data(), r.best_theta.data() + r.best_theta.size())}};
    if (r.bound_violation) run["bound_violation"] = *r.bound_violation;
    runs.push_back(run);
    best_error = std::min(best_error, r.error);
    std::fprintf(stderr, "depth %2d (%3d parameters): error %.4f mHa after %d iterations%s\n", depth,
                 spec.parameter_count(), 1e3 * r.error, r.iterations,
                 r.bound_violation ? " [below the paired-subspace bound]" : "");
  }
  const json summary{{"molecule", h.molecule},
                     {"basis", h.basis},
                     {"n_qubits", h.n_qubits()},
                     {"n_pairs", h.n_pairs()},
                     {"backend", vqe::to_string(backend)},
                     {"reference_energy", h.reference_energy},
                     {"hartree_fock_energy", vqe::energy(h, vqe::hartree_fock_state(h.n_qubits(), h.n_pairs()))},
                     {"best_error_mha", 1e3 * best_error},
                     {"chemical_accuracy_mha", 1.6},
                     {"runs", runs}};
  if (!a.trace.empty()) io::write_file(a.trace, csv.str());
  emit(a.summary, summary.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// durations

struct DurationArgs {
  double rotation_us = kReferenceRotationUs;
  double coupling_mhz = 0.0;
};

int run_durations(const DurationArgs& a) {
  DurationParams p = DurationParams::reference();
  p.rotation_time = a.rotation_us;
  if (a.coupling_mhz > 0.0) p.J = mhz_to_angular(a.coupling_mhz);
  std::printf("%-8s %12s\n", "gate", "duration_us");
  for (const auto& e : duration_table(p)) std::printf("%-8s %12.4f\n", e.gate.c_str(), e.duration);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analog pulse compiler for Rydberg Ising registers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rydgate 0.1.0");

  const std::string reg_help = std::string("register JSON (default: $") + kRegisterEnv + ")";

  OptimizeArgs opt;
  auto* c_opt = app.add_subcommand("optimize", "optimise a global +-pi/2 rotation pulse sequence");
  c_opt->add_option("--register", opt.register_path, reg_help);
  c_opt->add_option("--geometry", opt.geometry, "override the register geometry (chain_obc, chain_pbc, ring)");
  c_opt->add_option("--target", opt.target, "rx+, rx-, ry+, ry- or identity")
      ->check(CLI::IsMember({"rx+", "rx-", "ry+", "ry-", "identity"}));
  c_opt->add_option("--pmax", opt.cfg.p_max, "final stage; the sequence has 2^pmax segments")->check(CLI::Range(0, 10));
  c_opt->add_option("--dt", opt.cfg.dt, "segment length in us at the last stage (default 1.6/J)");
  c_opt->add_option("--threshold", opt.cfg.threshold, "loss to stop at");
  c_opt->add_option("--restarts", opt.cfg.max_restarts, "maximum random restarts");
  c_opt->add_option("--seed", opt.cfg.seed, "random seed");
  c_opt->add_option("--jobs", opt.cfg.jobs, "restarts run in parallel");
  c_opt->add_option("--max-iterations", opt.cfg.max_iterations, "optimiser iterations per stage");
  c_opt->add_option("-o,--out", opt.out, "schedule file (default stdout)");
  c_opt->add_option("--trace", opt.trace, "per-stage loss trace (JSON)");

  CompileArgs cmp;
  auto* c_cmp = app.add_subcommand("compile", "compile a circuit into an analog schedule");
  c_cmp->add_option("circuit", cmp.circuit, "circuit file")->required();
  c_cmp->add_option("--register", cmp.register_path, reg_help);
  c_cmp->add_option("--geometry", cmp.geometry, "override the register geometry");
  c_cmp->add_option("--library", cmp.library, "optimised rx+ schedule, or 'ideal'");
  c_cmp->add_option("-o,--out", cmp.out, "schedule file");
  c_cmp->add_option("--ledger", cmp.ledger, "duration ledger (JSON)");
  c_cmp->add_flag("--verify", cmp.verify, "print the fidelity against the ideal circuit");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "evaluate a schedule");
  c_sim->add_option("schedule", sim.schedule, "schedule file")->required();
  c_sim->add_option("--metric", sim.metric,
                    "trace:T, overlap:T or magnetization; T = identity, rx+, rx-, ry+, ry-, circuit:FILE, matrix:FILE");
  c_sim->add_option("--method", sim.method, "auto, dense or chebyshev");
  c_sim->add_option("--initial", sim.initial, "initial basis state index");
  c_sim->add_option("-o,--out", sim.out, "report file (default stdout)");

  ScanArgs scan;
  auto* c_scan = app.add_subcommand("scan", "rescale segment durations and record the fidelity");
  c_scan->add_option("schedule", scan.schedule, "schedule file")->required();
  c_scan->add_option("--metric", scan.metric, "trace:T or overlap:T");
  c_scan->add_option("--method", scan.method, "auto, dense or chebyshev");
  c_scan->add_option("--tag", scan.tag, "only rescale segments whose tag contains this");
  c_scan->add_option("--scale-from", scan.from, "first scale");
  c_scan->add_option("--scale-to", scan.to, "last scale");
  c_scan->add_option("--points", scan.points, "number of scales")->check(CLI::PositiveNumber);
  c_scan->add_option("-o,--out", scan.out, "CSV file (default stdout)");

  VqeArgs vq;
  auto* c_vqe = app.add_subcommand("vqe", "Givens-SWAP network VQE on a paired-electron fixture");
  c_vqe->add_option("fixture", vq.fixture, "fixture JSON")->required();
  c_vqe->add_option("--backend", vq.backend, "ideal or analog")->check(CLI::IsMember({"ideal", "analog"}));
  c_vqe->add_option("--depth", vq.depths, "brick layers; repeat for a sweep (default n/2, n, 2n)");
  c_vqe->add_option("--library", vq.library, "optimised rx+ schedule for the analog backend");
  c_vqe->add_option("--geometry", vq.geometry, "analog register geometry");
  c_vqe->add_option("--seed", vq.seed, "seed for random restarts");
  c_vqe->add_option("--restarts", vq.restarts, "extra random starting points");
  c_vqe->add_option("--gtol", vq.gtol, "gradient-norm tolerance");
  c_vqe->add_option("--trace", vq.trace, "energy trace CSV");
  c_vqe->add_option("--summary", vq.summary, "summary JSON (default stdout)");

  DurationArgs dur;
  auto* c_dur = app.add_subcommand("durations", "closed-form gate durations");
  c_dur->add_option("--rotation-us", dur.rotation_us, "global rotation length T");
  c_dur->add_option("--coupling-mhz", dur.coupling_mhz, "nearest-neighbour J / 2 pi (default reference register)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c_opt->parsed()) return run_optimize(opt);
    if (c_cmp->parsed()) return run_compile(cmp);
    if (c_sim->parsed()) return run_simulate(sim);
    if (c_scan->parsed()) return run_scan(scan);
    if (c_vqe->parsed()) return run_vqe_cmd(vq);
    if (c_dur->parsed()) return run_durations(dur);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
