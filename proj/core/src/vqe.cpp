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

#include "rydgate/vqe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "rydgate/io.hpp"
#include "rydgate/optimize.hpp"

namespace rydgate::vqe {
namespace {

[[noreturn]] void bad_fixture(const std::string& what) {
  throw Error(ErrorKind::InvalidFixture, "fixture: " + what);
}

Complex i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Expands N = (I - Z)/2 factors into Pauli strings.
std::vector<PauliString> expand(const Term& t) {
  std::vector<PauliString> out{PauliString{t.coeff, 0, 0, 0}};
  for (const auto& f : t.ops) {
    const std::uint64_t bit = std::uint64_t{1} << f.qubit;
    std::vector<PauliString> next;
    for (const auto& s : out) {
      switch (f.op) {
        case Op::I: next.push_back(s); break;
        case Op::X: next.push_back({s.coeff, s.x_mask ^ bit, s.z_mask, s.y_count}); break;
        case Op::Z: next.push_back({s.coeff, s.x_mask, s.z_mask ^ bit, s.y_count}); break;
        case Op::Y: next.push_back({s.coeff, s.x_mask ^ bit, s.z_mask ^ bit, s.y_count + 1}); break;
        case Op::N:
          next.push_back({0.5 * s.coeff, s.x_mask, s.z_mask, s.y_count});
          next.push_back({-0.5 * s.coeff, s.x_mask, s.z_mask ^ bit, s.y_count});
          break;
      }
    }
    out = std::move(next);
  }
  return out;
}

// Y = i X Z, so a string with y Y factors picks up i^y and then acts as X^x Z^z.
void accumulate(CVector& out, const CVector& psi, const PauliString& s) {
  const Complex phase = s.coeff * i_power(s.y_count);
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const double sign = (std::popcount(ub & s.z_mask) & 1) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(ub ^ s.x_mask)) += phase * sign * psi(b);
  }
}

Op parse_op(const std::string& s) {
  if (s == "I") return Op::I;
  if (s == "X") return Op::X;
  if (s == "Y") return Op::Y;
  if (s == "Z") return Op::Z;
  if (s == "N") return Op::N;
  bad_fixture("unknown operator '" + s + "' (I, X, Y, Z, N)");
}

const char* op_name(Op op) {
  switch (op) {
    case Op::I: return "I";
    case Op::X: return "X";
    case Op::Y: return "Y";
    case Op::Z: return "Z";
    case Op::N: return "N";
  }
  return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// Hamiltonian

PairedHamiltonian::PairedHamiltonian(int n_qubits, int n_pairs, double constant, std::vector<Term> terms)
    : n_qubits_(n_qubits), n_pairs_(n_pairs), constant_(constant), terms_(std::move(terms)) {
  if (n_qubits < 1 || n_qubits > 20) bad_fixture("n_qubits must lie in [1, 20]");
  if (n_pairs < 0 || n_pairs > n_qubits) bad_fixture("n_pairs must lie in [0, n_qubits]");
  for (const auto& t : terms_) {
    for (const auto& f : t.ops) {
      if (f.qubit < 0 || f.qubit >= n_qubits) bad_fixture("qubit index out of range");
    }
    for (auto& s : expand(t)) strings_.push_back(s);
  }
}

CVector PairedHamiltonian::apply(const CVector& psi) const {
  if (psi.size() != (Eigen::Index{1} << n_qubits_)) {
    throw Error(ErrorKind::InvalidInput, "state dimension does not match the Hamiltonian");
  }
  CVector out = constant_ * psi;
  for (const auto& s : strings_) accumulate(out, psi, s);
  return out;
}

CMatrix PairedHamiltonian::matrix() const {
  if (n_qubits_ > 12) throw Error(ErrorKind::TooLarge, "dense Hamiltonian limited to 12 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  CMatrix m(dim, dim);
  CVector e = CVector::Zero(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    e(c) = 1.0;
    m.col(c) = apply(e);
    e(c) = 0.0;
  }
  return m;
}

double PairedHamiltonian::number_commutator_norm() const {
  if (n_qubits_ > 12) throw Error(ErrorKind::TooLarge, "commutator check limited to 12 qubits");
  // [H, N]_{ab} = H_ab (N_b - N_a)
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  CVector e = CVector::Zero(dim);
  double sum = 0.0;
  for (Eigen::Index c = 0; c < dim; ++c) {
    e(c) = 1.0;
    const CVector col = apply(e);
    e(c) = 0.0;
    const int nc = std::popcount(static_cast<std::uint64_t>(c));
    for (Eigen::Index r = 0; r < dim; ++r) {
      const int d = nc - std::popcount(static_cast<std::uint64_t>(r));
      if (d != 0) sum += std::norm(col(r)) * d * d;
    }
  }
  return std::sqrt(sum);
}

double PairedHamiltonian::sector_ground_energy(int pairs) const {
  if (n_qubits_ > 12) throw Error(ErrorKind::TooLarge, "sector diagonalisation limited to 12 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  std::vector<Eigen::Index> basis;
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (std::popcount(static_cast<std::uint64_t>(b)) == pairs) basis.push_back(b);
  }
  if (basis.empty()) throw Error(ErrorKind::InvalidInput, "empty particle-number sector");
  const auto k = static_cast<Eigen::Index>(basis.size());
  CMatrix block(k, k);
  CVector e = CVector::Zero(dim);
  for (Eigen::Index j = 0; j < k; ++j) {
    e(basis[static_cast<std::size_t>(j)]) = 1.0;
    const CVector col = apply(e);
    e(basis[static_cast<std::size_t>(j)]) = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) block(i, j) = col(basis[static_cast<std::size_t>(i)]);
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(block, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void PairedHamiltonian::compute_reference() { reference_energy = sector_ground_energy(n_pairs_); }

void validate_structure(const PairedHamiltonian& h) {
  if (!std::isfinite(h.constant())) bad_fixture("constant must be finite");
  std::map<std::pair<int, int>, double> xx, yy;
  for (const auto& t : h.terms()) {
    if (!std::isfinite(t.coeff)) bad_fixture("coefficients must be finite real numbers");
    std::vector<Factor> ops;
    for (const auto& f : t.ops) {
      if (f.op != Op::I) ops.push_back(f);
    }
    std::set<int> qubits;
    for (const auto& f : ops) qubits.insert(f.qubit);
    if (qubits.size() != ops.size()) bad_fixture("a term repeats a qubit");
    const auto diagonal = [](Op op) { return op == Op::Z || op == Op::N; };
    if (ops.size() <= 1) {
      if (ops.size() == 1 && !diagonal(ops[0].op)) {
        bad_fixture(std::string("single-qubit term ") + op_name(ops[0].op) +
                    " breaks the paired structure (only Z or N allowed)");
      }
      continue;
    }
    if (ops.size() > 2) bad_fixture("terms act on at most two qubits");
    if (diagonal(ops[0].op) && diagonal(ops[1].op)) continue;
    if (ops[0].op != ops[1].op || (ops[0].op != Op::X && ops[0].op != Op::Y)) {
      bad_fixture(std::string("two-qubit term ") + op_name(ops[0].op) + op_name(ops[1].op) +
                  " breaks the paired structure (XX, YY, or density pairs)");
    }
    const auto key = std::minmax(ops[0].qubit, ops[1].qubit);
    (ops[0].op == Op::X ? xx : yy)[key] += t.coeff;
  }
  std::set<std::pair<int, int>> pairs;
  for (const auto& [k, v] : xx) pairs.insert(k);
  for (const auto& [k, v] : yy) pairs.insert(k);
  for (const auto& k : pairs) {
    const double a = xx.count(k) ? xx.at(k) : 0.0;
    const double b = yy.count(k) ? yy.at(k) : 0.0;
    if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(a))) {
      bad_fixture("hopping on (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                  ") needs equal XX and YY weights");
    }
  }
  if (h.n_qubits() <= 12) {
    const double c = h.number_commutator_norm();
    if (c > 1e-10) bad_fixture("Hamiltonian does not conserve particle number (|[H,N]| = " + std::to_string(c) + ")");
  }
}

PairedHamiltonian fixture_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) bad_fixture("top level must be an object");
    for (const char* key : {"n_qubits", "n_pairs", "constant", "terms"}) {
      if (!j.contains(key)) bad_fixture(std::string("missing field '") + key + "'");
    }
    if (!j.at("n_qubits").is_number_integer() || !j.at("n_pairs").is_number_integer()) {
      bad_fixture("n_qubits and n_pairs must be integers");
    }
    if (!j.at("constant").is_number()) bad_fixture("constant must be a real number");
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      if (!t.contains("coeff") || !t.at("coeff").is_number()) {
        bad_fixture("every term needs a real 'coeff'");
      }
      Term term{t.at("coeff").get<double>(), {}};
      for (const auto& f : t.at("ops")) {
        if (!f.is_array() || f.size() != 2 || !f.at(0).is_string() || !f.at(1).is_number_integer()) {
          bad_fixture("ops entries look like [\"Z\", 0]");
        }
        term.ops.push_back(Factor{parse_op(f.at(0).get<std::string>()), f.at(1).get<int>()});
      }
      terms.push_back(std::move(term));
    }
    PairedHamiltonian h(j.at("n_qubits").get<int>(), j.at("n_pairs").get<int>(),
                        j.at("constant").get<double>(), std::move(terms));
    h.molecule = j.value("molecule", std::string{});
    h.basis = j.value("basis", std::string{});
    validate_structure(h);
    h.compute_reference();
    if (j.contains("reference_energy")) {
      const double stored = j.at("reference_energy").get<double>();
      if (std::abs(stored - h.reference_energy) > 1e-6) {
        bad_fixture("stored reference energy " + std::to_string(stored) +
                    " disagrees with exact diagonalisation " + std::to_string(h.reference_energy));
      }
    }
    return h;
  } catch (const nlohmann::json::exception& e) {
    bad_fixture(e.what());
  }
}

PairedHamiltonian load_fixture(const std::string& path) {
  const std::string text = io::read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad_fixture(std::string("not valid JSON: ") + e.what());
  }
  return fixture_from_json(j);
}

nlohmann::json fixture_to_json(const PairedHamiltonian& h) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : h.terms()) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& f : t.ops) ops.push_back(nlohmann::json::array({op_name(f.op), f.qubit}));
    terms.push_back({{"coeff", t.coeff}, {"ops", ops}});
  }
  return {{"molecule", h.molecule},     {"basis", h.basis},       {"n_qubits", h.n_qubits()},
          {"n_pairs", h.n_pairs()},     {"constant", h.constant()}, {"terms", terms},
          {"reference_energy", h.reference_energy}};
}

// ---------------------------------------------------------------------------
// States and energies

StateVector hartree_fock_state(int n_qubits, int n_pairs) {
  if (n_pairs < 0 || n_pairs > n_qubits) {
    throw Error(ErrorKind::InvalidInput, "n_pairs must lie in [0, n_qubits]");
  }
  return StateVector::basis(n_qubits, (std::uint64_t{1} << n_pairs) - 1);
}

double energy(const PairedHamiltonian& h, const StateVector& psi) {
  if (psi.n_qubits() != h.n_qubits()) {
    throw Error(ErrorKind::InvalidInput, "state has " + std::to_string(psi.n_qubits()) +
                                             " qubits, Hamiltonian " + std::to_string(h.n_qubits()));
  }
  const Complex e = psi.amplitudes().dot(h.apply(psi.amplitudes()));
  if (std::abs(e.imag()) > 1e-10) throw Error(ErrorKind::Internal, "energy has an imaginary part");
  return e.real();
}

double number_expectation(const StateVector& psi) {
  double n = 0.0;
  for (Eigen::Index b = 0; b < psi.dim(); ++b) {
    n += std::norm(psi.amplitudes()(b)) * std::popcount(static_cast<std::uint64_t>(b));
  }
  return n;
}

std::string to_string(Backend b) { return b == Backend::Ideal ? "ideal" : "analog"; }

Backend parse_backend(const std::string& text) {
  if (text == "ideal") return Backend::Ideal;
  if (text == "analog") return Backend::Analog;
  throw Error(ErrorKind::InvalidInput, "unknown backend '" + text + "' (ideal, analog)");
}

std::vector<int> default_depths(int n_qubits) {
  return {std::max(1, n_qubits / 2), n_qubits, 2 * n_qubits};
}

// ---------------------------------------------------------------------------
// Ansatz

Ansatz::Ansatz(AnsatzSpec spec) : spec_(spec) {
  if (spec_.backend != Backend::Ideal) {
    throw Error(ErrorKind::InvalidInput, "the analog backend needs a register and a rotation library");
  }
  if (spec_.n_qubits < 2 || spec_.depth < 0) throw Error(ErrorKind::InvalidInput, "ansatz needs n >= 2, depth >= 0");
}

Ansatz::Ansatz(AnsatzSpec spec, RegisterSpec reg, RotationLibrary lib) : spec_(spec) {
  if (spec_.n_qubits < 2 || spec_.depth < 0) throw Error(ErrorKind::InvalidInput, "ansatz needs n >= 2, depth >= 0");
  if (spec_.backend == Backend::Analog) {
    if (reg.n_qubits != spec_.n_qubits) {
      throw Error(ErrorKind::InvalidInput, "analog backend unavailable: register has " +
                                               std::to_string(reg.n_qubits) + " qubits, ansatz " +
                                               std::to_string(spec_.n_qubits));
    }
    reg.validate();
    coupling_ = coupling_matrix(reg);
    reg_ = std::move(reg);
    lib_ = std::move(lib);
    // surface connectivity / parity problems now rather than mid-optimisation
    (void)compile_circuit(circuit(RVector::Zero(spec_.parameter_count())), *reg_, *lib_);
  }
}

void Ansatz::check(const RVector& theta) const {
  if (theta.size() != spec_.parameter_count()) {
    throw Error(ErrorKind::InvalidInput, "ansatz needs " + std::to_string(spec_.parameter_count()) +
                                             " angles, got " + std::to_string(theta.size()));
  }
}

CircuitIR Ansatz::circuit(const RVector& theta) const {
  check(theta);
  NetworkPayload p;
  p.givens = true;
  p.layers = spec_.depth;
  p.thetas.assign(theta.data(), theta.data() + theta.size());
  if (spec_.depth == 0) return CircuitIR{spec_.n_qubits, {}};
  return compile_swap_network(spec_.n_qubits, p);
}

const CMatrix& Ansatz::cached(const PulseSegment& seg) const {
  std::vector<double> key{seg.omega, seg.phi, seg.duration};
  key.insert(key.end(), seg.delta.data(), seg.delta.data() + seg.delta.size());
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(std::move(key), segment_unitary(*reg_, seg).matrix()).first;
  return it->second;
}

StateVector Ansatz::prepare(const StateVector& initial, const RVector& theta) const {
  check(theta);
  if (initial.n_qubits() != spec_.n_qubits) throw Error(ErrorKind::InvalidInput, "initial state size mismatch");
  CVector psi = initial.amplitudes();
  if (spec_.backend == Backend::Ideal) {
    for (const auto& l : circuit(theta).layers) {
      apply_two_qubit_gate(psi, digital::givens_swap4(l.theta), l.a, l.b);
    }
    return StateVector(std::move(psi));
  }
  const CompiledSchedule s = compile_circuit(circuit(theta), *reg_, *lib_);
  for (const auto& step : s.steps) {
    if (const auto* g = std::get_if<IdealGate>(&step)) {
      apply_single_qubit_gate(psi, spec_.n_qubits, g->gate, g->qubits);
      continue;
    }
    const auto& seg = std::get<PulseSegment>(step);
    if (seg.omega == 0.0) {
      // diagonal: Rz layers, echoes and compensation steps
      const RVector e = diagonal_energies(*reg_, coupling_, seg.delta);
      for (Eigen::Index b = 0; b < psi.size(); ++b) psi(b) *= std::polar(1.0, -e(b) * seg.duration);
    } else {
      psi = cached(seg) * psi;
    }
  }
  return StateVector(std::move(psi));
}

// ---------------------------------------------------------------------------
// Optimisation

VqeResult run_vqe(const PairedHamiltonian& h, const Ansatz& ansatz, const VqeConfig& cfg) {
  if (ansatz.spec().n_qubits != h.n_qubits()) {
    throw Error(ErrorKind::InvalidInput, "ansatz and Hamiltonian sizes differ");
  }
  const StateVector hf = hartree_fock_state(h.n_qubits(), h.n_pairs());
  const int np = ansatz.spec().parameter_count();
  int evaluations = 0;
  double lowest = std::numeric_limits<double>::infinity();
  const optimize::Function f = [&](const RVector& x) {
    ++evaluations;
    const double e = energy(h, ansatz.prepare(hf, x));
    lowest = std::min(lowest, e);
    return e;
  };

  VqeResult best;
  best.reference = h.reference_energy;
  bool have = false;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int start = 0; start <= cfg.restarts; ++start) {
    RVector x0 = RVector::Zero(np);
    if (start > 0) {
      for (Eigen::Index k = 0; k < np; ++k) x0(k) = angle(rng);
    }
    VqeResult run;
    run.reference = h.reference_energy;
    optimize::Result r;
    if (np == 0) {
      r.x = x0;
      r.value = f(x0);
      r.converged = true;
      run.energies.push_back(r.value);
    } else {
      optimize::BfgsOptions opts;
      opts.gradient_tolerance = cfg.gradient_tolerance;
      opts.max_iterations = cfg.max_iterations;
      run.energies.push_back(f(x0));
      r = optimize::minimize_bfgs(optimize::with_numeric_gradient(f, cfg.fd_step), x0, opts,
                                  [&](const RVector&, double v) { run.energies.push_back(v); });
    }
    run.best_theta = r.x;
    run.energy = r.value;
    run.iterations = r.iterations;
    run.converged = r.converged;
    if (!have || run.energy < best.energy) {
      const auto trace = std::move(run.energies);
      best = std::move(run);
      best.energies = trace;
      have = true;
    }
  }
  best.best_so_far.resize(best.energies.size());
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < best.energies.size(); ++k) {
    m = std::min(m, best.energies[k]);
    best.best_so_far[k] = m;
  }
  best.energy = std::min(best.energy, m);
  best.error = best.energy - best.reference;
  best.evaluations = evaluations;
  if (lowest < h.reference_energy - 1e-9) best.bound_violation = lowest;
  return best;
}

}  // namespace rydgate::vqe
