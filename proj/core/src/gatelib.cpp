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

#include "rydgate/gatelib.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <set>

namespace rydgate {
namespace {

using Edge = std::pair<int, int>;

Edge normalise(Edge e) { return e.first < e.second ? e : Edge{e.second, e.first}; }

std::set<Edge> nn_edge_set(const RegisterSpec& reg) {
  std::set<Edge> out;
  for (const auto& e : reg.nn_edges()) out.insert(normalise(e));
  return out;
}

bool periodic(const RegisterSpec& reg) {
  return reg.geometry != Geometry::ChainOpen && reg.n_qubits > 2;
}

void require_adjacent(const RegisterSpec& reg, int a, int b, const std::string& gate) {
  if (a < 0 || b < 0 || a >= reg.n_qubits || b >= reg.n_qubits || a == b) {
    throw Error(ErrorKind::InvalidInput, gate + ": invalid qubit pair");
  }
  if (nn_edge_set(reg).count(normalise({a, b})) == 0) {
    throw Error(ErrorKind::InvalidInput, gate + "(" + std::to_string(a) + "," + std::to_string(b) +
                                             ") acts on non-adjacent qubits and requires SWAP routing");
  }
}

void retag(CompiledSchedule& s, const std::string& prefix) {
  for (auto& step : s.steps) {
    std::visit([&](auto& v) { v.tag = v.tag.empty() ? prefix : prefix + "/" + v.tag; }, step);
  }
}

void append_steps(CompiledSchedule& s, std::vector<ScheduleStep> steps) {
  for (auto& st : steps) s.steps.push_back(std::move(st));
}

double reduce_angle(double theta) {
  // Rz has period 4 pi; land in (-2 pi, 2 pi]
  double r = std::fmod(theta, 4.0 * kPi);
  if (r > 2.0 * kPi) r -= 4.0 * kPi;
  if (r <= -2.0 * kPi) r += 4.0 * kPi;
  return r;
}

// Ry layer with the given angles on qubits (a, b), zero elsewhere.
CompiledSchedule ry_pair(int a, double ta, int b, double tb, const RegisterSpec& reg,
                         const RotationLibrary& lib) {
  std::vector<double> th(static_cast<std::size_t>(reg.n_qubits), 0.0);
  th[static_cast<std::size_t>(a)] = ta;
  th[static_cast<std::size_t>(b)] = tb;
  return compile_local_rotation_layer(digital::Axis::Y, th, reg, lib);
}

}  // namespace

RegisterSpec reference_register(int n_qubits, Geometry geometry, InteractionMode mode) {
  RegisterSpec reg;
  reg.n_qubits = n_qubits;
  reg.geometry = geometry;
  reg.spacing_um = kReferenceSpacingUm;
  reg.c6 = kReferenceC6;
  reg.interaction = mode;
  reg.validate();
  return reg;
}

// ---------------------------------------------------------------------------
// RotationLibrary

std::size_t RotationLibrary::index(RotationKind kind) {
  return (kind.axis == digital::Axis::Y ? 2u : 0u) + (kind.sign < 0 ? 1u : 0u);
}

RotationLibrary RotationLibrary::ideal(double duration_us) {
  if (!(duration_us >= 0.0)) throw Error(ErrorKind::InvalidInput, "rotation duration must be >= 0");
  RotationLibrary lib;
  lib.ideal_ = true;
  lib.ideal_duration_ = duration_us;
  return lib;
}

RotationLibrary RotationLibrary::from_sequence(const PulseSequence& base, RotationKind base_kind) {
  base.validate();
  if (base.segments.empty()) throw Error(ErrorKind::InvalidInput, "empty rotation sequence");
  RotationLibrary lib;
  lib.ideal_ = false;
  lib.base_kind_ = base_kind;
  for (int axis = 0; axis < 2; ++axis) {
    for (int sign : {+1, -1}) {
      const RotationKind k{axis == 0 ? digital::Axis::X : digital::Axis::Y, sign};
      if (k == base_kind) {
        lib.seqs_[index(k)] = base;
        lib.shifts_[index(k)] = 0.0;
        continue;
      }
      DerivedRotation d = derive_rotation_family(base, base_kind, k);
      lib.seqs_[index(k)] = std::move(d.sequence);
      lib.shifts_[index(k)] = d.phase_shift;
    }
  }
  return lib;
}

double RotationLibrary::duration(const RegisterSpec& reg) const {
  if (ideal_) return ideal_duration_;
  const auto& base = seqs_[index(base_kind_)];
  return base.total_duration() * base.reg.nn_coupling() / reg.nn_coupling();
}

const PulseSequence& RotationLibrary::sequence(RotationKind kind) const {
  if (ideal_) throw Error(ErrorKind::InvalidInput, "ideal rotation library has no pulse sequences");
  return seqs_[index(kind)];
}

double RotationLibrary::phase_shift(RotationKind kind) const { return shifts_[index(kind)]; }

std::vector<ScheduleStep> RotationLibrary::steps(RotationKind kind, const RegisterSpec& reg,
                                                 const std::string& tag) const {
  std::vector<ScheduleStep> out;
  if (ideal_) {
    const double angle = kind.sign >= 0 ? 0.5 * kPi : -0.5 * kPi;
    IdealGate g;
    g.gate = kind.axis == digital::Axis::X ? digital::rx(angle) : digital::ry(angle);
    g.duration = ideal_duration_;
    g.tag = tag;
    out.emplace_back(std::move(g));
    return out;
  }
  PulseSequence placed = retarget(seqs_[index(kind)], reg);
  for (auto& s : placed.segments) {
    s.tag = tag;
    out.emplace_back(std::move(s));
  }
  return out;
}

std::array<double, 4> RotationLibrary::fidelities(const RegisterSpec& reg) const {
  std::array<double, 4> out{1.0, 1.0, 1.0, 1.0};
  if (ideal_) return out;
  const RegisterSpec nn = reg.with_interaction(InteractionMode::NearestNeighbour);
  for (int axis = 0; axis < 2; ++axis) {
    for (int sign : {+1, -1}) {
      const RotationKind k{axis == 0 ? digital::Axis::X : digital::Axis::Y, sign};
      out[index(k)] = 1.0 - global_control_loss(retarget(seqs_[index(k)], nn),
                                                 rotation_target(nn.n_qubits, k));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Single-qubit layers

CompiledSchedule compile_rz_layer(std::span<const double> thetas, const RegisterSpec& reg) {
  reg.validate();
  if (static_cast<int>(thetas.size()) != reg.n_qubits) {
    throw Error(ErrorKind::InvalidInput, "RZ layer needs one angle per qubit");
  }
  const double t = kTwoPi / reg.nn_coupling();
  RVector delta(reg.n_qubits);
  for (int q = 0; q < reg.n_qubits; ++q) {
    // exp(+i t delta Z / 2) = Rz(-delta t)
    delta(q) = -reduce_angle(thetas[static_cast<std::size_t>(q)]) / t;
  }
  CompiledSchedule s(reg);
  s.steps.emplace_back(PulseSegment{0.0, 0.0, delta, t, "rz"});
  s.book_as("RZ");
  s.approximate = reg.interaction == InteractionMode::FullTail;
  return s;
}

CompiledSchedule compile_global_rotation(RotationKind kind, const RegisterSpec& reg,
                                         const RotationLibrary& lib) {
  reg.validate();
  CompiledSchedule s(reg);
  append_steps(s, lib.steps(kind, reg, to_string(kind)));
  s.book_as("GLOBAL");
  s.approximate = reg.interaction == InteractionMode::FullTail;
  return s;
}

CompiledSchedule compile_local_rotation_layer(digital::Axis axis, std::span<const double> thetas,
                                              const RegisterSpec& reg, const RotationLibrary& lib) {
  const bool x = axis == digital::Axis::X;
  const RotationKind first = x ? RotationKind{digital::Axis::Y, -1} : RotationKind{digital::Axis::X, +1};
  const RotationKind last = x ? RotationKind{digital::Axis::Y, +1} : RotationKind{digital::Axis::X, -1};
  const std::string name = x ? "local_rx" : "local_ry";

  CompiledSchedule rz = compile_rz_layer(thetas, reg);
  CompiledSchedule s(reg);
  append_steps(s, lib.steps(first, reg, name + "/" + to_string(first)));
  retag(rz, name);
  append_steps(s, rz.steps);
  append_steps(s, lib.steps(last, reg, name + "/" + to_string(last)));
  s.book_as(x ? "LOCAL_RX" : "LOCAL_RY");
  s.approximate = rz.approximate;
  return s;
}

// ---------------------------------------------------------------------------
// Refocused CZ layers

ConjugatedInteraction conjugate_interaction(const RegisterSpec& reg, std::uint64_t flip_mask) {
  const RMatrix k = coupling_matrix(reg);
  const int n = reg.n_qubits;
  ConjugatedInteraction out;
  out.coupling = k;
  out.linear = RVector::Zero(n);
  auto flipped = [&](int q) { return ((flip_mask >> q) & 1u) != 0; };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double kij = k(i, j);
      if (kij == 0.0) continue;
      const bool fi = flipped(i);
      const bool fj = flipped(j);
      if (fi != fj) {
        // (1 - n_i) n_j = n_j - n_i n_j
        out.coupling(i, j) = out.coupling(j, i) = -kij;
        out.linear(fi ? j : i) += kij;
      } else if (fi && fj) {
        // (1 - n_i)(1 - n_j) = 1 - n_i - n_j + n_i n_j
        out.linear(i) -= kij;
        out.linear(j) -= kij;
        out.constant += kij;
      }
    }
  }
  return out;
}

std::uint64_t RefocusPlan::flip_mask() const {
  std::uint64_t m = 0;
  for (int q : flip) m |= std::uint64_t{1} << q;
  return m;
}

RefocusPlan plan_refocus(std::span<const std::pair<int, int>> keep, const RegisterSpec& reg) {
  reg.validate();
  const int n = reg.n_qubits;
  if (n > 63) throw Error(ErrorKind::TooLarge, "refocusing supports at most 63 qubits");
  const std::set<Edge> nn = nn_edge_set(reg);
  std::set<Edge> kept;
  for (const auto& e : keep) {
    const Edge ne = normalise(e);
    if (nn.count(ne) == 0) {
      throw Error(ErrorKind::InvalidInput, "CZ edge (" + std::to_string(e.first) + "," +
                                               std::to_string(e.second) +
                                               ") is not a nearest-neighbour edge");
    }
    if (!kept.insert(ne).second) throw Error(ErrorKind::InvalidInput, "duplicate CZ edge");
  }

  // Two-colour the chain: an edge is kept iff its endpoints share a colour.
  std::vector<int> s(static_cast<std::size_t>(n), 0);
  for (int i = 0; i + 1 < n; ++i) {
    const bool remove = kept.count({i, i + 1}) == 0;
    s[static_cast<std::size_t>(i) + 1] = s[static_cast<std::size_t>(i)] ^ (remove ? 1 : 0);
  }
  if (periodic(reg)) {
    const bool remove = kept.count({0, n - 1}) == 0;
    if ((s[static_cast<std::size_t>(n) - 1] ^ (remove ? 1 : 0)) != s[0]) {
      throw Error(ErrorKind::Unrealizable,
                  "parity rule: a periodic chain of " + std::to_string(n) +
                      " qubits only admits CZ layers with an " + (n % 2 == 0 ? "even" : "odd") +
                      " number of gates");
    }
  }
  const int ones = static_cast<int>(std::count(s.begin(), s.end(), 1));
  const bool complement = (n - ones) < ones || ((n - ones) == ones && s[0] == 0);
  RefocusPlan plan;
  plan.keep.assign(kept.begin(), kept.end());
  for (int q = 0; q < n; ++q) {
    if ((s[static_cast<std::size_t>(q)] ^ (complement ? 1 : 0)) != 0) plan.flip.push_back(q);
  }
  const ConjugatedInteraction conj = conjugate_interaction(reg, plan.flip_mask());
  plan.delta_star = -conj.linear;
  plan.half_duration = 0.5 * kPi / reg.nn_coupling();
  return plan;
}

CompiledSchedule compile_cz_layer(std::span<const std::pair<int, int>> keep, const RegisterSpec& reg,
                                  const RotationLibrary& lib) {
  const RefocusPlan plan = plan_refocus(keep, reg);
  const int n = reg.n_qubits;
  CompiledSchedule s(reg);
  if (plan.flip.empty()) {
    s.steps.emplace_back(PulseSegment::free_evolution(n, 2.0 * plan.half_duration, "cz/drift"));
  } else {
    std::vector<double> theta(static_cast<std::size_t>(n), 0.0);
    for (int q : plan.flip) theta[static_cast<std::size_t>(q)] = kPi;
    CompiledSchedule flip = compile_local_rotation_layer(digital::Axis::X, theta, reg, lib);
    retag(flip, "cz");
    append_steps(s, flip.steps);
    s.steps.emplace_back(PulseSegment::free_evolution(n, plan.half_duration, "cz/echo"));
    append_steps(s, flip.steps);
    s.steps.emplace_back(PulseSegment{0.0, 0.0, plan.delta_star, plan.half_duration, "cz/comp"});
  }
  s.book_as("CZ");
  s.approximate = reg.interaction == InteractionMode::FullTail;
  return s;
}

// ---------------------------------------------------------------------------
// Two-qubit gates

TwoQubitProgram lower_cnot(int control, int target) {
  // CNOT = Ry_t(pi/2) CZ Ry_t(-pi/2)
  const double h = 0.5 * kPi;
  return TwoQubitProgram{control, target, {{0.0, -h}, {0.0, h}}};
}

TwoQubitProgram lower_swap(int a, int b) {
  // CNOT(a,b) CNOT(b,a) CNOT(a,b) with adjacent Ry layers merged
  const double h = 0.5 * kPi;
  return TwoQubitProgram{a, b, {{0.0, -h}, {-h, h}, {h, -h}, {0.0, h}}};
}

TwoQubitProgram lower_givens_swap(int i, int j, double theta) {
  const double h = 0.5 * kPi;
  return TwoQubitProgram{i, j, {{0.0, h}, {h - theta, -h}, {theta - h, h}, {0.0, -h}}};
}

Unitary program_unitary(const TwoQubitProgram& p, int n_qubits) {
  Unitary u = Unitary::identity(n_qubits);
  const std::vector<std::pair<int, int>> edge{{p.a, p.b}};
  for (std::size_t k = 0; k < p.ry.size(); ++k) {
    if (k > 0) u = digital::cz_product(n_qubits, edge) * u;
    std::vector<double> th(static_cast<std::size_t>(n_qubits), 0.0);
    th[static_cast<std::size_t>(p.a)] = p.ry[k].first;
    th[static_cast<std::size_t>(p.b)] = p.ry[k].second;
    u = digital::local_rotation_layer(digital::Axis::Y, th) * u;
  }
  return u;
}

namespace {

CompiledSchedule compile_program(const TwoQubitProgram& p, const RegisterSpec& reg,
                                 const RotationLibrary& lib, const std::string& name) {
  require_adjacent(reg, p.a, p.b, name);
  const std::pair<int, int> edge{p.a, p.b};
  CompiledSchedule s(reg);
  for (std::size_t k = 0; k < p.ry.size(); ++k) {
    if (k > 0) s.append(compile_cz_layer(std::span(&edge, 1), reg, lib));
    if (p.ry[k].first != 0.0 || p.ry[k].second != 0.0) {
      s.append(ry_pair(p.a, p.ry[k].first, p.b, p.ry[k].second, reg, lib));
    }
  }
  std::string tag;
  for (char c : name) tag += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  retag(s, tag);
  s.book_as(name);
  s.approximate = reg.interaction == InteractionMode::FullTail;
  return s;
}

}  // namespace

CompiledSchedule compile_cnot(int control, int target, const RegisterSpec& reg,
                              const RotationLibrary& lib) {
  return compile_program(lower_cnot(control, target), reg, lib, "CNOT");
}

CompiledSchedule compile_swap(int a, int b, const RegisterSpec& reg, const RotationLibrary& lib) {
  return compile_program(lower_swap(a, b), reg, lib, "SWAP");
}

CompiledSchedule compile_givens_swap(int i, int j, double theta, const RegisterSpec& reg,
                                     const RotationLibrary& lib) {
  return compile_program(lower_givens_swap(i, j, theta), reg, lib, "GSWAP");
}

// ---------------------------------------------------------------------------
// Duration accounting

DurationParams DurationParams::reference() {
  DurationParams p;
  p.rotation_time = kReferenceRotationUs;
  p.J = reference_register(2, Geometry::ChainOpen).nn_coupling();
  return p;
}

double DurationParams::rz_time() const {
  if (!(J > 0.0)) throw Error(ErrorKind::InvalidInput, "duration parameters need J > 0");
  return kTwoPi / J;
}

double gate_duration(const std::string& gate, const DurationParams& p) {
  std::string g;
  for (char c : gate) g += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  const double t = p.rz_time();
  const double global = p.rotation_time;
  const double local = 2.0 * global + t;
  const double cz = 2.0 * local + 0.5 * t;
  if (g == "RZ") return t;
  if (g == "GLOBAL") return global;
  if (g == "LOCAL" || g == "LOCAL_RX" || g == "LOCAL_RY") return local;
  if (g == "CZ") return cz;
  if (g == "CNOT") return 2.0 * local + cz;
  if (g == "SWAP" || g == "GSWAP") return 4.0 * local + 3.0 * cz;
  throw Error(ErrorKind::InvalidInput, "unknown gate '" + gate + "'");
}

std::vector<LedgerEntry> duration_table(const DurationParams& p) {
  std::vector<LedgerEntry> out;
  for (const char* g : {"RZ", "GLOBAL", "LOCAL", "CZ", "CNOT", "SWAP", "GSWAP"}) {
    out.push_back(LedgerEntry{g, gate_duration(g, p)});
  }
  return out;
}

}  // namespace rydgate
