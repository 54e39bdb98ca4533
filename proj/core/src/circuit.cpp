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

#include "rydgate/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace rydgate {
namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, "circuit line " + std::to_string(line) + ": " + what);
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

double to_double(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) parse_error(line, "bad number '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_error(line, "bad number '" + tok + "'");
  }
}

int to_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) parse_error(line, "bad qubit index '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_error(line, "bad qubit index '" + tok + "'");
  }
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_qubit(int n, int q, const char* what) {
  if (q < 0 || q >= n) {
    throw Error(ErrorKind::InvalidInput, std::string(what) + ": qubit " + std::to_string(q) +
                                             " out of range");
  }
}

std::vector<digital::Matrix2> per_qubit(std::span<const double> angles, digital::Matrix2 (*f)(double)) {
  std::vector<digital::Matrix2> out;
  for (double a : angles) out.push_back(f(a));
  return out;
}

}  // namespace

GateLayer GateLayer::rz(std::vector<double> angles) {
  GateLayer l;
  l.kind = LayerKind::Rz;
  l.angles = std::move(angles);
  return l;
}

GateLayer GateLayer::local(digital::Axis axis, std::vector<double> angles) {
  GateLayer l;
  l.kind = axis == digital::Axis::X ? LayerKind::LocalRx : LayerKind::LocalRy;
  l.angles = std::move(angles);
  return l;
}

GateLayer GateLayer::global(RotationKind kind) {
  GateLayer l;
  l.kind = LayerKind::GlobalRot;
  l.rotation = kind;
  return l;
}

GateLayer GateLayer::cz(std::vector<std::pair<int, int>> edges) {
  GateLayer l;
  l.kind = LayerKind::Cz;
  l.edges = std::move(edges);
  return l;
}

GateLayer GateLayer::cnot(int control, int target) {
  GateLayer l;
  l.kind = LayerKind::Cnot;
  l.a = control;
  l.b = target;
  return l;
}

GateLayer GateLayer::swap(int i, int j) {
  GateLayer l;
  l.kind = LayerKind::Swap;
  l.a = i;
  l.b = j;
  return l;
}

GateLayer GateLayer::givens_swap(int i, int j, double theta) {
  GateLayer l;
  l.kind = LayerKind::GivensSwap;
  l.a = i;
  l.b = j;
  l.theta = theta;
  return l;
}

GateLayer GateLayer::barrier() { return GateLayer{}; }

void CircuitIR::validate() const {
  if (n_qubits < 1) throw Error(ErrorKind::InvalidInput, "circuit needs at least one qubit");
  for (const auto& l : layers) {
    switch (l.kind) {
      case LayerKind::Rz:
      case LayerKind::LocalRx:
      case LayerKind::LocalRy:
        if (static_cast<int>(l.angles.size()) != n_qubits) {
          throw Error(ErrorKind::InvalidInput, "rotation layer needs one angle per qubit");
        }
        break;
      case LayerKind::Cz:
        for (const auto& [i, j] : l.edges) {
          check_qubit(n_qubits, i, "CZ");
          check_qubit(n_qubits, j, "CZ");
          if (i == j) throw Error(ErrorKind::InvalidInput, "CZ needs two distinct qubits");
        }
        break;
      case LayerKind::Cnot:
      case LayerKind::Swap:
      case LayerKind::GivensSwap:
        check_qubit(n_qubits, l.a, "two-qubit gate");
        check_qubit(n_qubits, l.b, "two-qubit gate");
        if (l.a == l.b) throw Error(ErrorKind::InvalidInput, "two-qubit gate needs distinct qubits");
        break;
      case LayerKind::GlobalRot:
      case LayerKind::Barrier:
        break;
    }
  }
}

CircuitIR parse_circuit(const std::string& text, int n_qubits) {
  CircuitIR c;
  c.n_qubits = n_qubits;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    // "(0,1)" -> " 0 1 " so edges tokenise like everything else
    std::string line;
    for (char ch : raw) line += (ch == '(' || ch == ')' || ch == ',') ? ' ' : ch;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string op = upper(tok[0]);
    const std::size_t nargs = tok.size() - 1;
    auto angles = [&] {
      std::vector<double> a;
      for (std::size_t i = 1; i < tok.size(); ++i) a.push_back(to_double(tok[i], line_no));
      if (static_cast<int>(a.size()) != n_qubits) {
        parse_error(line_no, op + " needs " + std::to_string(n_qubits) + " angles");
      }
      return a;
    };
    if (op == "RZ") {
      c.layers.push_back(GateLayer::rz(angles()));
    } else if (op == "RX") {
      c.layers.push_back(GateLayer::local(digital::Axis::X, angles()));
    } else if (op == "RY") {
      c.layers.push_back(GateLayer::local(digital::Axis::Y, angles()));
    } else if (op == "GLOBALROT") {
      if (nargs != 2) parse_error(line_no, "GLOBALROT takes an axis and a sign");
      const std::string axis = upper(tok[1]);
      if ((axis != "X" && axis != "Y") || (tok[2] != "+" && tok[2] != "-")) {
        parse_error(line_no, "GLOBALROT expects X|Y and +|-");
      }
      c.layers.push_back(GateLayer::global(
          {axis == "X" ? digital::Axis::X : digital::Axis::Y, tok[2] == "+" ? +1 : -1}));
    } else if (op == "CZ") {
      if (nargs % 2 != 0) parse_error(line_no, "CZ takes qubit pairs");
      std::vector<std::pair<int, int>> edges;
      for (std::size_t i = 1; i + 1 < tok.size(); i += 2) {
        edges.emplace_back(to_int(tok[i], line_no), to_int(tok[i + 1], line_no));
      }
      c.layers.push_back(GateLayer::cz(std::move(edges)));
    } else if (op == "CNOT" || op == "SWAP") {
      if (nargs != 2) parse_error(line_no, op + " takes two qubits");
      const int a = to_int(tok[1], line_no);
      const int b = to_int(tok[2], line_no);
      c.layers.push_back(op == "CNOT" ? GateLayer::cnot(a, b) : GateLayer::swap(a, b));
    } else if (op == "GSWAP") {
      if (nargs != 3) parse_error(line_no, "GSWAP takes two qubits and an angle");
      c.layers.push_back(GateLayer::givens_swap(to_int(tok[1], line_no), to_int(tok[2], line_no),
                                                to_double(tok[3], line_no)));
    } else if (op == "BARRIER") {
      c.layers.push_back(GateLayer::barrier());
    } else {
      parse_error(line_no, "unknown gate '" + tok[0] + "'");
    }
  }
  try {
    c.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("circuit: ") + e.what());
  }
  return c;
}

std::string format_circuit(const CircuitIR& circuit) {
  std::string out;
  auto angles = [&](const char* op, const std::vector<double>& a) {
    out += op;
    for (double v : a) out += " " + fmt_double(v);
    out += "\n";
  };
  for (const auto& l : circuit.layers) {
    switch (l.kind) {
      case LayerKind::Rz: angles("RZ", l.angles); break;
      case LayerKind::LocalRx: angles("RX", l.angles); break;
      case LayerKind::LocalRy: angles("RY", l.angles); break;
      case LayerKind::GlobalRot:
        out += std::string("GLOBALROT ") + (l.rotation.axis == digital::Axis::X ? "X" : "Y") +
               (l.rotation.sign >= 0 ? " +" : " -") + "\n";
        break;
      case LayerKind::Cz:
        out += "CZ";
        for (const auto& [i, j] : l.edges) out += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
        out += "\n";
        break;
      case LayerKind::Cnot: out += "CNOT " + std::to_string(l.a) + " " + std::to_string(l.b) + "\n"; break;
      case LayerKind::Swap: out += "SWAP " + std::to_string(l.a) + " " + std::to_string(l.b) + "\n"; break;
      case LayerKind::GivensSwap:
        out += "GSWAP " + std::to_string(l.a) + " " + std::to_string(l.b) + " " + fmt_double(l.theta) + "\n";
        break;
      case LayerKind::Barrier: out += "BARRIER\n"; break;
    }
  }
  return out;
}

Unitary circuit_unitary(const CircuitIR& circuit) {
  circuit.validate();
  const int n = circuit.n_qubits;
  Unitary u = Unitary::identity(n);
  for (const auto& l : circuit.layers) {
    Unitary g = Unitary::identity(n);
    switch (l.kind) {
      case LayerKind::Rz: g = digital::rz_layer(l.angles); break;
      case LayerKind::LocalRx: g = digital::product(per_qubit(l.angles, digital::rx)); break;
      case LayerKind::LocalRy: g = digital::product(per_qubit(l.angles, digital::ry)); break;
      case LayerKind::GlobalRot: g = digital::global_rotation(n, l.rotation.axis, l.rotation.sign); break;
      case LayerKind::Cz: g = digital::cz_product(n, l.edges); break;
      case LayerKind::Cnot: g = digital::cnot(n, l.a, l.b); break;
      case LayerKind::Swap: g = digital::swap(n, l.a, l.b); break;
      case LayerKind::GivensSwap: g = digital::givens_swap(n, l.a, l.b, l.theta); break;
      case LayerKind::Barrier: continue;
    }
    u = g * u;
  }
  return u;
}

StateVector circuit_state(const CircuitIR& circuit, const StateVector& psi0) {
  circuit.validate();
  const int n = circuit.n_qubits;
  if (psi0.n_qubits() != n) throw Error(ErrorKind::InvalidInput, "state and circuit sizes differ");
  CVector psi = psi0.amplitudes();
  auto per_qubit_apply = [&](const std::vector<double>& angles, digital::Matrix2 (*f)(double)) {
    for (int q = 0; q < n; ++q) {
      if (angles[static_cast<std::size_t>(q)] != 0.0) {
        apply_single_qubit_gate(psi, n, f(angles[static_cast<std::size_t>(q)]), q);
      }
    }
  };
  for (const auto& l : circuit.layers) {
    switch (l.kind) {
      case LayerKind::Rz: per_qubit_apply(l.angles, digital::rz); break;
      case LayerKind::LocalRx: per_qubit_apply(l.angles, digital::rx); break;
      case LayerKind::LocalRy: per_qubit_apply(l.angles, digital::ry); break;
      case LayerKind::GlobalRot: {
        const double angle = l.rotation.sign >= 0 ? 0.5 * kPi : -0.5 * kPi;
        apply_single_qubit_gate(psi, n, l.rotation.axis == digital::Axis::X ? digital::rx(angle) : digital::ry(angle));
        break;
      }
      case LayerKind::Cz:
        for (const auto& [i, j] : l.edges) apply_two_qubit_gate(psi, digital::cz4(), i, j);
        break;
      case LayerKind::Cnot: apply_two_qubit_gate(psi, digital::cnot4(), l.a, l.b); break;
      case LayerKind::Swap: apply_two_qubit_gate(psi, digital::swap4(), l.a, l.b); break;
      case LayerKind::GivensSwap: apply_two_qubit_gate(psi, digital::givens_swap4(l.theta), l.a, l.b); break;
      case LayerKind::Barrier: break;
    }
  }
  return StateVector(std::move(psi));
}

namespace {

// Primitive step of the lowered circuit: a local Ry layer, a CZ layer, or a
// circuit layer compiled as is.
struct LoweredOp {
  enum class Kind { Ry, Cz, Layer } kind;
  std::vector<double> angles;
  std::vector<std::pair<int, int>> edges;
  const GateLayer* layer = nullptr;
};

bool is_two_qubit_gate(LayerKind k) {
  return k == LayerKind::Cnot || k == LayerKind::Swap || k == LayerKind::GivensSwap;
}

TwoQubitProgram lower(const GateLayer& l) {
  if (l.kind == LayerKind::Cnot) return lower_cnot(l.a, l.b);
  if (l.kind == LayerKind::Swap) return lower_swap(l.a, l.b);
  return lower_givens_swap(l.a, l.b, l.theta);
}

void push_ry(std::vector<LoweredOp>& ops, std::vector<double> angles) {
  if (!ops.empty() && ops.back().kind == LoweredOp::Kind::Ry) {
    for (std::size_t q = 0; q < angles.size(); ++q) ops.back().angles[q] += angles[q];
    return;
  }
  ops.push_back(LoweredOp{LoweredOp::Kind::Ry, std::move(angles), {}, nullptr});
}

// Gates on disjoint pairs run side by side: stage k of each shares one Ry
// layer and one CZ layer.
void push_group(std::vector<LoweredOp>& ops, const std::vector<TwoQubitProgram>& group, int n) {
  int stages = 0;
  for (const auto& p : group) stages = std::max(stages, p.cz_count());
  for (int k = 0; k <= stages; ++k) {
    std::vector<double> th(static_cast<std::size_t>(n), 0.0);
    for (const auto& p : group) {
      if (k > p.cz_count()) continue;
      th[static_cast<std::size_t>(p.a)] = p.ry[static_cast<std::size_t>(k)].first;
      th[static_cast<std::size_t>(p.b)] = p.ry[static_cast<std::size_t>(k)].second;
    }
    push_ry(ops, std::move(th));
    if (k == stages) break;
    std::vector<std::pair<int, int>> edges;
    for (const auto& p : group) {
      if (k < p.cz_count()) edges.emplace_back(p.a, p.b);
    }
    ops.push_back(LoweredOp{LoweredOp::Kind::Cz, {}, std::move(edges), nullptr});
  }
}

std::vector<LoweredOp> lower_circuit(const CircuitIR& circuit) {
  const int n = circuit.n_qubits;
  std::vector<LoweredOp> ops;
  std::vector<TwoQubitProgram> group;
  std::vector<bool> busy(static_cast<std::size_t>(n), false);
  auto flush = [&] {
    if (group.empty()) return;
    push_group(ops, group, n);
    group.clear();
    std::fill(busy.begin(), busy.end(), false);
  };
  for (const auto& l : circuit.layers) {
    if (is_two_qubit_gate(l.kind)) {
      if (busy[static_cast<std::size_t>(l.a)] || busy[static_cast<std::size_t>(l.b)]) flush();
      busy[static_cast<std::size_t>(l.a)] = busy[static_cast<std::size_t>(l.b)] = true;
      group.push_back(lower(l));
      continue;
    }
    flush();
    switch (l.kind) {
      case LayerKind::LocalRy: push_ry(ops, l.angles); break;
      case LayerKind::Cz: ops.push_back(LoweredOp{LoweredOp::Kind::Cz, {}, l.edges, nullptr}); break;
      case LayerKind::Barrier: ops.push_back(LoweredOp{LoweredOp::Kind::Layer, {}, {}, &l}); break;
      default: ops.push_back(LoweredOp{LoweredOp::Kind::Layer, {}, {}, &l}); break;
    }
  }
  flush();
  return ops;
}

}  // namespace

CompiledSchedule compile_circuit(const CircuitIR& circuit, const RegisterSpec& reg,
                                 const RotationLibrary& lib) {
  circuit.validate();
  if (circuit.n_qubits != reg.n_qubits) {
    throw Error(ErrorKind::InvalidInput, "circuit and register sizes differ");
  }
  for (const auto& l : circuit.layers) {
    if (is_two_qubit_gate(l.kind)) {
      // adjacency errors name the gate the user wrote
      const char* name = l.kind == LayerKind::Cnot ? "CNOT" : l.kind == LayerKind::Swap ? "SWAP" : "GSWAP";
      const auto nn = reg.nn_edges();
      const bool ok = std::any_of(nn.begin(), nn.end(), [&](const auto& e) {
        return (e.first == l.a && e.second == l.b) || (e.first == l.b && e.second == l.a);
      });
      if (!ok) {
        throw Error(ErrorKind::InvalidInput, std::string(name) + "(" + std::to_string(l.a) + "," +
                                                 std::to_string(l.b) +
                                                 ") acts on non-adjacent qubits and requires SWAP routing");
      }
    }
  }
  CompiledSchedule out(reg);
  out.approximate = reg.interaction == InteractionMode::FullTail;
  for (const auto& op : lower_circuit(circuit)) {
    if (op.kind == LoweredOp::Kind::Ry) {
      if (std::any_of(op.angles.begin(), op.angles.end(), [](double t) { return t != 0.0; })) {
        out.append(compile_local_rotation_layer(digital::Axis::Y, op.angles, reg, lib));
      }
      continue;
    }
    if (op.kind == LoweredOp::Kind::Cz) {
      out.append(compile_cz_layer(op.edges, reg, lib));
      continue;
    }
    const GateLayer& l = *op.layer;
    switch (l.kind) {
      case LayerKind::Rz: out.append(compile_rz_layer(l.angles, reg)); break;
      case LayerKind::LocalRx: out.append(compile_local_rotation_layer(digital::Axis::X, l.angles, reg, lib)); break;
      case LayerKind::GlobalRot: out.append(compile_global_rotation(l.rotation, reg, lib)); break;
      default: break;
    }
  }
  return out;
}

int network_gate_count(int n_qubits, int layers) {
  int count = 0;
  for (int k = 0; k < layers; ++k) {
    for (int p = k % 2; p + 1 < n_qubits; p += 2) ++count;
  }
  return count;
}

CircuitIR compile_swap_network(int n_qubits, const NetworkPayload& payload) {
  if (n_qubits < 2) throw Error(ErrorKind::InvalidInput, "a SWAP network needs at least two qubits");
  const int layers = payload.layers < 0 ? n_qubits : payload.layers;
  const int gates = network_gate_count(n_qubits, layers);
  if (!payload.thetas.empty() && static_cast<int>(payload.thetas.size()) != gates) {
    throw Error(ErrorKind::InvalidInput, "network needs " + std::to_string(gates) + " angles");
  }
  if (payload.cnot) {
    const auto [c, t] = *payload.cnot;
    if (c < 0 || t < 0 || c >= n_qubits || t >= n_qubits || c == t) {
      throw Error(ErrorKind::InvalidInput, "network CNOT needs two distinct logical qubits");
    }
  }
  CircuitIR out;
  out.n_qubits = n_qubits;
  std::vector<int> site(static_cast<std::size_t>(n_qubits));  // site of each logical qubit
  for (int q = 0; q < n_qubits; ++q) site[static_cast<std::size_t>(q)] = q;
  bool cnot_done = !payload.cnot.has_value();
  auto try_cnot = [&] {
    if (cnot_done) return false;
    const int sc = site[static_cast<std::size_t>(payload.cnot->first)];
    const int st = site[static_cast<std::size_t>(payload.cnot->second)];
    if (std::abs(sc - st) != 1) return false;
    out.layers.push_back(GateLayer::cnot(sc, st));
    cnot_done = true;
    return payload.stop_after_cnot;
  };
  if (try_cnot()) return out;
  int g = 0;
  for (int k = 0; k < layers; ++k) {
    for (int p = k % 2; p + 1 < n_qubits; p += 2) {
      const double theta = payload.thetas.empty() ? 0.0 : payload.thetas[static_cast<std::size_t>(g)];
      out.layers.push_back(payload.givens ? GateLayer::givens_swap(p, p + 1, theta)
                                          : GateLayer::swap(p, p + 1));
      ++g;
      for (auto& s : site) {
        if (s == p) {
          s = p + 1;
        } else if (s == p + 1) {
          s = p;
        }
      }
    }
    if (try_cnot()) return out;
  }
  return out;
}

std::vector<int> network_positions(const CircuitIR& circuit) {
  std::vector<int> site(static_cast<std::size_t>(circuit.n_qubits));
  for (int q = 0; q < circuit.n_qubits; ++q) site[static_cast<std::size_t>(q)] = q;
  for (const auto& l : circuit.layers) {
    if (l.kind != LayerKind::Swap && l.kind != LayerKind::GivensSwap) continue;
    for (auto& s : site) {
      if (s == l.a) {
        s = l.b;
      } else if (s == l.b) {
        s = l.a;
      }
    }
  }
  return site;
}

}  // namespace rydgate
