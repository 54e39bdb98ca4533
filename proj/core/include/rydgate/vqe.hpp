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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rydgate/circuit.hpp"
#include "rydgate/gatelib.hpp"
#include "rydgate/propagator.hpp"

// Variational eigensolver for paired-electron Hamiltonians with a
// Givens-SWAP network ansatz.
namespace rydgate::vqe {

/// Single-qubit factor of a term. N is the number operator (I - Z)/2.
enum class Op { I, X, Y, Z, N };

struct Factor {
  Op op = Op::I;
  int qubit = 0;
};

struct Term {
  double coeff = 0.0;  // Hartree
  std::vector<Factor> ops;
};

/// One Pauli string with the N factors already expanded:
/// P|b> = i^{#Y} (-1)^{|b & z_mask|} |b ^ x_mask>.
struct PauliString {
  double coeff = 0.0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  int y_count = 0;
};

/// Qubit Hamiltonian  C + sum_p e_p (I - Z_p)/2 + hopping (XX + YY) pairs
/// + density-density terms. Stored both as given and as expanded Pauli
/// strings; application is matrix-free.
class PairedHamiltonian {
 public:
  PairedHamiltonian() = default;
  PairedHamiltonian(int n_qubits, int n_pairs, double constant, std::vector<Term> terms);

  int n_qubits() const { return n_qubits_; }
  int n_pairs() const { return n_pairs_; }
  double constant() const { return constant_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<PauliString>& strings() const { return strings_; }

  std::string molecule;
  std::string basis;
  /// Lowest eigenvalue in the n_pairs sector, set by compute_reference().
  double reference_energy = 0.0;

  /// H |psi>, constant included.
  CVector apply(const CVector& psi) const;
  /// Dense matrix, for n_qubits <= 12.
  CMatrix matrix() const;
  /// Frobenius norm of [H, sum_p n_p].
  double number_commutator_norm() const;
  /// Exact diagonalisation of the sector with `pairs` occupied orbitals.
  double sector_ground_energy(int pairs) const;
  /// Sets reference_energy to the n_pairs sector ground energy.
  void compute_reference();

 private:
  int n_qubits_ = 0;
  int n_pairs_ = 0;
  double constant_ = 0.0;
  std::vector<Term> terms_;
  std::vector<PauliString> strings_;
};

/// Checks the term structure (single Z / N, ZZ / NN / ZN density pairs,
/// XX and YY hopping pairs with equal weights), real finite coefficients and
/// number conservation. Throws Error(InvalidFixture) naming the violation.
void validate_structure(const PairedHamiltonian& h);

/// Parses fixture JSON, validates it and recomputes the reference energy.
/// A stored "reference_energy" must agree with the recomputed one to 1e-6.
PairedHamiltonian fixture_from_json(const nlohmann::json& j);
PairedHamiltonian load_fixture(const std::string& path);
nlohmann::json fixture_to_json(const PairedHamiltonian& h);

/// Orbitals 0 .. n_pairs-1 occupied.
StateVector hartree_fock_state(int n_qubits, int n_pairs);

/// <psi|H|psi>. Throws Error(InvalidInput) on a dimension mismatch and
/// Error(Internal) if the imaginary part exceeds 1e-10.
double energy(const PairedHamiltonian& h, const StateVector& psi);

/// sum_p <n_p>.
double number_expectation(const StateVector& psi);

enum class Backend { Ideal, Analog };

std::string to_string(Backend b);
Backend parse_backend(const std::string& text);

struct AnsatzSpec {
  int n_qubits = 0;
  int depth = 0;  // brick layers of the Givens-SWAP network
  Backend backend = Backend::Ideal;

  int parameter_count() const { return network_gate_count(n_qubits, depth); }
};

/// Maps the Hartree-Fock state to the ansatz state for given angles. The
/// analog backend compiles the network onto `reg` with `lib` and caches the
/// angle-independent pulse unitaries, so an instance is not thread safe.
class Ansatz {
 public:
  /// Ideal backend.
  explicit Ansatz(AnsatzSpec spec);
  /// Either backend; the register and library are used by the analog one.
  Ansatz(AnsatzSpec spec, RegisterSpec reg, RotationLibrary lib);

  const AnsatzSpec& spec() const { return spec_; }

  CircuitIR circuit(const RVector& theta) const;
  StateVector prepare(const StateVector& initial, const RVector& theta) const;

 private:
  void check(const RVector& theta) const;
  const CMatrix& cached(const PulseSegment& seg) const;

  AnsatzSpec spec_;
  std::optional<RegisterSpec> reg_;
  std::optional<RotationLibrary> lib_;
  RMatrix coupling_;
  mutable std::map<std::vector<double>, CMatrix> cache_;
};

struct VqeConfig {
  double gradient_tolerance = 1e-7;
  int max_iterations = 2000;
  double fd_step = 1e-5;
  int restarts = 0;         // extra starts from uniform random angles
  std::uint64_t seed = 0;
};

struct VqeResult {
  std::vector<double> energies;     // energy at every accepted iterate
  std::vector<double> best_so_far;  // running minimum of `energies`
  RVector best_theta;
  double energy = 0.0;
  double reference = 0.0;
  double error = 0.0;               // energy - reference
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  /// Lowest energy seen below reference - 1e-9, if any.
  std::optional<double> bound_violation;
};

/// Minimises <H> over the angles starting from zero, then from `restarts`
/// random points, and keeps the best run.
VqeResult run_vqe(const PairedHamiltonian& h, const Ansatz& ansatz, const VqeConfig& cfg = {});

/// {n/2, n, 2n} brick layers.
std::vector<int> default_depths(int n_qubits);

}  // namespace rydgate::vqe
