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

#include "rydgate/register.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>

namespace rydgate {

void RegisterSpec::validate() const {
  if (n_qubits < 2) {
    throw Error(ErrorKind::InvalidInput, "register needs at least 2 qubits");
  }
  if (!(spacing_um > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "register spacing must be positive");
  }
  if (!(c6 > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "c6 must be positive");
  }
}

double RegisterSpec::nn_coupling() const { return c6 / std::pow(spacing_um, 6); }

RegisterSpec RegisterSpec::with_coupling(int n_qubits, Geometry geometry, double J,
                                         InteractionMode mode, double spacing_um) {
  RegisterSpec spec;
  spec.n_qubits = n_qubits;
  spec.geometry = geometry;
  spec.spacing_um = spacing_um;
  spec.c6 = J * std::pow(spacing_um, 6);
  spec.interaction = mode;
  return spec;
}

std::vector<std::pair<double, double>> RegisterSpec::positions() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n_qubits));
  if (geometry == Geometry::Ring) {
    // chord length between neighbours = spacing
    const double radius = spacing_um / (2.0 * std::sin(kPi / n_qubits));
    for (int i = 0; i < n_qubits; ++i) {
      const double a = kTwoPi * i / n_qubits;
      out.emplace_back(radius * std::cos(a), radius * std::sin(a));
    }
  } else {
    for (int i = 0; i < n_qubits; ++i) {
      out.emplace_back(spacing_um * i, 0.0);
    }
  }
  return out;
}

double RegisterSpec::distance(int i, int j) const {
  switch (geometry) {
    case Geometry::ChainOpen:
      return spacing_um * std::abs(i - j);
    case Geometry::ChainPeriodic: {
      const int d = std::abs(i - j);
      return spacing_um * std::min(d, n_qubits - d);
    }
    case Geometry::Ring: {
      const auto pos = positions();
      const auto [xi, yi] = pos[static_cast<std::size_t>(i)];
      const auto [xj, yj] = pos[static_cast<std::size_t>(j)];
      return std::hypot(xi - xj, yi - yj);
    }
  }
  return 0.0;
}

std::vector<std::pair<int, int>> RegisterSpec::nn_edges() const {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n_qubits; ++i) {
    edges.emplace_back(i, i + 1);
  }
  // N = 2 with periodic closure would double the only bond.
  if (geometry != Geometry::ChainOpen && n_qubits > 2) {
    edges.emplace_back(n_qubits - 1, 0);
  }
  return edges;
}

RegisterSpec RegisterSpec::with_interaction(InteractionMode mode) const {
  RegisterSpec out = *this;
  out.interaction = mode;
  return out;
}

RegisterSpec RegisterSpec::with_qubits(int n) const {
  RegisterSpec out = *this;
  out.n_qubits = n;
  return out;
}

RegisterSpec RegisterSpec::with_geometry(Geometry g) const {
  RegisterSpec out = *this;
  out.geometry = g;
  return out;
}

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::ChainOpen:
      return "chain_obc";
    case Geometry::ChainPeriodic:
      return "chain_pbc";
    case Geometry::Ring:
      return "ring";
  }
  return "?";
}

std::string to_string(InteractionMode m) {
  return m == InteractionMode::NearestNeighbour ? "nn" : "full";
}

RMatrix coupling_matrix(const RegisterSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;
  RMatrix k = RMatrix::Zero(n, n);
  if (spec.interaction == InteractionMode::NearestNeighbour) {
    const double J = spec.nn_coupling();
    for (const auto& [i, j] : spec.nn_edges()) {
      k(i, j) = J;
      k(j, i) = J;
    }
    return k;
  }
  const auto pos = spec.positions();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = spec.distance(i, j);
      if (r <= 1e-12 * spec.spacing_um) {
        throw Error(ErrorKind::DegenerateGeometry, "degenerate geometry: atoms " +
                                                       std::to_string(i) + " and " +
                                                       std::to_string(j) + " coincide");
      }
      k(i, j) = spec.c6 / std::pow(r, 6);
      k(j, i) = k(i, j);
    }
  }
  return k;
}

PulseSegment PulseSegment::uniform(int n_qubits, double omega, double phi, double delta,
                                   double duration, std::string tag) {
  return PulseSegment{omega, phi, RVector::Constant(n_qubits, delta), duration, std::move(tag)};
}

PulseSegment PulseSegment::free_evolution(int n_qubits, double duration, std::string tag) {
  return uniform(n_qubits, 0.0, 0.0, 0.0, duration, std::move(tag));
}

bool PulseSegment::has_uniform_delta() const {
  if (delta.size() == 0) return true;
  return (delta.array() == delta(0)).all();
}

bool PulseSegment::within_global_bounds(double J) const {
  const double max_delta = delta.size() == 0 ? 0.0 : delta.cwiseAbs().maxCoeff();
  return omega >= 0.0 && omega < J && max_delta < 2.0 * J;
}

void PulseSegment::validate(int n_qubits) const {
  if (!(duration > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "segment duration must be positive");
  }
  if (omega < 0.0) {
    throw Error(ErrorKind::InvalidInput, "segment omega must be non-negative");
  }
  if (delta.size() != n_qubits) {
    throw Error(ErrorKind::InvalidInput, "detuning vector has length " +
                                             std::to_string(delta.size()) + ", expected " +
                                             std::to_string(n_qubits));
  }
}

double PulseSequence::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

void PulseSequence::validate() const {
  reg.validate();
  if (segments.empty()) {
    throw Error(ErrorKind::InvalidInput, "pulse sequence is empty");
  }
  for (const auto& s : segments) s.validate(reg.n_qubits);
}

RVector diagonal_energies(const RegisterSpec& spec, const RMatrix& coupling,
                          const RVector& delta) {
  const int n = spec.n_qubits;
  const std::int64_t dim = std::int64_t{1} << n;
  RVector diag(dim);
  // sparse list of non-zero couplings keeps the N=18 loop cheap
  std::vector<std::tuple<int, int, double>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coupling(i, j) != 0.0) pairs.emplace_back(i, j, coupling(i, j));
    }
  }
  for (std::int64_t b = 0; b < dim; ++b) {
    double e = 0.0;
    for (int q = 0; q < n; ++q) {
      const bool one = (b >> q) & 1;
      e += one ? 0.5 * delta(q) : -0.5 * delta(q);
    }
    for (const auto& [i, j, kij] : pairs) {
      if (((b >> i) & 1) && ((b >> j) & 1)) e += kij;
    }
    diag(b) = e;
  }
  return diag;
}

CMatrix hamiltonian(const RegisterSpec& spec, const PulseSegment& seg, const DenseLimits& limits) {
  spec.validate();
  if (seg.delta.size() != spec.n_qubits) {
    throw Error(ErrorKind::InvalidInput, "detuning vector length does not match register");
  }
  if (spec.n_qubits > limits.max_unitary_qubits) {
    throw Error(ErrorKind::TooLarge, "register too large for dense mode");
  }
  const int n = spec.n_qubits;
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix h = CMatrix::Zero(dim, dim);
  h.diagonal() = diagonal_energies(spec, coupling_matrix(spec), seg.delta).cast<Complex>();
  if (seg.omega != 0.0) {
    const Complex up = 0.5 * seg.omega * std::polar(1.0, -seg.phi);  // |0> -> |1>
    for (int q = 0; q < n; ++q) {
      const Eigen::Index bit = Eigen::Index{1} << q;
      for (Eigen::Index b = 0; b < dim; ++b) {
        if (b & bit) continue;
        h(b | bit, b) += up;
        h(b, b | bit) += std::conj(up);
      }
    }
  }
  return h;
}

}  // namespace rydgate
