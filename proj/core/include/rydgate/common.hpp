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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rydgate {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorKind {
  InvalidInput,       // malformed or inconsistent arguments
  DegenerateGeometry, // coincident atoms
  TooLarge,           // register exceeds the configured dense / state limit
  Unrealizable,       // compilation impossible (e.g. refocusing parity)
  InvalidFixture,     // molecular Hamiltonian fails validation
  NotConverged,       // optimizer exhausted its budget
  Internal,           // broken invariant inside the library
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Converts an ordinary frequency in MHz to an angular frequency in rad/us.
constexpr double mhz_to_angular(double mhz) { return kTwoPi * mhz; }
constexpr double angular_to_mhz(double rad_per_us) { return rad_per_us / kTwoPi; }

/// Size limits for the dense paths. Unitaries are 4^N, states 2^N.
struct DenseLimits {
  int max_unitary_qubits = 12;
  int max_state_qubits = 20;
};

}  // namespace rydgate
