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

#include <functional>
#include <limits>

#include "rydgate/common.hpp"

namespace rydgate::optimize {

/// Scalar objective. When `grad` is non-null it must be filled.
using Objective = std::function<double(const RVector& x, RVector* grad)>;
using Function = std::function<double(const RVector& x)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Central differences, step `h` per coordinate.
RVector central_difference(const Function& f, const RVector& x, double h = 1e-6);

/// Wraps a value-only function into an Objective with central-difference
/// gradients.
Objective with_numeric_gradient(Function f, double h = 1e-6);

struct Result {
  RVector x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

struct BoxOptions {
  int max_iterations = 500;
  int memory = 10;
  double value_tolerance = 1e-10;      // relative decrease between iterations
  double gradient_tolerance = 1e-10;   // infinity norm of the projected gradient
  int max_line_search = 40;
};

/// Limited-memory quasi-Newton minimisation under box constraints
/// lower <= x <= upper (entries may be +-infinity). Iterates always stay
/// inside the box: trial points are projected, never penalised.
Result minimize_box(const Objective& f, RVector x0, const RVector& lower, const RVector& upper,
                    const BoxOptions& options = {});

struct BfgsOptions {
  int max_iterations = 1000;
  double gradient_tolerance = 1e-7;  // infinity norm
  double value_tolerance = 0.0;      // optional relative decrease stop, 0 = off
  int max_line_search = 40;
};

/// Dense BFGS with a backtracking Armijo line search. `on_iterate` (optional)
/// sees every accepted iterate.
Result minimize_bfgs(const Objective& f, RVector x0, const BfgsOptions& options = {},
                     const std::function<void(const RVector&, double)>& on_iterate = {});

}  // namespace rydgate::optimize
