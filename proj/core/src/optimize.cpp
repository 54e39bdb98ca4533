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

#include "rydgate/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace rydgate::optimize {
namespace {

RVector project(const RVector& x, const RVector& lo, const RVector& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

// Variables pinned at a bound with the gradient pushing outward.
std::vector<bool> active_set(const RVector& x, const RVector& g, const RVector& lo,
                             const RVector& hi) {
  std::vector<bool> active(static_cast<std::size_t>(x.size()), false);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double tol = 1e-12 * (1.0 + std::abs(x(i)));
    if ((x(i) <= lo(i) + tol && g(i) > 0.0) || (x(i) >= hi(i) - tol && g(i) < 0.0)) {
      active[static_cast<std::size_t>(i)] = true;
    }
  }
  return active;
}

struct Pair {
  RVector s;
  RVector y;
  double rho;
};

}  // namespace

RVector central_difference(const Function& f, const RVector& x, double h) {
  RVector g(x.size());
  RVector xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double orig = xp(i);
    xp(i) = orig + h;
    const double fp = f(xp);
    xp(i) = orig - h;
    const double fm = f(xp);
    xp(i) = orig;
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

Objective with_numeric_gradient(Function f, double h) {
  return [f = std::move(f), h](const RVector& x, RVector* grad) {
    if (grad != nullptr) *grad = central_difference(f, x, h);
    return f(x);
  };
}

Result minimize_box(const Objective& f, RVector x0, const RVector& lower, const RVector& upper,
                    const BoxOptions& options) {
  const Eigen::Index n = x0.size();
  if (lower.size() != n || upper.size() != n) {
    throw Error(ErrorKind::InvalidInput, "bounds do not match the parameter count");
  }
  if ((lower.array() > upper.array()).any()) {
    throw Error(ErrorKind::InvalidInput, "lower bound exceeds upper bound");
  }
  Result res;
  RVector x = project(x0, lower, upper);
  RVector g(n);
  double fx = f(x, &g);
  res.evaluations = 1;
  std::deque<Pair> memory;

  for (int it = 0; it < options.max_iterations; ++it) {
    res.iterations = it + 1;
    const RVector pg = project(x - g, lower, upper) - x;
    if (pg.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) {
      res.converged = true;
      break;
    }
    const auto active = active_set(x, g, lower, upper);
    auto mask = [&](RVector v) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (active[static_cast<std::size_t>(i)]) v(i) = 0.0;
      }
      return v;
    };

    // two-loop recursion restricted to the free variables
    RVector q = mask(g);
    std::vector<double> alpha(memory.size());
    for (std::size_t k = memory.size(); k-- > 0;) {
      alpha[k] = memory[k].rho * mask(memory[k].s).dot(q);
      q -= alpha[k] * mask(memory[k].y);
    }
    if (!memory.empty()) {
      const auto& last = memory.back();
      q *= last.s.dot(last.y) / last.y.squaredNorm();
    }
    for (std::size_t k = 0; k < memory.size(); ++k) {
      const double beta = memory[k].rho * mask(memory[k].y).dot(q);
      q += (alpha[k] - beta) * mask(memory[k].s);
    }
    RVector d = -mask(q);
    if (d.dot(g) >= 0.0) {
      memory.clear();
      d = -mask(g);
    }

    double step = 1.0;
    if (memory.empty()) step = std::min(1.0, 1.0 / std::max(d.lpNorm<Eigen::Infinity>(), 1e-300));
    RVector x_new;
    RVector g_new(n);
    double f_new = fx;
    bool accepted = false;
    for (int ls = 0; ls < options.max_line_search; ++ls) {
      x_new = project(x + step * d, lower, upper);
      const double decrease = g.dot(x_new - x);
      f_new = f(x_new, &g_new);
      ++res.evaluations;
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * decrease) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!memory.empty()) {
        memory.clear();
        continue;
      }
      res.converged = true;  // no descent possible along the projected gradient
      break;
    }

    const RVector s = x_new - x;
    const RVector y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      memory.push_back(Pair{s, y, 1.0 / sy});
      if (static_cast<int>(memory.size()) > options.memory) memory.pop_front();
    }
    const double rel = (fx - f_new) / std::max({std::abs(fx), std::abs(f_new), 1.0});
    x = x_new;
    g = g_new;
    fx = f_new;
    if (rel <= options.value_tolerance) {
      res.converged = true;
      break;
    }
  }
  res.x = x;
  res.value = fx;
  return res;
}

Result minimize_bfgs(const Objective& f, RVector x0, const BfgsOptions& options,
                     const std::function<void(const RVector&, double)>& on_iterate) {
  const Eigen::Index n = x0.size();
  Result res;
  RVector x = std::move(x0);
  RVector g(n);
  double fx = f(x, &g);
  res.evaluations = 1;
  if (on_iterate) on_iterate(x, fx);
  RMatrix hinv = RMatrix::Identity(n, n);
  bool first = true;

  for (int it = 0; it < options.max_iterations; ++it) {
    res.iterations = it;
    if (n == 0 || g.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) {
      res.converged = true;
      break;
    }
    RVector d = -hinv * g;
    if (d.dot(g) >= 0.0) {
      hinv.setIdentity();
      d = -g;
    }
    double step = 1.0;
    if (first) step = std::min(1.0, 1.0 / std::max(d.lpNorm<Eigen::Infinity>(), 1e-300));
    RVector x_new;
    RVector g_new(n);
    double f_new = fx;
    bool accepted = false;
    for (int ls = 0; ls < options.max_line_search; ++ls) {
      x_new = x + step * d;
      f_new = f(x_new, &g_new);
      ++res.evaluations;
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * g.dot(d)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!first) {
        hinv.setIdentity();
        first = true;
        continue;
      }
      break;
    }
    const RVector s = x_new - x;
    const RVector y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (first) hinv *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const RMatrix eye = RMatrix::Identity(n, n);
      hinv = (eye - rho * s * y.transpose()) * hinv * (eye - rho * y * s.transpose()) +
             rho * s * s.transpose();
      first = false;
    }
    const double rel = (fx - f_new) / std::max({std::abs(fx), std::abs(f_new), 1.0});
    x = x_new;
    g = g_new;
    fx = f_new;
    if (on_iterate) on_iterate(x, fx);
    if (options.value_tolerance > 0.0 && rel <= options.value_tolerance) {
      res.converged = true;
      break;
    }
  }
  res.x = x;
  res.value = fx;
  return res;
}

}  // namespace rydgate::optimize
