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

#include "rydgate/pulseopt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include "rydgate/optimize.hpp"

namespace rydgate {
namespace {

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

// Dense Hamiltonian pieces for globally uniform controls, built once per
// register so the optimizer only pays for the eigendecomposition.
class ControlModel {
 public:
  explicit ControlModel(const RegisterSpec& reg) : n_(reg.n_qubits) {
    if (n_ > DenseLimits{}.max_unitary_qubits) {
      throw Error(ErrorKind::TooLarge, "register too large for dense mode");
    }
    dim_ = Eigen::Index{1} << n_;
    const RMatrix k = coupling_matrix(reg);
    interaction_ = diagonal_energies(reg, k, RVector::Zero(n_));
    zsum_.resize(dim_);
    for (Eigen::Index b = 0; b < dim_; ++b) {
      int ones = 0;
      for (int q = 0; q < n_; ++q) ones += static_cast<int>((b >> q) & 1);
      zsum_(b) = static_cast<double>(n_ - 2 * ones);
    }
  }

  Eigen::Index dim() const { return dim_; }

  CMatrix segment(double omega, double phi, double delta, double duration) const {
    CMatrix h = CMatrix::Zero(dim_, dim_);
    for (Eigen::Index b = 0; b < dim_; ++b) h(b, b) = interaction_(b) - 0.5 * delta * zsum_(b);
    if (omega != 0.0) {
      const Complex up = 0.5 * omega * std::polar(1.0, -phi);
      for (Eigen::Index b = 0; b < dim_; ++b) {
        for (int q = 0; q < n_; ++q) {
          const Eigen::Index bit = Eigen::Index{1} << q;
          if (b & bit) continue;
          h(b | bit, b) = up;
          h(b, b | bit) = std::conj(up);
        }
      }
    } else {
      CMatrix u = CMatrix::Zero(dim_, dim_);
      for (Eigen::Index b = 0; b < dim_; ++b) u(b, b) = std::polar(1.0, -h(b, b).real() * duration);
      return u;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const auto& v = es.eigenvectors();
    CVector phases(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
      phases(i) = std::polar(1.0, -es.eigenvalues()(i) * duration);
    }
    return v * phases.asDiagonal() * v.adjoint();
  }

 private:
  int n_;
  Eigen::Index dim_ = 0;
  RVector interaction_;
  RVector zsum_;
};

struct Scaled {
  double J;
  double duration;  // per segment
};

// Parameters are laid out per segment as (omega / J, phi / 2pi, delta / J).
CMatrix scaled_segment(const ControlModel& model, const Scaled& sc, const double* p) {
  return model.segment(sc.J * p[0], kTwoPi * p[1], sc.J * p[2], sc.duration);
}

class LossFunction {
 public:
  LossFunction(const ControlModel& model, const CMatrix& target_adj, Scaled sc, double h)
      : model_(model), gadj_(target_adj), sc_(sc), h_(h) {}

  double operator()(const RVector& x, RVector* grad) const {
    const Eigen::Index k = x.size() / 3;
    const Eigen::Index dim = model_.dim();
    std::vector<CMatrix> seg(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j) {
      seg[static_cast<std::size_t>(j)] = scaled_segment(model_, sc_, x.data() + 3 * j);
    }
    // prefix[j] = U_{j-1} ... U_0, suffix[j] = U_{k-1} ... U_{j+1}
    std::vector<CMatrix> prefix(static_cast<std::size_t>(k) + 1);
    prefix[0] = CMatrix::Identity(dim, dim);
    for (Eigen::Index j = 0; j < k; ++j) {
      prefix[static_cast<std::size_t>(j) + 1] =
          seg[static_cast<std::size_t>(j)] * prefix[static_cast<std::size_t>(j)];
    }
    const double norm = static_cast<double>(dim);
    const double value =
        1.0 - std::abs((gadj_.transpose().array() * prefix.back().array()).sum()) / norm;
    if (grad == nullptr) return value;

    grad->resize(x.size());
    CMatrix suffix = CMatrix::Identity(dim, dim);
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      // tr(G^dag S U_j P) = sum(M^T o U_j) with M = P G^dag S
      const CMatrix m = prefix[static_cast<std::size_t>(j)] * gadj_ * suffix;
      const CMatrix mt = m.transpose();
      double p[3] = {x(3 * j), x(3 * j + 1), x(3 * j + 2)};
      for (int c = 0; c < 3; ++c) {
        const double orig = p[c];
        p[c] = orig + h_;
        const double fp = 1.0 - std::abs((mt.array() * scaled_segment(model_, sc_, p).array()).sum()) / norm;
        p[c] = orig - h_;
        const double fm = 1.0 - std::abs((mt.array() * scaled_segment(model_, sc_, p).array()).sum()) / norm;
        p[c] = orig;
        (*grad)(3 * j + c) = (fp - fm) / (2.0 * h_);
      }
      suffix = suffix * seg[static_cast<std::size_t>(j)];
    }
    return value;
  }

 private:
  const ControlModel& model_;
  CMatrix gadj_;
  Scaled sc_;
  double h_;
};

RVector split_parameters(const RVector& x) {
  const Eigen::Index k = x.size() / 3;
  RVector out(2 * x.size());
  for (Eigen::Index j = 0; j < k; ++j) {
    out.segment(6 * j, 3) = x.segment(3 * j, 3);
    out.segment(6 * j + 3, 3) = x.segment(3 * j, 3);
  }
  return out;
}

PulseSequence to_sequence(const RegisterSpec& reg, const RVector& x, double J, double duration) {
  PulseSequence seq{reg, {}};
  const Eigen::Index k = x.size() / 3;
  for (Eigen::Index j = 0; j < k; ++j) {
    seq.segments.push_back(PulseSegment::uniform(reg.n_qubits, J * x(3 * j),
                                                 wrap_phase(kTwoPi * x(3 * j + 1)),
                                                 J * x(3 * j + 2), duration, "global"));
  }
  return seq;
}

}  // namespace

double RotationKind::axis_angle() const {
  const double base = axis == digital::Axis::X ? 0.0 : 0.5 * kPi;
  return sign >= 0 ? base : base + kPi;
}

std::string to_string(RotationKind kind) {
  std::string s = kind.axis == digital::Axis::X ? "rx" : "ry";
  s += kind.sign >= 0 ? "+" : "-";
  return s;
}

RotationKind parse_rotation_kind(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "rx+") return {digital::Axis::X, +1};
  if (t == "rx-") return {digital::Axis::X, -1};
  if (t == "ry+") return {digital::Axis::Y, +1};
  if (t == "ry-") return {digital::Axis::Y, -1};
  throw Error(ErrorKind::InvalidInput, "unknown rotation '" + text + "' (expected rx+, rx-, ry+ or ry-)");
}

Unitary rotation_target(int n_qubits, RotationKind kind) {
  return digital::global_rotation(n_qubits, kind.axis, kind.sign);
}

void OptimizerConfig::validate() const {
  if (p_max < 0 || p_max > 12) throw Error(ErrorKind::InvalidInput, "p_max must be in [0, 12]");
  if (dt < 0.0 || !std::isfinite(dt)) throw Error(ErrorKind::InvalidInput, "dt must be positive");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "threshold must lie in (0, 1)");
  }
  if (max_restarts < 1) throw Error(ErrorKind::InvalidInput, "max_restarts must be >= 1");
  if (max_iterations < 1) throw Error(ErrorKind::InvalidInput, "max_iterations must be >= 1");
  if (!(fd_step > 0.0)) throw Error(ErrorKind::InvalidInput, "fd_step must be positive");
  if (!(bound_margin > 0.0 && bound_margin < 0.5)) {
    throw Error(ErrorKind::InvalidInput, "bound_margin must lie in (0, 0.5)");
  }
  if (jobs < 1) throw Error(ErrorKind::InvalidInput, "jobs must be >= 1");
}

std::vector<double> OptimizationTrace::stage_best() const {
  std::vector<double> best;
  for (const auto& r : restarts) {
    for (std::size_t s = 0; s < r.stages.size(); ++s) {
      if (best.size() <= s) best.push_back(r.stages[s].loss);
      best[s] = std::min(best[s], r.stages[s].loss);
    }
  }
  return best;
}

OptimizationFailure::OptimizationFailure(RotationResult best)
    : Error(ErrorKind::NotConverged,
            "optimization did not reach the threshold; best loss " +
                std::to_string(best.trace.best_loss)),
      best_(std::move(best)) {}

RestartRecord run_restart(const Unitary& target, const RegisterSpec& reg,
                          const OptimizerConfig& cfg, int restart_index,
                          PulseSequence* sequence_out) {
  const double J = reg.nn_coupling();
  const double dt = cfg.resolved_dt(J);
  const double total = dt * static_cast<double>(1 << cfg.p_max);
  const ControlModel model(reg);
  const CMatrix gadj = target.matrix().adjoint();

  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(restart_index)};
  std::mt19937_64 rng(seq);
  const double m = cfg.bound_margin;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  RVector x(3);
  x(0) = (1.0 - m) * u01(rng);
  x(1) = u01(rng);
  x(2) = -(2.0 - m) + 2.0 * (2.0 - m) * u01(rng);

  optimize::BoxOptions opts;
  opts.max_iterations = cfg.max_iterations;
  opts.value_tolerance = cfg.loss_tolerance;
  opts.gradient_tolerance = 1e-10;

  RestartRecord record;
  record.index = restart_index;
  for (int p = 0; p <= cfg.p_max; ++p) {
    const int k = 1 << p;
    if (p > 0) x = split_parameters(x);
    RVector lo(3 * k);
    RVector hi(3 * k);
    for (int j = 0; j < k; ++j) {
      lo.segment(3 * j, 3) << 0.0, -optimize::kInf, -(2.0 - m);
      hi.segment(3 * j, 3) << 1.0 - m, optimize::kInf, 2.0 - m;
    }
    const LossFunction loss(model, gadj, Scaled{J, total / k}, cfg.fd_step);
    StageRecord st;
    st.stage = p;
    st.n_segments = k;
    st.start_loss = loss(x, nullptr);
    const auto res = optimize::minimize_box(
        [&loss](const RVector& v, RVector* g) { return loss(v, g); }, x, lo, hi, opts);
    x = res.x;
    st.loss = res.value;
    st.iterations = res.iterations;
    st.evaluations = res.evaluations;
    record.stages.push_back(st);
  }
  if (sequence_out != nullptr) *sequence_out = to_sequence(reg, x, J, dt);
  return record;
}

RotationResult optimize_global_rotation(const Unitary& target, const RegisterSpec& reg,
                                        const OptimizerConfig& cfg) {
  reg.validate();
  cfg.validate();
  if (target.n_qubits() != reg.n_qubits) {
    throw Error(ErrorKind::InvalidInput, "target dimension does not match the register");
  }
  const auto t0 = std::chrono::steady_clock::now();
  RotationResult best;
  best.trace.best_loss = 2.0;

  for (int first = 0; first < cfg.max_restarts && !best.trace.converged; first += cfg.jobs) {
    const int batch = std::min(cfg.jobs, cfg.max_restarts - first);
    std::vector<RestartRecord> records(static_cast<std::size_t>(batch));
    std::vector<PulseSequence> seqs(static_cast<std::size_t>(batch));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(batch));
    auto work = [&](int b) {
      try {
        records[static_cast<std::size_t>(b)] =
            run_restart(target, reg, cfg, first + b, &seqs[static_cast<std::size_t>(b)]);
      } catch (...) {
        errors[static_cast<std::size_t>(b)] = std::current_exception();
      }
    };
    if (batch == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int b = 0; b < batch; ++b) pool.emplace_back(work, b);
      for (auto& t : pool) t.join();
    }
    // consume in index order so the result does not depend on the batch size
    for (int b = 0; b < batch; ++b) {
      if (errors[static_cast<std::size_t>(b)]) std::rethrow_exception(errors[static_cast<std::size_t>(b)]);
      const auto& rec = records[static_cast<std::size_t>(b)];
      best.trace.restarts.push_back(rec);
      if (rec.loss() < best.trace.best_loss) {
        best.trace.best_loss = rec.loss();
        best.trace.best_restart = rec.index;
        best.sequence = seqs[static_cast<std::size_t>(b)];
      }
      if (rec.loss() <= cfg.threshold) {
        best.trace.converged = true;
        break;
      }
    }
  }
  best.trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!best.trace.converged) throw OptimizationFailure(std::move(best));
  return best;
}

double global_control_loss(const PulseSequence& seq, const Unitary& target) {
  seq.validate();
  bool uniform = true;
  for (const auto& s : seq.segments) uniform = uniform && s.has_uniform_delta();
  if (!uniform) return gate_fidelity(sequence_unitary(seq), target).loss;
  const ControlModel model(seq.reg);
  CMatrix u = CMatrix::Identity(model.dim(), model.dim());
  for (const auto& s : seq.segments) {
    const double d = s.delta.size() > 0 ? s.delta(0) : 0.0;
    u = model.segment(s.omega, s.phi, d, s.duration) * u;
  }
  return gate_fidelity(Unitary(std::move(u)), target).loss;
}

PulseSequence split_sequence(const PulseSequence& seq) {
  PulseSequence out{seq.reg, {}};
  out.segments.reserve(2 * seq.segments.size());
  for (const auto& s : seq.segments) {
    PulseSegment half = s;
    half.duration = 0.5 * s.duration;
    out.segments.push_back(half);
    out.segments.push_back(half);
  }
  return out;
}

PulseSequence shift_phases(const PulseSequence& seq, double delta_phi) {
  PulseSequence out = seq;
  for (auto& s : out.segments) s.phi = wrap_phase(s.phi + delta_phi);
  return out;
}

DerivedRotation derive_rotation_family(const PulseSequence& base, RotationKind from,
                                       RotationKind to) {
  base.validate();
  RegisterSpec check = base.reg.with_interaction(InteractionMode::NearestNeighbour);
  if (check.n_qubits > 8) check = check.with_qubits(8);
  PulseSequence probe = retarget(base, check);
  const double base_fid = 1.0 - global_control_loss(probe, rotation_target(check.n_qubits, from));

  const double diff = to.axis_angle() - from.axis_angle();
  DerivedRotation best;
  best.base_fidelity = base_fid;
  best.fidelity = -1.0;
  for (double shift : {-diff, diff}) {
    const PulseSequence shifted = shift_phases(probe, shift);
    const double f = 1.0 - global_control_loss(shifted, rotation_target(check.n_qubits, to));
    if (f > best.fidelity + 1e-12) {
      best.fidelity = f;
      best.phase_shift = wrap_phase(shift);
    }
  }
  if (best.fidelity < 0.99) {
    throw Error(ErrorKind::InvalidInput,
                "sequence is not a member of the global rotation family (best fidelity " +
                    std::to_string(best.fidelity) + ")");
  }
  best.sequence = shift_phases(base, best.phase_shift);
  return best;
}

PulseSequence retarget(const PulseSequence& seq, const RegisterSpec& reg) {
  reg.validate();
  const double ratio = reg.nn_coupling() / seq.reg.nn_coupling();
  PulseSequence out{reg, {}};
  for (const auto& s : seq.segments) {
    PulseSegment t = s;
    t.omega = s.omega * ratio;
    t.duration = s.duration / ratio;
    if (s.delta.size() == reg.n_qubits) {
      t.delta = s.delta * ratio;
    } else {
      if (!s.has_uniform_delta()) {
        throw Error(ErrorKind::InvalidInput, "cannot resize a non-uniform detuning profile");
      }
      const double d = s.delta.size() > 0 ? s.delta(0) : 0.0;
      t.delta = RVector::Constant(reg.n_qubits, d * ratio);
    }
    out.segments.push_back(std::move(t));
  }
  return out;
}

PulseSequence scale_durations(const PulseSequence& seq, double scale, const std::string& tag_filter) {
  PulseSequence out = seq;
  for (auto& s : out.segments) {
    if (tag_filter.empty() || s.tag.find(tag_filter) != std::string::npos) s.duration *= scale;
  }
  return out;
}

ScanReport refine_duration(const PulseSequence& seq, const SequenceMetric& metric,
                           double scale_from, double scale_to, int n_points,
                           const std::string& tag_filter) {
  if (n_points < 1 || scale_from > scale_to) {
    throw Error(ErrorKind::InvalidInput, "empty scan range");
  }
  if (!(scale_from > 0.0) || scale_to > 2.0) {
    throw Error(ErrorKind::InvalidInput, "scan range must lie in (0, 2]");
  }
  ScanReport report;
  for (int i = 0; i < n_points; ++i) {
    const double scale =
        n_points == 1 ? scale_from
                      : scale_from + (scale_to - scale_from) * i / static_cast<double>(n_points - 1);
    const PulseSequence scaled = scale_durations(seq, scale, tag_filter);
    report.points.push_back(ScanPoint{scale, scaled.total_duration(), metric(scaled)});
    if (report.points.back().fidelity > report.points[report.best].fidelity) {
      report.best = report.points.size() - 1;
    }
  }
  return report;
}

}  // namespace rydgate
