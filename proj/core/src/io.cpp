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

#include "rydgate/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rydgate::io {
namespace {

using nlohmann::json;

double mhz(double angular) { return canonical(angular_to_mhz(angular)); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw Error(ErrorKind::InvalidInput, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

double canonical(double v) {
  if (v == 0.0) return 0.0;  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return std::strtod(buf, nullptr);
}

Geometry parse_geometry(const std::string& text) {
  if (text == "chain_obc" || text == "obc") return Geometry::ChainOpen;
  if (text == "chain_pbc" || text == "pbc") return Geometry::ChainPeriodic;
  if (text == "ring") return Geometry::Ring;
  throw Error(ErrorKind::InvalidInput, "unknown geometry '" + text + "' (chain_obc, chain_pbc, ring)");
}

InteractionMode parse_interaction(const std::string& text) {
  if (text == "nn") return InteractionMode::NearestNeighbour;
  if (text == "full") return InteractionMode::FullTail;
  throw Error(ErrorKind::InvalidInput, "unknown interaction mode '" + text + "' (nn, full)");
}

json register_to_json(const RegisterSpec& reg) {
  return json{{"n_qubits", reg.n_qubits},
              {"geometry", to_string(reg.geometry)},
              {"spacing_um", canonical(reg.spacing_um)},
              {"c6", mhz(reg.c6)},
              {"interaction", to_string(reg.interaction)}};
}

RegisterSpec register_from_json(const json& j) {
  try {
    RegisterSpec reg;
    const json& n = require(j, "n_qubits");
    if (!n.is_number_integer()) throw Error(ErrorKind::InvalidInput, "n_qubits must be an integer");
    reg.n_qubits = n.get<int>();
    reg.geometry = parse_geometry(require(j, "geometry").get<std::string>());
    reg.interaction = j.contains("interaction")
                          ? parse_interaction(j.at("interaction").get<std::string>())
                          : InteractionMode::NearestNeighbour;
    reg.spacing_um = j.contains("spacing_um") ? number(j, "spacing_um") : 1.0;
    if (j.contains("c6")) {
      if (j.contains("coupling_mhz")) {
        throw Error(ErrorKind::InvalidInput, "give either c6 or coupling_mhz, not both");
      }
      reg.c6 = mhz_to_angular(number(j, "c6"));
    } else if (j.contains("coupling_mhz")) {
      reg = RegisterSpec::with_coupling(reg.n_qubits, reg.geometry,
                                        mhz_to_angular(number(j, "coupling_mhz")), reg.interaction,
                                        reg.spacing_um);
    } else {
      throw Error(ErrorKind::InvalidInput, "register needs c6 (MHz um^6) or coupling_mhz");
    }
    reg.validate();
    return reg;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("register: ") + e.what());
  }
}

json schedule_to_json(const PulseSequence& seq) {
  json segs = json::array();
  for (const auto& s : seq.segments) {
    json d;
    if (s.has_uniform_delta()) {
      d = json{{"uniform", s.delta.size() > 0 ? mhz(s.delta(0)) : 0.0}};
    } else {
      d = json::array();
      for (Eigen::Index q = 0; q < s.delta.size(); ++q) d.push_back(mhz(s.delta(q)));
    }
    segs.push_back(json{{"omega", mhz(s.omega)},
                        {"phi", canonical(s.phi)},
                        {"delta", d},
                        {"duration_us", canonical(s.duration)},
                        {"tag", s.tag}});
  }
  return json{{"version", kScheduleVersion}, {"register", register_to_json(seq.reg)}, {"segments", segs}};
}

PulseSequence schedule_from_json(const json& j) {
  try {
    const json& v = require(j, "version");
    if (!v.is_string() || v.get<std::string>() != kScheduleVersion) {
      throw Error(ErrorKind::InvalidInput, "unsupported schedule version " + v.dump());
    }
    PulseSequence seq{register_from_json(require(j, "register")), {}};
    const int n = seq.reg.n_qubits;
    const json& segs = require(j, "segments");
    if (!segs.is_array()) throw Error(ErrorKind::InvalidInput, "segments must be an array");
    for (const auto& s : segs) {
      PulseSegment seg;
      seg.omega = mhz_to_angular(number(s, "omega"));
      seg.phi = number(s, "phi");
      seg.duration = number(s, "duration_us");
      seg.tag = s.contains("tag") ? s.at("tag").get<std::string>() : std::string{};
      const json& d = require(s, "delta");
      if (d.is_object()) {
        seg.delta = RVector::Constant(n, mhz_to_angular(number(d, "uniform")));
      } else if (d.is_array()) {
        if (static_cast<int>(d.size()) != n) {
          throw Error(ErrorKind::InvalidInput, "delta needs one entry per qubit");
        }
        seg.delta.resize(n);
        for (int q = 0; q < n; ++q) {
          if (!d.at(static_cast<std::size_t>(q)).is_number()) {
            throw Error(ErrorKind::InvalidInput, "delta entries must be numbers");
          }
          seg.delta(q) = mhz_to_angular(d.at(static_cast<std::size_t>(q)).get<double>());
        }
      } else {
        throw Error(ErrorKind::InvalidInput, "delta must be an array or {\"uniform\": value}");
      }
      seq.segments.push_back(std::move(seg));
    }
    seq.validate();
    return seq;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("schedule: ") + e.what());
  }
}

std::string emit_schedule(const PulseSequence& seq) { return schedule_to_json(seq).dump(2) + "\n"; }

PulseSequence parse_schedule(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("schedule is not valid JSON: ") + e.what());
  }
  return schedule_from_json(j);
}

json trace_to_json(const OptimizationTrace& trace) {
  json restarts = json::array();
  for (const auto& r : trace.restarts) {
    json stages = json::array();
    for (const auto& s : r.stages) {
      stages.push_back(json{{"stage", s.stage},
                            {"n_segments", s.n_segments},
                            {"start_loss", s.start_loss},
                            {"loss", s.loss},
                            {"iterations", s.iterations},
                            {"evaluations", s.evaluations}});
    }
    restarts.push_back(json{{"index", r.index}, {"stages", stages}});
  }
  return json{{"converged", trace.converged},
              {"best_loss", trace.best_loss},
              {"best_restart", trace.best_restart},
              {"restart_count", trace.restarts.size()},
              {"stage_best", trace.stage_best()},
              {"wall_seconds", trace.wall_seconds},
              {"restarts", restarts}};
}

json ledger_to_json(const CompiledSchedule& schedule) {
  json entries = json::array();
  for (const auto& e : schedule.ledger) {
    entries.push_back(json{{"gate", e.gate}, {"duration_us", e.duration}});
  }
  return json{{"entries", entries},
              {"total_us", schedule.ledger_total()},
              {"approximate", schedule.approximate}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorKind::InvalidInput, "failed writing '" + path + "'");
}

}  // namespace rydgate::io
