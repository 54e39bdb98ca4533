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

#include <string>

#include <nlohmann/json.hpp>

#include "rydgate/pulseopt.hpp"
#include "rydgate/register.hpp"
#include "rydgate/schedule.hpp"

// File formats. Frequencies on disk are ordinary frequencies in MHz
// (nu = omega / 2 pi); everything in memory is angular (rad/us).
namespace rydgate::io {

inline constexpr const char* kScheduleVersion = "rydgate-schedule/1";

/// Rounds to 15 significant digits so emit -> parse -> emit is a fixed point.
double canonical(double v);

nlohmann::json register_to_json(const RegisterSpec& reg);
/// Accepts either "c6" (MHz um^6) or "coupling_mhz" (nearest-neighbour J / 2 pi).
RegisterSpec register_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const PulseSequence& seq);
PulseSequence schedule_from_json(const nlohmann::json& j);

std::string emit_schedule(const PulseSequence& seq);
PulseSequence parse_schedule(const std::string& text);

nlohmann::json trace_to_json(const OptimizationTrace& trace);
nlohmann::json ledger_to_json(const CompiledSchedule& schedule);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

Geometry parse_geometry(const std::string& text);
InteractionMode parse_interaction(const std::string& text);

}  // namespace rydgate::io
