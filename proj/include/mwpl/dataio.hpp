// Copyright 2026 The mwpl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mwpl/calibration.hpp"
#include "mwpl/floorplan.hpp"
#include "mwpl/pathloss.hpp"

namespace mwpl {

// Parsers validate fully and report every problem with a JSON path or a
// CSV line number; nothing is silently coerced. Serializers emit the same
// schemas with full-precision numbers, so load/save round-trips are
// lossless.

/// Floor-plan JSON: {name, frequency_hz?, categories: [...], walls: [...]}.
/// Unknown keys are ignored.
FloorPlan load_plan(std::string_view json_text);
std::string save_plan(const FloorPlan& plan);

/// Model-parameter JSON: {pl0_db, n, pl_w_db}.
ModelParams load_params(std::string_view json_text);
std::string save_params(const ModelParams& params);

/// Measurement CSV. Header names the columns:
/// tx_x,tx_y,rx_x,rx_y then rss_dbm and/or pl_db, optional tx_power_dbm
/// and m_override. Per row exactly one of rss_dbm/pl_db may hold a value;
/// empty optional cells mean absent.
std::vector<Measurement> load_measurements(std::string_view csv_text);
std::string save_measurements(std::span<const Measurement> measurements);

/// Wall-loss sample CSV: m_walls,loss_db with optional std_db,distance_m.
std::vector<WallLossSample> load_wall_samples(std::string_view csv_text);
std::string save_wall_samples(std::span<const WallLossSample> samples);

/// Distance/loss CSV for the log-distance fit: distance_m,pl_db.
std::vector<DistanceLossPoint> load_distance_loss_points(std::string_view csv_text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace mwpl
