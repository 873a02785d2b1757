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

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mwpl/floorplan.hpp"

namespace mwpl {

enum class Model {
    one_slope,  // PL0 + 10 n log10(d)
    cost231,    // + sum of per-wall losses
    simplified, // + M * PL_w
};

/// Exact, case-sensitive selector strings: "one_slope", "cost231",
/// "simplified". Throws InputError for anything else.
Model model_from_string(std::string_view name);
std::string_view to_string(Model model);

inline constexpr double kDefaultFrequencyHz = 2.45e9;

struct ModelParams {
    double pl0_db = 0.0;  // reference loss at d_ref
    double n = 2.0;       // path-loss exponent, > 0
    double pl_w_db = 0.0; // penetration loss per wall, >= 0
    double d_ref_m = 1.0; // fixed reference distance
};

/// Validates finiteness, n > 0, pl_w_db >= 0 and d_ref_m == 1.
const ModelParams& validate_params(const ModelParams& params);

/// Free-space reference loss over d_ref meters: 20 log10(4 pi d_ref f / c).
/// 40.23 dB at 2.45 GHz and 1 m.
double friis_reference_loss_db(double frequency_hz, double d_ref_m = 1.0);

/// Free-space parameter set at the given frequency: Friis PL0, n = 2,
/// no wall loss. Calibration results fall back to these for the fields a
/// fit does not estimate.
ModelParams free_space_params(double frequency_hz = kDefaultFrequencyHz);

struct PathLossBreakdown {
    Model model = Model::one_slope;
    double free_space_term_db = 0.0; // PL0
    double distance_term_db = 0.0;   // 10 n log10(d / d_ref)
    double wall_term_db = 0.0;
    double total_db = 0.0; // always the exact sum of the three terms
    // d < d_ref extrapolates the log-distance term below the reference
    // point; flagged so callers can decide whether to trust it.
    bool below_reference_distance = false;
};

struct CategoryCrossing {
    std::size_t count = 0;
    double loss_db = 0.0; // per wall of this category
};

/// Geometry of one link, reduced to what the models consume.
struct LinkGeometry {
    double distance_m = 0.0;
    std::size_t m_walls = 0;
    // Per-category counts and losses; required by cost231, ignored by the
    // other models.
    std::optional<std::map<std::string, CategoryCrossing>> per_category;
};

PathLossBreakdown one_slope(const ModelParams& params, double distance_m);
PathLossBreakdown cost231_multiwall(const ModelParams& params, double distance_m,
                                    std::span<const double> wall_losses_db);
PathLossBreakdown simplified_multiwall(const ModelParams& params, double distance_m,
                                       std::size_t m_walls);

/// Dispatches one of the three models over a precomputed link geometry.
PathLossBreakdown evaluate_model(const ModelParams& params, Model model, const LinkGeometry& geometry);

/// Received signal strength with antenna gains folded into PL0.
double predict_rss_dbm(double tx_power_dbm, double path_loss_db);

/// Distance and wall crossings for a tx-rx pair, ready for evaluate_model.
/// The plan must be validated; crossing warnings are dropped here, use
/// wall_crossings directly when they matter.
LinkGeometry link_geometry(const FloorPlan& plan, Point2D tx, Point2D rx);

/// End-to-end prediction over a floor plan: straight-line distance, wall
/// crossings, then the selected model.
PathLossBreakdown predict_link(const FloorPlan& plan, Point2D tx, Point2D rx,
                               const ModelParams& params, Model model);

} // namespace mwpl
