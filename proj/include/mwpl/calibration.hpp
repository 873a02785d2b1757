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
#include <optional>
#include <span>
#include <vector>

#include "mwpl/floorplan.hpp"
#include "mwpl/pathloss.hpp"

namespace mwpl {

/// One measured penetration loss: `loss_db` of signal lost through
/// `m_walls` walls relative to an unobstructed path.
struct WallLossSample {
    int m_walls = 0; // >= 1
    double loss_db = 0.0;
    std::optional<double> std_db;      // spread over repeated measurements
    std::optional<double> distance_m;  // descriptive only, not used by fits
};

/// One tx/rx observation. Exactly one of rss_dbm / pl_db is present; the
/// rss form needs tx_power_dbm to convert. m_override replaces the wall
/// count obtained from plan geometry.
struct Measurement {
    Point2D tx;
    Point2D rx;
    std::optional<double> rss_dbm;
    std::optional<double> pl_db;
    std::optional<double> tx_power_dbm;
    std::optional<int> m_override;
};

/// Throws InputError when the Measurement invariants fail; `index` is used
/// in the message.
void validate_measurement(const Measurement& m, std::size_t index);

/// Observed path loss: pl_db directly, or tx_power_dbm - rss_dbm.
double observed_path_loss_db(const Measurement& m);

struct FitResult {
    // Fitted coefficients; fields a fit does not estimate carry the base
    // parameter values passed in (free-space defaults unless overridden).
    ModelParams params;
    std::vector<double> residuals_db; // observed - fitted, input order
    double rmse_db = 0.0;
    std::size_t n_points = 0;
};

/// Loss of the intervening walls from two received-strength readings taken
/// at the same straight-line distance, without and with walls in the path.
double differential_wall_loss_db(double rss_free_dbm, double rss_walled_dbm);

/// Per-wall loss by least squares through the origin:
/// pl_w = sum(m_i * loss_i) / sum(m_i^2). The through-origin form is
/// deliberate; an intercept would attribute part of the wall loss to an
/// offset no wall explains.
FitResult fit_wall_loss(std::span<const WallLossSample> samples,
                        const ModelParams& base = free_space_params());

struct DistanceLossPoint {
    double distance_m = 0.0; // > 0
    double pl_db = 0.0;
};

/// Ordinary least squares of path loss on 10*log10(d) with intercept;
/// intercept becomes pl0_db, the slope coefficient becomes n. Needs at
/// least two distinct distances.
FitResult fit_log_distance(std::span<const DistanceLossPoint> points,
                           const ModelParams& base = free_space_params());

/// Joint fit of (pl0_db, n, pl_w_db) over rows [1, 10*log10(d_i), M_i].
/// Wall counts come from plan geometry unless a measurement carries
/// m_override. Requires a rank-3 design: both distance and wall count must
/// vary. Throws InputError naming the deficient column otherwise.
FitResult fit_joint(std::span<const Measurement> measurements, const FloorPlan& plan);

} // namespace mwpl
