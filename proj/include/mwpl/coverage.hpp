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
#include <string>
#include <vector>

#include "mwpl/floorplan.hpp"
#include "mwpl/pathloss.hpp"

namespace mwpl {

struct GridSpec {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0; // > min_x
    double max_y = 0.0; // > min_y
    double resolution_m = 0.0; // > 0
};

const GridSpec& validate_grid_spec(const GridSpec& spec);

enum class GridQuantity {
    path_loss_db,
    rss_dbm,
};

GridQuantity grid_quantity_from_string(std::string_view name); // "pl" | "rss"
std::string_view to_string(GridQuantity quantity);

/// Raster of predictions over receiver positions, sampled at cell centers.
/// Storage is row-major with row 0 on the min_y edge.
struct CoverageGrid {
    GridSpec spec;
    Point2D tx;
    GridQuantity quantity = GridQuantity::path_loss_db;
    std::size_t n_cols = 0;
    std::size_t n_rows = 0;
    std::vector<double> values; // n_cols * n_rows

    double value_at(std::size_t row, std::size_t col) const { return values[row * n_cols + col]; }
    Point2D cell_center(std::size_t row, std::size_t col) const;
};

/// Evaluates the model at every cell center. Distances shorter than the
/// 1 m reference are clamped to it (the log term diverges below), with
/// walls still counted, so rasters stay finite. `workers` threads may be
/// used; the raster is bit-identical regardless of the count.
/// tx_power_dbm is required for the rss quantity.
CoverageGrid generate_grid(const FloorPlan& plan, Point2D tx, const ModelParams& params,
                           Model model, const GridSpec& spec, GridQuantity quantity,
                           std::optional<double> tx_power_dbm = std::nullopt,
                           unsigned workers = 1);

/// CSV text: `#` header lines (quantity, bbox, resolution, tx), then one
/// line per row bottom-up (row 0 = min_y edge), full-precision values.
std::string export_csv(const CoverageGrid& grid);

/// Plain PGM (P2), maxval 255, rows top-down (first row = max_y edge).
/// Values map linearly from [lo, hi] to [0, 255], rounded half away from
/// zero, then clamped.
std::string export_pgm(const CoverageGrid& grid, double lo, double hi);

} // namespace mwpl
