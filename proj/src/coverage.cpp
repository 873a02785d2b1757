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

#include "mwpl/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mwpl/errors.hpp"
#include "numfmt.hpp"

namespace mwpl {

const GridSpec& validate_grid_spec(const GridSpec& spec)
{
    if (!std::isfinite(spec.min_x) || !std::isfinite(spec.min_y) || !std::isfinite(spec.max_x) ||
        !std::isfinite(spec.max_y) || !std::isfinite(spec.resolution_m)) {
        throw InputError("grid spec: non-finite value");
    }
    if (spec.max_x <= spec.min_x || spec.max_y <= spec.min_y) {
        throw InputError("grid spec: max must exceed min on both axes");
    }
    if (spec.resolution_m <= 0.0) {
        throw InputError("grid spec: resolution_m must be > 0");
    }
    return spec;
}

GridQuantity grid_quantity_from_string(std::string_view name)
{
    if (name == "pl") {
        return GridQuantity::path_loss_db;
    }
    if (name == "rss") {
        return GridQuantity::rss_dbm;
    }
    throw InputError("unknown quantity '" + std::string(name) + "' (expected pl or rss)");
}

std::string_view to_string(GridQuantity quantity)
{
    return quantity == GridQuantity::path_loss_db ? "path_loss_db" : "rss_dbm";
}

Point2D CoverageGrid::cell_center(std::size_t row, std::size_t col) const
{
    return Point2D{spec.min_x + (static_cast<double>(col) + 0.5) * spec.resolution_m,
                   spec.min_y + (static_cast<double>(row) + 0.5) * spec.resolution_m};
}

namespace {

std::size_t cell_count(double lo, double hi, double resolution)
{
    // A bbox spanning an exact multiple of the resolution gets exactly
    // that many cells; anything extra gets one more so the raster covers
    // the whole box.
    const double n = std::ceil((hi - lo) / resolution - 1e-9);
    return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

} // namespace

CoverageGrid generate_grid(const FloorPlan& plan, Point2D tx, const ModelParams& params,
                           Model model, const GridSpec& spec, GridQuantity quantity,
                           std::optional<double> tx_power_dbm, unsigned workers)
{
    validate_plan(plan);
    validate_params(params);
    validate_grid_spec(spec);
    if (!is_finite(tx)) {
        throw InputError("generate_grid: non-finite tx");
    }
    if (quantity == GridQuantity::rss_dbm && !tx_power_dbm) {
        throw InputError("generate_grid: rss quantity requires tx_power_dbm");
    }
    if (tx_power_dbm && !std::isfinite(*tx_power_dbm)) {
        throw InputError("generate_grid: non-finite tx_power_dbm");
    }

    CoverageGrid grid;
    grid.spec = spec;
    grid.tx = tx;
    grid.quantity = quantity;
    grid.n_cols = cell_count(spec.min_x, spec.max_x, spec.resolution_m);
    grid.n_rows = cell_count(spec.min_y, spec.max_y, spec.resolution_m);
    grid.values.resize(grid.n_cols * grid.n_rows);

    const auto evaluate_rows = [&](std::size_t row_begin, std::size_t row_end) {
        for (std::size_t r = row_begin; r < row_end; ++r) {
            for (std::size_t c = 0; c < grid.n_cols; ++c) {
                const Point2D center = grid.cell_center(r, c);
                const double d = straight_line_distance(tx, center);
                LinkGeometry geometry;
                if (d == 0.0) {
                    // The cell center coincides with tx: no path to count
                    // walls along, evaluate at the reference distance.
                    geometry.distance_m = params.d_ref_m;
                    geometry.m_walls = 0;
                    geometry.per_category.emplace();
                } else {
                    geometry = link_geometry(plan, tx, center);
                    geometry.distance_m = std::max(d, params.d_ref_m);
                }
                double value = evaluate_model(params, model, geometry).total_db;
                if (quantity == GridQuantity::rss_dbm) {
                    value = predict_rss_dbm(*tx_power_dbm, value);
                }
                grid.values[r * grid.n_cols + c] = value;
            }
        }
    };

    const std::size_t thread_count = std::min<std::size_t>(std::max(1u, workers), grid.n_rows);
    if (thread_count <= 1) {
        evaluate_rows(0, grid.n_rows);
    } else {
        // Each worker owns a contiguous block of rows and writes disjoint
        // cells; per-cell arithmetic is identical to the serial path, so
        // the raster does not depend on the worker count.
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        const std::size_t chunk = (grid.n_rows + thread_count - 1) / thread_count;
        for (std::size_t t = 0; t < thread_count; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(grid.n_rows, begin + chunk);
            if (begin >= end) {
                break;
            }
            pool.emplace_back(evaluate_rows, begin, end);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }
    return grid;
}

std::string export_csv(const CoverageGrid& grid)
{
    using detail::format_double;
    std::string out;
    out += "# quantity: ";
    out += to_string(grid.quantity);
    out += "\n# bbox: " + format_double(grid.spec.min_x) + " " + format_double(grid.spec.min_y) +
           " " + format_double(grid.spec.max_x) + " " + format_double(grid.spec.max_y);
    out += "\n# resolution: " + format_double(grid.spec.resolution_m);
    out += "\n# tx: " + format_double(grid.tx.x) + " " + format_double(grid.tx.y) + "\n";
    for (std::size_t r = 0; r < grid.n_rows; ++r) { // row 0 = min_y edge
        for (std::size_t c = 0; c < grid.n_cols; ++c) {
            if (c != 0) {
                out += ',';
            }
            out += format_double(grid.value_at(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string export_pgm(const CoverageGrid& grid, double lo, double hi)
{
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi <= lo) {
        throw InputError("export_pgm: hi must exceed lo");
    }
    std::string out = "P2\n" + std::to_string(grid.n_cols) + " " + std::to_string(grid.n_rows) +
                      "\n255\n";
    for (std::size_t i = 0; i < grid.n_rows; ++i) { // first row = max_y edge
        const std::size_t r = grid.n_rows - 1 - i;
        for (std::size_t c = 0; c < grid.n_cols; ++c) {
            const double t = (grid.value_at(r, c) - lo) / (hi - lo);
            long pixel = std::lround(t * 255.0); // half away from zero
            pixel = std::clamp(pixel, 0L, 255L);
            if (c != 0) {
                out += ' ';
            }
            out += std::to_string(pixel);
        }
        out += '\n';
    }
    return out;
}

} // namespace mwpl
