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

#include "mwpl/pathloss.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "mwpl/errors.hpp"

namespace mwpl {

Model model_from_string(std::string_view name)
{
    if (name == "one_slope") {
        return Model::one_slope;
    }
    if (name == "cost231") {
        return Model::cost231;
    }
    if (name == "simplified") {
        return Model::simplified;
    }
    throw InputError("unknown model '" + std::string(name) +
                     "' (expected one_slope, cost231 or simplified)");
}

std::string_view to_string(Model model)
{
    switch (model) {
    case Model::one_slope:
        return "one_slope";
    case Model::cost231:
        return "cost231";
    case Model::simplified:
        return "simplified";
    }
    throw InputError("invalid model enum value");
}

const ModelParams& validate_params(const ModelParams& params)
{
    if (!std::isfinite(params.pl0_db)) {
        throw InputError("pl0_db must be finite");
    }
    if (!std::isfinite(params.n) || params.n <= 0.0) {
        throw InputError("path-loss exponent n must be finite and > 0");
    }
    if (!std::isfinite(params.pl_w_db) || params.pl_w_db < 0.0) {
        throw InputError("pl_w_db must be finite and >= 0");
    }
    if (params.d_ref_m != 1.0) {
        throw InputError("d_ref_m is fixed at 1.0 m");
    }
    return params;
}

double friis_reference_loss_db(double frequency_hz, double d_ref_m)
{
    if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0) {
        throw InputError("frequency_hz must be finite and > 0");
    }
    if (!std::isfinite(d_ref_m) || d_ref_m <= 0.0) {
        throw InputError("d_ref_m must be finite and > 0");
    }
    constexpr double kSpeedOfLightMs = 299'792'458.0;
    return 20.0 * std::log10(4.0 * std::numbers::pi * d_ref_m * frequency_hz / kSpeedOfLightMs);
}

ModelParams free_space_params(double frequency_hz)
{
    return ModelParams{friis_reference_loss_db(frequency_hz), 2.0, 0.0, 1.0};
}

namespace {

// All three models share PL0 + 10 n log10(d/d_ref) and differ only in the
// wall term, so they are assembled here; total_db is the literal sum of
// the three stored terms.
PathLossBreakdown make_breakdown(Model model, const ModelParams& params, double distance_m,
                                 double wall_term_db)
{
    validate_params(params);
    if (!std::isfinite(distance_m) || distance_m <= 0.0) {
        throw InputError("distance must be finite and > 0 m");
    }
    PathLossBreakdown b;
    b.model = model;
    b.free_space_term_db = params.pl0_db;
    b.distance_term_db = 10.0 * params.n * std::log10(distance_m / params.d_ref_m);
    b.wall_term_db = wall_term_db;
    b.total_db = b.free_space_term_db + b.distance_term_db + b.wall_term_db;
    b.below_reference_distance = distance_m < params.d_ref_m;
    return b;
}

} // namespace

PathLossBreakdown one_slope(const ModelParams& params, double distance_m)
{
    return make_breakdown(Model::one_slope, params, distance_m, 0.0);
}

PathLossBreakdown cost231_multiwall(const ModelParams& params, double distance_m,
                                    std::span<const double> wall_losses_db)
{
    double wall_term = 0.0;
    for (std::size_t i = 0; i < wall_losses_db.size(); ++i) {
        const double loss = wall_losses_db[i];
        if (!std::isfinite(loss) || loss < 0.0) {
            throw InputError("wall loss " + std::to_string(i) + " must be finite and >= 0");
        }
        wall_term += loss;
    }
    return make_breakdown(Model::cost231, params, distance_m, wall_term);
}

PathLossBreakdown simplified_multiwall(const ModelParams& params, double distance_m,
                                       std::size_t m_walls)
{
    return make_breakdown(Model::simplified, params, distance_m,
                          static_cast<double>(m_walls) * params.pl_w_db);
}

PathLossBreakdown evaluate_model(const ModelParams& params, Model model, const LinkGeometry& geometry)
{
    switch (model) {
    case Model::one_slope:
        return one_slope(params, geometry.distance_m);
    case Model::simplified:
        return simplified_multiwall(params, geometry.distance_m, geometry.m_walls);
    case Model::cost231: {
        if (!geometry.per_category) {
            throw InputError("cost231 needs per-category wall crossings");
        }
        std::vector<double> losses;
        losses.reserve(geometry.m_walls);
        for (const auto& [id, crossing] : *geometry.per_category) {
            for (std::size_t k = 0; k < crossing.count; ++k) {
                losses.push_back(crossing.loss_db);
            }
        }
        if (losses.size() != geometry.m_walls) {
            throw InputError("per-category counts do not sum to m_walls");
        }
        return cost231_multiwall(params, geometry.distance_m, losses);
    }
    }
    throw InputError("invalid model enum value");
}

double predict_rss_dbm(double tx_power_dbm, double path_loss_db)
{
    if (!std::isfinite(tx_power_dbm) || !std::isfinite(path_loss_db)) {
        throw InputError("predict_rss_dbm: non-finite input");
    }
    return tx_power_dbm - path_loss_db;
}

LinkGeometry link_geometry(const FloorPlan& plan, Point2D tx, Point2D rx)
{
    const CrossingReport report = wall_crossings(plan, tx, rx);
    LinkGeometry g;
    g.distance_m = straight_line_distance(tx, rx);
    g.m_walls = report.m_total;
    std::map<std::string, CategoryCrossing> per_category;
    for (const auto& [id, count] : report.per_category_counts) {
        // validate_plan guarantees the category resolves
        per_category[id] = CategoryCrossing{count, plan.find_category(id)->loss_db};
    }
    g.per_category = std::move(per_category);
    return g;
}

PathLossBreakdown predict_link(const FloorPlan& plan, Point2D tx, Point2D rx,
                               const ModelParams& params, Model model)
{
    return evaluate_model(params, model, link_geometry(plan, tx, rx));
}

} // namespace mwpl
