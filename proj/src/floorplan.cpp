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

#include "mwpl/floorplan.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "mwpl/errors.hpp"

namespace mwpl {

bool is_finite(Point2D p)
{
    return std::isfinite(p.x) && std::isfinite(p.y);
}

const WallCategory* FloorPlan::find_category(std::string_view id) const
{
    for (const WallCategory& c : categories) {
        if (c.id == id) {
            return &c;
        }
    }
    return nullptr;
}

const FloorPlan& validate_plan(const FloorPlan& plan)
{
    std::unordered_set<std::string_view> seen_ids;
    for (const WallCategory& c : plan.categories) {
        if (!seen_ids.insert(c.id).second) {
            throw InputError("duplicate category id '" + c.id + "'");
        }
        if (!std::isfinite(c.loss_db) || c.loss_db < 0.0) {
            throw InputError("category '" + c.id + "': loss_db must be finite and >= 0");
        }
        if (!std::isfinite(c.thickness_m) || c.thickness_m <= 0.0) {
            throw InputError("category '" + c.id + "': thickness_m must be finite and > 0");
        }
    }
    if (plan.frequency_hz && !(std::isfinite(*plan.frequency_hz) && *plan.frequency_hz > 0.0)) {
        throw InputError("frequency_hz must be finite and > 0");
    }
    for (std::size_t i = 0; i < plan.walls.size(); ++i) {
        const Wall& w = plan.walls[i];
        const std::string where = "wall " + std::to_string(i);
        if (!is_finite(w.a) || !is_finite(w.b)) {
            throw InputError(where + ": non-finite coordinate");
        }
        if (w.a.x == w.b.x && w.a.y == w.b.y) {
            throw InputError(where + ": zero-length segment");
        }
        if (plan.find_category(w.category) == nullptr) {
            throw InputError(where + ": unknown category '" + w.category + "'");
        }
    }
    return plan;
}

double straight_line_distance(Point2D tx, Point2D rx)
{
    if (!is_finite(tx) || !is_finite(rx)) {
        throw InputError("straight_line_distance: non-finite point");
    }
    return std::hypot(rx.x - tx.x, rx.y - tx.y);
}

namespace {

// Side of the directed line a->b the point p falls on: +1 left, -1 right,
// 0 within kGeometryEpsilonM of the line. The cross product is normalized
// by the segment length so the epsilon is a distance in meters.
int side_of_line(Point2D a, Point2D b, Point2D p)
{
    const double ux = b.x - a.x;
    const double uy = b.y - a.y;
    const double cross = ux * (p.y - a.y) - uy * (p.x - a.x);
    const double dist = cross / std::hypot(ux, uy);
    if (std::abs(dist) <= kGeometryEpsilonM) {
        return 0;
    }
    return dist > 0.0 ? 1 : -1;
}

double point_segment_distance(Point2D p, Point2D a, Point2D b)
{
    const double ux = b.x - a.x;
    const double uy = b.y - a.y;
    const double len2 = ux * ux + uy * uy;
    double t = ((p.x - a.x) * ux + (p.y - a.y) * uy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * ux), p.y - (a.y + t * uy));
}

// Both segments lie on one line; do their extents overlap or touch?
bool collinear_overlap(Point2D tx, Point2D rx, Point2D a, Point2D b)
{
    const double ux = rx.x - tx.x;
    const double uy = rx.y - tx.y;
    const double len2 = ux * ux + uy * uy;
    double ta = ((a.x - tx.x) * ux + (a.y - tx.y) * uy) / len2;
    double tb = ((b.x - tx.x) * ux + (b.y - tx.y) * uy) / len2;
    if (ta > tb) {
        std::swap(ta, tb);
    }
    return tb >= 0.0 && ta <= 1.0;
}

} // namespace

CrossingReport wall_crossings(const FloorPlan& plan, Point2D tx, Point2D rx)
{
    if (!is_finite(tx) || !is_finite(rx)) {
        throw InputError("wall_crossings: non-finite endpoint");
    }
    if (tx.x == rx.x && tx.y == rx.y) {
        throw InputError("wall_crossings: degenerate path, tx == rx");
    }

    CrossingReport report;
    for (std::size_t i = 0; i < plan.walls.size(); ++i) {
        const Wall& w = plan.walls[i];

        // An antenna sitting on the wall itself is outside the model.
        if (point_segment_distance(tx, w.a, w.b) <= kGeometryEpsilonM) {
            report.warnings.push_back("tx lies on wall " + std::to_string(i) + "; wall not counted");
            continue;
        }
        if (point_segment_distance(rx, w.a, w.b) <= kGeometryEpsilonM) {
            report.warnings.push_back("rx lies on wall " + std::to_string(i) + "; wall not counted");
            continue;
        }

        const int side_a = side_of_line(tx, rx, w.a);
        const int side_b = side_of_line(tx, rx, w.b);
        if (side_a == 0 && side_b == 0) {
            // Wall collinear with the path: penetration loss models
            // transmission through a wall, not propagation along it.
            if (collinear_overlap(tx, rx, w.a, w.b)) {
                report.warnings.push_back("wall " + std::to_string(i) +
                                          " is collinear with the path; grazing propagation not modeled");
            }
            continue;
        }
        if (side_a * side_b > 0) {
            continue; // wall entirely on one side of the path line
        }
        const int side_tx = side_of_line(w.a, w.b, tx);
        const int side_rx = side_of_line(w.a, w.b, rx);
        if (side_tx * side_rx > 0) {
            continue; // path never reaches the wall line
        }
        // The segments meet. A touch at a wall endpoint still pierces the
        // wall plane and counts; coincident corner crossings are counted
        // once per wall.
        report.crossed_wall_indices.push_back(i);
        report.per_category_counts[w.category] += 1;
    }
    report.m_total = report.crossed_wall_indices.size();
    return report;
}

} // namespace mwpl
