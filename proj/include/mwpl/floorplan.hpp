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
#include <string>
#include <string_view>
#include <vector>

namespace mwpl {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

bool is_finite(Point2D p);

/// A class of wall sharing one penetration loss. Thickness and material are
/// descriptive metadata; the loss already folds them in.
struct WallCategory {
    std::string id;
    double loss_db = 0.0;     // >= 0
    double thickness_m = 0.0; // > 0
    std::string material;
};

/// Zero-width wall segment. `category` must resolve in the owning plan.
struct Wall {
    Point2D a;
    Point2D b;
    std::string category;
};

struct FloorPlan {
    std::string name;
    std::optional<double> frequency_hz; // metadata only, no model term uses it
    std::vector<WallCategory> categories;
    std::vector<Wall> walls;

    /// Category lookup by id; nullptr when absent.
    const WallCategory* find_category(std::string_view id) const;
};

/// Which walls a straight tx-rx path traverses.
struct CrossingReport {
    std::vector<std::size_t> crossed_wall_indices; // ascending wall index
    std::size_t m_total = 0;
    std::map<std::string, std::size_t> per_category_counts;
    std::vector<std::string> warnings;
};

/// Points closer than this to a line or segment are treated as lying on it.
inline constexpr double kGeometryEpsilonM = 1e-9;

/// Checks every plan invariant (finite geometry, positive-length walls,
/// resolvable categories, unique category ids). Returns its argument so
/// loading code can validate in one expression. Throws InputError naming
/// the offending wall or category.
const FloorPlan& validate_plan(const FloorPlan& plan);

/// Euclidean distance in meters. Throws InputError on non-finite input.
double straight_line_distance(Point2D tx, Point2D rx);

/// Counts the walls whose segment crosses the straight tx-rx path.
///
/// A proper crossing counts once, as does a path through a wall endpoint
/// (the signal still pierces the wall plane). A wall carrying tx or rx on
/// it, or a wall collinear with the path, contributes nothing and appends
/// a warning. Walls meeting at a corner the path threads are each counted.
/// Symmetric in tx/rx. The plan must already be validated.
///
/// Throws InputError when tx == rx.
CrossingReport wall_crossings(const FloorPlan& plan, Point2D tx, Point2D rx);

} // namespace mwpl
