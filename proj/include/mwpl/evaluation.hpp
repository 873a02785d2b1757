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
#include <span>
#include <vector>

#include "mwpl/calibration.hpp"
#include "mwpl/floorplan.hpp"
#include "mwpl/pathloss.hpp"

namespace mwpl {

struct ComparisonPoint {
    double predicted_db = 0.0;
    double observed_db = 0.0;
    double residual_db = 0.0; // observed - predicted; signed to expose bias
    std::size_t m_walls = 0;
    double distance_m = 0.0;
};

struct ComparisonReport {
    std::vector<ComparisonPoint> per_point; // input order
    double rmse_db = 0.0;
    double mean_error_db = 0.0;
    double max_abs_error_db = 0.0;
    Model model = Model::one_slope;
};

/// Predicts every measurement with the selected model and reports the
/// residuals. A failing point (degenerate geometry, invalid row) aborts
/// the whole report with the point index; a partial report would
/// misrepresent accuracy.
ComparisonReport compare(std::span<const Measurement> measurements, const FloorPlan& plan,
                         const ModelParams& params, Model model);

struct DescriptiveStats {
    double mean = 0.0;
    double sample_std = 0.0; // N-1 denominator; 0 for a single value
    double min = 0.0;
    double max = 0.0;
};

DescriptiveStats descriptive_stats(std::span<const double> values);

} // namespace mwpl
