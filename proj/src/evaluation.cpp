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

#include "mwpl/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mwpl/errors.hpp"

namespace mwpl {

ComparisonReport compare(std::span<const Measurement> measurements, const FloorPlan& plan,
                         const ModelParams& params, Model model)
{
    validate_plan(plan);
    validate_params(params);
    if (measurements.empty()) {
        throw InputError("compare: no measurements");
    }

    ComparisonReport report;
    report.model = model;
    report.per_point.reserve(measurements.size());

    double ssr = 0.0;
    double sum_error = 0.0;
    for (std::size_t i = 0; i < measurements.size(); ++i) {
        const Measurement& m = measurements[i];
        validate_measurement(m, i);

        LinkGeometry geometry;
        try {
            geometry = link_geometry(plan, m.tx, m.rx);
        } catch (const InputError& e) {
            throw InputError("measurement " + std::to_string(i) + ": " + e.what());
        }
        if (m.m_override) {
            if (model == Model::cost231) {
                // An override carries only a count; cost231 needs to know
                // which categories were crossed.
                throw InputError("measurement " + std::to_string(i) +
                                 ": m_override cannot be combined with the cost231 model");
            }
            geometry.m_walls = static_cast<std::size_t>(*m.m_override);
            geometry.per_category.reset();
        }

        ComparisonPoint point;
        point.observed_db = observed_path_loss_db(m);
        point.predicted_db = evaluate_model(params, model, geometry).total_db;
        point.residual_db = point.observed_db - point.predicted_db;
        point.m_walls = geometry.m_walls;
        point.distance_m = geometry.distance_m;
        report.per_point.push_back(point);

        ssr += point.residual_db * point.residual_db;
        sum_error += point.residual_db;
        report.max_abs_error_db = std::max(report.max_abs_error_db, std::abs(point.residual_db));
    }
    const double n = static_cast<double>(report.per_point.size());
    report.rmse_db = std::sqrt(ssr / n);
    report.mean_error_db = sum_error / n;
    return report;
}

DescriptiveStats descriptive_stats(std::span<const double> values)
{
    if (values.empty()) {
        throw InputError("descriptive_stats: empty input");
    }
    DescriptiveStats stats;
    stats.min = values[0];
    stats.max = values[0];
    double sum = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InputError("descriptive_stats: non-finite value");
        }
        sum += v;
        stats.min = std::min(stats.min, v);
        stats.max = std::max(stats.max, v);
    }
    const double n = static_cast<double>(values.size());
    stats.mean = sum / n;
    if (values.size() == 1) {
        stats.sample_std = 0.0;
        return stats;
    }
    double ssd = 0.0;
    for (double v : values) {
        const double d = v - stats.mean;
        ssd += d * d;
    }
    stats.sample_std = std::sqrt(ssd / (n - 1.0));
    return stats;
}

} // namespace mwpl
