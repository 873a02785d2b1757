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

#include "mwpl/calibration.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "mwpl/errors.hpp"

namespace mwpl {

void validate_measurement(const Measurement& m, std::size_t index)
{
    const std::string where = "measurement " + std::to_string(index);
    if (!is_finite(m.tx) || !is_finite(m.rx)) {
        throw InputError(where + ": non-finite position");
    }
    if (m.rss_dbm.has_value() == m.pl_db.has_value()) {
        throw InputError(where + ": exactly one of rss_dbm and pl_db must be present");
    }
    if (m.rss_dbm && !m.tx_power_dbm) {
        throw InputError(where + ": rss_dbm requires tx_power_dbm");
    }
    if (m.rss_dbm && !std::isfinite(*m.rss_dbm)) {
        throw InputError(where + ": non-finite rss_dbm");
    }
    if (m.pl_db && !std::isfinite(*m.pl_db)) {
        throw InputError(where + ": non-finite pl_db");
    }
    if (m.tx_power_dbm && !std::isfinite(*m.tx_power_dbm)) {
        throw InputError(where + ": non-finite tx_power_dbm");
    }
    if (m.m_override && *m.m_override < 0) {
        throw InputError(where + ": m_override must be >= 0");
    }
}

double observed_path_loss_db(const Measurement& m)
{
    if (m.pl_db) {
        return *m.pl_db;
    }
    return *m.tx_power_dbm - *m.rss_dbm;
}

double differential_wall_loss_db(double rss_free_dbm, double rss_walled_dbm)
{
    if (!std::isfinite(rss_free_dbm) || !std::isfinite(rss_walled_dbm)) {
        throw InputError("differential_wall_loss_db: non-finite input");
    }
    return rss_free_dbm - rss_walled_dbm;
}

namespace {

// Rank detection relative tolerance on singular values.
constexpr double kRankTolerance = 1e-10;

FitResult finish_fit(ModelParams params, std::vector<double> residuals)
{
    FitResult result;
    result.params = params;
    result.n_points = residuals.size();
    double ssr = 0.0;
    for (double r : residuals) {
        ssr += r * r;
    }
    result.rmse_db = std::sqrt(ssr / static_cast<double>(residuals.size()));
    result.residuals_db = std::move(residuals);
    return result;
}

struct OlsSolution {
    Eigen::VectorXd coeffs;
    Eigen::Index rank = 0;
};

// Least squares via SVD; never forms normal equations so the rank
// diagnostics stay trustworthy for nearly-degenerate designs.
OlsSolution solve_ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& rhs)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(kRankTolerance);
    OlsSolution solution;
    solution.rank = svd.rank();
    solution.coeffs = svd.solve(rhs);
    return solution;
}

// Is column j of the design reproducible from the remaining columns?
// Used to name the culprit in rank-deficiency errors.
bool column_is_dependent(const Eigen::MatrixXd& design, Eigen::Index j)
{
    const Eigen::Index cols = design.cols();
    Eigen::MatrixXd rest(design.rows(), cols - 1);
    Eigen::Index k = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
        if (c != j) {
            rest.col(k++) = design.col(c);
        }
    }
    const Eigen::VectorXd target = design.col(j);
    const Eigen::VectorXd fit = rest * solve_ols(rest, target).coeffs;
    const double residual = (target - fit).norm();
    return residual <= 1e-8 * (1.0 + target.norm());
}

} // namespace

FitResult fit_wall_loss(std::span<const WallLossSample> samples, const ModelParams& base)
{
    validate_params(base);
    if (samples.empty()) {
        throw InputError("fit_wall_loss: no samples");
    }
    double sum_ml = 0.0;
    double sum_mm = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const WallLossSample& s = samples[i];
        if (s.m_walls < 1) {
            throw InputError("sample " + std::to_string(i) + ": m_walls must be >= 1");
        }
        if (!std::isfinite(s.loss_db)) {
            throw InputError("sample " + std::to_string(i) + ": non-finite loss_db");
        }
        const double m = static_cast<double>(s.m_walls);
        sum_ml += m * s.loss_db;
        sum_mm += m * m;
    }
    const double pl_w = sum_ml / sum_mm;

    std::vector<double> residuals;
    residuals.reserve(samples.size());
    for (const WallLossSample& s : samples) {
        residuals.push_back(s.loss_db - static_cast<double>(s.m_walls) * pl_w);
    }
    ModelParams params = base;
    params.pl_w_db = pl_w;
    return finish_fit(params, std::move(residuals));
}

FitResult fit_log_distance(std::span<const DistanceLossPoint> points, const ModelParams& base)
{
    validate_params(base);
    if (points.size() < 2) {
        throw InputError("fit_log_distance: need at least 2 points");
    }
    Eigen::MatrixXd design(static_cast<Eigen::Index>(points.size()), 2);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const DistanceLossPoint& p = points[i];
        if (!std::isfinite(p.distance_m) || p.distance_m <= 0.0) {
            throw InputError("point " + std::to_string(i) + ": distance_m must be finite and > 0");
        }
        if (!std::isfinite(p.pl_db)) {
            throw InputError("point " + std::to_string(i) + ": non-finite pl_db");
        }
        design(static_cast<Eigen::Index>(i), 0) = 1.0;
        design(static_cast<Eigen::Index>(i), 1) = 10.0 * std::log10(p.distance_m);
        rhs(static_cast<Eigen::Index>(i)) = p.pl_db;
    }

    const OlsSolution solution = solve_ols(design, rhs);
    if (solution.rank < 2) {
        throw InputError("fit_log_distance: rank-deficient design, need at least 2 distinct distances");
    }

    const Eigen::VectorXd fitted = design * solution.coeffs;
    std::vector<double> residuals(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        residuals[i] = rhs(static_cast<Eigen::Index>(i)) - fitted(static_cast<Eigen::Index>(i));
    }
    ModelParams params = base;
    params.pl0_db = solution.coeffs(0);
    params.n = solution.coeffs(1);
    return finish_fit(params, std::move(residuals));
}

FitResult fit_joint(std::span<const Measurement> measurements, const FloorPlan& plan)
{
    validate_plan(plan);
    if (measurements.size() < 3) {
        throw InputError("fit_joint: need at least 3 measurements");
    }

    const Eigen::Index n_rows = static_cast<Eigen::Index>(measurements.size());
    Eigen::MatrixXd design(n_rows, 3);
    Eigen::VectorXd rhs(n_rows);
    for (std::size_t i = 0; i < measurements.size(); ++i) {
        const Measurement& m = measurements[i];
        validate_measurement(m, i);
        const double d = straight_line_distance(m.tx, m.rx);
        if (d <= 0.0) {
            throw InputError("measurement " + std::to_string(i) + ": tx == rx, zero distance");
        }
        std::size_t walls;
        if (m.m_override) {
            walls = static_cast<std::size_t>(*m.m_override);
        } else {
            walls = wall_crossings(plan, m.tx, m.rx).m_total;
        }
        const Eigen::Index row = static_cast<Eigen::Index>(i);
        design(row, 0) = 1.0;
        design(row, 1) = 10.0 * std::log10(d);
        design(row, 2) = static_cast<double>(walls);
        rhs(row) = observed_path_loss_db(m);
    }

    const OlsSolution solution = solve_ols(design, rhs);
    if (solution.rank < 3) {
        if (column_is_dependent(design, 2)) {
            throw InputError("fit_joint: rank-deficient design, wall-count column carries no "
                             "information (e.g. every measurement crosses the same number of walls)");
        }
        if (column_is_dependent(design, 1)) {
            throw InputError("fit_joint: rank-deficient design, log-distance column carries no "
                             "information (e.g. all distances equal)");
        }
        throw InputError("fit_joint: rank-deficient design, intercept column is redundant");
    }

    const Eigen::VectorXd fitted = design * solution.coeffs;
    std::vector<double> residuals(measurements.size());
    for (std::size_t i = 0; i < measurements.size(); ++i) {
        residuals[i] = rhs(static_cast<Eigen::Index>(i)) - fitted(static_cast<Eigen::Index>(i));
    }
    ModelParams params;
    params.pl0_db = solution.coeffs(0);
    params.n = solution.coeffs(1);
    params.pl_w_db = solution.coeffs(2);
    params.d_ref_m = 1.0;
    return finish_fit(params, std::move(residuals));
}

} // namespace mwpl
