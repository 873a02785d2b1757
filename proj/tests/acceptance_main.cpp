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

// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Tolerances are pinned here, not configurable.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mwpl/calibration.hpp"
#include "mwpl/coverage.hpp"
#include "mwpl/dataio.hpp"
#include "mwpl/errors.hpp"
#include "mwpl/evaluation.hpp"
#include "mwpl/floorplan.hpp"
#include "mwpl/pathloss.hpp"
#include "support/rational_oracle.hpp"
#include "support/subprocess.hpp"
#include "support/test_rng.hpp"

using namespace mwpl;
using mwpl::testing::GeometryCase;
using mwpl::testing::make_temp_dir;
using mwpl::testing::oracle_crossing_count;
using mwpl::testing::random_geometry_case;
using mwpl::testing::run_command;
using mwpl::testing::TestRng;

namespace {

const std::string kDataDir = MWPL_DATA_DIR;
const std::string kGoldenDir = MWPL_GOLDEN_DIR;
const std::string kCli = MWPL_CLI_PATH;

class Checker {
public:
    void require(bool condition, const std::string& detail)
    {
        if (!condition) {
            ok_ = false;
            if (first_failure_.empty()) {
                first_failure_ = detail;
            }
        }
    }

    bool ok() const { return ok_; }
    const std::string& first_failure() const { return first_failure_; }

private:
    bool ok_ = true;
    std::string first_failure_;
};

std::string str(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// ---- criterion 1: wall-loss fit reproduces 17.78 dB/wall ---------------------

void criterion_wall_fit(Checker& check)
{
    const auto started = std::chrono::steady_clock::now();
    const auto samples = load_wall_samples(read_file(kDataDir + "/cement_mortar_wall_loss.csv"));
    const FitResult fit = fit_wall_loss(samples);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    check.require(std::abs(fit.params.pl_w_db - 17.78) <= 0.005,
                  "fitted pl_w " + str(fit.params.pl_w_db) + " not within 0.005 of 17.78");
    check.require(std::abs(fit.params.pl_w_db - 248.95 / 14.0) <= 1e-12,
                  "fitted pl_w deviates from the closed form 248.95/14");
    check.require(elapsed < 1.0, "library fit took " + str(elapsed) + " s");

    const auto cli_started = std::chrono::steady_clock::now();
    const auto result =
        run_command(kCli + " fit walls --input " + kDataDir + "/cement_mortar_wall_loss.csv");
    const double cli_elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - cli_started).count();
    check.require(result.exit_code == 0, "fit walls exited " + std::to_string(result.exit_code));
    check.require(result.output.find("pl_w_db = 17.78") != std::string::npos,
                  "fit walls output missing 'pl_w_db = 17.78': " + result.output);
    check.require(cli_elapsed < 1.0, "fit walls took " + str(cli_elapsed) + " s");
}

// ---- criterion 2: predicted multiples sit within one std of the data ----------

std::vector<double> residual_column(const std::string& report_csv)
{
    std::vector<double> residuals;
    std::istringstream stream(report_csv);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("point,", 0) == 0) {
            continue;
        }
        std::size_t field = 0;
        std::size_t start = 0;
        for (field = 0; field < 3; ++field) {
            start = line.find(',', start) + 1;
        }
        residuals.push_back(std::stod(line.substr(start)));
    }
    return residuals;
}

void criterion_model_consistency(Checker& check)
{
    const auto samples = load_wall_samples(read_file(kDataDir + "/cement_mortar_wall_loss.csv"));
    const double fitted = fit_wall_loss(samples).params.pl_w_db;

    const double expected_diff[3] = {0.84, 0.30, -0.48};
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double predicted = static_cast<double>(samples[i].m_walls) * fitted;
        const double diff = samples[i].loss_db - predicted;
        check.require(std::abs(diff - expected_diff[i]) <= 0.005,
                      "difference " + std::to_string(i) + " is " + str(diff) + ", expected " +
                          str(expected_diff[i]));
        check.require(std::abs(diff) <= *samples[i].std_db,
                      "difference " + std::to_string(i) + " exceeds one standard deviation");
    }

    // The compare command must demonstrate the same pattern end to end on
    // the bundled demo geometry (pl_w = 17.78 in the bundled parameters).
    const auto tmp = make_temp_dir("mwpl_acceptance");
    const std::string out = (tmp / "report.csv").string();
    const auto result = run_command(kCli + " compare --measurements " + kDataDir +
                                    "/demo_measurements.csv --plan " + kDataDir +
                                    "/demo_plan.json --params " + kDataDir +
                                    "/demo_params.json --model simplified --out " + out);
    check.require(result.exit_code == 0, "compare exited " + std::to_string(result.exit_code));
    if (result.exit_code == 0) {
        const std::vector<double> residuals = residual_column(read_file(out));
        const double expected_res[3] = {0.84, 0.30, -0.47};
        check.require(residuals.size() == 3, "expected 3 report rows");
        for (std::size_t i = 0; i < residuals.size() && i < 3; ++i) {
            check.require(std::abs(residuals[i] - expected_res[i]) <= 0.005,
                          "compare residual " + std::to_string(i) + " is " + str(residuals[i]));
            check.require(std::abs(residuals[i]) <= *samples[i].std_db,
                          "compare residual " + std::to_string(i) + " exceeds one std");
        }
    }
    std::filesystem::remove_all(tmp);
}

// ---- criterion 3: model identities over randomized draws ----------------------

void criterion_model_identities(Checker& check)
{
    TestRng rng(0xacc3u);
    for (int i = 0; i < 1000; ++i) {
        const ModelParams params{rng.uniform(10.0, 90.0), rng.uniform(0.3, 6.0),
                                 rng.uniform(0.0, 30.0), 1.0};
        const double d = rng.uniform(0.02, 500.0);

        if (simplified_multiwall(params, d, 0).total_db != one_slope(params, d).total_db) {
            check.require(false, "simplified(M=0) != one_slope at draw " + std::to_string(i));
            return;
        }
        const std::size_t m = static_cast<std::size_t>(rng.uniform_int(0, 50));
        const std::vector<double> losses(m, params.pl_w_db);
        const double gap = std::abs(cost231_multiwall(params, d, losses).total_db -
                                    simplified_multiwall(params, d, m).total_db);
        if (gap > 1e-9) {
            check.require(false, "cost231/simplified gap " + str(gap) + " at draw " + std::to_string(i));
            return;
        }
    }
}

// ---- criterion 4: geometry matches the exact-rational oracle ------------------

void criterion_geometry_oracle(Checker& check)
{
    TestRng rng(0xacc4u);
    for (int i = 0; i < 1000; ++i) {
        const GeometryCase c = random_geometry_case(rng);
        const CrossingReport report = wall_crossings(c.plan, c.tx, c.rx);
        const std::size_t expected =
            oracle_crossing_count(c.rational_walls, c.rational_tx, c.rational_rx);
        if (report.m_total != expected) {
            check.require(false, "case " + std::to_string(i) + ": float " +
                                     std::to_string(report.m_total) + " vs oracle " +
                                     std::to_string(expected));
            return;
        }
        if (wall_crossings(c.plan, c.rx, c.tx).m_total != report.m_total) {
            check.require(false, "case " + std::to_string(i) + ": asymmetric counts");
            return;
        }
        if (!c.plan.walls.empty()) {
            FloorPlan shorter = c.plan;
            shorter.walls.pop_back();
            if (wall_crossings(shorter, c.tx, c.rx).m_total > report.m_total) {
                check.require(false, "case " + std::to_string(i) + ": adding a wall lowered the count");
                return;
            }
        }
    }
}

// ---- criterion 5: calibration recovery ----------------------------------------

void criterion_calibration_recovery(Checker& check)
{
    // Noiseless joint recovery over real plan geometry, several truths.
    FloorPlan plan;
    plan.name = "three walls";
    plan.categories.push_back(WallCategory{"w", 1.0, 0.25, "test"});
    plan.walls.push_back(Wall{{1, -4}, {1, 4}, "w"});
    plan.walls.push_back(Wall{{3, -4}, {3, 4}, "w"});
    plan.walls.push_back(Wall{{5, -4}, {5, 4}, "w"});
    const std::vector<Point2D> receivers{{2.15, 0}, {3.95, 0},  {6.5, 0},   {0.9, 0.3},
                                         {-2, 1},   {1.5, 2},   {4.2, -1},  {6.0, 2.5},
                                         {8.5, 0},  {2.6, -3.1}, {-5.5, -2}, {7.3, 3.2}};
    TestRng rng(0xacc5u);
    for (int trial = 0; trial < 25; ++trial) {
        const ModelParams truth{rng.uniform(20.0, 70.0), rng.uniform(0.5, 5.0),
                                rng.uniform(0.0, 25.0), 1.0};
        std::vector<Measurement> measurements;
        for (const Point2D rx : receivers) {
            Measurement m;
            m.tx = Point2D{0, 0};
            m.rx = rx;
            m.pl_db = predict_link(plan, m.tx, rx, truth, Model::simplified).total_db;
            measurements.push_back(m);
        }
        const FitResult fit = fit_joint(measurements, plan);
        const double worst = std::max({std::abs(fit.params.pl0_db - truth.pl0_db),
                                       std::abs(fit.params.n - truth.n),
                                       std::abs(fit.params.pl_w_db - truth.pl_w_db)});
        if (worst > 1e-6) {
            check.require(false, "joint recovery error " + str(worst) + " at trial " +
                                     std::to_string(trial));
            return;
        }
    }

    // Exact two-point log-distance case.
    const std::vector<DistanceLossPoint> points{{1.0, 40.0}, {10.0, 70.0}};
    const FitResult two_point = fit_log_distance(points);
    check.require(std::abs(two_point.params.pl0_db - 40.0) <= 1e-9,
                  "two-point pl0 " + str(two_point.params.pl0_db));
    check.require(std::abs(two_point.params.n - 3.0) <= 1e-9, "two-point n " + str(two_point.params.n));

    // Orthogonality of the design and the residuals on a noisy fit.
    FloorPlan empty;
    empty.name = "empty";
    std::vector<Measurement> noisy;
    std::vector<std::array<double, 3>> design;
    const ModelParams truth{40.0, 2.0, 5.0, 1.0};
    for (int i = 0; i < 300; ++i) {
        const double d = rng.uniform(1.2, 60.0);
        const int m = rng.uniform_int(0, 5);
        Measurement meas;
        meas.rx = Point2D{d, 0};
        meas.m_override = m;
        meas.pl_db =
            simplified_multiwall(truth, d, static_cast<std::size_t>(m)).total_db + rng.normal(0.0, 3.0);
        noisy.push_back(meas);
        design.push_back({1.0, 10.0 * std::log10(d), static_cast<double>(m)});
    }
    const FitResult fit = fit_joint(noisy, empty);
    double scale = 1.0;
    double sum_abs_residual = 0.0;
    std::array<double, 3> gram{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            gram[j] += design[i][j] * fit.residuals_db[i];
            scale = std::max(scale, std::abs(design[i][j]));
        }
        sum_abs_residual += std::abs(fit.residuals_db[i]);
    }
    const double bound = 1e-6 * std::max(1.0, scale * sum_abs_residual);
    for (std::size_t j = 0; j < 3; ++j) {
        check.require(std::abs(gram[j]) <= bound,
                      "design column " + std::to_string(j) + " not orthogonal to residuals: " +
                          str(gram[j]));
    }
}

// ---- criterion 6: property-based stand-ins for unpublished data ----------------

void criterion_descriptive_stats(Checker& check)
{
    // The original site geometry and raw repeated measurements are not
    // published, so distribution handling is pinned by closed forms and a
    // seeded draw at the published scale instead.
    const std::vector<double> pair{1.0, 3.0};
    const DescriptiveStats p = descriptive_stats(pair);
    check.require(p.mean == 2.0, "mean of {1,3} is " + str(p.mean));
    check.require(p.sample_std == std::sqrt(2.0), "std of {1,3} is " + str(p.sample_std));

    const std::vector<double> constant{5.0, 5.0, 5.0};
    const DescriptiveStats c = descriptive_stats(constant);
    check.require(c.mean == 5.0 && c.sample_std == 0.0, "stats of {5,5,5} wrong");

    TestRng rng(0xacc6u);
    std::vector<double> draws;
    for (int i = 0; i < 50; ++i) {
        draws.push_back(rng.normal(18.62, 1.26));
    }
    const DescriptiveStats s = descriptive_stats(draws);
    check.require(std::abs(s.mean - 18.62) < 0.6, "seeded mean " + str(s.mean));
    check.require(std::abs(s.sample_std - 1.26) < 0.5, "seeded std " + str(s.sample_std));
}

// ---- criterion 7: grid performance and worker determinism ----------------------

void criterion_grid_performance(Checker& check)
{
    FloorPlan plan;
    plan.name = "200 random walls";
    plan.categories.push_back(WallCategory{"w", 6.5, 0.2, "test"});
    TestRng rng(0xacc7u);
    for (int i = 0; i < 200; ++i) {
        Point2D a{rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)};
        Point2D b{a.x + rng.uniform(-12.0, 12.0), a.y + rng.uniform(-12.0, 12.0)};
        if (a.x == b.x && a.y == b.y) {
            b.x += 1.0;
        }
        plan.walls.push_back(Wall{a, b, "w"});
    }
    const ModelParams params{40.0, 2.5, 6.5, 1.0};
    const GridSpec spec{0.0, 0.0, 100.0, 100.0, 0.2}; // 500 x 500 cells

    const auto started = std::chrono::steady_clock::now();
    const CoverageGrid serial = generate_grid(plan, {50.0, 50.0}, params, Model::simplified, spec,
                                              GridQuantity::path_loss_db, std::nullopt, 1);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    check.require(serial.n_cols == 500 && serial.n_rows == 500,
                  "grid is " + std::to_string(serial.n_cols) + " x " + std::to_string(serial.n_rows));
    check.require(elapsed <= 5.0, "single-threaded grid took " + str(elapsed) + " s");

    const std::string serial_csv = export_csv(serial);
    const std::string serial_pgm = export_pgm(serial, 40.0, 120.0);
    for (unsigned workers : {2u, 8u}) {
        const CoverageGrid parallel = generate_grid(plan, {50.0, 50.0}, params, Model::simplified,
                                                    spec, GridQuantity::path_loss_db, std::nullopt,
                                                    workers);
        check.require(parallel.values == serial.values,
                      "raster differs with " + std::to_string(workers) + " workers");
        check.require(export_csv(parallel) == serial_csv,
                      "CSV bytes differ with " + std::to_string(workers) + " workers");
        check.require(export_pgm(parallel, 40.0, 120.0) == serial_pgm,
                      "PGM bytes differ with " + std::to_string(workers) + " workers");
    }
}

// ---- criterion 8: lossless IO round-trips and golden PGMs -----------------------

void criterion_io_roundtrips(Checker& check)
{
    const FloorPlan plan = load_plan(read_file(kDataDir + "/demo_plan.json"));
    const FloorPlan plan2 = load_plan(save_plan(plan));
    bool plan_equal = plan.name == plan2.name && plan.frequency_hz == plan2.frequency_hz &&
                      plan.categories.size() == plan2.categories.size() &&
                      plan.walls.size() == plan2.walls.size();
    for (std::size_t i = 0; plan_equal && i < plan.walls.size(); ++i) {
        plan_equal = std::abs(plan.walls[i].a.x - plan2.walls[i].a.x) <= 1e-9 &&
                     std::abs(plan.walls[i].a.y - plan2.walls[i].a.y) <= 1e-9 &&
                     std::abs(plan.walls[i].b.x - plan2.walls[i].b.x) <= 1e-9 &&
                     std::abs(plan.walls[i].b.y - plan2.walls[i].b.y) <= 1e-9 &&
                     plan.walls[i].category == plan2.walls[i].category;
    }
    for (std::size_t i = 0; plan_equal && i < plan.categories.size(); ++i) {
        plan_equal = plan.categories[i].id == plan2.categories[i].id &&
                     std::abs(plan.categories[i].loss_db - plan2.categories[i].loss_db) <= 1e-9 &&
                     std::abs(plan.categories[i].thickness_m - plan2.categories[i].thickness_m) <= 1e-9;
    }
    check.require(plan_equal, "plan round-trip drifted");

    const ModelParams params = load_params(read_file(kDataDir + "/demo_params.json"));
    const ModelParams params2 = load_params(save_params(params));
    check.require(std::abs(params.pl0_db - params2.pl0_db) <= 1e-9 &&
                      std::abs(params.n - params2.n) <= 1e-9 &&
                      std::abs(params.pl_w_db - params2.pl_w_db) <= 1e-9,
                  "params round-trip drifted");

    const auto measurements = load_measurements(read_file(kDataDir + "/demo_measurements.csv"));
    const auto measurements2 = load_measurements(save_measurements(measurements));
    bool meas_equal = measurements.size() == measurements2.size();
    for (std::size_t i = 0; meas_equal && i < measurements.size(); ++i) {
        meas_equal = std::abs(measurements[i].tx.x - measurements2[i].tx.x) <= 1e-9 &&
                     std::abs(measurements[i].rx.x - measurements2[i].rx.x) <= 1e-9 &&
                     std::abs(*measurements[i].pl_db - *measurements2[i].pl_db) <= 1e-9;
    }
    check.require(meas_equal, "measurement round-trip drifted");

    const auto samples = load_wall_samples(read_file(kDataDir + "/cement_mortar_wall_loss.csv"));
    const auto samples2 = load_wall_samples(save_wall_samples(samples));
    bool samples_equal = samples.size() == samples2.size();
    for (std::size_t i = 0; samples_equal && i < samples.size(); ++i) {
        samples_equal = samples[i].m_walls == samples2[i].m_walls &&
                        std::abs(samples[i].loss_db - samples2[i].loss_db) <= 1e-9;
    }
    check.require(samples_equal, "wall-sample round-trip drifted");

    // Golden PGM bytes for the three clamp cases.
    CoverageGrid grid;
    grid.spec = GridSpec{0, 0, 2, 2, 1.0};
    grid.tx = Point2D{0, 0};
    grid.quantity = GridQuantity::path_loss_db;
    grid.n_cols = 2;
    grid.n_rows = 2;
    const struct {
        double value;
        const char* golden;
    } cases[] = {{40.0, "clamp_lo.pgm"}, {120.0, "clamp_hi.pgm"}, {80.0, "clamp_mid.pgm"}};
    for (const auto& c : cases) {
        grid.values.assign(4, c.value);
        const std::string expected = read_file(kGoldenDir + "/" + c.golden);
        check.require(export_pgm(grid, 40.0, 120.0) == expected,
                      std::string("PGM bytes differ from golden ") + c.golden);
    }
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Checker&)> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "wall-loss fit reproduces 17.78 dB/wall from the bundled dataset in under 1 s",
         criterion_wall_fit},
        {2, "predicted cumulative wall losses stay within one standard deviation per row",
         criterion_model_consistency},
        {3, "simplified equals one_slope at M=0 and cost231 with uniform losses (1000 draws, 1e-9)",
         criterion_model_identities},
        {4, "wall crossings match the exact-rational oracle on 1000 cases, symmetric and monotone",
         criterion_geometry_oracle},
        {5, "joint fit recovers noiseless parameters to 1e-6; two-point fit exact to 1e-9",
         criterion_calibration_recovery},
        {6, "descriptive statistics pass closed-form and seeded-draw checks",
         criterion_descriptive_stats},
        {7, "500x500 grid over 200 walls in under 5 s, bit-identical across 1/2/8 workers",
         criterion_grid_performance},
        {8, "plan/params/measurement round-trips are lossless; PGM output matches goldens",
         criterion_io_roundtrips},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        Checker check;
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        if (check.ok()) {
            std::printf("PASS  %d  %s\n", criterion.id, criterion.title);
        } else {
            ++failures;
            std::printf("FAIL  %d  %s\n      %s\n", criterion.id, criterion.title,
                        check.first_failure().c_str());
        }
    }
    return failures == 0 ? 0 : 1;
}
