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

// mwpl command-line front end. Human-readable results go to stdout with
// dB values at two decimals; machine-readable files are written only via
// --out and keep full precision. Diagnostics go to stderr. Exit codes:
// 0 success, 2 bad input or usage, 1 internal failure.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mwpl/calibration.hpp"
#include "mwpl/coverage.hpp"
#include "mwpl/dataio.hpp"
#include "mwpl/errors.hpp"
#include "mwpl/evaluation.hpp"
#include "mwpl/floorplan.hpp"
#include "mwpl/pathloss.hpp"

namespace {

std::string fixed(double value, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::vector<double> parse_number_list(const std::string& text, std::size_t count,
                                      const std::string& flag)
{
    std::vector<double> numbers;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string field =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        double value = 0.0;
        const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
        if (result.ec != std::errc() || result.ptr != field.data() + field.size() || field.empty()) {
            throw mwpl::InputError(flag + ": invalid number '" + field + "'");
        }
        numbers.push_back(value);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (numbers.size() != count) {
        throw mwpl::InputError(flag + ": expected " + std::to_string(count) +
                               " comma-separated values");
    }
    return numbers;
}

mwpl::Point2D parse_point(const std::string& text, const std::string& flag)
{
    const std::vector<double> v = parse_number_list(text, 2, flag);
    return mwpl::Point2D{v[0], v[1]};
}

mwpl::FloorPlan load_plan_file(const std::string& path)
{
    try {
        return mwpl::load_plan(mwpl::read_file(path));
    } catch (const mwpl::InputError& e) {
        throw mwpl::InputError(path + ": " + e.what());
    }
}

mwpl::ModelParams load_params_file(const std::string& path)
{
    try {
        return mwpl::load_params(mwpl::read_file(path));
    } catch (const mwpl::InputError& e) {
        throw mwpl::InputError(path + ": " + e.what());
    }
}

std::vector<mwpl::Measurement> load_measurements_file(const std::string& path)
{
    try {
        return mwpl::load_measurements(mwpl::read_file(path));
    } catch (const mwpl::InputError& e) {
        throw mwpl::InputError(path + ": " + e.what());
    }
}

void print_warnings(const std::vector<std::string>& warnings)
{
    for (const std::string& w : warnings) {
        std::cerr << "warning: " << w << '\n';
    }
}

void warn_if_extrapolated(const mwpl::PathLossBreakdown& breakdown)
{
    if (breakdown.below_reference_distance) {
        std::cerr << "warning: distance below the 1 m reference; log-distance term extrapolated\n";
    }
}

// ---- predict ----------------------------------------------------------------

struct PredictOptions {
    std::string plan_path;
    std::string params_path;
    std::string model;
    std::string tx;
    std::string rx;
    std::optional<double> tx_power_dbm;
};

void run_predict(const PredictOptions& opt)
{
    const mwpl::FloorPlan plan = load_plan_file(opt.plan_path);
    const mwpl::ModelParams params = load_params_file(opt.params_path);
    const mwpl::Model model = mwpl::model_from_string(opt.model);
    const mwpl::Point2D tx = parse_point(opt.tx, "--tx");
    const mwpl::Point2D rx = parse_point(opt.rx, "--rx");

    const mwpl::CrossingReport crossings = mwpl::wall_crossings(plan, tx, rx);
    print_warnings(crossings.warnings);

    const mwpl::PathLossBreakdown breakdown = mwpl::predict_link(plan, tx, rx, params, model);
    warn_if_extrapolated(breakdown);

    std::cout << "model = " << mwpl::to_string(model) << '\n';
    std::cout << "distance_m = " << fixed(mwpl::straight_line_distance(tx, rx), 3) << '\n';
    std::cout << "m_walls = " << crossings.m_total << '\n';
    std::cout << "free_space_db = " << fixed(breakdown.free_space_term_db, 2) << '\n';
    std::cout << "distance_db = " << fixed(breakdown.distance_term_db, 2) << '\n';
    std::cout << "wall_db = " << fixed(breakdown.wall_term_db, 2) << '\n';
    std::cout << "total_db = " << fixed(breakdown.total_db, 2) << '\n';
    if (opt.tx_power_dbm) {
        std::cout << "rss_dbm = " << fixed(mwpl::predict_rss_dbm(*opt.tx_power_dbm, breakdown.total_db), 2)
                  << '\n';
    }
}

// ---- fit --------------------------------------------------------------------

struct FitOptions {
    std::string input_path;
    std::string measurements_path;
    std::string plan_path;
    std::string out_path;
};

void print_fit_tail(const mwpl::FitResult& fit)
{
    std::cout << "rmse_db = " << fixed(fit.rmse_db, 2) << '\n';
    std::cout << "n_points = " << fit.n_points << '\n';
    std::cout << "residuals_db =";
    for (double r : fit.residuals_db) {
        std::cout << ' ' << fixed(r, 2);
    }
    std::cout << '\n';
}

void write_fitted_params(const std::string& out_path, const mwpl::FitResult& fit)
{
    if (out_path.empty()) {
        return;
    }
    if (!(fit.params.n > 0.0) || fit.params.pl_w_db < 0.0) {
        std::cerr << "warning: fitted parameters violate model constraints "
                     "(n must be > 0, pl_w_db >= 0); writing them anyway\n";
    }
    mwpl::write_file(out_path, mwpl::save_params(fit.params));
    std::cerr << "wrote " << out_path << '\n';
}

void run_fit_walls(const FitOptions& opt)
{
    std::vector<mwpl::WallLossSample> samples;
    try {
        samples = mwpl::load_wall_samples(mwpl::read_file(opt.input_path));
    } catch (const mwpl::InputError& e) {
        throw mwpl::InputError(opt.input_path + ": " + e.what());
    }
    const mwpl::FitResult fit = mwpl::fit_wall_loss(samples);
    std::cout << "pl_w_db = " << fixed(fit.params.pl_w_db, 2) << '\n';
    print_fit_tail(fit);
    if (!opt.out_path.empty()) {
        std::cerr << "note: pl0_db and n are not estimated by this fit; "
                     "free-space defaults written alongside pl_w_db\n";
    }
    write_fitted_params(opt.out_path, fit);
}

void run_fit_logdist(const FitOptions& opt)
{
    std::vector<mwpl::DistanceLossPoint> points;
    try {
        points = mwpl::load_distance_loss_points(mwpl::read_file(opt.input_path));
    } catch (const mwpl::InputError& e) {
        throw mwpl::InputError(opt.input_path + ": " + e.what());
    }
    const mwpl::FitResult fit = mwpl::fit_log_distance(points);
    std::cout << "pl0_db = " << fixed(fit.params.pl0_db, 2) << '\n';
    std::cout << "n = " << fixed(fit.params.n, 2) << '\n';
    print_fit_tail(fit);
    if (!opt.out_path.empty()) {
        std::cerr << "note: pl_w_db is not estimated by this fit; "
                     "0 written alongside pl0_db and n\n";
    }
    write_fitted_params(opt.out_path, fit);
}

void run_fit_joint(const FitOptions& opt)
{
    const std::vector<mwpl::Measurement> measurements = load_measurements_file(opt.measurements_path);
    const mwpl::FloorPlan plan = load_plan_file(opt.plan_path);
    const mwpl::FitResult fit = mwpl::fit_joint(measurements, plan);
    std::cout << "pl0_db = " << fixed(fit.params.pl0_db, 2) << '\n';
    std::cout << "n = " << fixed(fit.params.n, 2) << '\n';
    std::cout << "pl_w_db = " << fixed(fit.params.pl_w_db, 2) << '\n';
    print_fit_tail(fit);
    write_fitted_params(opt.out_path, fit);
}

// ---- compare ------------------------------------------------------------------

struct CompareOptions {
    std::string measurements_path;
    std::string plan_path;
    std::string params_path;
    std::string model;
    std::string out_path;
};

void run_compare(const CompareOptions& opt)
{
    const std::vector<mwpl::Measurement> measurements = load_measurements_file(opt.measurements_path);
    const mwpl::FloorPlan plan = load_plan_file(opt.plan_path);
    const mwpl::ModelParams params = load_params_file(opt.params_path);
    const mwpl::Model model = mwpl::model_from_string(opt.model);

    const mwpl::ComparisonReport report = mwpl::compare(measurements, plan, params, model);

    std::printf("point  predicted_db  observed_db  residual_db  m_walls  distance_m\n");
    for (std::size_t i = 0; i < report.per_point.size(); ++i) {
        const mwpl::ComparisonPoint& p = report.per_point[i];
        std::printf("%5zu  %12.2f  %11.2f  %11.2f  %7zu  %10.3f\n", i, p.predicted_db,
                    p.observed_db, p.residual_db, p.m_walls, p.distance_m);
    }
    std::cout << "rmse_db = " << fixed(report.rmse_db, 2) << '\n';
    std::cout << "mean_error_db = " << fixed(report.mean_error_db, 2) << '\n';
    std::cout << "max_abs_error_db = " << fixed(report.max_abs_error_db, 2) << '\n';

    if (!opt.out_path.empty()) {
        std::string csv = "point,predicted_db,observed_db,residual_db,m_walls,distance_m\n";
        char buf[256];
        for (std::size_t i = 0; i < report.per_point.size(); ++i) {
            const mwpl::ComparisonPoint& p = report.per_point[i];
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%zu,%.17g\n", i, p.predicted_db,
                          p.observed_db, p.residual_db, p.m_walls, p.distance_m);
            csv += buf;
        }
        std::snprintf(buf, sizeof(buf),
                      "# model: %s\n# n_points: %zu\n# rmse_db: %.17g\n# mean_error_db: %.17g\n"
                      "# max_abs_error_db: %.17g\n",
                      std::string(mwpl::to_string(report.model)).c_str(), report.per_point.size(),
                      report.rmse_db, report.mean_error_db, report.max_abs_error_db);
        csv += buf;
        mwpl::write_file(opt.out_path, csv);
        std::cerr << "wrote " << opt.out_path << '\n';
    }
}

// ---- coverage -------------------------------------------------------------------

struct CoverageOptions {
    std::string plan_path;
    std::string params_path;
    std::string model;
    std::string tx;
    std::string bbox;
    double resolution_m = 0.0;
    std::string quantity;
    std::optional<double> tx_power_dbm;
    std::string out_base;
    std::optional<double> lo;
    std::optional<double> hi;
};

void run_coverage(const CoverageOptions& opt)
{
    const mwpl::FloorPlan plan = load_plan_file(opt.plan_path);
    const mwpl::ModelParams params = load_params_file(opt.params_path);
    const mwpl::Model model = mwpl::model_from_string(opt.model);
    const mwpl::Point2D tx = parse_point(opt.tx, "--tx");
    const std::vector<double> box = parse_number_list(opt.bbox, 4, "--bbox");
    const mwpl::GridSpec spec{box[0], box[1], box[2], box[3], opt.resolution_m};
    const mwpl::GridQuantity quantity = mwpl::grid_quantity_from_string(opt.quantity);

    const mwpl::CoverageGrid grid =
        mwpl::generate_grid(plan, tx, params, model, spec, quantity, opt.tx_power_dbm);

    // PGM shade bounds; defaults chosen per quantity.
    const bool is_rss = quantity == mwpl::GridQuantity::rss_dbm;
    const double lo = opt.lo.value_or(is_rss ? -100.0 : 40.0);
    const double hi = opt.hi.value_or(is_rss ? -20.0 : 120.0);

    const std::string csv_path = opt.out_base + ".csv";
    const std::string pgm_path = opt.out_base + ".pgm";
    mwpl::write_file(csv_path, mwpl::export_csv(grid));
    mwpl::write_file(pgm_path, mwpl::export_pgm(grid, lo, hi));

    const auto [min_it, max_it] = std::minmax_element(grid.values.begin(), grid.values.end());
    std::cout << "grid = " << grid.n_cols << " x " << grid.n_rows << " cells\n";
    std::cout << "value_min = " << fixed(*min_it, 2) << '\n';
    std::cout << "value_max = " << fixed(*max_it, 2) << '\n';
    std::cout << "wrote " << csv_path << '\n';
    std::cout << "wrote " << pgm_path << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Indoor multiwall path-loss toolkit: predict, calibrate, map"};
    app.require_subcommand(1);

    PredictOptions predict_opt;
    CLI::App* predict = app.add_subcommand("predict", "Path loss for one tx-rx link");
    predict->add_option("--plan", predict_opt.plan_path, "Floor-plan JSON file")->required();
    predict->add_option("--params", predict_opt.params_path, "Model-parameter JSON file")->required();
    predict->add_option("--model", predict_opt.model, "one_slope, cost231 or simplified")->required();
    predict->add_option("--tx", predict_opt.tx, "Transmitter position X,Y in meters")->required();
    predict->add_option("--rx", predict_opt.rx, "Receiver position X,Y in meters")->required();
    predict->add_option("--tx-power", predict_opt.tx_power_dbm,
                        "Transmit power in dBm; adds an RSS line to the output");
    predict->callback([&predict_opt] { run_predict(predict_opt); });

    FitOptions fit_walls_opt;
    FitOptions fit_logdist_opt;
    FitOptions fit_joint_opt;
    CLI::App* fit = app.add_subcommand("fit", "Least-squares parameter calibration");
    fit->require_subcommand(1);
    CLI::App* fit_walls = fit->add_subcommand("walls", "Per-wall loss from wall-count/loss samples");
    fit_walls->add_option("--input", fit_walls_opt.input_path, "CSV: m_walls,loss_db[,std_db][,distance_m]")
        ->required();
    fit_walls->add_option("--out", fit_walls_opt.out_path, "Write fitted parameters to this JSON file");
    fit_walls->callback([&fit_walls_opt] { run_fit_walls(fit_walls_opt); });

    CLI::App* fit_logdist = fit->add_subcommand("logdist", "PL0 and n from distance/loss points");
    fit_logdist->add_option("--input", fit_logdist_opt.input_path, "CSV: distance_m,pl_db")->required();
    fit_logdist->add_option("--out", fit_logdist_opt.out_path, "Write fitted parameters to this JSON file");
    fit_logdist->callback([&fit_logdist_opt] { run_fit_logdist(fit_logdist_opt); });

    CLI::App* fit_joint = fit->add_subcommand("joint", "PL0, n and per-wall loss from measurements");
    fit_joint->add_option("--measurements", fit_joint_opt.measurements_path, "Measurement CSV file")
        ->required();
    fit_joint->add_option("--plan", fit_joint_opt.plan_path, "Floor-plan JSON file")->required();
    fit_joint->add_option("--out", fit_joint_opt.out_path, "Write fitted parameters to this JSON file");
    fit_joint->callback([&fit_joint_opt] { run_fit_joint(fit_joint_opt); });

    CompareOptions compare_opt;
    CLI::App* compare = app.add_subcommand("compare", "Model predictions vs measurements");
    compare->add_option("--measurements", compare_opt.measurements_path, "Measurement CSV file")
        ->required();
    compare->add_option("--plan", compare_opt.plan_path, "Floor-plan JSON file")->required();
    compare->add_option("--params", compare_opt.params_path, "Model-parameter JSON file")->required();
    compare->add_option("--model", compare_opt.model, "one_slope, cost231 or simplified")->required();
    compare->add_option("--out", compare_opt.out_path, "Write the per-point report to this CSV file");
    compare->callback([&compare_opt] { run_compare(compare_opt); });

    CoverageOptions coverage_opt;
    CLI::App* coverage = app.add_subcommand("coverage", "Raster prediction over a bounding box");
    coverage->add_option("--plan", coverage_opt.plan_path, "Floor-plan JSON file")->required();
    coverage->add_option("--params", coverage_opt.params_path, "Model-parameter JSON file")->required();
    coverage->add_option("--model", coverage_opt.model, "one_slope, cost231 or simplified")->required();
    coverage->add_option("--tx", coverage_opt.tx, "Transmitter position X,Y in meters")->required();
    coverage->add_option("--bbox", coverage_opt.bbox, "Bounding box x0,y0,x1,y1 in meters")->required();
    coverage->add_option("--res", coverage_opt.resolution_m, "Cell size in meters")->required();
    coverage->add_option("--quantity", coverage_opt.quantity, "pl (path loss) or rss")->required();
    coverage->add_option("--tx-power", coverage_opt.tx_power_dbm, "Transmit power in dBm (required for rss)");
    coverage->add_option("--out", coverage_opt.out_base, "Output base path; writes BASE.csv and BASE.pgm")
        ->required();
    coverage->add_option("--lo", coverage_opt.lo, "PGM shade lower bound (default: 40 dB pl, -100 dBm rss)");
    coverage->add_option("--hi", coverage_opt.hi, "PGM shade upper bound (default: 120 dB pl, -20 dBm rss)");
    coverage->callback([&coverage_opt] { run_coverage(coverage_opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help exits cleanly, bad usage is 2
    } catch (const mwpl::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
