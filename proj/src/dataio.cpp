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

#include "mwpl/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "mwpl/errors.hpp"
#include "numfmt.hpp"

namespace mwpl {

namespace {

using nlohmann::json;
using detail::format_double;

const json& require_key(const json& obj, const std::string& path, const char* key)
{
    if (!obj.is_object()) {
        throw InputError(path + ": expected an object");
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw InputError(path + "." + key + ": missing required key");
    }
    return *it;
}

double as_number(const json& value, const std::string& path)
{
    if (!value.is_number()) {
        throw InputError(path + ": expected a number");
    }
    return value.get<double>();
}

std::string as_string(const json& value, const std::string& path)
{
    if (!value.is_string()) {
        throw InputError(path + ": expected a string");
    }
    return value.get<std::string>();
}

const json& as_array(const json& value, const std::string& path)
{
    if (!value.is_array()) {
        throw InputError(path + ": expected an array");
    }
    return value;
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

// ---- CSV ----------------------------------------------------------------

std::vector<std::string> split_fields(std::string_view line)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            return fields;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

bool is_blank(std::string_view line)
{
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

double parse_double(std::string_view text, const std::string& where)
{
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end || text.empty()) {
        throw InputError(where + ": invalid number '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text, const std::string& where)
{
    int value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end || text.empty()) {
        throw InputError(where + ": invalid integer '" + std::string(text) + "'");
    }
    return value;
}

// Header-indexed CSV rows; all formats here are plain numeric CSV without
// quoting. Lines are 1-based in messages, '\r' line ends are tolerated.
class CsvReader {
public:
    CsvReader(std::string_view text, std::span<const std::string_view> required,
              std::span<const std::string_view> optional)
    {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t eol = text.find('\n', pos);
            std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                                   : eol - pos);
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
            if (!line.empty() && line.back() == '\r') {
                line.remove_suffix(1);
            }
            ++line_no;
            if (is_blank(line)) {
                continue;
            }
            if (columns_.empty()) {
                parse_header(line, required, optional);
                continue;
            }
            std::vector<std::string> fields = split_fields(line);
            if (fields.size() != columns_.size()) {
                throw InputError("line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(columns_.size()) + " fields, got " +
                                 std::to_string(fields.size()));
            }
            rows_.push_back(Row{line_no, std::move(fields)});
        }
        if (columns_.empty()) {
            throw InputError("empty input: missing CSV header");
        }
    }

    struct Row {
        std::size_t line_no = 0;
        std::vector<std::string> fields;
    };

    const std::vector<Row>& rows() const { return rows_; }

    bool has_column(std::string_view name) const { return columns_.count(std::string(name)) != 0; }

    // Empty cell or absent column -> nullopt.
    std::optional<std::string_view> cell(const Row& row, std::string_view name) const
    {
        const auto it = columns_.find(std::string(name));
        if (it == columns_.end()) {
            return std::nullopt;
        }
        const std::string& value = row.fields[it->second];
        if (value.empty()) {
            return std::nullopt;
        }
        return std::string_view(value);
    }

    std::string_view required_cell(const Row& row, std::string_view name) const
    {
        const auto value = cell(row, name);
        if (!value) {
            throw InputError("line " + std::to_string(row.line_no) + ": column '" +
                             std::string(name) + "' must not be empty");
        }
        return *value;
    }

    static std::string locate(const Row& row, std::string_view column)
    {
        return "line " + std::to_string(row.line_no) + ", column '" + std::string(column) + "'";
    }

private:
    void parse_header(std::string_view line, std::span<const std::string_view> required,
                      std::span<const std::string_view> optional)
    {
        const std::vector<std::string> names = split_fields(line);
        for (std::size_t i = 0; i < names.size(); ++i) {
            const std::string& name = names[i];
            const bool known = std::find(required.begin(), required.end(), name) != required.end() ||
                               std::find(optional.begin(), optional.end(), name) != optional.end();
            if (!known) {
                throw InputError("line 1: unknown column '" + name + "'");
            }
            if (!columns_.emplace(name, i).second) {
                throw InputError("line 1: duplicate column '" + name + "'");
            }
        }
        for (const std::string_view name : required) {
            if (!has_column(name)) {
                throw InputError("line 1: missing required column '" + std::string(name) + "'");
            }
        }
    }

    std::map<std::string, std::size_t> columns_;
    std::vector<Row> rows_;
};

} // namespace

// ---- floor plan ----------------------------------------------------------

FloorPlan load_plan(std::string_view json_text)
{
    const json root = parse_json(json_text);
    FloorPlan plan;
    plan.name = as_string(require_key(root, "plan", "name"), "plan.name");
    if (const auto it = root.find("frequency_hz"); it != root.end()) {
        plan.frequency_hz = as_number(*it, "plan.frequency_hz");
    }

    const json& categories = as_array(require_key(root, "plan", "categories"), "plan.categories");
    for (std::size_t i = 0; i < categories.size(); ++i) {
        const std::string path = "plan.categories[" + std::to_string(i) + "]";
        const json& c = categories[i];
        WallCategory category;
        category.id = as_string(require_key(c, path, "id"), path + ".id");
        category.loss_db = as_number(require_key(c, path, "loss_db"), path + ".loss_db");
        category.thickness_m = as_number(require_key(c, path, "thickness_m"), path + ".thickness_m");
        category.material = as_string(require_key(c, path, "material"), path + ".material");
        plan.categories.push_back(std::move(category));
    }

    const json& walls = as_array(require_key(root, "plan", "walls"), "plan.walls");
    for (std::size_t i = 0; i < walls.size(); ++i) {
        const std::string path = "plan.walls[" + std::to_string(i) + "]";
        const json& w = walls[i];
        Wall wall;
        wall.a.x = as_number(require_key(w, path, "x1"), path + ".x1");
        wall.a.y = as_number(require_key(w, path, "y1"), path + ".y1");
        wall.b.x = as_number(require_key(w, path, "x2"), path + ".x2");
        wall.b.y = as_number(require_key(w, path, "y2"), path + ".y2");
        wall.category = as_string(require_key(w, path, "category"), path + ".category");
        plan.walls.push_back(std::move(wall));
    }

    validate_plan(plan);
    return plan;
}

std::string save_plan(const FloorPlan& plan)
{
    json root;
    root["name"] = plan.name;
    if (plan.frequency_hz) {
        root["frequency_hz"] = *plan.frequency_hz;
    }
    root["categories"] = json::array();
    for (const WallCategory& c : plan.categories) {
        root["categories"].push_back({{"id", c.id},
                                      {"loss_db", c.loss_db},
                                      {"thickness_m", c.thickness_m},
                                      {"material", c.material}});
    }
    root["walls"] = json::array();
    for (const Wall& w : plan.walls) {
        root["walls"].push_back({{"x1", w.a.x},
                                 {"y1", w.a.y},
                                 {"x2", w.b.x},
                                 {"y2", w.b.y},
                                 {"category", w.category}});
    }
    return root.dump(2) + "\n";
}

// ---- model params ----------------------------------------------------------

ModelParams load_params(std::string_view json_text)
{
    const json root = parse_json(json_text);
    ModelParams params;
    params.pl0_db = as_number(require_key(root, "params", "pl0_db"), "params.pl0_db");
    params.n = as_number(require_key(root, "params", "n"), "params.n");
    params.pl_w_db = as_number(require_key(root, "params", "pl_w_db"), "params.pl_w_db");
    params.d_ref_m = 1.0;
    validate_params(params);
    return params;
}

std::string save_params(const ModelParams& params)
{
    json root;
    root["pl0_db"] = params.pl0_db;
    root["n"] = params.n;
    root["pl_w_db"] = params.pl_w_db;
    return root.dump(2) + "\n";
}

// ---- measurements ----------------------------------------------------------

std::vector<Measurement> load_measurements(std::string_view csv_text)
{
    static constexpr std::string_view kRequired[] = {"tx_x", "tx_y", "rx_x", "rx_y"};
    static constexpr std::string_view kOptional[] = {"rss_dbm", "pl_db", "tx_power_dbm", "m_override"};
    const CsvReader reader(csv_text, kRequired, kOptional);
    if (!reader.has_column("rss_dbm") && !reader.has_column("pl_db")) {
        throw InputError("line 1: need an rss_dbm or pl_db column");
    }

    std::vector<Measurement> measurements;
    measurements.reserve(reader.rows().size());
    for (const auto& row : reader.rows()) {
        Measurement m;
        m.tx.x = parse_double(reader.required_cell(row, "tx_x"), CsvReader::locate(row, "tx_x"));
        m.tx.y = parse_double(reader.required_cell(row, "tx_y"), CsvReader::locate(row, "tx_y"));
        m.rx.x = parse_double(reader.required_cell(row, "rx_x"), CsvReader::locate(row, "rx_x"));
        m.rx.y = parse_double(reader.required_cell(row, "rx_y"), CsvReader::locate(row, "rx_y"));
        if (const auto cell = reader.cell(row, "rss_dbm")) {
            m.rss_dbm = parse_double(*cell, CsvReader::locate(row, "rss_dbm"));
        }
        if (const auto cell = reader.cell(row, "pl_db")) {
            m.pl_db = parse_double(*cell, CsvReader::locate(row, "pl_db"));
        }
        if (const auto cell = reader.cell(row, "tx_power_dbm")) {
            m.tx_power_dbm = parse_double(*cell, CsvReader::locate(row, "tx_power_dbm"));
        }
        if (const auto cell = reader.cell(row, "m_override")) {
            m.m_override = parse_int(*cell, CsvReader::locate(row, "m_override"));
        }
        try {
            validate_measurement(m, measurements.size());
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(row.line_no) + ": " + e.what());
        }
        measurements.push_back(m);
    }
    return measurements;
}

std::string save_measurements(std::span<const Measurement> measurements)
{
    const bool any_rss = std::any_of(measurements.begin(), measurements.end(),
                                     [](const Measurement& m) { return m.rss_dbm.has_value(); });
    const bool any_pl = std::any_of(measurements.begin(), measurements.end(),
                                    [](const Measurement& m) { return m.pl_db.has_value(); });
    const bool any_power = std::any_of(measurements.begin(), measurements.end(),
                                       [](const Measurement& m) { return m.tx_power_dbm.has_value(); });
    const bool any_override = std::any_of(measurements.begin(), measurements.end(),
                                          [](const Measurement& m) { return m.m_override.has_value(); });

    std::string out = "tx_x,tx_y,rx_x,rx_y";
    if (any_rss) {
        out += ",rss_dbm";
    }
    if (any_pl) {
        out += ",pl_db";
    }
    if (any_power) {
        out += ",tx_power_dbm";
    }
    if (any_override) {
        out += ",m_override";
    }
    out += '\n';
    for (const Measurement& m : measurements) {
        out += format_double(m.tx.x) + ',' + format_double(m.tx.y) + ',' + format_double(m.rx.x) +
               ',' + format_double(m.rx.y);
        if (any_rss) {
            out += ',';
            if (m.rss_dbm) {
                out += format_double(*m.rss_dbm);
            }
        }
        if (any_pl) {
            out += ',';
            if (m.pl_db) {
                out += format_double(*m.pl_db);
            }
        }
        if (any_power) {
            out += ',';
            if (m.tx_power_dbm) {
                out += format_double(*m.tx_power_dbm);
            }
        }
        if (any_override) {
            out += ',';
            if (m.m_override) {
                out += std::to_string(*m.m_override);
            }
        }
        out += '\n';
    }
    return out;
}

// ---- wall-loss samples -------------------------------------------------------

std::vector<WallLossSample> load_wall_samples(std::string_view csv_text)
{
    static constexpr std::string_view kRequired[] = {"m_walls", "loss_db"};
    static constexpr std::string_view kOptional[] = {"std_db", "distance_m"};
    const CsvReader reader(csv_text, kRequired, kOptional);

    std::vector<WallLossSample> samples;
    samples.reserve(reader.rows().size());
    for (const auto& row : reader.rows()) {
        WallLossSample s;
        s.m_walls = parse_int(reader.required_cell(row, "m_walls"), CsvReader::locate(row, "m_walls"));
        if (s.m_walls < 1) {
            throw InputError("line " + std::to_string(row.line_no) + ": m_walls must be >= 1");
        }
        s.loss_db = parse_double(reader.required_cell(row, "loss_db"), CsvReader::locate(row, "loss_db"));
        if (!std::isfinite(s.loss_db)) {
            throw InputError("line " + std::to_string(row.line_no) + ": non-finite loss_db");
        }
        if (const auto cell = reader.cell(row, "std_db")) {
            s.std_db = parse_double(*cell, CsvReader::locate(row, "std_db"));
        }
        if (const auto cell = reader.cell(row, "distance_m")) {
            s.distance_m = parse_double(*cell, CsvReader::locate(row, "distance_m"));
        }
        samples.push_back(s);
    }
    return samples;
}

std::string save_wall_samples(std::span<const WallLossSample> samples)
{
    const bool any_std = std::any_of(samples.begin(), samples.end(),
                                     [](const WallLossSample& s) { return s.std_db.has_value(); });
    const bool any_distance = std::any_of(samples.begin(), samples.end(),
                                          [](const WallLossSample& s) { return s.distance_m.has_value(); });
    std::string out = "m_walls,loss_db";
    if (any_std) {
        out += ",std_db";
    }
    if (any_distance) {
        out += ",distance_m";
    }
    out += '\n';
    for (const WallLossSample& s : samples) {
        out += std::to_string(s.m_walls) + ',' + format_double(s.loss_db);
        if (any_std) {
            out += ',';
            if (s.std_db) {
                out += format_double(*s.std_db);
            }
        }
        if (any_distance) {
            out += ',';
            if (s.distance_m) {
                out += format_double(*s.distance_m);
            }
        }
        out += '\n';
    }
    return out;
}

std::vector<DistanceLossPoint> load_distance_loss_points(std::string_view csv_text)
{
    static constexpr std::string_view kRequired[] = {"distance_m", "pl_db"};
    const CsvReader reader(csv_text, kRequired, {});

    std::vector<DistanceLossPoint> points;
    points.reserve(reader.rows().size());
    for (const auto& row : reader.rows()) {
        DistanceLossPoint p;
        p.distance_m = parse_double(reader.required_cell(row, "distance_m"),
                                    CsvReader::locate(row, "distance_m"));
        p.pl_db = parse_double(reader.required_cell(row, "pl_db"), CsvReader::locate(row, "pl_db"));
        if (!(std::isfinite(p.distance_m) && p.distance_m > 0.0)) {
            throw InputError("line " + std::to_string(row.line_no) + ": distance_m must be > 0");
        }
        points.push_back(p);
    }
    return points;
}

// ---- files -------------------------------------------------------------------

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw InputError("cannot read file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view content)
{
    std::ofstream stream(path, std::ios::binary);
    if (!stream) {
        throw InputError("cannot write file '" + path.string() + "'");
    }
    stream.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!stream) {
        throw InputError("failed writing file '" + path.string() + "'");
    }
}

} // namespace mwpl
