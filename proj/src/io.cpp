#include "dtws/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "dtws/error.hpp"

namespace dtws::io {

namespace {

using nlohmann::json;

enum class Delimiter { comma, tab, whitespace };

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        const std::size_t stop = end == std::string_view::npos ? text.size() : end;
        lines.push_back(text.substr(start, stop - start));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return lines;
}

Delimiter detect(std::string_view line) {
    if (line.find('\t') != std::string_view::npos) return Delimiter::tab;
    if (line.find(',') != std::string_view::npos) return Delimiter::comma;
    return Delimiter::whitespace;
}

std::vector<std::string_view> split(std::string_view line, Delimiter delim) {
    std::vector<std::string_view> out;
    if (delim == Delimiter::whitespace) {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            const std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
            if (i > start) out.push_back(line.substr(start, i - start));
        }
        return out;
    }
    const char sep = delim == Delimiter::tab ? '\t' : ',';
    std::size_t start = 0;
    while (true) {
        const std::size_t end = line.find(sep, start);
        out.push_back(trim(line.substr(start, end == std::string_view::npos ? end : end - start)));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

[[noreturn]] void parse_fail(std::size_t row, std::size_t col, const std::string& why) {
    throw Error(Errc::parse_error,
                "row " + std::to_string(row) + ", column " + std::to_string(col) + ": " + why);
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
    if (cell.empty()) parse_fail(row, col, "empty cell");
    std::string_view digits = cell;
    if (digits.front() == '+') digits.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        parse_fail(row, col, "'" + std::string(cell) + "' is not a number");
    }
    if (!std::isfinite(v)) parse_fail(row, col, "non-finite value '" + std::string(cell) + "'");
    return v;
}

json shapelet_json(const Shapelet& s) {
    return json{{"name", s.name}, {"values", s.values}, {"is_flat", s.is_flat}};
}

}  // namespace

LeadingColumn parse_leading_column(std::string_view name) {
    if (name == "none") return LeadingColumn::none;
    if (name == "id") return LeadingColumn::id;
    if (name == "label") return LeadingColumn::label;
    throw Error(Errc::invalid_argument, "leading column mode must be none, id or label");
}

Table parse_table(std::string_view text, bool leading_key) {
    Table table;
    std::optional<Delimiter> delim;
    const auto lines = lines_of(text);
    for (std::size_t r = 0; r < lines.size(); ++r) {
        const std::string_view line = trim(lines[r]);
        if (line.empty()) continue;
        if (!delim) delim = detect(line);
        const auto fields = split(line, *delim);
        const std::size_t row = r + 1;
        std::size_t first = 0;
        if (leading_key) {
            if (fields.empty() || fields.front().empty()) parse_fail(row, 1, "missing leading field");
            table.keys.emplace_back(fields.front());
            first = 1;
        }
        if (fields.size() <= first) parse_fail(row, first + 1, "row has no values");
        std::vector<double> values;
        values.reserve(fields.size() - first);
        for (std::size_t c = first; c < fields.size(); ++c) values.push_back(parse_cell(fields[c], row, c + 1));
        table.rows.push_back(std::move(values));
    }
    if (table.rows.empty()) throw Error(Errc::empty_file, "no data rows");
    return table;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::invalid_argument, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::invalid_argument, "cannot write '" + path.string() + "'");
    out << contents;
}

std::vector<TimeSeries> parse_series(std::string_view text, LeadingColumn mode) {
    Table t = parse_table(text, mode != LeadingColumn::none);
    std::vector<TimeSeries> out;
    out.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        TimeSeries s;
        s.id = mode == LeadingColumn::id ? t.keys[i] : std::to_string(i);
        s.values = std::move(t.rows[i]);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<TimeSeries> load_series(const std::filesystem::path& path, LeadingColumn mode) {
    return parse_series(read_file(path), mode);
}

std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string series_csv(const std::vector<TimeSeries>& series) {
    std::string out;
    for (const auto& s : series) {
        out += s.id;
        for (double v : s.values) {
            out += ',';
            out += format_number(v);
        }
        out += '\n';
    }
    return out;
}

std::string distance_matrix_csv(const DistanceMatrix& d) {
    std::string out = "id";
    for (const auto& id : d.ids) out += "," + id;
    out += '\n';
    for (std::size_t i = 0; i < d.size(); ++i) {
        out += d.ids[i];
        for (std::size_t j = 0; j < d.size(); ++j) out += "," + format_number(d(i, j));
        out += '\n';
    }
    return out;
}

DistanceMatrix parse_distance_matrix_csv(std::string_view text) {
    const auto lines = lines_of(text);
    std::size_t header = 0;
    while (header < lines.size() && trim(lines[header]).empty()) ++header;
    if (header == lines.size()) throw Error(Errc::empty_file, "empty distance matrix");
    auto names = split(trim(lines[header]), Delimiter::comma);
    if (names.empty() || names.front() != "id") parse_fail(header + 1, 1, "expected 'id' header");

    DistanceMatrix d;
    for (std::size_t c = 1; c < names.size(); ++c) d.ids.emplace_back(names[c]);
    const auto body_start = static_cast<std::size_t>(lines[header].data() - text.data()) +
                            lines[header].size() + 1;
    if (body_start >= text.size()) throw Error(Errc::parse_error, "distance matrix has no rows");
    const Table body = parse_table(text.substr(body_start), true);
    const std::size_t n = d.ids.size();
    if (body.rows.size() != n) {
        throw Error(Errc::parse_error, "distance matrix has " + std::to_string(body.rows.size()) +
                                           " rows for " + std::to_string(n) + " ids");
    }
    d.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (body.rows[i].size() != n) parse_fail(header + 2 + i, 1, "row width does not match header");
        for (std::size_t j = 0; j < n; ++j) {
            d.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = body.rows[i][j];
        }
    }
    return d;
}

std::string ssr_csv(const SsrMatrix& m, const std::vector<std::string>& dimension_names) {
    std::string out = "shapelet";
    for (std::size_t c = 0; c < m.cols(); ++c) out += "," + std::to_string(c);
    out += '\n';
    for (std::size_t r = 0; r < m.dims(); ++r) {
        out += r < dimension_names.size() ? dimension_names[r] : std::to_string(r);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out += "," + format_number(m.columns(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
        }
        out += '\n';
    }
    return out;
}

LabeledMatrix parse_ssr_csv(std::string_view text) {
    const std::size_t eol = text.find('\n');
    if (eol == std::string_view::npos) throw Error(Errc::empty_file, "SSR CSV has no body");
    const Table body = parse_table(text.substr(eol + 1), true);
    LabeledMatrix out;
    out.row_names = body.keys;
    const std::size_t cols = body.rows.front().size();
    out.values.resize(static_cast<Eigen::Index>(body.rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < body.rows.size(); ++r) {
        if (body.rows[r].size() != cols) parse_fail(r + 2, 1, "ragged SSR row");
        for (std::size_t c = 0; c < cols; ++c) {
            out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = body.rows[r][c];
        }
    }
    return out;
}

FlatnessParams ShapeletConfig::resolve(const std::vector<TimeSeries>& data) const {
    if (!estimate_beta) return flatness;
    const ShapeletSet& s = set ? *set : default_shapelet_set();
    FlatnessParams p = dtws::estimate_beta(data, s, p_floor);
    p.m0 = flatness.m0;
    return p;
}

ShapeletConfig parse_shapelet_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse_error, std::string("shapelet JSON: ") + e.what());
    }
    try {
        const json& list = doc.is_array() ? doc : doc.at("shapelets");
        std::vector<Shapelet> shapelets;
        for (const auto& item : list) {
            Shapelet s;
            s.name = item.at("name").get<std::string>();
            s.values = item.at("values").get<std::vector<double>>();
            s.is_flat = item.contains("is_flat")
                            ? item.at("is_flat").get<bool>()
                            : Shapelet::make(s.name, s.values).is_flat;
            shapelets.push_back(std::move(s));
        }
        ShapeletConfig cfg;
        cfg.set = std::make_shared<const ShapeletSet>(validate_shapelet_set(shapelets));
        if (doc.is_object()) {
            cfg.flatness.m0 = doc.value("m0", 0.0);
            if (cfg.flatness.m0 < 0.0) throw Error(Errc::invalid_argument, "m0 must be >= 0");
            if (doc.contains("beta")) {
                const json& b = doc.at("beta");
                if (b.is_string()) {
                    if (b.get<std::string>() != "inf") {
                        throw Error(Errc::invalid_argument, "beta must be a number or \"inf\"");
                    }
                    cfg.flatness.beta = FlatnessParams::infinite_beta;
                } else {
                    cfg.flatness.beta = b.get<double>();
                    if (!(cfg.flatness.beta >= 0.0)) throw Error(Errc::invalid_argument, "beta must be >= 0");
                }
                cfg.estimate_beta = false;
            } else if (doc.contains("beta_rule")) {
                const json& rule = doc.at("beta_rule");
                const std::string kind =
                    rule.is_string() ? rule.get<std::string>() : rule.value("kind", "median_max_slope");
                if (kind != "median_max_slope") {
                    throw Error(Errc::invalid_argument, "unknown beta_rule '" + kind + "'");
                }
                if (rule.is_object()) cfg.p_floor = rule.value("p_floor", 0.1);
            }
        }
        return cfg;
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, std::string("shapelet JSON: ") + e.what());
    }
}

ShapeletConfig load_shapelet_config(const std::filesystem::path& path) {
    return parse_shapelet_config(read_file(path));
}

ShapeletConfig default_shapelet_config() {
    ShapeletConfig cfg;
    cfg.set = std::make_shared<const ShapeletSet>(default_shapelet_set());
    return cfg;
}

std::string shapelet_config_json(const ShapeletConfig& cfg) {
    const ShapeletSet& s = cfg.set ? *cfg.set : default_shapelet_set();
    json list = json::array();
    for (const auto& sh : s.non_flat()) list.push_back(shapelet_json(sh));
    list.push_back(shapelet_json(s.flat()));
    json doc{{"shapelets", list}, {"m0", cfg.flatness.m0}};
    if (cfg.estimate_beta) {
        doc["beta_rule"] = {{"kind", "median_max_slope"}, {"p_floor", cfg.p_floor}};
    } else if (cfg.flatness.beta_is_infinite()) {
        doc["beta"] = "inf";
    } else {
        doc["beta"] = cfg.flatness.beta;
    }
    return doc.dump(2) + "\n";
}

}  // namespace dtws::io
