#pragma once

// File formats shared by the library and the CLI.
//
// Series tables: one series per row, comma, tab or whitespace separated
// (detected from the first non-empty line), no header. An optional leading
// column holds an id or a class label. NaN/inf cells are rejected.
//
// Shapelet sets: JSON
//   {
//     "shapelets": [ {"name": "increase", "values": [1,2,3,4], "is_flat": false}, ... ],
//     "m0": 0.0,
//     "beta": 2.302585          // a number, or the string "inf"
//     // or instead of "beta":
//     "beta_rule": {"kind": "median_max_slope", "p_floor": 0.1}
//   }
// A bare array of shapelet objects is also accepted and implies the
// median_max_slope rule with p_floor 0.1.

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dtws/measures.hpp"
#include "dtws/series.hpp"
#include "dtws/shapelet.hpp"

namespace dtws::io {

enum class LeadingColumn { none, id, label };

LeadingColumn parse_leading_column(std::string_view name);

struct Table {
    std::vector<std::string> keys;  ///< leading column, empty when none
    std::vector<std::vector<double>> rows;
};

/// Throws parse_error naming the 1-based row and column, or empty_file.
Table parse_table(std::string_view text, bool leading_key);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Ids come from the leading column in id mode, otherwise from the row
/// index (0-based).
std::vector<TimeSeries> parse_series(std::string_view text, LeadingColumn mode);
std::vector<TimeSeries> load_series(const std::filesystem::path& path, LeadingColumn mode);

/// 9 significant digits.
std::string format_number(double v);

/// `id,x0,x1,...` per row.
std::string series_csv(const std::vector<TimeSeries>& series);

/// Header row `id,<ids...>`, then one `<id>,<values...>` row per series.
std::string distance_matrix_csv(const DistanceMatrix& d);
DistanceMatrix parse_distance_matrix_csv(std::string_view text);

struct LabeledMatrix {
    std::vector<std::string> row_names;
    Eigen::MatrixXd values;
};

/// Header row `shapelet,0,1,...`, one row per SSR dimension.
std::string ssr_csv(const SsrMatrix& m, const std::vector<std::string>& dimension_names);
LabeledMatrix parse_ssr_csv(std::string_view text);

struct ShapeletConfig {
    std::shared_ptr<const ShapeletSet> set;
    FlatnessParams flatness;
    /// When set, beta must be estimated from the data with p_floor.
    bool estimate_beta = true;
    double p_floor = 0.1;

    /// Fixed flatness, or the median-max-slope estimate on `data`.
    [[nodiscard]] FlatnessParams resolve(const std::vector<TimeSeries>& data) const;
};

ShapeletConfig parse_shapelet_config(std::string_view json_text);
ShapeletConfig load_shapelet_config(const std::filesystem::path& path);
/// The default four shapelets with the median-max-slope rule.
ShapeletConfig default_shapelet_config();
std::string shapelet_config_json(const ShapeletConfig& cfg);

}  // namespace dtws::io
