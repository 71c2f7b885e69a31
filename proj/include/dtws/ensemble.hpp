#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dtws/measures.hpp"

namespace dtws {

/// Which time inside an SSR window stands for the event it encodes.
enum class Anchor {
    start,   ///< first sample of the window
    center,  ///< sample floor((w - 1) / 2) into the window
};

std::string_view anchor_name(Anchor a) noexcept;
Anchor parse_anchor(std::string_view name);

/// Event time (1-based) of SSR column `column` (0-based).
double column_time(std::size_t column, std::size_t window, Anchor anchor);

struct EnsemblePoint {
    double t_bar = 0.0;  ///< mean event time on the 1..T grid
    double a_bar = 0.0;  ///< mean event value
    std::size_t alignment_id = 0;  ///< base SSR column of the event
};

struct EnsembleResult {
    /// Sorted by t_bar (stable in alignment_id).
    std::vector<EnsemblePoint> points;
    /// Points interpolated onto 1..T of the base series, flat beyond the ends.
    TimeSeries interpolated;
    std::string base_id;
    std::size_t base_index = 0;

    [[nodiscard]] double peak() const;
};

/// Pointwise mean; throws length_mismatch for unequal lengths.
TimeSeries mean_ensemble(const std::vector<TimeSeries>& series);

/// Aligns every series to the base with cfg's DTW+S variant and averages
/// the timing and value of each base column's event across series.
/// Several columns aligned to one base column are averaged first.
EnsembleResult dtw_s_ensemble(const std::vector<TimeSeries>& series, std::size_t base_index,
                              const MeasureConfig& cfg, Anchor anchor = Anchor::center);

std::vector<EnsembleResult> ensemble_all_bases(const std::vector<TimeSeries>& series,
                                               const MeasureConfig& cfg, Anchor anchor = Anchor::center,
                                               Execution exec = Execution::parallel);

/// Linear interpolation of (t, a) points on 1..length; coincident t values
/// are averaged first and the ends are extended flat.
std::vector<double> interpolate_points(const std::vector<EnsemblePoint>& points, std::size_t length);

}  // namespace dtws
