#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dtws/shapelet.hpp"

namespace dtws {

struct TimeSeries {
    std::string id;
    std::vector<double> values;
    long time_origin = 0;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] std::span<const double> view() const noexcept { return values; }
};

/// d x (T - w + 1) matrix; column t is the SSR of values[t .. t+w-1].
struct SsrMatrix {
    Eigen::MatrixXd columns;
    std::size_t window = 0;
    std::string source_id;

    [[nodiscard]] std::size_t cols() const noexcept { return static_cast<std::size_t>(columns.cols()); }
    [[nodiscard]] std::size_t dims() const noexcept { return static_cast<std::size_t>(columns.rows()); }
};

/// Centered moving average clipped at the series bounds, so the output has
/// the same length. For even windows the extra sample is taken on the right.
TimeSeries moving_average(const TimeSeries& series, std::size_t window);

/// Converts a smoothing fraction of the series length to a window size:
/// round(fraction * T), at least 1.
std::size_t smoothing_window_from_fraction(double fraction, std::size_t length);

SsrMatrix ssr_matrix(const TimeSeries& series, const ShapeletSet& set, const FlatnessParams& params);

/// Largest mean absolute slope over all w-length windows of the series.
double max_window_slope(std::span<const double> values, std::size_t w);

/// m0 = 0 and beta = -ln(p_floor) / theta, where theta is the median over
/// series of each series' maximum window slope. theta == 0 yields the
/// infinite-beta sentinel.
FlatnessParams estimate_beta(const std::vector<TimeSeries>& train, const ShapeletSet& set,
                             double p_floor = 0.1);

/// Zero mean, unit population variance. Constant series map to zeros.
TimeSeries znormalize(const TimeSeries& series);

}  // namespace dtws
