#include "dtws/series.hpp"

#include <algorithm>
#include <cmath>

#include "dtws/error.hpp"

namespace dtws {

TimeSeries moving_average(const TimeSeries& series, std::size_t window) {
    if (window == 0) throw Error(Errc::invalid_argument, "smoothing window must be >= 1");
    TimeSeries out = series;
    if (window == 1 || series.values.empty()) return out;

    const std::size_t n = series.size();
    const std::size_t left = (window - 1) / 2;
    const std::size_t right = window - 1 - left;

    // Prefix sums keep this O(T) for the wide windows used in grid search.
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + series.values[i];

    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t lo = t >= left ? t - left : 0;
        const std::size_t hi = std::min(n - 1, t + right);
        out.values[t] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
    }
    // A constant input must come back bit-identical; prefix sums can drift.
    if (std::all_of(series.values.begin(), series.values.end(),
                    [&](double v) { return v == series.values.front(); })) {
        return series;
    }
    return out;
}

std::size_t smoothing_window_from_fraction(double fraction, std::size_t length) {
    if (!(fraction >= 0.0)) throw Error(Errc::invalid_argument, "smoothing fraction must be >= 0");
    const auto w = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(length)));
    return std::max<std::size_t>(1, w);
}

SsrMatrix ssr_matrix(const TimeSeries& series, const ShapeletSet& set, const FlatnessParams& params) {
    const std::size_t w = set.window();
    if (series.size() < w) {
        throw Error(Errc::series_too_short, "series '" + series.id + "' has length " +
                                                std::to_string(series.size()) +
                                                ", shorter than the window " + std::to_string(w));
    }
    const std::size_t cols = series.size() - w + 1;
    SsrMatrix m;
    m.window = w;
    m.source_id = series.id;
    m.columns.resize(static_cast<Eigen::Index>(set.dims()), static_cast<Eigen::Index>(cols));
    const std::span<const double> v = series.view();
    for (std::size_t t = 0; t < cols; ++t) {
        m.columns.col(static_cast<Eigen::Index>(t)) = ssr_vector(v.subspan(t, w), set, params);
    }
    return m;
}

double max_window_slope(std::span<const double> values, std::size_t w) {
    if (values.size() < w || w < 2) {
        throw Error(Errc::series_too_short, "series shorter than the window");
    }
    double best = 0.0;
    for (std::size_t t = 0; t + w <= values.size(); ++t) {
        best = std::max(best, mean_abs_slope(values.subspan(t, w)));
    }
    return best;
}

FlatnessParams estimate_beta(const std::vector<TimeSeries>& train, const ShapeletSet& set,
                             double p_floor) {
    if (train.empty()) throw Error(Errc::empty_training_set, "cannot estimate beta without data");
    if (!(p_floor > 0.0 && p_floor < 1.0)) {
        throw Error(Errc::invalid_argument, "p_floor must lie in (0, 1)");
    }
    std::vector<double> maxima;
    maxima.reserve(train.size());
    for (const auto& s : train) {
        if (s.size() < set.window()) {
            throw Error(Errc::series_too_short,
                        "series '" + s.id + "' is shorter than the shapelet window");
        }
        maxima.push_back(max_window_slope(s.view(), set.window()));
    }
    std::sort(maxima.begin(), maxima.end());
    const std::size_t n = maxima.size();
    const double theta = n % 2 == 1 ? maxima[n / 2] : 0.5 * (maxima[n / 2 - 1] + maxima[n / 2]);

    FlatnessParams params;
    params.m0 = 0.0;
    params.beta = theta > 0.0 ? -std::log(p_floor) / theta : FlatnessParams::infinite_beta;
    return params;
}

TimeSeries znormalize(const TimeSeries& series) {
    TimeSeries out = series;
    const std::size_t n = series.size();
    if (n == 0) return out;
    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : series.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    if (var == 0.0) {
        std::fill(out.values.begin(), out.values.end(), 0.0);
        return out;
    }
    const double sd = std::sqrt(var);
    for (double& v : out.values) v = (v - mean) / sd;
    return out;
}

}  // namespace dtws
