#include "dtws/ensemble.hpp"

#include <algorithm>
#include <optional>

#include "dtws/error.hpp"

namespace dtws {

std::string_view anchor_name(Anchor a) noexcept { return a == Anchor::start ? "start" : "center"; }

Anchor parse_anchor(std::string_view name) {
    if (name == "start") return Anchor::start;
    if (name == "center") return Anchor::center;
    throw Error(Errc::invalid_argument, "anchor must be start or center");
}

double column_time(std::size_t column, std::size_t window, Anchor anchor) {
    const std::size_t offset = anchor == Anchor::center ? (window - 1) / 2 : 0;
    return static_cast<double>(column + offset + 1);
}

double EnsembleResult::peak() const {
    if (interpolated.values.empty()) return 0.0;
    return *std::max_element(interpolated.values.begin(), interpolated.values.end());
}

TimeSeries mean_ensemble(const std::vector<TimeSeries>& series) {
    if (series.empty()) throw Error(Errc::invalid_argument, "mean ensemble of no series");
    const std::size_t n = series.front().size();
    TimeSeries out;
    out.id = "mean_ensemble";
    out.time_origin = series.front().time_origin;
    out.values.assign(n, 0.0);
    for (const auto& s : series) {
        if (s.size() != n) {
            throw Error(Errc::length_mismatch, "series '" + s.id + "' has length " +
                                                   std::to_string(s.size()) + ", expected " +
                                                   std::to_string(n));
        }
        for (std::size_t t = 0; t < n; ++t) out.values[t] += s.values[t];
    }
    for (double& v : out.values) v /= static_cast<double>(series.size());
    return out;
}

std::vector<double> interpolate_points(const std::vector<EnsemblePoint>& points, std::size_t length) {
    std::vector<double> out(length, 0.0);
    if (points.empty()) return out;

    std::vector<EnsemblePoint> sorted = points;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const EnsemblePoint& a, const EnsemblePoint& b) { return a.t_bar < b.t_bar; });
    std::vector<double> ts, as;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < sorted.size() && sorted[j].t_bar == sorted[i].t_bar) sum += sorted[j++].a_bar;
        ts.push_back(sorted[i].t_bar);
        as.push_back(sum / static_cast<double>(j - i));
        i = j;
    }

    std::size_t k = 0;
    for (std::size_t idx = 0; idx < length; ++idx) {
        const double t = static_cast<double>(idx + 1);
        if (t <= ts.front()) {
            out[idx] = as.front();
        } else if (t >= ts.back()) {
            out[idx] = as.back();
        } else {
            while (ts[k + 1] < t) ++k;
            const double span = ts[k + 1] - ts[k];
            const double frac = (t - ts[k]) / span;
            out[idx] = as[k] + frac * (as[k + 1] - as[k]);
        }
    }
    return out;
}

EnsembleResult dtw_s_ensemble(const std::vector<TimeSeries>& series, std::size_t base_index,
                              const MeasureConfig& cfg, Anchor anchor) {
    if (cfg.kind != MeasureKind::dtw_plus_s && cfg.kind != MeasureKind::dtw_plus_s_cosine &&
        cfg.kind != MeasureKind::dtw_plus_s_corr_only) {
        throw Error(Errc::invalid_argument, "ensembles align with a dtw_plus_s measure");
    }
    if (series.size() < 2) throw Error(Errc::invalid_argument, "an ensemble needs at least two series");
    if (base_index >= series.size()) {
        throw Error(Errc::bad_base_index, "base index " + std::to_string(base_index) + " out of range 0.." +
                                              std::to_string(series.size() - 1));
    }
    const std::size_t w = cfg.shapelet_set().window();
    for (const auto& s : series) {
        if (s.size() < w) {
            throw Error(Errc::series_too_short, "series '" + s.id + "' is shorter than the window");
        }
    }

    const TimeSeries& base = series[base_index];
    const PreparedSeries base_p = prepare(base, cfg);
    const std::size_t columns = base_p.length();

    std::vector<double> t_sum(columns, 0.0), a_sum(columns, 0.0);
    for (std::size_t c = 0; c < columns; ++c) {
        const double t = column_time(c, w, anchor);
        t_sum[c] = t;
        a_sum[c] = base.values[static_cast<std::size_t>(t) - 1];
    }

    std::vector<double> t_acc(columns), a_acc(columns), hits(columns);
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i == base_index) continue;
        const TimeSeries& other = series[i];
        const AlignmentResult al = prepared_alignment(base_p, prepare(other, cfg), cfg);
        std::fill(t_acc.begin(), t_acc.end(), 0.0);
        std::fill(a_acc.begin(), a_acc.end(), 0.0);
        std::fill(hits.begin(), hits.end(), 0.0);
        for (const auto& step : al.path) {
            const double t = column_time(step.j, w, anchor);
            t_acc[step.i] += t;
            a_acc[step.i] += other.values[static_cast<std::size_t>(t) - 1];
            hits[step.i] += 1.0;
        }
        // Every base column appears on the path at least once.
        for (std::size_t c = 0; c < columns; ++c) {
            t_sum[c] += t_acc[c] / hits[c];
            a_sum[c] += a_acc[c] / hits[c];
        }
    }

    EnsembleResult result;
    result.base_id = base.id;
    result.base_index = base_index;
    const auto n = static_cast<double>(series.size());
    result.points.reserve(columns);
    for (std::size_t c = 0; c < columns; ++c) result.points.push_back({t_sum[c] / n, a_sum[c] / n, c});
    std::stable_sort(result.points.begin(), result.points.end(),
                     [](const EnsemblePoint& a, const EnsemblePoint& b) { return a.t_bar < b.t_bar; });

    result.interpolated.id = "dtw_s_ensemble[" + base.id + "]";
    result.interpolated.time_origin = base.time_origin;
    result.interpolated.values = interpolate_points(result.points, base.size());
    return result;
}

std::vector<EnsembleResult> ensemble_all_bases(const std::vector<TimeSeries>& series,
                                               const MeasureConfig& cfg, Anchor anchor, Execution exec) {
    std::vector<EnsembleResult> out(series.size());
    if (exec == Execution::serial) {
        for (std::size_t b = 0; b < series.size(); ++b) out[b] = dtw_s_ensemble(series, b, cfg, anchor);
        return out;
    }
    std::optional<Error> failure;
    const auto n = static_cast<std::ptrdiff_t>(series.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t b = 0; b < n; ++b) {
        try {
            out[static_cast<std::size_t>(b)] = dtw_s_ensemble(series, static_cast<std::size_t>(b), cfg, anchor);
        } catch (const Error& e) {
#pragma omp critical(dtws_ensemble_error)
            if (!failure) failure.emplace(e);
        }
    }
    if (failure) throw *failure;
    return out;
}

}  // namespace dtws
