#include "dtws/measures.hpp"

#include <array>

#include "dtws/error.hpp"
#include "dtws/kernels.hpp"

namespace dtws {

namespace {

struct NamedMeasure {
    MeasureKind kind;
    std::string_view name;
};

constexpr std::array<NamedMeasure, 7> measure_table{{
    {MeasureKind::dtw_plus_s, "dtw_plus_s"},
    {MeasureKind::dtw_plus_s_cosine, "dtw_plus_s_cosine"},
    {MeasureKind::dtw_plus_s_corr_only, "dtw_plus_s_corr_only"},
    {MeasureKind::dtw_raw, "dtw_raw"},
    {MeasureKind::dtw_znorm, "dtw_znorm"},
    {MeasureKind::euclid_znorm, "euclid_znorm"},
    {MeasureKind::ssr_euclid, "ssr_euclid"},
}};

bool is_ssr_dtw(MeasureKind k) {
    return k == MeasureKind::dtw_plus_s || k == MeasureKind::dtw_plus_s_cosine ||
           k == MeasureKind::dtw_plus_s_corr_only;
}

Window effective_window(const MeasureConfig& cfg, std::size_t n, std::size_t m) {
    if (!cfg.clamp_window || !cfg.tau.tau) return cfg.tau;
    const std::size_t gap = n > m ? n - m : m - n;
    return Window::band(std::max(*cfg.tau.tau, gap));
}

void require_equal_length(const PreparedSeries& a, const PreparedSeries& b, MeasureKind kind) {
    if (a.length() != b.length()) {
        throw Error(Errc::length_mismatch, std::string(measure_name(kind)) +
                                               " needs equal lengths, got " +
                                               std::to_string(a.length()) + " and " +
                                               std::to_string(b.length()));
    }
}

}  // namespace

std::string_view measure_name(MeasureKind kind) noexcept {
    for (const auto& m : measure_table) {
        if (m.kind == kind) return m.name;
    }
    return "unknown";
}

MeasureKind parse_measure(std::string_view name) {
    for (const auto& m : measure_table) {
        if (m.name == name) return m.kind;
    }
    throw Error(Errc::invalid_argument, "unknown measure '" + std::string(name) + "'");
}

const std::vector<MeasureKind>& all_measures() {
    static const std::vector<MeasureKind> kinds = [] {
        std::vector<MeasureKind> v;
        for (const auto& m : measure_table) v.push_back(m.kind);
        return v;
    }();
    return kinds;
}

bool uses_shapelets(MeasureKind kind) noexcept {
    return is_ssr_dtw(kind) || kind == MeasureKind::ssr_euclid;
}

bool warps(MeasureKind kind) noexcept {
    return kind != MeasureKind::euclid_znorm && kind != MeasureKind::ssr_euclid;
}

PreparedSeries prepare(const TimeSeries& series, const MeasureConfig& cfg) {
    const TimeSeries smoothed = moving_average(series, cfg.smoothing_window);
    PreparedSeries p;
    p.id = series.id;
    switch (cfg.kind) {
        case MeasureKind::dtw_plus_s:
        case MeasureKind::dtw_plus_s_cosine:
        case MeasureKind::ssr_euclid:
            p.ssr = ssr_matrix(smoothed, cfg.shapelet_set(), cfg.flatness).columns;
            break;
        case MeasureKind::dtw_plus_s_corr_only: {
            const Eigen::MatrixXd full = ssr_matrix(smoothed, cfg.shapelet_set(), cfg.flatness).columns;
            p.ssr = full.bottomRows(full.rows() - 1);
            break;
        }
        case MeasureKind::dtw_raw:
            p.values = smoothed.values;
            break;
        case MeasureKind::dtw_znorm:
        case MeasureKind::euclid_znorm:
            p.values = znormalize(smoothed).values;
            break;
    }
    return p;
}

AlignmentResult prepared_alignment(const PreparedSeries& a, const PreparedSeries& b,
                                   const MeasureConfig& cfg) {
    const Window window = effective_window(cfg, a.length(), b.length());
    switch (cfg.kind) {
        case MeasureKind::dtw_plus_s:
        case MeasureKind::dtw_plus_s_corr_only:
            return dtw(a.ssr, b.ssr, CostKind::squared_euclidean, window);
        case MeasureKind::dtw_plus_s_cosine:
            return dtw(a.ssr, b.ssr, CostKind::cosine_distance, window);
        case MeasureKind::dtw_raw:
        case MeasureKind::dtw_znorm:
            return dtw(a.values, b.values, cfg.scalar_cost, window);
        case MeasureKind::euclid_znorm:
        case MeasureKind::ssr_euclid:
            break;
    }
    throw Error(Errc::invalid_argument,
                std::string(measure_name(cfg.kind)) + " does not produce an alignment");
}

double prepared_distance(const PreparedSeries& a, const PreparedSeries& b, const MeasureConfig& cfg) {
    const Window window = effective_window(cfg, a.length(), b.length());
    switch (cfg.kind) {
        case MeasureKind::dtw_plus_s:
        case MeasureKind::dtw_plus_s_corr_only:
            return dtw_distance(a.ssr, b.ssr, CostKind::squared_euclidean, window);
        case MeasureKind::dtw_plus_s_cosine:
            return dtw_distance(a.ssr, b.ssr, CostKind::cosine_distance, window);
        case MeasureKind::dtw_raw:
        case MeasureKind::dtw_znorm:
            return dtw_distance(a.values, b.values, cfg.scalar_cost, window);
        case MeasureKind::euclid_znorm: {
            require_equal_length(a, b, cfg.kind);
            double s = 0.0;
            for (std::size_t i = 0; i < a.values.size(); ++i) {
                s += (a.values[i] - b.values[i]) * (a.values[i] - b.values[i]);
            }
            return s;
        }
        case MeasureKind::ssr_euclid:
            require_equal_length(a, b, cfg.kind);
            return (a.ssr - b.ssr).squaredNorm();
    }
    return 0.0;
}

AlignmentResult dtw_plus_s(const TimeSeries& a, const TimeSeries& b, const MeasureConfig& cfg) {
    if (!is_ssr_dtw(cfg.kind)) {
        throw Error(Errc::invalid_argument, "dtw_plus_s called with measure " +
                                                std::string(measure_name(cfg.kind)));
    }
    return prepared_alignment(prepare(a, cfg), prepare(b, cfg), cfg);
}

double distance(const TimeSeries& a, const TimeSeries& b, const MeasureConfig& cfg) {
    return prepared_distance(prepare(a, cfg), prepare(b, cfg), cfg);
}

DistanceMatrix distance_matrix(const std::vector<TimeSeries>& series, const MeasureConfig& cfg,
                               Execution exec, const ProgressFn& progress) {
    if (series.size() < 2) {
        throw Error(Errc::invalid_argument, "a distance matrix needs at least two series");
    }
    DistanceMatrix d;
    d.ids.reserve(series.size());
    for (const auto& s : series) d.ids.push_back(s.id);
    const auto prepared = kernels::prepare_all(series, cfg, exec);
    d.values = kernels::pairwise(prepared, cfg, exec, progress);
    return d;
}

}  // namespace dtws
