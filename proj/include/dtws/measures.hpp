#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dtws/dtw.hpp"
#include "dtws/series.hpp"
#include "dtws/shapelet.hpp"

namespace dtws {

enum class MeasureKind {
    dtw_plus_s,            ///< DTW over SSR columns, squared Euclidean cost
    dtw_plus_s_cosine,     ///< DTW over SSR columns, cosine distance
    dtw_plus_s_corr_only,  ///< as dtw_plus_s with the flat row dropped
    dtw_raw,               ///< DTW on the raw values
    dtw_znorm,             ///< DTW after z-normalization
    euclid_znorm,          ///< squared Euclidean after z-normalization, no warping
    ssr_euclid,            ///< column-wise squared SSR distance, no warping
};

std::string_view measure_name(MeasureKind kind) noexcept;
/// Throws invalid_argument for unknown names.
MeasureKind parse_measure(std::string_view name);
const std::vector<MeasureKind>& all_measures();

[[nodiscard]] bool uses_shapelets(MeasureKind kind) noexcept;
[[nodiscard]] bool warps(MeasureKind kind) noexcept;

struct MeasureConfig {
    MeasureKind kind = MeasureKind::dtw_plus_s;
    Window tau = Window::unbounded();
    /// Null selects the default four-shapelet set.
    std::shared_ptr<const ShapeletSet> shapelets;
    FlatnessParams flatness;
    std::size_t smoothing_window = 1;
    /// Per-sample cost for the raw and z-normalized DTW baselines.
    CostKind scalar_cost = CostKind::squared_euclidean;
    /// Raise tau to the length difference instead of failing with
    /// infeasible_window.
    bool clamp_window = false;

    [[nodiscard]] const ShapeletSet& shapelet_set() const {
        return shapelets ? *shapelets : default_shapelet_set();
    }
};

/// A series after the configured preprocessing: smoothed, then either
/// transformed to SSR columns or kept as (possibly z-normalized) scalars.
struct PreparedSeries {
    std::string id;
    std::vector<double> values;
    Eigen::MatrixXd ssr;

    [[nodiscard]] std::size_t length() const noexcept {
        return ssr.size() > 0 ? static_cast<std::size_t>(ssr.cols()) : values.size();
    }
};

PreparedSeries prepare(const TimeSeries& series, const MeasureConfig& cfg);

double prepared_distance(const PreparedSeries& a, const PreparedSeries& b, const MeasureConfig& cfg);
/// Throws invalid_argument for the non-warping kinds.
AlignmentResult prepared_alignment(const PreparedSeries& a, const PreparedSeries& b,
                                   const MeasureConfig& cfg);

/// DTW between the SSR matrices of a and b; cfg.kind must be one of the
/// three dtw_plus_s variants. Path indices are SSR columns.
AlignmentResult dtw_plus_s(const TimeSeries& a, const TimeSeries& b, const MeasureConfig& cfg);

double distance(const TimeSeries& a, const TimeSeries& b, const MeasureConfig& cfg);

struct DistanceMatrix {
    std::vector<std::string> ids;
    Eigen::MatrixXd values;

    [[nodiscard]] std::size_t size() const noexcept { return ids.size(); }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
};

enum class Execution { serial, parallel };

/// Called after each finished pair with (done, total). Invocations are
/// serialized; the callback needs no locking of its own.
using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Symmetric, zero-diagonal; only the upper triangle is computed. A failing
/// pair is reported as "pair (i, j) [id_i, id_j]: <reason>"; with several
/// failures the first pair in row-major order is reported.
DistanceMatrix distance_matrix(const std::vector<TimeSeries>& series, const MeasureConfig& cfg,
                               Execution exec = Execution::parallel, const ProgressFn& progress = {});

}  // namespace dtws
