#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dtws/measures.hpp"

namespace dtws {

/// Class labels are kept verbatim as text; they are opaque to the
/// classifier.
struct LabeledDataset {
    std::string name;
    std::vector<std::string> labels;
    std::vector<TimeSeries> series;

    [[nodiscard]] std::size_t size() const noexcept { return series.size(); }
    [[nodiscard]] std::size_t max_length() const noexcept;
};

/// UCR layout: one instance per row, class label first, comma/tab/space
/// delimited (auto-detected).
LabeledDataset parse_ucr(std::string_view text, std::string name = {});
LabeledDataset load_ucr(const std::filesystem::path& path);

struct Classification {
    std::vector<std::string> predictions;
    /// Index of the chosen training instance per test instance.
    std::vector<std::size_t> neighbors;
    double error = 0.0;
};

/// 1-NN with ties going to the lowest training index.
Classification one_nn(const LabeledDataset& train, const LabeledDataset& test, const MeasureConfig& cfg,
                      Execution exec = Execution::parallel);

/// argmin per row; with exclude_diagonal the entry (i, i) is skipped
/// (leave-one-out on a square train x train matrix).
std::vector<std::size_t> nearest_indices(const Eigen::MatrixXd& d, bool exclude_diagonal);

struct HyperGrid {
    std::vector<double> tau_fractions{0.0, 0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07};
    /// 0 means no smoothing.
    std::vector<double> smooth_fractions{0.0, 0.1, 0.2, 0.4};

    void validate() const;
};

/// How flatness parameters are obtained for each grid cell.
enum class BetaMode {
    estimate,  ///< median-max-slope rule on the (smoothed) training series
    fixed,     ///< keep the base config's flatness
};

struct GridCell {
    double tau_fraction = 0.0;
    double smooth_fraction = 0.0;
    std::size_t tau = 0;
    std::size_t smoothing_window = 1;
    double loo_error = 0.0;
};

struct Selection {
    MeasureConfig config;
    GridCell chosen;
    std::vector<GridCell> cells;
};

/// Resolves a grid cell into a concrete config. tau = floor(fraction * T)
/// with T the longest training series, clamped per pair to feasibility.
MeasureConfig cell_config(const LabeledDataset& train, const MeasureConfig& base, double tau_fraction,
                          double smooth_fraction, BetaMode beta_mode, double p_floor = 0.1);

/// Leave-one-out 1-NN error over the tau x smoothing cross product. Ties
/// go to the smaller smoothing window, then the smaller tau.
Selection loocv_select(const LabeledDataset& train, const HyperGrid& grid, const MeasureConfig& base,
                       BetaMode beta_mode = BetaMode::estimate, Execution exec = Execution::parallel,
                       double p_floor = 0.1);

double loo_error(const LabeledDataset& train, const MeasureConfig& cfg,
                 Execution exec = Execution::parallel);

struct ClassificationReport {
    Selection selection;
    Classification test;
};

ClassificationReport classify_with_selection(const LabeledDataset& train, const LabeledDataset& test,
                                             const HyperGrid& grid, const MeasureConfig& base,
                                             BetaMode beta_mode = BetaMode::estimate,
                                             Execution exec = Execution::parallel);

}  // namespace dtws
