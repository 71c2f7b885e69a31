#include "dtws/classify.hpp"

#include <algorithm>
#include <cmath>

#include "dtws/error.hpp"
#include "dtws/io.hpp"
#include "dtws/kernels.hpp"

namespace dtws {

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

double error_rate(const std::vector<std::string>& truth, const std::vector<std::string>& predicted) {
    if (truth.empty()) return 0.0;
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) wrong += truth[i] != predicted[i] ? 1 : 0;
    return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

double loo_error_from(const Eigen::MatrixXd& d, const std::vector<std::string>& labels) {
    const auto nn = nearest_indices(d, true);
    std::vector<std::string> predicted(nn.size());
    for (std::size_t i = 0; i < nn.size(); ++i) predicted[i] = labels[nn[i]];
    return error_rate(labels, predicted);
}

}  // namespace

std::size_t LabeledDataset::max_length() const noexcept {
    std::size_t best = 0;
    for (const auto& s : series) best = std::max(best, s.size());
    return best;
}

LabeledDataset parse_ucr(std::string_view text, std::string name) {
    io::Table table = io::parse_table(text, true);
    LabeledDataset ds;
    ds.name = std::move(name);
    ds.labels = std::move(table.keys);
    ds.series.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        TimeSeries s;
        s.id = std::to_string(i);
        s.values = std::move(table.rows[i]);
        ds.series.push_back(std::move(s));
    }
    return ds;
}

LabeledDataset load_ucr(const std::filesystem::path& path) {
    try {
        return parse_ucr(io::read_file(path), path.stem().string());
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

std::vector<std::size_t> nearest_indices(const Eigen::MatrixXd& d, bool exclude_diagonal) {
    std::vector<std::size_t> out(static_cast<std::size_t>(d.rows()));
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
        Eigen::Index best = -1;
        for (Eigen::Index c = 0; c < d.cols(); ++c) {
            if (exclude_diagonal && c == r) continue;
            if (best < 0 || d(r, c) < d(r, best)) best = c;
        }
        if (best < 0) throw Error(Errc::empty_training_set, "no candidate neighbours");
        out[static_cast<std::size_t>(r)] = static_cast<std::size_t>(best);
    }
    return out;
}

Classification one_nn(const LabeledDataset& train, const LabeledDataset& test, const MeasureConfig& cfg,
                      Execution exec) {
    if (train.size() == 0) throw Error(Errc::empty_training_set, "1-NN needs training instances");
    const auto train_p = kernels::prepare_all(train.series, cfg, exec);
    const auto test_p = kernels::prepare_all(test.series, cfg, exec);
    const Eigen::MatrixXd d = kernels::cross(test_p, train_p, cfg, exec);

    Classification out;
    out.neighbors = test.size() > 0 ? nearest_indices(d, false) : std::vector<std::size_t>{};
    out.predictions.reserve(out.neighbors.size());
    for (std::size_t nn : out.neighbors) out.predictions.push_back(train.labels[nn]);
    out.error = error_rate(test.labels, out.predictions);
    return out;
}

void HyperGrid::validate() const {
    if (tau_fractions.empty() || smooth_fractions.empty()) {
        throw Error(Errc::invalid_argument, "hyperparameter grid must be non-empty");
    }
    auto negative = [](double f) { return !(f >= 0.0); };
    if (std::any_of(tau_fractions.begin(), tau_fractions.end(), negative) ||
        std::any_of(smooth_fractions.begin(), smooth_fractions.end(), negative)) {
        throw Error(Errc::invalid_argument, "grid fractions must be >= 0");
    }
}

MeasureConfig cell_config(const LabeledDataset& train, const MeasureConfig& base, double tau_fraction,
                          double smooth_fraction, BetaMode beta_mode, double p_floor) {
    const std::size_t length = train.max_length();
    MeasureConfig cfg = base;
    cfg.smoothing_window = smoothing_window_from_fraction(smooth_fraction, length);
    cfg.tau = Window::band(static_cast<std::size_t>(std::floor(tau_fraction * static_cast<double>(length))));
    cfg.clamp_window = true;
    if (beta_mode == BetaMode::estimate && uses_shapelets(cfg.kind)) {
        std::vector<TimeSeries> smoothed;
        smoothed.reserve(train.size());
        for (const auto& s : train.series) smoothed.push_back(moving_average(s, cfg.smoothing_window));
        const double m0 = cfg.flatness.m0;
        cfg.flatness = estimate_beta(smoothed, cfg.shapelet_set(), p_floor);
        cfg.flatness.m0 = m0;
    }
    return cfg;
}

double loo_error(const LabeledDataset& train, const MeasureConfig& cfg, Execution exec) {
    if (train.size() < 2) throw Error(Errc::empty_training_set, "leave-one-out needs >= 2 instances");
    const auto prepared = kernels::prepare_all(train.series, cfg, exec);
    return loo_error_from(kernels::pairwise(prepared, cfg, exec), train.labels);
}

Selection loocv_select(const LabeledDataset& train, const HyperGrid& grid, const MeasureConfig& base,
                       BetaMode beta_mode, Execution exec, double p_floor) {
    grid.validate();
    if (train.size() < 2) throw Error(Errc::empty_training_set, "leave-one-out needs >= 2 instances");
    const auto smooths = sorted_unique(grid.smooth_fractions);
    const auto taus = sorted_unique(grid.tau_fractions);

    Selection sel;
    bool have_best = false;
    for (double sf : smooths) {
        // Preprocessing depends only on smoothing, so SSRs are shared by all taus.
        const MeasureConfig smoothed_cfg = cell_config(train, base, 0.0, sf, beta_mode, p_floor);
        const auto prepared = kernels::prepare_all(train.series, smoothed_cfg, exec);
        for (double tf : taus) {
            MeasureConfig cfg = cell_config(train, smoothed_cfg, tf, sf, BetaMode::fixed, p_floor);
            GridCell cell;
            cell.tau_fraction = tf;
            cell.smooth_fraction = sf;
            cell.tau = *cfg.tau.tau;
            cell.smoothing_window = cfg.smoothing_window;
            cell.loo_error = loo_error_from(kernels::pairwise(prepared, cfg, exec), train.labels);
            sel.cells.push_back(cell);
            if (!have_best || cell.loo_error < sel.chosen.loo_error) {
                sel.chosen = cell;
                sel.config = cfg;
                have_best = true;
            }
        }
    }
    return sel;
}

ClassificationReport classify_with_selection(const LabeledDataset& train, const LabeledDataset& test,
                                             const HyperGrid& grid, const MeasureConfig& base,
                                             BetaMode beta_mode, Execution exec) {
    ClassificationReport report;
    report.selection = loocv_select(train, grid, base, beta_mode, exec);
    report.test = one_nn(train, test, report.selection.config, exec);
    return report;
}

}  // namespace dtws
