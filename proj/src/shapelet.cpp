#include "dtws/shapelet.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "dtws/error.hpp"

namespace dtws {

namespace {

constexpr double rank_tolerance = 1e-10;

bool all_equal(std::span<const double> x) {
    return std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>{}) == x.end();
}

double mean_of(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

Eigen::VectorXd centered(std::span<const double> x) {
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
    v.array() -= v.mean();
    return v;
}

std::size_t matrix_rank(const Eigen::MatrixXd& m) {
    if (m.rows() == 0) return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(rank_tolerance);
    return static_cast<std::size_t>(lu.rank());
}

}  // namespace

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::constant_vector: return "ConstantVector";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::no_flat_shapelet: return "NoFlatShapelet";
        case Errc::duplicate_flat: return "DuplicateFlat";
        case Errc::insufficient_rank: return "InsufficientRank";
        case Errc::invalid_shapelet: return "InvalidShapelet";
        case Errc::series_too_short: return "SeriesTooShort";
        case Errc::empty_training_set: return "EmptyTrainingSet";
        case Errc::empty_sequence: return "EmptySequence";
        case Errc::infeasible_window: return "InfeasibleWindow";
        case Errc::sequence_too_long: return "SequenceTooLong";
        case Errc::bad_k: return "BadK";
        case Errc::single_cluster: return "SingleCluster";
        case Errc::bad_base_index: return "BadBaseIndex";
        case Errc::parse_error: return "ParseError";
        case Errc::empty_file: return "EmptyFile";
        case Errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

Shapelet Shapelet::make(std::string name, std::vector<double> values) {
    if (values.size() < 2) {
        throw Error(Errc::invalid_shapelet, "shapelet '" + name + "' must have length >= 2");
    }
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
        throw Error(Errc::invalid_shapelet, "shapelet '" + name + "' has non-finite values");
    }
    const bool flat = all_equal(values);
    return Shapelet{std::move(name), std::move(values), flat};
}

std::vector<std::string> ShapeletSet::dimension_names() const {
    std::vector<std::string> names;
    names.reserve(dims());
    names.push_back(flat_.name);
    for (const auto& s : non_flat_) names.push_back(s.name);
    return names;
}

std::vector<double> center_normalize(std::span<const double> x) {
    if (x.empty() || all_equal(x)) {
        throw Error(Errc::constant_vector, "cannot normalize a constant vector");
    }
    const Eigen::VectorXd c = centered(x);
    const double norm = c.norm();
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c[static_cast<Eigen::Index>(i)] / norm;
    return out;
}

double mean_abs_slope(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) total += std::abs(x[i] - x[i - 1]);
    return total / static_cast<double>(x.size() - 1);
}

double flatness(double mean_slope, const FlatnessParams& params) {
    if (mean_slope <= params.m0) return 1.0;
    if (params.beta_is_infinite()) return 0.0;
    return std::exp(-params.beta * (mean_slope - params.m0));
}

double pearson(std::span<const double> x, std::span<const double> s) {
    if (x.size() != s.size()) {
        throw Error(Errc::length_mismatch, "pearson: vectors of length " + std::to_string(x.size()) +
                                               " and " + std::to_string(s.size()));
    }
    if (x.empty()) return 0.0;
    const double mx = mean_of(x);
    const double ms = mean_of(s);
    double sxy = 0.0, sxx = 0.0, sss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double ds = s[i] - ms;
        sxy += dx * ds;
        sxx += dx * dx;
        sss += ds * ds;
    }
    if (sxx == 0.0 || sss == 0.0) return 0.0;
    return std::clamp(sxy / std::sqrt(sxx * sss), -1.0, 1.0);
}

SsrPoint ssr_vector(std::span<const double> x, const ShapeletSet& set, const FlatnessParams& params) {
    if (x.size() != set.window()) {
        throw Error(Errc::length_mismatch, "window of length " + std::to_string(x.size()) +
                                               " does not match shapelet length " +
                                               std::to_string(set.window()));
    }
    SsrPoint p = SsrPoint::Zero(static_cast<Eigen::Index>(set.dims()));
    const double phi = flatness(mean_abs_slope(x), params);
    p[0] = 2.0 * phi - 1.0;
    if (phi >= 1.0) return p;

    const Eigen::VectorXd c = centered(x);
    const double norm = c.norm();
    if (norm == 0.0) return p;
    const Eigen::VectorXd corr = set.unit_rows() * c / norm;
    for (Eigen::Index i = 0; i < corr.size(); ++i) {
        p[i + 1] = (1.0 - phi) * std::clamp(corr[i], -1.0, 1.0);
    }
    return p;
}

ShapeletSet validate_shapelet_set(const std::vector<Shapelet>& shapelets) {
    if (shapelets.empty()) throw Error(Errc::invalid_shapelet, "empty shapelet list");
    const std::size_t w = shapelets.front().size();
    if (w < 2) throw Error(Errc::invalid_shapelet, "shapelet length must be >= 2");

    ShapeletSet set;
    set.window_ = w;
    bool have_flat = false;
    for (const auto& s : shapelets) {
        if (s.size() != w) {
            throw Error(Errc::length_mismatch, "shapelet '" + s.name + "' has length " +
                                                   std::to_string(s.size()) + ", expected " +
                                                   std::to_string(w));
        }
        if (!std::all_of(s.values.begin(), s.values.end(), [](double v) { return std::isfinite(v); })) {
            throw Error(Errc::invalid_shapelet, "shapelet '" + s.name + "' has non-finite values");
        }
        const bool flat = all_equal(s.values);
        if (flat != s.is_flat) {
            throw Error(Errc::invalid_shapelet,
                        "shapelet '" + s.name + "' is_flat flag disagrees with its values");
        }
        if (flat) {
            if (have_flat) throw Error(Errc::duplicate_flat, "more than one flat shapelet");
            set.flat_ = s;
            have_flat = true;
        } else {
            set.non_flat_.push_back(s);
        }
    }
    if (!have_flat) throw Error(Errc::no_flat_shapelet, "shapelet set has no flat shapelet");

    const auto k = static_cast<Eigen::Index>(set.non_flat_.size());
    const auto wi = static_cast<Eigen::Index>(w);
    set.unit_rows_.resize(k, wi);
    Eigen::MatrixXd centered_rows(k, wi);
    for (Eigen::Index i = 0; i < k; ++i) {
        const Eigen::VectorXd c = centered(set.non_flat_[static_cast<std::size_t>(i)].values);
        centered_rows.row(i) = c.transpose();
        set.unit_rows_.row(i) = (c / c.norm()).transpose();
    }

    // Greedy selection of the first w-1 independent rows, in input order.
    Eigen::MatrixXd chosen(0, wi);
    for (Eigen::Index i = 0; i < k && set.basis_.size() + 1 < w; ++i) {
        Eigen::MatrixXd trial(chosen.rows() + 1, wi);
        trial.topRows(chosen.rows()) = chosen;
        trial.row(chosen.rows()) = set.unit_rows_.row(i);
        if (matrix_rank(trial) == static_cast<std::size_t>(trial.rows())) {
            chosen = std::move(trial);
            set.basis_.push_back(static_cast<std::size_t>(i));
        }
    }
    set.rank_ = set.basis_.size();
    if (set.rank_ + 1 < w) {
        throw Error(Errc::insufficient_rank,
                    "centered non-flat shapelets span " + std::to_string(set.rank_) +
                        " dimensions; at least " + std::to_string(w - 1) + " are required");
    }

    set.c_matrix_.resize(wi, wi);
    for (std::size_t r = 0; r < set.basis_.size(); ++r) {
        set.c_matrix_.row(static_cast<Eigen::Index>(r)) =
            centered_rows.row(static_cast<Eigen::Index>(set.basis_[r]));
    }
    set.c_matrix_.row(wi - 1).setOnes();

    const Eigen::MatrixXd inv = set.c_matrix_.inverse();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(inv);
    set.c_inv_norm_ = svd.singularValues()[0];
    set.c_inv_frobenius_ = inv.norm();
    return set;
}

std::vector<Shapelet> default_shapelets() {
    return {
        Shapelet::make("increase", {1, 2, 3, 4}),
        Shapelet::make("surge", {1, 2, 4, 8}),
        Shapelet::make("peak", {1, 2, 2, 1}),
        Shapelet::make("flat", {0, 0, 0, 0}),
    };
}

const ShapeletSet& default_shapelet_set() {
    static const ShapeletSet set = validate_shapelet_set(default_shapelets());
    return set;
}

}  // namespace dtws
