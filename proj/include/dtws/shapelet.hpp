#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace dtws {

/// A predetermined shape of interest, e.g. `increase` = [1, 2, 3, 4].
struct Shapelet {
    std::string name;
    std::vector<double> values;
    bool is_flat = false;

    /// Builds a shapelet and derives is_flat from the values.
    /// Throws invalid_shapelet for w < 2, non-finite values, or a
    /// non-flat vector with zero variance (impossible but checked).
    static Shapelet make(std::string name, std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

/// Flatness gate parameters. beta == +inf is the step-function limit:
/// phi = 1 when m <= m0 and 0 otherwise.
struct FlatnessParams {
    double m0 = 0.0;
    double beta = std::log(10.0);

    static constexpr double infinite_beta = std::numeric_limits<double>::infinity();

    [[nodiscard]] bool beta_is_infinite() const noexcept { return std::isinf(beta); }
};

/// Shapelet-space coordinates of one window; index 0 is always the flat
/// dimension, followed by the non-flat shapelets in set order.
using SsrPoint = Eigen::VectorXd;

/// Immutable, validated shapelet collection. Construct via
/// validate_shapelet_set().
class ShapeletSet {
public:
    [[nodiscard]] std::size_t window() const noexcept { return window_; }
    /// Number of SSR dimensions (flat + every non-flat shapelet).
    [[nodiscard]] std::size_t dims() const noexcept { return 1 + non_flat_.size(); }

    [[nodiscard]] const Shapelet& flat() const noexcept { return flat_; }
    [[nodiscard]] const std::vector<Shapelet>& non_flat() const noexcept { return non_flat_; }
    /// Names in SSR dimension order (flat first).
    [[nodiscard]] std::vector<std::string> dimension_names() const;

    /// Mean-centered, unit-norm non-flat shapelets, one per row.
    [[nodiscard]] const Eigen::MatrixXd& unit_rows() const noexcept { return unit_rows_; }

    /// w x w matrix: the first w-1 independent mean-centered shapelets
    /// followed by the all-ones row.
    [[nodiscard]] const Eigen::MatrixXd& c_matrix() const noexcept { return c_matrix_; }
    /// Indices into non_flat() of the shapelets used for c_matrix().
    [[nodiscard]] const std::vector<std::size_t>& basis() const noexcept { return basis_; }
    /// Spectral norm of c_matrix()^-1.
    [[nodiscard]] double c_inv_norm() const noexcept { return c_inv_norm_; }
    [[nodiscard]] double c_inv_frobenius() const noexcept { return c_inv_frobenius_; }
    [[nodiscard]] std::size_t rank() const noexcept { return rank_; }

private:
    friend ShapeletSet validate_shapelet_set(const std::vector<Shapelet>& shapelets);

    std::size_t window_ = 0;
    Shapelet flat_;
    std::vector<Shapelet> non_flat_;
    Eigen::MatrixXd unit_rows_;
    Eigen::MatrixXd c_matrix_;
    std::vector<std::size_t> basis_;
    double c_inv_norm_ = 0.0;
    double c_inv_frobenius_ = 0.0;
    std::size_t rank_ = 0;
};

/// Subtracts the mean and divides by the norm of the centered vector.
/// Throws constant_vector when all elements are equal.
std::vector<double> center_normalize(std::span<const double> x);

/// (sum |x[i+1] - x[i]|) / (w - 1).
double mean_abs_slope(std::span<const double> x);

double flatness(double mean_slope, const FlatnessParams& params);

/// Pearson correlation in [-1, 1]; 0 when either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> s);

/// Shapelet-space transform of one window of length set.window().
SsrPoint ssr_vector(std::span<const double> x, const ShapeletSet& set,
                    const FlatnessParams& params);

/// Requires exactly one flat shapelet and at least w-1 linearly independent
/// mean-centered non-flat shapelets; with fewer, distinct windows can collide.
ShapeletSet validate_shapelet_set(const std::vector<Shapelet>& shapelets);

/// increase [1,2,3,4], surge [1,2,4,8], peak [1,2,2,1], flat [0,0,0,0].
std::vector<Shapelet> default_shapelets();
const ShapeletSet& default_shapelet_set();

}  // namespace dtws
