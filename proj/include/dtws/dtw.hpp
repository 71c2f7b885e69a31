#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dtws/error.hpp"

namespace dtws {

enum class CostKind {
    squared_euclidean,
    /// 1 - cosine similarity; zero vs non-zero costs 1, zero vs zero costs 0.
    cosine_distance,
    /// Sum of absolute differences (|a - b| for scalars).
    absolute_scalar,
};

/// Sakoe-Chiba band: indices i and j may be aligned only if |i - j| <= tau.
struct Window {
    std::optional<std::size_t> tau;

    static Window unbounded() { return {}; }
    static Window band(std::size_t t) { return Window{t}; }

    [[nodiscard]] bool bounded() const noexcept { return tau.has_value(); }
    [[nodiscard]] bool admits(std::size_t i, std::size_t j) const noexcept {
        return !tau || (i > j ? i - j : j - i) <= *tau;
    }
    bool operator==(const Window&) const = default;
};

/// floor(fraction * length), raised to |n - m| so the band stays feasible.
Window window_from_fraction(double fraction, std::size_t length, std::size_t n, std::size_t m);

/// Zero-based index pair (i into the first sequence, j into the second).
struct AlignedPair {
    std::size_t i = 0;
    std::size_t j = 0;
    bool operator==(const AlignedPair&) const = default;
};

struct AlignmentResult {
    double distance = 0.0;
    /// Monotone, continuous path from (0, 0) to (n-1, m-1).
    std::vector<AlignedPair> path;
};

double item_cost(CostKind kind, std::span<const double> a, std::span<const double> b);

inline double item_cost(CostKind kind, double a, double b) {
    switch (kind) {
        case CostKind::squared_euclidean: return (a - b) * (a - b);
        case CostKind::absolute_scalar: return a > b ? a - b : b - a;
        case CostKind::cosine_distance: break;
    }
    return item_cost(kind, std::span<const double>(&a, 1), std::span<const double>(&b, 1));
}

namespace detail {

void check_problem(std::size_t n, std::size_t m, const Window& window);

inline constexpr double inf = std::numeric_limits<double>::infinity();

}  // namespace detail

/// Full-matrix DTW with path backtrace. cost(i, j) is the pairwise cost of
/// item i of the first sequence and item j of the second. When several
/// predecessors share the minimum the backtrace prefers the diagonal step,
/// then the vertical (i-1, j), then the horizontal (i, j-1).
template <class Cost>
AlignmentResult align(std::size_t n, std::size_t m, Cost&& cost, const Window& window) {
    detail::check_problem(n, m, window);
    const std::size_t stride = m + 1;
    std::vector<double> acc((n + 1) * stride, detail::inf);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return acc[i * stride + j]; };
    at(0, 0) = 0.0;

    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t j_lo = 1, j_hi = m;
        if (window.tau) {
            j_lo = i > *window.tau + 1 ? i - *window.tau : 1;
            j_hi = std::min(m, i + *window.tau);
        }
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
            const double best = std::min({at(i - 1, j - 1), at(i - 1, j), at(i, j - 1)});
            at(i, j) = cost(i - 1, j - 1) + best;
        }
    }

    AlignmentResult result;
    result.distance = at(n, m);
    std::size_t i = n, j = m;
    result.path.push_back({i - 1, j - 1});
    while (i > 1 || j > 1) {
        const double diag = at(i - 1, j - 1);
        const double up = at(i - 1, j);
        const double left = at(i, j - 1);
        if (diag <= up && diag <= left) {
            --i;
            --j;
        } else if (up <= left) {
            --i;
        } else {
            --j;
        }
        result.path.push_back({i - 1, j - 1});
    }
    std::reverse(result.path.begin(), result.path.end());
    return result;
}

/// Same recurrence as align() with two rolling rows; no path.
template <class Cost>
double align_distance(std::size_t n, std::size_t m, Cost&& cost, const Window& window) {
    detail::check_problem(n, m, window);
    std::vector<double> prev(m + 1, detail::inf), curr(m + 1, detail::inf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        std::fill(curr.begin(), curr.end(), detail::inf);
        std::size_t j_lo = 1, j_hi = m;
        if (window.tau) {
            j_lo = i > *window.tau + 1 ? i - *window.tau : 1;
            j_hi = std::min(m, i + *window.tau);
        }
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
            const double best = std::min({prev[j - 1], prev[j], curr[j - 1]});
            curr[j] = cost(i - 1, j - 1) + best;
        }
        std::swap(prev, curr);
    }
    return prev[m];
}

inline constexpr std::size_t brute_force_max_length = 10;

/// Enumerates every boundary-respecting monotone path. Test oracle only;
/// throws sequence_too_long beyond brute_force_max_length items.
template <class Cost>
double brute_force_align(std::size_t n, std::size_t m, Cost&& cost, const Window& window) {
    detail::check_problem(n, m, window);
    if (n > brute_force_max_length || m > brute_force_max_length) {
        throw Error(Errc::sequence_too_long, "brute-force DTW supports at most " +
                                                 std::to_string(brute_force_max_length) + " items");
    }
    double best = detail::inf;
    auto walk = [&](auto&& self, std::size_t i, std::size_t j, double sum) -> void {
        if (!window.admits(i, j)) return;
        sum += cost(i, j);
        if (i == n - 1 && j == m - 1) {
            best = std::min(best, sum);
            return;
        }
        if (i + 1 < n && j + 1 < m) self(self, i + 1, j + 1, sum);
        if (i + 1 < n) self(self, i + 1, j, sum);
        if (j + 1 < m) self(self, i, j + 1, sum);
    };
    walk(walk, 0, 0, 0.0);
    return best;
}

AlignmentResult dtw(std::span<const double> a, std::span<const double> b, CostKind cost,
                    const Window& window = Window::unbounded());
/// Items are the columns of a and b.
AlignmentResult dtw(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, CostKind cost,
                    const Window& window = Window::unbounded());

double dtw_distance(std::span<const double> a, std::span<const double> b, CostKind cost,
                    const Window& window = Window::unbounded());
double dtw_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, CostKind cost,
                    const Window& window = Window::unbounded());

double brute_force_dtw(std::span<const double> a, std::span<const double> b, CostKind cost,
                       const Window& window = Window::unbounded());
double brute_force_dtw(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, CostKind cost,
                       const Window& window = Window::unbounded());

}  // namespace dtws
