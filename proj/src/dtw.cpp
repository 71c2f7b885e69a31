#include "dtws/dtw.hpp"

#include <cmath>

namespace dtws {

namespace detail {

void check_problem(std::size_t n, std::size_t m, const Window& window) {
    if (n == 0 || m == 0) throw Error(Errc::empty_sequence, "DTW requires non-empty sequences");
    const std::size_t gap = n > m ? n - m : m - n;
    if (window.tau && *window.tau < gap) {
        throw Error(Errc::infeasible_window, "window " + std::to_string(*window.tau) +
                                                 " is narrower than the length difference " +
                                                 std::to_string(gap));
    }
}

}  // namespace detail

namespace {

std::span<const double> column(const Eigen::MatrixXd& m, std::size_t c) {
    return {m.data() + static_cast<Eigen::Index>(c) * m.rows(), static_cast<std::size_t>(m.rows())};
}

void check_dims(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows()) {
        throw Error(Errc::length_mismatch, "DTW items have " + std::to_string(a.rows()) + " and " +
                                               std::to_string(b.rows()) + " dimensions");
    }
}

}  // namespace

Window window_from_fraction(double fraction, std::size_t length, std::size_t n, std::size_t m) {
    if (!(fraction >= 0.0)) throw Error(Errc::invalid_argument, "window fraction must be >= 0");
    const auto tau = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(length)));
    const std::size_t gap = n > m ? n - m : m - n;
    return Window::band(std::max(tau, gap));
}

double item_cost(CostKind kind, std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw Error(Errc::length_mismatch, "cost between items of different dimension");
    }
    switch (kind) {
        case CostKind::squared_euclidean: {
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
            return s;
        }
        case CostKind::absolute_scalar: {
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
            return s;
        }
        case CostKind::cosine_distance: {
            double dot = 0.0, na = 0.0, nb = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                dot += a[k] * b[k];
                na += a[k] * a[k];
                nb += b[k] * b[k];
            }
            if (na == 0.0 && nb == 0.0) return 0.0;
            if (na == 0.0 || nb == 0.0) return 1.0;
            const double cosine = std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
            return 1.0 - cosine;
        }
    }
    return 0.0;
}

AlignmentResult dtw(std::span<const double> a, std::span<const double> b, CostKind cost,
                    const Window& window) {
    return align(
        a.size(), b.size(), [&](std::size_t i, std::size_t j) { return item_cost(cost, a[i], b[j]); },
        window);
}

AlignmentResult dtw(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, CostKind cost,
                    const Window& window) {
    check_dims(a, b);
    return align(
        static_cast<std::size_t>(a.cols()), static_cast<std::size_t>(b.cols()),
        [&](std::size_t i, std::size_t j) { return item_cost(cost, column(a, i), column(b, j)); },
        window);
}

double dtw_distance(std::span<const double> a, std::span<const double> b, CostKind cost,
                    const Window& window) {
    return align_distance(
        a.size(), b.size(), [&](std::size_t i, std::size_t j) { return item_cost(cost, a[i], b[j]); },
        window);
}

double dtw_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, CostKind cost,
                    const Window& window) {
    check_dims(a, b);
    return align_distance(
        static_cast<std::size_t>(a.cols()), static_cast<std::size_t>(b.cols()),
        [&](std::size_t i, std::size_t j) { return item_cost(cost, column(a, i), column(b, j)); },
        window);
}

double brute_force_dtw(std::span<const double> a, std::span<const double> b, CostKind cost,
                       const Window& window) {
    return brute_force_align(
        a.size(), b.size(), [&](std::size_t i, std::size_t j) { return item_cost(cost, a[i], b[j]); },
        window);
}

double brute_force_dtw(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, CostKind cost,
                       const Window& window) {
    check_dims(a, b);
    return brute_force_align(
        static_cast<std::size_t>(a.cols()), static_cast<std::size_t>(b.cols()),
        [&](std::size_t i, std::size_t j) { return item_cost(cost, column(a, i), column(b, j)); },
        window);
}

}  // namespace dtws
