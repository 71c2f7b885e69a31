#pragma once

// Test-only oracles and generators. Nothing here calls the DP or SSR code
// paths it is used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "dtws/dtw.hpp"
#include "dtws/series.hpp"

namespace dtws::testing {

using Path = std::vector<AlignedPair>;

/// Every monotone, continuous path from (0, 0) to (n-1, m-1) whose cells
/// all satisfy the window.
inline std::vector<Path> enumerate_paths(std::size_t n, std::size_t m, const Window& window) {
    std::vector<Path> out;
    Path current;
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t j) {
        if (!window.admits(i, j)) return;
        current.push_back({i, j});
        if (i == n - 1 && j == m - 1) {
            out.push_back(current);
        } else {
            if (i + 1 < n) walk(i + 1, j);
            if (j + 1 < m) walk(i, j + 1);
            if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1);
        }
        current.pop_back();
    };
    walk(0, 0);
    return out;
}

inline double squared(double x) { return x * x; }

/// Minimum over enumerated paths of the summed cost.
template <class Cost>
double min_path_cost(std::size_t n, std::size_t m, Cost cost, const Window& window) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : enumerate_paths(n, m, window)) {
        double s = 0.0;
        for (const auto& step : p) s += cost(step.i, step.j);
        best = std::min(best, s);
    }
    return best;
}

inline bool valid_path(const Path& p, std::size_t n, std::size_t m, const Window& window) {
    if (p.empty() || p.front() != AlignedPair{0, 0} || p.back() != AlignedPair{n - 1, m - 1}) return false;
    std::vector<bool> seen_i(n), seen_j(m);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!window.admits(p[k].i, p[k].j)) return false;
        seen_i[p[k].i] = true;
        seen_j[p[k].j] = true;
        if (k == 0) continue;
        const auto di = static_cast<long>(p[k].i) - static_cast<long>(p[k - 1].i);
        const auto dj = static_cast<long>(p[k].j) - static_cast<long>(p[k - 1].j);
        if (di < 0 || dj < 0 || di > 1 || dj > 1 || di + dj == 0) return false;
    }
    for (bool b : seen_i) if (!b) return false;
    for (bool b : seen_j) if (!b) return false;
    return true;
}

/// Textbook Pearson correlation, written independently of the library.
inline double reference_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    const double cov = sxy - sx * sy / n;
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    return cov / std::sqrt(vx * vy);
}

/// Unit vector spanning the null space of the rows (centered shapelets plus
/// the all-ones row) when they have rank w - 1.
inline Eigen::VectorXd null_direction(const std::vector<std::vector<double>>& shapelets) {
    const auto w = static_cast<Eigen::Index>(shapelets.front().size());
    Eigen::MatrixXd c(static_cast<Eigen::Index>(shapelets.size()) + 1, w);
    for (std::size_t r = 0; r < shapelets.size(); ++r) {
        Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(shapelets[r].data(), w);
        v.array() -= v.mean();
        c.row(static_cast<Eigen::Index>(r)) = (v / v.norm()).transpose();
    }
    c.row(c.rows() - 1).setOnes();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(c);
    const Eigen::MatrixXd kernel = lu.kernel();
    Eigen::VectorXd u = kernel.col(0);
    return u / u.norm();
}

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t index(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    std::vector<double> vector(std::size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (double& x : v) x = uniform(lo, hi);
        return v;
    }
    TimeSeries series(std::size_t n, double lo, double hi, std::string id = "r") {
        TimeSeries s;
        s.id = std::move(id);
        s.values = vector(n, lo, hi);
        return s;
    }
    Eigen::MatrixXd matrix(std::size_t rows, std::size_t cols, double lo, double hi) {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = uniform(lo, hi);
        return m;
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace dtws::testing
