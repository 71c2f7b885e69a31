#include "dtws/cluster.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "dtws/error.hpp"

namespace dtws {

namespace {

std::vector<int> canonical_labels(std::vector<std::size_t> roots) {
    std::map<std::size_t, int> seen;
    std::vector<int> labels(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        auto [it, inserted] = seen.emplace(roots[i], static_cast<int>(seen.size()) + 1);
        labels[i] = it->second;
    }
    return labels;
}

std::vector<int> dense_labels(const std::vector<int>& labels) {
    std::map<int, int> ids;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = ids.emplace(labels[i], static_cast<int>(ids.size()));
        out[i] = it->second;
    }
    return out;
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

std::string_view linkage_name(Linkage l) noexcept {
    switch (l) {
        case Linkage::average: return "average";
        case Linkage::complete: return "complete";
        case Linkage::single: return "single";
    }
    return "unknown";
}

Linkage parse_linkage(std::string_view name) {
    if (name == "average") return Linkage::average;
    if (name == "complete") return Linkage::complete;
    if (name == "single") return Linkage::single;
    throw Error(Errc::invalid_argument, "unknown linkage '" + std::string(name) + "'");
}

Dendrogram::Dendrogram(const DistanceMatrix& d, Linkage linkage) : n_(d.size()), linkage_(linkage) {
    if (n_ == 0) throw Error(Errc::bad_k, "cannot cluster an empty distance matrix");
    Eigen::MatrixXd dist = d.values;
    std::vector<double> sizes(n_, 1.0);
    std::vector<bool> active(n_, true);

    // Slot index == smallest member index, because a merged cluster always
    // lives in the lower of the two slots.
    for (std::size_t step = 0; step + 1 < n_; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        bool found = false;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n_; ++j) {
                if (!active[j]) continue;
                const double v = dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                if (!found || v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        }
        merges_.push_back({bi, bj, best});

        const auto ei = static_cast<Eigen::Index>(bi);
        const auto ej = static_cast<Eigen::Index>(bj);
        for (std::size_t c = 0; c < n_; ++c) {
            if (!active[c] || c == bi || c == bj) continue;
            const auto ec = static_cast<Eigen::Index>(c);
            const double di = dist(ei, ec);
            const double dj = dist(ej, ec);
            double merged = 0.0;
            switch (linkage_) {
                case Linkage::single: merged = std::min(di, dj); break;
                case Linkage::complete: merged = std::max(di, dj); break;
                case Linkage::average:
                    merged = (sizes[bi] * di + sizes[bj] * dj) / (sizes[bi] + sizes[bj]);
                    break;
            }
            dist(ei, ec) = merged;
            dist(ec, ei) = merged;
        }
        sizes[bi] += sizes[bj];
        active[bj] = false;
    }
}

std::vector<int> Dendrogram::cut(std::size_t k) const {
    if (k < 1 || k > n_) {
        throw Error(Errc::bad_k, "k = " + std::to_string(k) + " outside 1.." + std::to_string(n_));
    }
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t m = 0; m < n_ - k; ++m) {
        parent[find(merges_[m].right)] = find(merges_[m].left);
    }
    std::vector<std::size_t> roots(n_);
    for (std::size_t i = 0; i < n_; ++i) roots[i] = find(i);
    return canonical_labels(std::move(roots));
}

ClusterResult agglomerate(const DistanceMatrix& d, std::size_t k, Linkage linkage) {
    if (k < 1 || k > d.size()) {
        throw Error(Errc::bad_k, "k = " + std::to_string(k) + " outside 1.." + std::to_string(d.size()));
    }
    const Dendrogram tree(d, linkage);
    ClusterResult r;
    r.labels = tree.cut(k);
    r.k = k;
    r.linkage = linkage;
    r.mean_silhouette = k >= 2 ? silhouette(d, r.labels) : 0.0;
    return r;
}

double silhouette(const DistanceMatrix& d, const std::vector<int>& labels) {
    const std::size_t n = d.size();
    if (labels.size() != n) {
        throw Error(Errc::length_mismatch, "label count does not match the distance matrix");
    }
    const std::vector<int> dense = dense_labels(labels);
    const auto k = static_cast<std::size_t>(*std::max_element(dense.begin(), dense.end()) + 1);
    if (k < 2) throw Error(Errc::single_cluster, "silhouette needs at least two clusters");

    std::vector<double> counts(k, 0.0);
    for (int l : dense) counts[static_cast<std::size_t>(l)] += 1.0;

    double total = 0.0;
    std::vector<double> sums(k);
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(dense[i]);
        if (counts[own] <= 1.0) continue;
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) sums[static_cast<std::size_t>(dense[j])] += d(i, j);
        }
        const double a = sums[own] / (counts[own] - 1.0);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c != own) b = std::min(b, sums[c] / counts[c]);
        }
        const double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

std::size_t default_k_max(std::size_t n) { return n < 2 ? 0 : std::min<std::size_t>(10, n - 1); }

ClusterResult select_k(const DistanceMatrix& d, std::size_t k_max, Linkage linkage) {
    const std::size_t n = d.size();
    if (k_max < 2 || k_max + 1 > n) {
        throw Error(Errc::bad_k, "k_max = " + std::to_string(k_max) + " must lie in 2.." +
                                     std::to_string(n > 0 ? n - 1 : 0));
    }
    const Dendrogram tree(d, linkage);
    ClusterResult best;
    best.linkage = linkage;
    for (std::size_t k = 2; k <= k_max; ++k) {
        auto labels = tree.cut(k);
        const double s = silhouette(d, labels);
        if (best.k == 0 || s > best.mean_silhouette) {
            best.labels = std::move(labels);
            best.k = k;
            best.mean_silhouette = s;
        }
    }
    return best;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw Error(Errc::length_mismatch, "partitions differ in size");
    const std::vector<int> da = dense_labels(a);
    const std::vector<int> db = dense_labels(b);
    std::map<std::pair<int, int>, double> table;
    std::map<int, double> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        table[{da[i], db[i]}] += 1.0;
        rows[da[i]] += 1.0;
        cols[db[i]] += 1.0;
    }
    double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [key, v] : table) index += choose2(v);
    for (const auto& [key, v] : rows) sum_rows += choose2(v);
    for (const auto& [key, v] : cols) sum_cols += choose2(v);
    const double pairs = choose2(static_cast<double>(a.size()));
    if (pairs == 0.0) return 1.0;
    const double expected = sum_rows * sum_cols / pairs;
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

}  // namespace dtws
