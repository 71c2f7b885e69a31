#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "dtws/measures.hpp"

namespace dtws {

enum class Linkage { average, complete, single };

std::string_view linkage_name(Linkage l) noexcept;
Linkage parse_linkage(std::string_view name);

struct ClusterResult {
    /// 1..k, numbered by first appearance in input order.
    std::vector<int> labels;
    std::size_t k = 0;
    /// 0 when k == 1 (the coefficient is undefined for a single cluster).
    double mean_silhouette = 0.0;
    Linkage linkage = Linkage::average;
};

/// Greedy agglomerative merge history on a precomputed distance matrix.
/// Ties between equally close cluster pairs go to the pair with the
/// smallest member indices, so the tree is fully deterministic.
class Dendrogram {
public:
    struct Merge {
        std::size_t left;   ///< smallest member index of the first cluster
        std::size_t right;  ///< smallest member index of the second cluster
        double height;
    };

    Dendrogram(const DistanceMatrix& d, Linkage linkage);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] const std::vector<Merge>& merges() const noexcept { return merges_; }
    [[nodiscard]] Linkage linkage() const noexcept { return linkage_; }

    /// Labels after the first n - k merges. Throws bad_k unless 1 <= k <= n.
    [[nodiscard]] std::vector<int> cut(std::size_t k) const;

private:
    std::size_t n_;
    Linkage linkage_;
    std::vector<Merge> merges_;
};

ClusterResult agglomerate(const DistanceMatrix& d, std::size_t k, Linkage linkage = Linkage::average);

/// Mean silhouette coefficient; singletons contribute 0. Labels are opaque
/// integers. Throws single_cluster with fewer than two distinct labels.
double silhouette(const DistanceMatrix& d, const std::vector<int>& labels);

/// min(10, n - 1).
std::size_t default_k_max(std::size_t n);

/// Best k in 2..k_max by mean silhouette; ties go to the smaller k.
ClusterResult select_k(const DistanceMatrix& d, std::size_t k_max, Linkage linkage = Linkage::average);

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace dtws
