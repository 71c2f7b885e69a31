#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "dtws/cluster.hpp"
#include "dtws/error.hpp"
#include "support.hpp"

using namespace dtws;
using doctest::Approx;

namespace {

DistanceMatrix from_matrix(const Eigen::MatrixXd& m) {
    DistanceMatrix d;
    d.values = m;
    for (Eigen::Index i = 0; i < m.rows(); ++i) d.ids.push_back("p" + std::to_string(i));
    return d;
}

// groups[i] is the blob of point i; within-blob 0, across 1.
DistanceMatrix blobs(const std::vector<int>& groups) {
    const auto n = static_cast<Eigen::Index>(groups.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = groups[static_cast<std::size_t>(i)] == groups[static_cast<std::size_t>(j)] ? 0.0 : 1.0;
    return from_matrix(m);
}

DistanceMatrix random_points(testing::Generator& gen, std::size_t n) {
    std::vector<Eigen::Vector2d> pts;
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(gen.uniform(0, 1), gen.uniform(0, 1));
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (pts[i] - pts[j]).norm();
    return from_matrix(m);
}

// Same partition up to relabeling.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    return true;
}

const Linkage all_linkages[] = {Linkage::average, Linkage::complete, Linkage::single};

}  // namespace

TEST_CASE("linkage names") {
    for (Linkage l : all_linkages) CHECK(parse_linkage(linkage_name(l)) == l);
    CHECK_THROWS_AS(parse_linkage("ward"), Error);
}

TEST_CASE("agglomerate extremes and blobs") {
    const auto d = blobs({0, 1, 0, 1, 1, 0});
    for (Linkage l : all_linkages) {
        const auto all = agglomerate(d, 6, l);
        CHECK(all.labels == std::vector<int>{1, 2, 3, 4, 5, 6});
        const auto one = agglomerate(d, 1, l);
        CHECK(one.labels == std::vector<int>(6, 1));
        CHECK(one.mean_silhouette == 0.0);
        const auto two = agglomerate(d, 2, l);
        CHECK(two.labels == std::vector<int>{1, 2, 1, 2, 2, 1});
        CHECK(two.mean_silhouette == 1.0);
        CHECK(two.k == 2);
    }
    CHECK_THROWS_AS(agglomerate(d, 0), Error);
    CHECK_THROWS_AS(agglomerate(d, 7), Error);
}

TEST_CASE("linkage rules on a line") {
    // Points at 0, 1, 3, 7: single merges {0,1}, then {0,1,3}; heights 1, 2, 4.
    const std::vector<double> x{0, 1, 3, 7};
    Eigen::MatrixXd m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = std::abs(x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]);
    const auto d = from_matrix(m);
    const Dendrogram single(d, Linkage::single);
    REQUIRE(single.merges().size() == 3);
    CHECK(single.merges()[0].height == 1.0);
    CHECK(single.merges()[1].height == 2.0);
    CHECK(single.merges()[2].height == 4.0);
    const Dendrogram complete(d, Linkage::complete);
    CHECK(complete.merges()[1].height == 3.0);
    CHECK(complete.merges()[2].height == 7.0);
    const Dendrogram average(d, Linkage::average);
    CHECK(average.merges()[1].height == Approx(2.5));
    CHECK(average.merges()[2].height == Approx((7.0 + 6.0 + 4.0) / 3.0));
}

TEST_CASE("silhouette") {
    const auto d = blobs({0, 0, 1, 1, 1});
    CHECK(silhouette(d, {1, 1, 2, 2, 2}) == 1.0);
    CHECK(silhouette(d, {2, 2, 1, 1, 1}) == 1.0);
    CHECK_THROWS_AS(silhouette(d, {3, 3, 3, 3, 3}), Error);

    SUBCASE("hand computed with a singleton") {
        Eigen::MatrixXd m(3, 3);
        m << 0, 1, 4, 1, 0, 3, 4, 3, 0;
        const auto s = silhouette(from_matrix(m), {1, 1, 2});
        // point 0: a=1, b=4 -> 0.75; point 1: a=1, b=3 -> 2/3; singleton -> 0
        CHECK(s == Approx((0.75 + 2.0 / 3.0) / 3.0));
    }
    SUBCASE("random labels on a homogeneous blob") {
        testing::Generator gen(19);
        const auto pts = random_points(gen, 40);
        double sum = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<int> labels(40);
            for (auto& l : labels) l = static_cast<int>(gen.index(0, 2));
            const double s = silhouette(pts, labels);
            CHECK(s >= -1.0);
            CHECK(s <= 1.0);
            sum += s;
        }
        CHECK(std::abs(sum / 100.0) < 0.2);
    }
    SUBCASE("label permutation invariance") {
        testing::Generator gen(29);
        const auto pts = random_points(gen, 25);
        std::vector<int> labels(25);
        for (auto& l : labels) l = static_cast<int>(gen.index(0, 3));
        std::vector<int> permuted = labels;
        for (auto& l : permuted) l = (l + 2) % 4 + 10;
        CHECK(silhouette(pts, labels) == Approx(silhouette(pts, permuted)).epsilon(1e-14));
    }
}

TEST_CASE("select_k") {
    SUBCASE("two blobs") {
        const auto r = select_k(blobs({0, 0, 0, 1, 1, 1}), 5);
        CHECK(r.k == 2);
        CHECK(r.mean_silhouette == 1.0);
    }
    SUBCASE("three points, one candidate") {
        Eigen::MatrixXd m(3, 3);
        m << 0, 1, 5, 1, 0, 4, 5, 4, 0;
        const auto r = select_k(from_matrix(m), 2);
        CHECK(r.k == 2);
        CHECK(r.labels == std::vector<int>{1, 1, 2});
    }
    SUBCASE("k_max bounds") {
        const auto d = blobs({0, 1, 0, 1});
        CHECK_THROWS_AS(select_k(d, 4), Error);
        CHECK_THROWS_AS(select_k(d, 1), Error);
        CHECK(default_k_max(4) == 3);
        CHECK(default_k_max(75) == 10);
    }
}

TEST_CASE("hierarchy nests and ignores input order") {
    testing::Generator gen(31);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 15;
        const auto d = random_points(gen, n);
        for (Linkage l : all_linkages) {
            const Dendrogram tree(d, l);
            for (std::size_t k = 2; k <= n; ++k) {
                const auto fine = tree.cut(k), coarse = tree.cut(k - 1);
                CHECK(std::set<int>(fine.begin(), fine.end()).size() == k);
                // Each fine cluster sits in exactly one coarse cluster.
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        if (fine[i] == fine[j]) CHECK(coarse[i] == coarse[j]);
            }

            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), gen.engine());
            Eigen::MatrixXd pm(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    pm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d(perm[i], perm[j]);
            const auto shuffled = from_matrix(pm);
            for (std::size_t k : {2u, 3u, 5u}) {
                const auto base = agglomerate(d, k, l).labels;
                const auto other = agglomerate(shuffled, k, l).labels;
                std::vector<int> back(n);
                for (std::size_t i = 0; i < n; ++i) back[perm[i]] = other[i];
                CHECK(same_partition(base, back));
            }
        }
    }
}

TEST_CASE("adjusted rand index") {
    CHECK(adjusted_rand_index({1, 1, 2, 2}, {5, 5, 9, 9}) == Approx(1.0));
    CHECK(adjusted_rand_index({1, 1, 2, 2}, {1, 2, 1, 2}) == Approx(-0.5));
    // Hand count: n=6, contingency [[2,1],[0,3]].
    const double index = 1 + 3;  // C(2,2) + C(3,2)
    const double rows = 3 + 3;   // C(3,2) twice
    const double cols = 1 + 6;   // C(2,2) + C(4,2)
    const double expected_v = rows * cols / 15.0;
    const double ari = (index - expected_v) / (0.5 * (rows + cols) - expected_v);
    CHECK(adjusted_rand_index({1, 1, 1, 2, 2, 2}, {1, 1, 2, 2, 2, 2}) == Approx(ari));
    CHECK_THROWS_AS(adjusted_rand_index({1, 2}, {1}), Error);
}
