#include "doctest.h"

#include <cmath>
#include <mutex>

#include "dtws/error.hpp"
#include "dtws/kernels.hpp"
#include "dtws/measures.hpp"
#include "dtws/synthetic.hpp"
#include "support.hpp"

using namespace dtws;
using doctest::Approx;

namespace {

TimeSeries ts(std::vector<double> v, std::string id = "s") {
    TimeSeries s;
    s.id = std::move(id);
    s.values = std::move(v);
    return s;
}

MeasureConfig config(MeasureKind kind) {
    MeasureConfig c;
    c.kind = kind;
    c.flatness = FlatnessParams{0.0, std::log(10.0)};
    return c;
}

// Ramp with a bump in the middle.
TimeSeries ramp_peak(std::size_t n) {
    auto bump = synthetic::gaussian_bump(n, static_cast<double>(n) / 2.0, 2.0, 15.0);
    for (std::size_t t = 0; t < n; ++t) bump[t] += 2.0 * static_cast<double>(t);
    return ts(std::move(bump), "ramp_peak");
}

}  // namespace

TEST_CASE("measure names round-trip") {
    for (MeasureKind k : all_measures()) CHECK(parse_measure(measure_name(k)) == k);
    CHECK_THROWS_AS(parse_measure("shapedtw"), Error);
    CHECK(uses_shapelets(MeasureKind::ssr_euclid));
    CHECK_FALSE(uses_shapelets(MeasureKind::dtw_znorm));
    CHECK_FALSE(warps(MeasureKind::euclid_znorm));
}

TEST_CASE("dtw_plus_s basics") {
    const auto a = ramp_peak(40);
    const auto cfg = config(MeasureKind::dtw_plus_s);
    const auto self = dtw_plus_s(a, a, cfg);
    CHECK(self.distance == 0.0);
    for (std::size_t k = 0; k < self.path.size(); ++k) CHECK(self.path[k] == AlignedPair{k, k});
    CHECK(self.path.size() == a.size() - 3);

    CHECK_THROWS_AS(dtw_plus_s(a, a, config(MeasureKind::dtw_raw)), Error);
}

TEST_CASE("positive affine maps with co-scaled flatness leave the SSR unchanged") {
    const auto a = ramp_peak(40);
    TimeSeries b = a;
    const double alpha = 3.0;
    for (double& v : b.values) v = alpha * v + 10.0;

    const auto& set = default_shapelet_set();
    const FlatnessParams pa{0.2, std::log(10.0)};
    const FlatnessParams pb{pa.m0 * alpha, pa.beta / alpha};
    const auto ma = ssr_matrix(a, set, pa).columns;
    const auto mb = ssr_matrix(b, set, pb).columns;
    CHECK((ma - mb).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(dtw_distance(ma, mb, CostKind::squared_euclidean) <= 1e-12);

    // Without co-scaling the flat coordinate moves, but steep series stay
    // close because phi is already tiny on both.
    const FlatnessParams steep{0.0, 5.0};
    auto cfg = config(MeasureKind::dtw_plus_s);
    cfg.flatness = steep;
    CHECK(distance(a, b, cfg) < 0.05);
}

TEST_CASE("shifted bumps align better with a wider band") {
    const auto a = ts(synthetic::gaussian_bump(40, 15, 2, 1), "a");
    const auto b = ts(synthetic::gaussian_bump(40, 20, 2, 1), "b");
    auto cfg = config(MeasureKind::dtw_plus_s);
    cfg.flatness = FlatnessParams{0.0, 20.0};
    const double free = distance(a, b, cfg);
    cfg.tau = Window::band(0);
    const double locked = distance(a, b, cfg);
    CHECK(free < locked);
}

TEST_CASE("band monotonicity for dtw_plus_s") {
    testing::Generator gen(41);
    for (int rep = 0; rep < 20; ++rep) {
        const auto a = gen.series(gen.index(6, 25), -3, 3);
        const auto b = gen.series(a.size(), -3, 3);
        auto cfg = config(MeasureKind::dtw_plus_s);
        const double unbounded = distance(a, b, cfg);
        for (std::size_t tau = 0; tau < a.size(); ++tau) {
            cfg.tau = Window::band(tau);
            CHECK(unbounded <= distance(a, b, cfg) + 1e-12);
        }
    }
}

TEST_CASE("corr-only variant drops exactly the flat dimension") {
    testing::Generator gen(12);
    for (int rep = 0; rep < 30; ++rep) {
        // Steep zigzag: every window has a mean slope well above zero.
        auto make = [&](std::size_t n) {
            std::vector<double> v(n);
            double level = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                level += (gen.index(0, 1) == 0 ? 1.0 : -1.0) * gen.uniform(1.0, 3.0);
                v[t] = level;
            }
            return ts(std::move(v));
        };
        const auto a = make(gen.index(5, 20)), b = make(gen.index(5, 20));
        auto full = config(MeasureKind::dtw_plus_s);
        auto corr = config(MeasureKind::dtw_plus_s_corr_only);
        full.flatness = corr.flatness = FlatnessParams{0.0, FlatnessParams::infinite_beta};
        CHECK(distance(a, b, full) == Approx(distance(a, b, corr)).epsilon(1e-12));

        // With finite beta: full cost along its path minus the flat gaps is a
        // corr-only path cost, so it bounds the corr-only optimum.
        full.flatness = corr.flatness = FlatnessParams{0.0, 0.5};
        const auto pa = prepare(a, full), pb = prepare(b, full);
        const auto r = prepared_alignment(pa, pb, full);
        double flat_gaps = 0.0;
        for (const auto& s : r.path) {
            const double g = pa.ssr(0, static_cast<Eigen::Index>(s.i)) - pb.ssr(0, static_cast<Eigen::Index>(s.j));
            flat_gaps += g * g;
        }
        CHECK(distance(a, b, corr) <= r.distance - flat_gaps + 1e-12);
        CHECK(prepare(a, corr).ssr.rows() == 3);
    }
}

TEST_CASE("baseline measures") {
    const auto a = ts({0, 0}), b = ts({1, 1});
    CHECK(distance(a, b, config(MeasureKind::dtw_raw)) == 2.0);
    auto abs_cfg = config(MeasureKind::dtw_raw);
    abs_cfg.scalar_cost = CostKind::absolute_scalar;
    CHECK(distance(ts({0, 0}), ts({2, 2}), abs_cfg) == 4.0);

    const auto r = ramp_peak(20);
    CHECK(distance(r, r, config(MeasureKind::euclid_znorm)) == 0.0);
    CHECK(distance(ts(std::vector<double>(12, 1.0)), ts(std::vector<double>(12, 9.0)),
                   config(MeasureKind::ssr_euclid)) == 0.0);
    // z-normalized DTW ignores affine maps entirely.
    TimeSeries s = r;
    for (double& v : s.values) v = 4.0 * v - 7.0;
    CHECK(distance(r, s, config(MeasureKind::dtw_znorm)) <= 1e-18);

    try {
        distance(ts({1, 2, 3, 4, 5}), ts({1, 2, 3, 4, 5, 6}), config(MeasureKind::ssr_euclid));
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::length_mismatch);
    }
    CHECK_THROWS_AS(distance(ts({1, 2, 3}), ts({1, 2}), config(MeasureKind::euclid_znorm)), Error);
}

TEST_CASE("smoothing happens before the transform") {
    testing::Generator gen(4);
    const auto a = gen.series(30, 0, 10), b = gen.series(30, 0, 10);
    auto cfg = config(MeasureKind::dtw_plus_s);
    cfg.smoothing_window = 5;
    auto plain = config(MeasureKind::dtw_plus_s);
    CHECK(distance(a, b, cfg) == distance(moving_average(a, 5), moving_average(b, 5), plain));
}

TEST_CASE("window clamping") {
    const auto a = ramp_peak(30), b = ramp_peak(24);
    auto cfg = config(MeasureKind::dtw_plus_s);
    cfg.tau = Window::band(2);
    CHECK_THROWS_AS(distance(a, b, cfg), Error);
    cfg.clamp_window = true;
    auto wide = cfg;
    wide.tau = Window::band(6);
    CHECK(distance(a, b, cfg) == distance(a, b, wide));
}

TEST_CASE("distance_matrix") {
    const auto ds = synthetic::trend_archetypes(3, 5);
    const auto cfg = config(MeasureKind::dtw_plus_s);

    SUBCASE("symmetric, zero diagonal, matches pairwise distance") {
        const auto d = distance_matrix(ds.series, cfg);
        REQUIRE(d.size() == ds.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(d(i, i) == 0.0);
            for (std::size_t j = 0; j < d.size(); ++j) {
                CHECK(d(i, j) == d(j, i));
                if (i < j) CHECK(d(i, j) == distance(ds.series[i], ds.series[j], cfg));
            }
        }
        CHECK(d.ids == std::vector<std::string>{ds.series[0].id, ds.series[1].id, ds.series[2].id,
                                                ds.series[3].id, ds.series[4].id, ds.series[5].id,
                                                ds.series[6].id, ds.series[7].id, ds.series[8].id,
                                                ds.series[9].id, ds.series[10].id, ds.series[11].id});
    }
    SUBCASE("identical inputs give zeros") {
        const std::vector<TimeSeries> same(5, ds.series[1]);
        CHECK(distance_matrix(same, cfg).values.isZero(0.0));
    }
    SUBCASE("serial and parallel agree exactly") {
        for (MeasureKind k : all_measures()) {
            const auto c = config(k);
            CHECK(distance_matrix(ds.series, c, Execution::serial).values ==
                  distance_matrix(ds.series, c, Execution::parallel).values);
        }
    }
    SUBCASE("progress counts every pair once") {
        std::vector<std::size_t> seen;
        std::size_t total_seen = 0;
        distance_matrix(ds.series, cfg, Execution::parallel, [&](std::size_t done, std::size_t total) {
            seen.push_back(done);
            total_seen = total;
        });
        const std::size_t pairs = ds.size() * (ds.size() - 1) / 2;
        CHECK(total_seen == pairs);
        REQUIRE(seen.size() == pairs);
        std::sort(seen.begin(), seen.end());
        for (std::size_t k = 0; k < pairs; ++k) CHECK(seen[k] == k + 1);
    }
    SUBCASE("failing pair is identified") {
        auto series = ds.series;
        series[2].values.resize(3);
        series[4].values.resize(2);
        for (Execution e : {Execution::serial, Execution::parallel}) {
            try {
                distance_matrix(series, cfg, e);
                FAIL("expected error");
            } catch (const Error& err) {
                CHECK(err.code() == Errc::series_too_short);
                CHECK(std::string(err.what()).find(series[2].id) != std::string::npos);
            }
        }
        auto mixed = ds.series;
        mixed[3].values.resize(50);
        try {
            distance_matrix(mixed, config(MeasureKind::euclid_znorm), Execution::parallel);
            FAIL("expected error");
        } catch (const Error& err) {
            CHECK(err.code() == Errc::length_mismatch);
            CHECK(std::string(err.what()).find("pair (0, 3)") != std::string::npos);
        }
    }
    CHECK_THROWS_AS(distance_matrix({ds.series[0]}, cfg), Error);
}

TEST_CASE("cross kernel") {
    const auto ds = synthetic::trend_archetypes(2, 9);
    const auto cfg = config(MeasureKind::dtw_plus_s_cosine);
    const auto rows = kernels::prepare_all_serial({ds.series.begin(), ds.series.begin() + 3}, cfg);
    const auto cols = kernels::prepare_all_parallel(ds.series, cfg);
    const auto s = kernels::cross_serial(rows, cols, cfg);
    CHECK(s == kernels::cross_parallel(rows, cols, cfg));
    REQUIRE(s.rows() == 3);
    REQUIRE(s.cols() == static_cast<Eigen::Index>(ds.size()));
    for (Eigen::Index r = 0; r < 3; ++r) {
        CHECK(s(r, r) == Approx(0.0).epsilon(1e-12));
        for (Eigen::Index c = 0; c < s.cols(); ++c) {
            CHECK(s(r, c) == prepared_distance(rows[static_cast<std::size_t>(r)],
                                               cols[static_cast<std::size_t>(c)], cfg));
        }
    }
    const int before = kernels::thread_count();
    kernels::set_thread_count(1);
    CHECK(kernels::thread_count() == 1);
    kernels::set_thread_count(before);
}
