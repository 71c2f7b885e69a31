#include "doctest.h"

#include <cmath>

#include "dtws/classify.hpp"
#include "dtws/error.hpp"
#include "dtws/synthetic.hpp"
#include "support.hpp"

using namespace dtws;
using doctest::Approx;

namespace {

MeasureConfig plus_s() {
    MeasureConfig c;
    c.kind = MeasureKind::dtw_plus_s;
    c.flatness = FlatnessParams{0.0, std::log(10.0)};
    return c;
}

LabeledDataset subset(const LabeledDataset& ds, std::size_t from, std::size_t to) {
    LabeledDataset out;
    out.name = ds.name;
    for (std::size_t i = from; i < to; ++i) {
        out.labels.push_back(ds.labels[i]);
        out.series.push_back(ds.series[i]);
    }
    return out;
}

}  // namespace

TEST_CASE("parse_ucr") {
    const auto ds = parse_ucr("1,0,1,2\n2,5,4,3\n");
    REQUIRE(ds.size() == 2);
    CHECK(ds.labels == std::vector<std::string>{"1", "2"});
    CHECK(ds.series[0].values == std::vector<double>{0, 1, 2});
    CHECK(ds.series[1].values == std::vector<double>{5, 4, 3});
    CHECK(ds.max_length() == 3);

    const auto tabbed = parse_ucr("1\t0\t1\t2\n2\t5\t4\t3\n");
    CHECK(tabbed.labels == ds.labels);
    CHECK(tabbed.series[1].values == ds.series[1].values);
    const auto spaced = parse_ucr("  1  0 1 2\n2 5   4 3\n");
    CHECK(spaced.series[0].values == ds.series[0].values);

    try {
        parse_ucr("1,0,1,2\n2,5,NaN,3\n");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse_error);
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
    try {
        parse_ucr("\n\n");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_file);
    }
}

TEST_CASE("one_nn basics") {
    const auto ds = synthetic::trend_archetypes(3, 2);
    const auto cfg = plus_s();

    SUBCASE("test copies of train") {
        const auto r = one_nn(ds, ds, cfg);
        CHECK(r.error == 0.0);
        CHECK(r.predictions == ds.labels);
        for (std::size_t i = 0; i < ds.size(); ++i) CHECK(r.neighbors[i] == i);
    }
    SUBCASE("single training instance") {
        const auto one = subset(ds, 1, 2);
        const auto r = one_nn(one, ds, cfg);
        CHECK(r.predictions == std::vector<std::string>(ds.size(), ds.labels[1]));
        CHECK(r.error == Approx(0.75));
    }
    SUBCASE("ties go to the lowest training index") {
        LabeledDataset twins;
        twins.labels = {"x", "y"};
        twins.series = {ds.series[0], ds.series[0]};
        const auto r = one_nn(twins, subset(ds, 0, 1), cfg);
        CHECK(r.predictions[0] == "x");
        CHECK(r.neighbors[0] == 0);
    }
    SUBCASE("relabeling is a bijection on predictions") {
        const auto train = subset(ds, 0, 8), test = subset(ds, 8, 12);
        auto renamed_train = train, renamed_test = test;
        auto rename = [](const std::string& l) { return "class_" + l + "_z"; };
        for (auto& l : renamed_train.labels) l = rename(l);
        for (auto& l : renamed_test.labels) l = rename(l);
        const auto a = one_nn(train, test, cfg), b = one_nn(renamed_train, renamed_test, cfg);
        CHECK(a.error == b.error);
        for (std::size_t i = 0; i < a.predictions.size(); ++i) CHECK(rename(a.predictions[i]) == b.predictions[i]);
    }
    SUBCASE("serial equals parallel") {
        const auto train = subset(ds, 0, 6), test = subset(ds, 6, 12);
        const auto a = one_nn(train, test, cfg, Execution::serial), b = one_nn(train, test, cfg, Execution::parallel);
        CHECK(a.neighbors == b.neighbors);
    }
    CHECK_THROWS_AS(one_nn(LabeledDataset{}, ds, cfg), Error);
}

TEST_CASE("co-scaled affine maps keep distances and neighbours") {
    const auto ds = synthetic::trend_archetypes(2, 13);
    const double alpha = 7.5, shift = -40.0;
    auto scaled = ds;
    for (auto& s : scaled.series)
        for (double& v : s.values) v = alpha * v + shift;

    auto cfg = plus_s();
    cfg.flatness = FlatnessParams{0.3, 0.9};
    auto cfg_scaled = cfg;
    cfg_scaled.flatness = FlatnessParams{cfg.flatness.m0 * alpha, cfg.flatness.beta / alpha};

    const auto d = distance_matrix(ds.series, cfg), ds_scaled = distance_matrix(scaled.series, cfg_scaled);
    CHECK((d.values - ds_scaled.values).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(nearest_indices(d.values, true) == nearest_indices(ds_scaled.values, true));
}

TEST_CASE("nearest_indices") {
    Eigen::MatrixXd m(3, 3);
    m << 0, 2, 2, 1, 0, 1, 5, 3, 0;
    CHECK(nearest_indices(m, false) == std::vector<std::size_t>{0, 1, 2});
    CHECK(nearest_indices(m, true) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("hyperparameter grid") {
    HyperGrid g;
    CHECK(g.tau_fractions.size() == 8);
    CHECK(g.smooth_fractions == std::vector<double>{0.0, 0.1, 0.2, 0.4});
    g.validate();
    HyperGrid bad;
    bad.tau_fractions = {};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad.tau_fractions = {-0.1};
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("cell_config") {
    const auto ds = synthetic::noisy_bump(3, 1, 60, 1.0);
    const auto c = cell_config(ds, plus_s(), 0.05, 0.1, BetaMode::estimate);
    CHECK(c.tau.tau == 3u);
    CHECK(c.smoothing_window == 6);
    CHECK(c.clamp_window);

    std::vector<TimeSeries> smoothed;
    for (const auto& s : ds.series) smoothed.push_back(moving_average(s, 6));
    CHECK(c.flatness.beta == estimate_beta(smoothed, default_shapelet_set()).beta);

    const auto fixed = cell_config(ds, plus_s(), 0.0, 0.0, BetaMode::fixed);
    CHECK(fixed.flatness.beta == plus_s().flatness.beta);
    CHECK(fixed.smoothing_window == 1);
    CHECK(fixed.tau.tau == 0u);
}

TEST_CASE("loocv_select") {
    const auto ds = synthetic::spike_vs_monotone(5, 3);

    SUBCASE("single cell grid returns that cell") {
        HyperGrid g;
        g.tau_fractions = {0.03};
        g.smooth_fractions = {0.1};
        const auto sel = loocv_select(ds, g, plus_s());
        REQUIRE(sel.cells.size() == 1);
        CHECK(sel.chosen.tau_fraction == 0.03);
        CHECK(sel.chosen.smooth_fraction == 0.1);
        CHECK(sel.chosen.tau == 1);
        CHECK(sel.config.smoothing_window == 6);
        CHECK(sel.chosen.loo_error == Approx(loo_error(ds, sel.config)));
    }
    SUBCASE("cross product and tie-breaking") {
        const auto sel = loocv_select(ds, HyperGrid{}, plus_s());
        CHECK(sel.cells.size() == 32);
        double best = 2.0;
        for (const auto& c : sel.cells) {
            CHECK(c.loo_error >= 0.0);
            CHECK(c.loo_error <= 1.0);
            best = std::min(best, c.loo_error);
        }
        CHECK(sel.chosen.loo_error == best);
        // No cell with equal error has a smaller smoothing, or equal smoothing and smaller tau.
        for (const auto& c : sel.cells) {
            if (c.loo_error != best) continue;
            CHECK(c.smooth_fraction >= sel.chosen.smooth_fraction);
            if (c.smooth_fraction == sel.chosen.smooth_fraction) CHECK(c.tau_fraction >= sel.chosen.tau_fraction);
        }
    }
    SUBCASE("serial equals parallel") {
        HyperGrid g;
        g.tau_fractions = {0.0, 0.05};
        g.smooth_fractions = {0.0, 0.2};
        const auto a = loocv_select(ds, g, plus_s(), BetaMode::estimate, Execution::serial);
        const auto b = loocv_select(ds, g, plus_s(), BetaMode::estimate, Execution::parallel);
        for (std::size_t i = 0; i < a.cells.size(); ++i) CHECK(a.cells[i].loo_error == b.cells[i].loo_error);
    }
    CHECK_THROWS_AS(loocv_select(subset(ds, 0, 1), HyperGrid{}, plus_s()), Error);
}

TEST_CASE("shifted prototypes select a nonzero warping window") {
    const auto train = synthetic::shifted_prototypes(6, 1);
    const auto sel = loocv_select(train, HyperGrid{}, plus_s());
    CHECK(sel.chosen.tau > 0);
    double zero_tau_best = 2.0;
    for (const auto& c : sel.cells)
        if (c.tau_fraction == 0.0) zero_tau_best = std::min(zero_tau_best, c.loo_error);
    CHECK(sel.chosen.loo_error < zero_tau_best);
}

TEST_CASE("classify_with_selection") {
    const auto train = synthetic::spike_vs_monotone(6, 8), test = synthetic::spike_vs_monotone(6, 108);
    HyperGrid g;
    g.tau_fractions = {0.0, 0.02};
    g.smooth_fractions = {0.0};
    const auto r = classify_with_selection(train, test, g, plus_s());
    CHECK(r.test.error >= 0.0);
    CHECK(r.test.error <= 1.0);
    CHECK(r.test.predictions.size() == test.size());
    CHECK(r.test.error == one_nn(train, test, r.selection.config).error);
}
