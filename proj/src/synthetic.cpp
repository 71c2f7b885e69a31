#include "dtws/synthetic.hpp"

#include <cmath>
#include <random>
#include <string>

namespace dtws::synthetic {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

TimeSeries make_series(std::string id, std::vector<double> values) {
    TimeSeries s;
    s.id = std::move(id);
    s.values = std::move(values);
    return s;
}

std::vector<double> archetype(int kind, std::size_t length, double shift, double scale) {
    std::vector<double> v(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double t = static_cast<double>(i) - shift;
        double x = 0.0;
        switch (kind) {
            case 0: x = 100.0 / (1.0 + std::exp(-(t - 30.0) / 3.0)); break;
            case 1: x = 100.0 * std::exp(-0.5 * std::pow((t - 30.0) / 5.0, 2)); break;
            case 2:
                x = 100.0 * std::exp(-0.5 * std::pow((t - 18.0) / 4.0, 2)) +
                    100.0 * std::exp(-0.5 * std::pow((t - 42.0) / 4.0, 2));
                break;
            default: x = 100.0 * std::exp((t - 52.0) / 4.0); break;
        }
        v[i] = scale * x;
    }
    return v;
}

}  // namespace

std::vector<double> gaussian_bump(std::size_t length, double center, double width, double height) {
    std::vector<double> v(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double z = (static_cast<double>(i) - center) / width;
        v[i] = height * std::exp(-0.5 * z * z);
    }
    return v;
}

LabeledDataset trend_archetypes(std::size_t per_class, std::uint64_t seed, std::size_t length,
                                double max_shift) {
    Rng rng(seed);
    LabeledDataset ds;
    ds.name = "trend_archetypes";
    for (std::size_t i = 0; i < per_class; ++i) {
        for (int kind = 0; kind < 4; ++kind) {
            const double shift = uniform(rng, -max_shift, max_shift);
            const double scale = uniform(rng, 0.5, 2.0);
            ds.labels.push_back(std::to_string(kind + 1));
            ds.series.push_back(make_series("c" + std::to_string(kind + 1) + "_" + std::to_string(i),
                                            archetype(kind, length, shift, scale)));
        }
    }
    return ds;
}

std::vector<TimeSeries> single_peak_cluster(std::size_t count, std::uint64_t seed, std::size_t length,
                                            double max_shift) {
    Rng rng(seed);
    std::vector<TimeSeries> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double shift = uniform(rng, -max_shift, max_shift);
        const double scale = uniform(rng, 0.5, 2.0);
        out.push_back(make_series("peak_" + std::to_string(i), archetype(1, length, shift, scale)));
    }
    return out;
}

std::vector<TimeSeries> two_peak_pair(const TwoPeakSpec& spec) {
    std::vector<TimeSeries> out;
    for (int k = 0; k < 2; ++k) {
        const double delay = k * spec.offset;
        auto a = gaussian_bump(spec.length, spec.first_time + delay, spec.width, spec.first_height);
        const auto b = gaussian_bump(spec.length, spec.second_time + delay, spec.width, spec.second_height);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        out.push_back(make_series(k == 0 ? "early" : "late", std::move(a)));
    }
    return out;
}

LabeledDataset spike_vs_monotone(std::size_t per_class, std::uint64_t seed, std::size_t length) {
    Rng rng(seed);
    LabeledDataset ds;
    ds.name = "spike_vs_monotone";
    const double mid = static_cast<double>(length) / 2.0;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const bool spike = i % 2 == 0;
        const double offset = uniform(rng, 0.0, 50.0);
        const double slope = uniform(rng, 0.8, 1.25);
        const double center = mid + uniform(rng, -3.0, 3.0);
        std::vector<double> v(length);
        const auto bump = gaussian_bump(length, center, 1.5, 6.0);
        for (std::size_t t = 0; t < length; ++t) {
            v[t] = offset + slope * static_cast<double>(t) + (spike ? bump[t] : 0.0);
        }
        ds.labels.emplace_back(spike ? "A" : "B");
        ds.series.push_back(make_series(std::to_string(i), std::move(v)));
    }
    return ds;
}

LabeledDataset noisy_bump(std::size_t per_class, std::uint64_t seed, std::size_t length, double noise) {
    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, noise);
    LabeledDataset ds;
    ds.name = "noisy_bump";
    const double mid = static_cast<double>(length) / 2.0;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const bool bump = i % 2 == 0;
        const double level = uniform(rng, 0.0, 5.0);
        const double center = mid + uniform(rng, -3.0, 3.0);
        const auto shape = gaussian_bump(length, center, 4.0, 6.0);
        std::vector<double> v(length);
        for (std::size_t t = 0; t < length; ++t) v[t] = level + (bump ? shape[t] : 0.0) + gauss(rng);
        ds.labels.emplace_back(bump ? "A" : "B");
        ds.series.push_back(make_series(std::to_string(i), std::move(v)));
    }
    return ds;
}

LabeledDataset shifted_prototypes(std::size_t per_class, std::uint64_t seed, std::size_t length,
                                  double max_shift) {
    Rng rng(seed);
    LabeledDataset ds;
    ds.name = "shifted_prototypes";
    const double mid = static_cast<double>(length) / 2.0;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const bool bump_first = i % 2 == 0;
        const double shift = uniform(rng, -max_shift, max_shift);
        const double sign = bump_first ? 1.0 : -1.0;
        const auto first = gaussian_bump(length, mid - 4.0 + shift, 1.0, 20.0 * sign);
        const auto second = gaussian_bump(length, mid + 4.0 + shift, 1.0, -20.0 * sign);
        std::vector<double> v(length);
        for (std::size_t t = 0; t < length; ++t) v[t] = 50.0 + first[t] + second[t];
        ds.labels.emplace_back(bump_first ? "A" : "B");
        ds.series.push_back(make_series(std::to_string(i), std::move(v)));
    }
    return ds;
}

}  // namespace dtws::synthetic
