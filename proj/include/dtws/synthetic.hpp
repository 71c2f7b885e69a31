#pragma once

// Seeded generators for the constructed datasets used by the tests, the
// benchmark and `dtws synth`. Same seed, same build => same data.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dtws/classify.hpp"

namespace dtws::synthetic {

std::vector<double> gaussian_bump(std::size_t length, double center, double width, double height);

/// Four archetypes (labels "1".."4"): monotone rise, single peak, double
/// peak, late surge. Each instance gets a random time shift in
/// [-max_shift, max_shift] and a random scale in [0.5, 2].
LabeledDataset trend_archetypes(std::size_t per_class, std::uint64_t seed, std::size_t length = 60,
                                double max_shift = 5.0);

/// Only the single-peak archetype.
std::vector<TimeSeries> single_peak_cluster(std::size_t count, std::uint64_t seed, std::size_t length = 60,
                                            double max_shift = 5.0);

struct TwoPeakSpec {
    std::size_t length = 80;
    double first_time = 25.0;
    double second_time = 50.0;
    double first_height = 100.0;
    double second_height = 120.0;
    double width = 3.0;
    double offset = 6.0;
};

/// Two series with two peaks each; the second is the first delayed by
/// spec.offset steps.
std::vector<TimeSeries> two_peak_pair(const TwoPeakSpec& spec = {});

/// Label "A": rising ramp with a small mid-series spike; label "B": plain
/// ramp. Ramp offsets vary widely, so raw values say little about class.
LabeledDataset spike_vs_monotone(std::size_t per_class, std::uint64_t seed, std::size_t length = 60);

/// Label "A": level series with a broad bump, label "B": without; both
/// buried in Gaussian noise of the given standard deviation.
LabeledDataset noisy_bump(std::size_t per_class, std::uint64_t seed, std::size_t length = 60,
                          double noise = 1.0);

/// Two class prototypes (bump-then-dip vs dip-then-bump), each instance
/// shifted by up to max_shift steps.
LabeledDataset shifted_prototypes(std::size_t per_class, std::uint64_t seed, std::size_t length = 100,
                                  double max_shift = 6.0);

}  // namespace dtws::synthetic
