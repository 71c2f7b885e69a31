#pragma once

// Data-parallel loops over series pairs. Each kernel has a plain serial
// reference used by the tests and the benchmark; the OpenMP version must
// produce bit-identical results because every output cell is written by
// exactly one iteration.

#include <vector>

#include <Eigen/Core>

#include "dtws/measures.hpp"

namespace dtws::kernels {

/// Threads used by the parallel kernels (1 when built without OpenMP).
int thread_count();
void set_thread_count(int n);

std::vector<PreparedSeries> prepare_all_serial(const std::vector<TimeSeries>& series,
                                               const MeasureConfig& cfg);
std::vector<PreparedSeries> prepare_all_parallel(const std::vector<TimeSeries>& series,
                                                 const MeasureConfig& cfg);

/// n x n symmetric matrix from the upper triangle.
Eigen::MatrixXd pairwise_serial(const std::vector<PreparedSeries>& items, const MeasureConfig& cfg,
                                const ProgressFn& progress = {});
Eigen::MatrixXd pairwise_parallel(const std::vector<PreparedSeries>& items, const MeasureConfig& cfg,
                                  const ProgressFn& progress = {});

/// rows.size() x cols.size() matrix of distances (e.g. test x train).
Eigen::MatrixXd cross_serial(const std::vector<PreparedSeries>& rows,
                             const std::vector<PreparedSeries>& cols, const MeasureConfig& cfg);
Eigen::MatrixXd cross_parallel(const std::vector<PreparedSeries>& rows,
                               const std::vector<PreparedSeries>& cols, const MeasureConfig& cfg);

inline std::vector<PreparedSeries> prepare_all(const std::vector<TimeSeries>& series,
                                               const MeasureConfig& cfg, Execution exec) {
    return exec == Execution::serial ? prepare_all_serial(series, cfg) : prepare_all_parallel(series, cfg);
}

inline Eigen::MatrixXd pairwise(const std::vector<PreparedSeries>& items, const MeasureConfig& cfg,
                                Execution exec, const ProgressFn& progress = {}) {
    return exec == Execution::serial ? pairwise_serial(items, cfg, progress)
                                     : pairwise_parallel(items, cfg, progress);
}

inline Eigen::MatrixXd cross(const std::vector<PreparedSeries>& rows,
                             const std::vector<PreparedSeries>& cols, const MeasureConfig& cfg,
                             Execution exec) {
    return exec == Execution::serial ? cross_serial(rows, cols, cfg) : cross_parallel(rows, cols, cfg);
}

}  // namespace dtws::kernels
