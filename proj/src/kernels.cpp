#include "dtws/kernels.hpp"

#include <atomic>
#include <mutex>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dtws/error.hpp"

namespace dtws::kernels {

namespace {

struct PairIndex {
    std::size_t i;
    std::size_t j;
};

std::vector<PairIndex> upper_triangle(std::size_t n) {
    std::vector<PairIndex> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
    }
    return pairs;
}

Error pair_error(const Error& e, const PreparedSeries& a, const PreparedSeries& b, std::size_t i,
                 std::size_t j) {
    return Error(e.code(), "pair (" + std::to_string(i) + ", " + std::to_string(j) + ") [" + a.id +
                               ", " + b.id + "]: " + e.what());
}

Error series_error(const Error& e, const TimeSeries& s, std::size_t i) {
    return Error(e.code(), "series " + std::to_string(i) + " [" + s.id + "]: " + e.what());
}

/// Keeps the lowest-indexed failure so parallel runs report the same error
/// as the serial loop.
class FirstError {
public:
    void record(std::size_t index, Error e) {
        std::lock_guard lock(mutex_);
        if (!error_ || index < index_) {
            index_ = index;
            error_.emplace(std::move(e));
        }
    }
    void rethrow() const {
        if (error_) throw *error_;
    }

private:
    std::mutex mutex_;
    std::size_t index_ = 0;
    std::optional<Error> error_;
};

class Progress {
public:
    Progress(const ProgressFn& fn, std::size_t total) : fn_(fn), total_(total) {}
    void tick() {
        if (!fn_) return;
        const std::size_t done = done_.fetch_add(1, std::memory_order_relaxed) + 1;
        std::lock_guard lock(mutex_);
        fn_(done, total_);
    }

private:
    const ProgressFn& fn_;
    std::size_t total_;
    std::atomic<std::size_t> done_{0};
    std::mutex mutex_;
};

}  // namespace

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_thread_count(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

std::vector<PreparedSeries> prepare_all_serial(const std::vector<TimeSeries>& series,
                                               const MeasureConfig& cfg) {
    std::vector<PreparedSeries> out;
    out.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        try {
            out.push_back(prepare(series[i], cfg));
        } catch (const Error& e) {
            throw series_error(e, series[i], i);
        }
    }
    return out;
}

std::vector<PreparedSeries> prepare_all_parallel(const std::vector<TimeSeries>& series,
                                                 const MeasureConfig& cfg) {
    std::vector<PreparedSeries> out(series.size());
    FirstError failure;
    const auto n = static_cast<std::ptrdiff_t>(series.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        try {
            out[i] = prepare(series[i], cfg);
        } catch (const Error& e) {
            failure.record(i, series_error(e, series[i], i));
        }
    }
    failure.rethrow();
    return out;
}

Eigen::MatrixXd pairwise_serial(const std::vector<PreparedSeries>& items, const MeasureConfig& cfg,
                                const ProgressFn& progress) {
    const std::size_t n = items.size();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const std::size_t total = n * (n - 1) / 2;
    std::size_t done = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = 0.0;
            try {
                v = prepared_distance(items[i], items[j], cfg);
            } catch (const Error& e) {
                throw pair_error(e, items[i], items[j], i, j);
            }
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
            if (progress) progress(++done, total);
        }
    }
    return d;
}

Eigen::MatrixXd pairwise_parallel(const std::vector<PreparedSeries>& items, const MeasureConfig& cfg,
                                  const ProgressFn& progress) {
    const std::size_t n = items.size();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const auto pairs = upper_triangle(n);
    FirstError failure;
    Progress ticker(progress, pairs.size());
    const auto count = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const auto [i, j] = pairs[static_cast<std::size_t>(k)];
        try {
            const double v = prepared_distance(items[i], items[j], cfg);
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        } catch (const Error& e) {
            failure.record(static_cast<std::size_t>(k), pair_error(e, items[i], items[j], i, j));
        }
        ticker.tick();
    }
    failure.rethrow();
    return d;
}

Eigen::MatrixXd cross_serial(const std::vector<PreparedSeries>& rows,
                             const std::vector<PreparedSeries>& cols, const MeasureConfig& cfg) {
    Eigen::MatrixXd d(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            try {
                d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    prepared_distance(rows[r], cols[c], cfg);
            } catch (const Error& e) {
                throw pair_error(e, rows[r], cols[c], r, c);
            }
        }
    }
    return d;
}

Eigen::MatrixXd cross_parallel(const std::vector<PreparedSeries>& rows,
                               const std::vector<PreparedSeries>& cols, const MeasureConfig& cfg) {
    Eigen::MatrixXd d(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    FirstError failure;
    const auto nr = static_cast<std::ptrdiff_t>(rows.size());
    const std::size_t nc = cols.size();
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < nr; ++k) {
        const auto r = static_cast<std::size_t>(k);
        for (std::size_t c = 0; c < nc; ++c) {
            try {
                d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    prepared_distance(rows[r], cols[c], cfg);
            } catch (const Error& e) {
                failure.record(r * nc + c, pair_error(e, rows[r], cols[c], r, c));
            }
        }
    }
    failure.rethrow();
    return d;
}

}  // namespace dtws::kernels
