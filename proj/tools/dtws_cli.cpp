// dtws: command-line front end for the shape-aware DTW library.
//
// Exit codes: 0 success, 1 data/module error, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtws/classify.hpp"
#include "dtws/cluster.hpp"
#include "dtws/ensemble.hpp"
#include "dtws/error.hpp"
#include "dtws/io.hpp"
#include "dtws/kernels.hpp"
#include "dtws/measures.hpp"
#include "dtws/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dtws;

namespace {

// Rounds through the 9-significant-digit text form so JSON and CSV agree.
json num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return std::stod(io::format_number(v));
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        io::write_file(path, text);
    }
}

struct MeasureOptions {
    std::string measure = "dtw_plus_s";
    std::string tau = "inf";
    std::size_t smooth = 1;
    std::string shapelets;
    std::string scalar_cost = "squared";
    double p_floor = -1.0;

    void add_to(CLI::App* app, bool with_tau = true) {
        app->add_option("--measure", measure, "Distance measure")
            ->check(CLI::IsMember({"dtw_plus_s", "dtw_plus_s_cosine", "dtw_plus_s_corr_only", "dtw_raw",
                                   "dtw_znorm", "euclid_znorm", "ssr_euclid"}))
            ->capture_default_str();
        if (with_tau) {
            app->add_option("--tau", tau, "Warping window in steps, or 'inf'")->capture_default_str();
        }
        app->add_option("--smooth", smooth, "Moving-average window (1 = none)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("--shapelets", shapelets, "Shapelet set JSON (default: built-in four)")
            ->check(CLI::ExistingFile);
        app->add_option("--scalar-cost", scalar_cost, "Per-sample cost for dtw_raw/dtw_znorm")
            ->check(CLI::IsMember({"squared", "absolute"}))
            ->capture_default_str();
        app->add_option("--p-floor", p_floor, "Override p in the beta estimation rule")
            ->check(CLI::Range(0.0, 1.0).description("in (0, 1)"));
    }

    [[nodiscard]] io::ShapeletConfig shapelet_config() const {
        io::ShapeletConfig sc = shapelets.empty() ? io::default_shapelet_config() : io::load_shapelet_config(shapelets);
        if (p_floor > 0.0) {
            sc.estimate_beta = true;
            sc.p_floor = p_floor;
        }
        return sc;
    }

    /// Resolves beta on the smoothed data the measure will see.
    [[nodiscard]] MeasureConfig build(const std::vector<TimeSeries>& data) const {
        MeasureConfig cfg;
        cfg.kind = parse_measure(measure);
        cfg.smoothing_window = smooth;
        cfg.scalar_cost = scalar_cost == "absolute" ? CostKind::absolute_scalar : CostKind::squared_euclidean;
        if (tau != "inf") {
            std::size_t pos = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(tau, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tau.size() || tau.empty() || tau.front() == '-') {
                throw CLI::ValidationError("--tau", "expected a non-negative integer or 'inf'");
            }
            cfg.tau = Window::band(v);
        }
        const auto sc = shapelet_config();
        cfg.shapelets = sc.set;
        if (uses_shapelets(cfg.kind)) {
            std::vector<TimeSeries> smoothed;
            smoothed.reserve(data.size());
            for (const auto& s : data) smoothed.push_back(moving_average(s, smooth));
            cfg.flatness = sc.resolve(smoothed);
        }
        return cfg;
    }
};

json measure_json(const MeasureConfig& cfg) {
    json j{{"measure", measure_name(cfg.kind)},
           {"smoothing_window", cfg.smoothing_window},
           {"m0", num(cfg.flatness.m0)},
           {"beta", cfg.flatness.beta_is_infinite() ? json("inf") : num(cfg.flatness.beta)}};
    j["tau"] = cfg.tau.tau ? json(*cfg.tau.tau) : json("inf");
    return j;
}

io::LeadingColumn leading(const std::string& s) { return io::parse_leading_column(s); }

// ---------------------------------------------------------------- ssr

struct SsrCmd {
    std::string input, output, output_dir, leading_col = "id";
    std::size_t index = 0;
    bool all = false;
    MeasureOptions m;

    void attach(CLI::App& root) {
        auto* c = root.add_subcommand("ssr", "Shapelet-space representation of a series");
        c->add_option("--input", input, "Series CSV")->required()->check(CLI::ExistingFile);
        c->add_option("--leading", leading_col, "Leading column: none|id|label")->capture_default_str();
        c->add_option("--index", index, "Row to transform (0-based)")->capture_default_str();
        c->add_flag("--all", all, "Transform every row into --output-dir");
        c->add_option("--output,-o", output, "Output CSV (default stdout)");
        c->add_option("--output-dir", output_dir, "Directory for --all");
        c->add_option("--smooth", m.smooth, "Moving-average window (1 = none)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        c->add_option("--shapelets", m.shapelets, "Shapelet set JSON")->check(CLI::ExistingFile);
        c->add_option("--p-floor", m.p_floor, "Override p in the beta estimation rule")
            ->check(CLI::Range(0.0, 1.0));
        c->callback([this] { run(); });
    }

    void run() const {
        const auto series = io::load_series(input, leading(leading_col));
        MeasureOptions opts = m;
        opts.measure = "dtw_plus_s";
        const MeasureConfig cfg = opts.build(series);
        const auto& set = cfg.shapelet_set();
        auto one = [&](const TimeSeries& s) {
            return io::ssr_csv(ssr_matrix(moving_average(s, cfg.smoothing_window), set, cfg.flatness),
                               set.dimension_names());
        };
        if (all) {
            if (output_dir.empty()) throw CLI::ValidationError("--all", "requires --output-dir");
            fs::create_directories(output_dir);
            for (const auto& s : series) io::write_file(fs::path(output_dir) / (s.id + ".csv"), one(s));
            return;
        }
        if (index >= series.size()) {
            throw Error(Errc::invalid_argument, "--index " + std::to_string(index) + " out of range");
        }
        emit(output, one(series[index]));
    }
};

// ---------------------------------------------------------------- dist

struct DistCmd {
    std::string input, output, format, leading_col = "id";
    bool progress = false;
    MeasureOptions m;

    void attach(CLI::App& root) {
        auto* c = root.add_subcommand("dist", "Pairwise distance matrix");
        c->add_option("--input", input, "Series CSV")->required()->check(CLI::ExistingFile);
        c->add_option("--leading", leading_col, "Leading column: none|id|label")->capture_default_str();
        c->add_option("--output,-o", output, "Output file (default stdout)");
        c->add_option("--format", format, "csv or json (default: from extension, else csv)")
            ->check(CLI::IsMember({"csv", "json"}));
        c->add_flag("--progress", progress, "Report progress on stderr");
        m.add_to(c);
        c->callback([this] { run(); });
    }

    void run() const {
        const auto series = io::load_series(input, leading(leading_col));
        const MeasureConfig cfg = m.build(series);
        ProgressFn report;
        if (progress) {
            report = [](std::size_t done, std::size_t total) {
                if (done == total || done % 100 == 0) std::cerr << "\r" << done << "/" << total << std::flush;
                if (done == total) std::cerr << "\n";
            };
        }
        const DistanceMatrix d = distance_matrix(series, cfg, Execution::parallel, report);
        std::string fmt = format;
        if (fmt.empty()) fmt = fs::path(output).extension() == ".json" ? "json" : "csv";
        if (fmt == "csv") {
            emit(output, io::distance_matrix_csv(d));
            return;
        }
        json rows = json::array();
        for (std::size_t i = 0; i < d.size(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < d.size(); ++j) row.push_back(num(d(i, j)));
            rows.push_back(row);
        }
        emit(output, json{{"ids", d.ids}, {"config", measure_json(cfg)}, {"distances", rows}}.dump(2) + "\n");
    }
};

// ---------------------------------------------------------------- cluster

struct ClusterCmd {
    std::string input, matrix, output, clusters_csv, leading_col = "id", linkage = "average";
    std::size_t kmax = 0, k = 0;
    MeasureOptions m;

    void attach(CLI::App& root) {
        auto* c = root.add_subcommand("cluster", "Agglomerative clustering with silhouette-chosen k");
        auto* in = c->add_option("--input", input, "Series CSV")->check(CLI::ExistingFile);
        auto* mx = c->add_option("--matrix", matrix, "Precomputed distance matrix CSV")->check(CLI::ExistingFile);
        in->excludes(mx);
        c->add_option("--leading", leading_col, "Leading column: none|id|label")->capture_default_str();
        c->add_option("--kmax", kmax, "Largest k tried (default min(10, n-1))");
        c->add_option("--k", k, "Use this k instead of selecting one");
        c->add_option("--linkage", linkage, "average|complete|single")
            ->check(CLI::IsMember({"average", "complete", "single"}))
            ->capture_default_str();
        c->add_option("--output,-o", output, "JSON result (default stdout)");
        c->add_option("--clusters-csv", clusters_csv, "Write cluster,id,values... rows here");
        m.add_to(c);
        c->callback([this] { run(); });
    }

    void run() const {
        if (input.empty() && matrix.empty()) throw CLI::ValidationError("cluster", "needs --input or --matrix");
        std::vector<TimeSeries> series;
        DistanceMatrix d;
        json config;
        if (!matrix.empty()) {
            d = io::parse_distance_matrix_csv(io::read_file(matrix));
            config = json{{"matrix", fs::path(matrix).filename().string()}};
        } else {
            series = io::load_series(input, leading(leading_col));
            const MeasureConfig cfg = m.build(series);
            d = distance_matrix(series, cfg);
            config = measure_json(cfg);
        }
        const Linkage l = parse_linkage(linkage);
        const ClusterResult r = k > 0 ? agglomerate(d, k, l) : select_k(d, kmax > 0 ? kmax : default_k_max(d.size()), l);

        json out{{"ids", d.ids},
                 {"labels", r.labels},
                 {"k", r.k},
                 {"silhouette", num(r.mean_silhouette)},
                 {"linkage", linkage_name(r.linkage)},
                 {"config", config}};
        emit(output, out.dump(2) + "\n");

        if (!clusters_csv.empty()) {
            if (series.empty()) throw CLI::ValidationError("--clusters-csv", "needs --input series");
            std::string csv;
            for (std::size_t c = 1; c <= r.k; ++c) {
                for (std::size_t i = 0; i < series.size(); ++i) {
                    if (static_cast<std::size_t>(r.labels[i]) != c) continue;
                    csv += std::to_string(c) + "," + series[i].id;
                    for (double v : series[i].values) csv += "," + io::format_number(v);
                    csv += '\n';
                }
            }
            io::write_file(clusters_csv, csv);
        }
    }
};

// ---------------------------------------------------------------- classify

struct ClassifyCmd {
    std::string train, test, report, beta_mode = "estimate";
    std::vector<double> tau_fracs{0.0, 0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07};
    std::vector<double> smooth_fracs{0.0, 0.1, 0.2, 0.4};
    MeasureOptions m;

    void attach(CLI::App& root) {
        auto* c = root.add_subcommand("classify", "1-NN with leave-one-out grid selection");
        c->add_option("--train", train, "UCR-format training file")->required()->check(CLI::ExistingFile);
        c->add_option("--test", test, "UCR-format test file")->required()->check(CLI::ExistingFile);
        c->add_option("--tau-fracs", tau_fracs, "Warping window fractions of T")->delimiter(',')->capture_default_str();
        c->add_option("--smooth-fracs", smooth_fracs, "Smoothing fractions of T (0 = none)")
            ->delimiter(',')
            ->capture_default_str();
        c->add_option("--beta", beta_mode, "estimate per grid cell, or fixed from the shapelet JSON")
            ->check(CLI::IsMember({"estimate", "fixed"}))
            ->capture_default_str();
        c->add_option("--report", report, "JSON report path (default stdout)");
        c->add_option("--measure", m.measure, "Distance measure")
            ->check(CLI::IsMember({"dtw_plus_s", "dtw_plus_s_cosine", "dtw_plus_s_corr_only", "dtw_raw",
                                   "dtw_znorm", "euclid_znorm", "ssr_euclid"}))
            ->capture_default_str();
        c->add_option("--shapelets", m.shapelets, "Shapelet set JSON")->check(CLI::ExistingFile);
        c->add_option("--scalar-cost", m.scalar_cost, "Per-sample cost for dtw_raw/dtw_znorm")
            ->check(CLI::IsMember({"squared", "absolute"}))
            ->capture_default_str();
        c->add_option("--p-floor", m.p_floor, "Override p in the beta estimation rule")
            ->check(CLI::Range(0.0, 1.0));
        c->callback([this] { run(); });
    }

    void run() const {
        const LabeledDataset tr = load_ucr(train), te = load_ucr(test);
        HyperGrid grid;
        grid.tau_fractions = tau_fracs;
        grid.smooth_fractions = smooth_fracs;
        const auto sc = m.shapelet_config();
        const BetaMode mode = beta_mode == "fixed" ? BetaMode::fixed : BetaMode::estimate;
        if (mode == BetaMode::fixed && sc.estimate_beta) {
            throw CLI::ValidationError("--beta", "fixed needs a shapelet JSON with an explicit beta");
        }
        MeasureOptions opts = m;
        opts.smooth = 1;
        MeasureConfig base = opts.build(tr.series);
        const auto r = classify_with_selection(tr, te, grid, base, mode);

        json cells = json::array();
        for (const auto& c : r.selection.cells) {
            cells.push_back({{"tau_fraction", num(c.tau_fraction)},
                             {"smooth_fraction", num(c.smooth_fraction)},
                             {"tau", c.tau},
                             {"smoothing_window", c.smoothing_window},
                             {"loo_error", num(c.loo_error)}});
        }
        const auto& ch = r.selection.chosen;
        json out{{"train", {{"path", fs::path(train).filename().string()}, {"size", tr.size()}}},
                 {"test", {{"path", fs::path(test).filename().string()}, {"size", te.size()}}},
                 {"grid", cells},
                 {"chosen",
                  {{"tau_fraction", num(ch.tau_fraction)},
                   {"smooth_fraction", num(ch.smooth_fraction)},
                   {"tau", ch.tau},
                   {"smoothing_window", ch.smoothing_window},
                   {"loo_error", num(ch.loo_error)},
                   {"config", measure_json(r.selection.config)}}},
                 {"error", num(r.test.error)},
                 {"predictions", r.test.predictions}};
        emit(report, out.dump(2) + "\n");
    }
};

// ---------------------------------------------------------------- ensemble

struct EnsembleCmd {
    std::string input, output, csv, leading_col = "id", base = "0", anchor = "center";
    MeasureOptions m;

    void attach(CLI::App& root) {
        auto* c = root.add_subcommand("ensemble", "DTW+S ensemble (and the mean ensemble for reference)");
        c->add_option("--input", input, "Series CSV")->required()->check(CLI::ExistingFile);
        c->add_option("--leading", leading_col, "Leading column: none|id|label")->capture_default_str();
        c->add_option("--base", base, "Base series index, or 'all'")->capture_default_str();
        c->add_option("--anchor", anchor, "Event time inside a window: start|center")
            ->check(CLI::IsMember({"start", "center"}))
            ->capture_default_str();
        c->add_option("--output,-o", output, "JSON result (default stdout)");
        c->add_option("--csv", csv, "Interpolated ensembles as CSV, one row per base plus the mean");
        m.add_to(c);
        c->callback([this] { run(); });
    }

    void run() const {
        const auto series = io::load_series(input, leading(leading_col));
        const MeasureConfig cfg = m.build(series);
        const Anchor a = parse_anchor(anchor);
        std::vector<EnsembleResult> results;
        if (base == "all") {
            results = ensemble_all_bases(series, cfg, a);
        } else {
            std::size_t pos = 0;
            unsigned long b = 0;
            try {
                b = std::stoul(base, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != base.size() || base.front() == '-') {
                throw CLI::ValidationError("--base", "expected an index or 'all'");
            }
            results.push_back(dtw_s_ensemble(series, b, cfg, a));
        }

        json runs = json::array();
        std::vector<TimeSeries> rows;
        for (const auto& r : results) {
            json pts = json::array();
            for (const auto& p : r.points) pts.push_back({num(p.t_bar), num(p.a_bar), p.alignment_id});
            runs.push_back({{"base_index", r.base_index},
                            {"base_id", r.base_id},
                            {"peak", num(r.peak())},
                            {"points", pts}});
            rows.push_back(r.interpolated);
        }
        json out{{"anchor", anchor_name(a)}, {"config", measure_json(cfg)}, {"ensembles", runs}};
        bool equal_lengths = true;
        for (const auto& s : series) equal_lengths = equal_lengths && s.size() == series.front().size();
        if (equal_lengths) {
            TimeSeries mean = mean_ensemble(series);
            out["mean_ensemble_peak"] = num(*std::max_element(mean.values.begin(), mean.values.end()));
            rows.push_back(std::move(mean));
        }
        emit(output, out.dump(2) + "\n");
        if (!csv.empty()) io::write_file(csv, io::series_csv(rows));
    }
};

// ---------------------------------------------------------------- synth

struct SynthCmd {
    std::string kind = "trend", output;
    std::uint64_t seed = 1;
    std::size_t count = 10;
    double noise = 1.0;

    void attach(CLI::App& root) {
        auto* c = root.add_subcommand("synth", "Generate a seeded synthetic dataset");
        c->add_option("--kind", kind, "trend|single_peak|two_peak|spike|noisy|shifted")
            ->check(CLI::IsMember({"trend", "single_peak", "two_peak", "spike", "noisy", "shifted"}))
            ->capture_default_str();
        c->add_option("--seed", seed, "Random seed")->capture_default_str();
        c->add_option("--count", count, "Series per class (single_peak: total)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        c->add_option("--noise", noise, "Noise std for --kind noisy")->capture_default_str();
        c->add_option("--output,-o", output, "Output file (default stdout)");
        c->callback([this] { run(); });
    }

    static std::string ucr(const LabeledDataset& ds) {
        std::string out;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            out += ds.labels[i];
            for (double v : ds.series[i].values) out += "," + io::format_number(v);
            out += '\n';
        }
        return out;
    }

    void run() const {
        // Labeled kinds come out in UCR layout; the others as id,values rows.
        if (kind == "trend") return emit(output, ucr(synthetic::trend_archetypes(count, seed)));
        if (kind == "spike") return emit(output, ucr(synthetic::spike_vs_monotone(count, seed)));
        if (kind == "noisy") return emit(output, ucr(synthetic::noisy_bump(count, seed, 60, noise)));
        if (kind == "shifted") return emit(output, ucr(synthetic::shifted_prototypes(count, seed)));
        if (kind == "single_peak") return emit(output, io::series_csv(synthetic::single_peak_cluster(count, seed)));
        emit(output, io::series_csv(synthetic::two_peak_pair()));
    }
};

void apply_thread_env() {
    const char* env = std::getenv("DTWS_THREADS");
    if (env == nullptr || *env == '\0') return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) {
        std::cerr << "dtws: ignoring DTWS_THREADS='" << env << "' (expected a positive integer)\n";
        return;
    }
    kernels::set_thread_count(static_cast<int>(n));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shape-aware dynamic time warping: SSR, distances, clustering, classification, ensembles"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "dtws 0.1.0");

    SsrCmd ssr;
    DistCmd dist;
    ClusterCmd cluster;
    ClassifyCmd classify;
    EnsembleCmd ensemble;
    SynthCmd synth;
    ssr.attach(app);
    dist.attach(app);
    cluster.attach(app);
    classify.attach(app);
    ensemble.attach(app);
    synth.attach(app);

    apply_thread_env();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version exit 0; everything else from CLI11 is a usage error.
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "dtws: error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "dtws: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
