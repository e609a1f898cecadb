#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <vector>

#include <json.hpp>

#include "manifest.hpp"
#include "scrub/anticluster.hpp"
#include "scrub/datagen.hpp"
#include "scrub/diagnostics.hpp"
#include "scrub/io.hpp"
#include "scrub/removal.hpp"
#include "scrub/svg.hpp"
#include "scrub/tfidf.hpp"

namespace scrub::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path require_out_dir(const std::string& out) {
    if (out.empty()) throw UsageError("--out is required");
    fs::create_directories(out);
    return out;
}

ClassifierKind parse_classifier(const std::string& name) {
    if (name == "logistic") return ClassifierKind::Logistic;
    if (name == "nearest-centroid") return ClassifierKind::NearestCentroid;
    throw UsageError("unknown classifier '" + name + "' (expected logistic or nearest-centroid)");
}

// Iteration snapshots of a removal run: (iteration, dataset). A plain CSV
// file is treated as the single iteration 0.
std::vector<std::pair<int, Dataset>> load_series(const fs::path& input, Manifest& manifest) {
    std::vector<std::pair<int, Dataset>> series;
    if (fs::is_directory(input)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(input)) {
            const std::string name = entry.path().filename().string();
            if (name.rfind("iter_", 0) == 0 && entry.path().extension() == ".csv") {
                files.push_back(entry.path());
            }
        }
        if (files.empty()) {
            throw DataError("no iter_*.csv snapshots found in " + input.string());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            const std::string stem = file.stem().string();
            const int iteration = std::stoi(stem.substr(5));
            series.emplace_back(iteration, io::load_dataset_csv(file));
            manifest.add_input(file);
        }
    } else {
        series.emplace_back(0, io::load_dataset_csv(input));
        manifest.add_input(input);
    }
    return series;
}

std::string removal_result_to_json(const RemovalResult& result, const json& config_echo) {
    json j;
    j["dimension"] = result.projection.dimension();
    j["completed_iterations"] = result.completed_iterations();
    j["stopped_early"] = result.stopped_early;
    if (result.stopped_early) j["stop_reason"] = result.stop_reason;
    j["config"] = config_echo;
    j["residual_norms"] = result.residual_norms;
    j["directions"] = json::array();
    for (Eigen::Index k = 0; k < result.projection.count(); ++k) {
        const Eigen::VectorXd dir = result.projection.direction(k);
        j["directions"].push_back(std::vector<double>(dir.data(), dir.data() + dir.size()));
    }
    return j.dump(2) + "\n";
}

std::string snapshot_name(int iteration) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "iter_%03d.csv", iteration);
    return buffer;
}

}  // namespace

void run_generate(const GenerateOptions& opts) {
    if (opts.n % 2 != 0) {
        throw UsageError("--n must be even: labels are balanced by construction");
    }
    const fs::path out = require_out_dir(opts.out);
    const Dataset ds = generate_gaussian({opts.n, opts.d, Seed{opts.seed}});

    const fs::path csv = out / "dataset.csv";
    io::save_dataset_csv(csv, ds);
    io::save_dataset_meta(out / "dataset.meta.json",
                          {ds.n(), ds.d(), opts.seed, "isotropic-gaussian"});

    Manifest manifest("generate", opts.seed);
    manifest.set_param("n", opts.n);
    manifest.set_param("d", opts.d);
    manifest.add_output(csv);
    manifest.add_output(out / "dataset.meta.json");
    manifest.write(out);
}

void run_vectorize(const VectorizeOptions& opts) {
    const fs::path out = require_out_dir(opts.out);
    if (opts.corpus.empty()) throw UsageError("--corpus is required");

    Manifest manifest("vectorize", 0);
    manifest.set_param("d", opts.d);
    manifest.add_input(opts.corpus);

    const auto corpus = io::load_corpus_jsonl(opts.corpus);
    VectorizerModel model;
    if (!opts.model.empty()) {
        model = io::load_vectorizer_json(opts.model);
        manifest.add_input(opts.model);
        manifest.set_param("model", opts.model);
    } else {
        model = fit_tfidf(corpus, opts.d);
    }
    const Dataset ds = transform_tfidf(model, corpus);
    const auto zeros = zero_rows(ds);
    if (!zeros.empty()) {
        manifest.add_note(std::to_string(zeros.size()) +
                          " document(s) had no in-vocabulary terms and became zero rows");
    }

    const fs::path csv = out / "dataset.csv";
    io::save_dataset_csv(csv, ds);
    io::save_dataset_meta(out / "dataset.meta.json", {ds.n(), ds.d(), 0, "tfidf"});
    const fs::path vec = out / "vectorizer.json";
    io::save_vectorizer_json(vec, model);

    manifest.add_output(csv);
    manifest.add_output(out / "dataset.meta.json");
    manifest.add_output(vec);
    manifest.write(out);
}

void run_remove(const RemoveOptions& opts) {
    const fs::path out = require_out_dir(opts.out);
    if (opts.input.empty()) throw UsageError("--input is required");
    const Dataset ds = io::load_dataset_csv(opts.input);

    Manifest manifest("remove", opts.seed);
    manifest.add_input(opts.input);
    manifest.set_param("method", opts.method);
    manifest.set_param("classifier", opts.classifier);
    manifest.set_param("C", opts.inverse_strength_c);

    RemovalResult result;
    json config_echo;
    if (opts.method == "mp") {
        result = mean_projection(ds);
        config_echo = {{"method", "mp"}};
        manifest.set_param("iterations", 1LL);
    } else if (opts.method == "inlp") {
        InlpConfig cfg;
        cfg.iterations = static_cast<int>(opts.iterations);
        if (opts.iterations > ds.d()) {
            cfg.iterations = static_cast<int>(ds.d());
            manifest.add_note("requested " + std::to_string(opts.iterations) +
                              " iterations but the data has only " + std::to_string(ds.d()) +
                              " dimensions; clamped");
        }
        cfg.classifier = parse_classifier(opts.classifier);
        cfg.classifier_config.inverse_strength_c = opts.inverse_strength_c;
        cfg.record_history = opts.history;
        result = inlp(ds, cfg, Seed{opts.seed});
        config_echo = {{"method", "inlp"},
                       {"iterations", cfg.iterations},
                       {"classifier", opts.classifier},
                       {"C", opts.inverse_strength_c}};
        manifest.set_param("iterations", static_cast<long long>(cfg.iterations));
    } else {
        throw UsageError("unknown method '" + opts.method + "' (expected mp or inlp)");
    }
    if (result.stopped_early) manifest.add_note(result.stop_reason);

    const fs::path projected = out / "projected.csv";
    io::save_dataset_csv(projected, result.projected);
    manifest.add_output(projected);

    const fs::path directions = out / "directions.json";
    io::write_file_atomic(directions, removal_result_to_json(result, config_echo));
    manifest.add_output(directions);

    if (opts.history) {
        const fs::path history = out / "history";
        fs::create_directories(history);
        const fs::path initial = history / snapshot_name(0);
        io::save_dataset_csv(initial, ds);
        manifest.add_output(initial);
        if (opts.method == "mp") {
            const fs::path snap = history / snapshot_name(1);
            io::save_dataset_csv(snap, result.projected);
            manifest.add_output(snap);
        } else {
            for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
                const fs::path snap = history / snapshot_name(static_cast<int>(k) + 1);
                io::save_dataset_csv(snap, result.snapshots[k]);
                manifest.add_output(snap);
            }
        }
    }
    manifest.write(out);
}

void run_diagnose(const DiagnoseOptions& opts) {
    const fs::path out = require_out_dir(opts.out);
    if (opts.input.empty()) throw UsageError("--input is required");

    Manifest manifest("diagnose", opts.seed);
    manifest.set_param("metric", opts.metric);

    const auto series = load_series(opts.input, manifest);

    DiagnosticsReport report;
    report.metric = opts.metric;
    report.seed = opts.seed;
    RegularizationConfig cfg;
    cfg.inverse_strength_c = opts.inverse_strength_c;

    const bool normalize = !opts.no_normalize;
    if (opts.metric == "cv" || opts.metric == "probs") {
        report.params["k"] = std::to_string(opts.folds);
        report.params["C"] = std::to_string(opts.inverse_strength_c);
        report.params["l2_normalized"] = normalize ? "true" : "false";
    }

    if (opts.metric == "cv") {
        for (const auto& [iteration, ds] : series) {
            const Dataset prepared = normalize ? l2_normalize_rows(ds) : ds;
            report.series.emplace_back(
                iteration,
                cross_val_accuracy(prepared, static_cast<int>(opts.folds), cfg, Seed{opts.seed}));
        }
    } else if (opts.metric == "loo-nc") {
        for (const auto& [iteration, ds] : series) {
            report.series.emplace_back(iteration, loo_nearest_centroid_audit(ds).accuracy);
        }
    } else if (opts.metric == "probs") {
        if (series.size() != 1) {
            throw DataError("metric 'probs' expects a single dataset file, not a snapshot series");
        }
        const Dataset prepared = normalize ? l2_normalize_rows(series[0].second) : series[0].second;
        const ProbabilityDistribution dist =
            probability_distribution(prepared, static_cast<int>(opts.folds), cfg, Seed{opts.seed});
        report.series.emplace_back(series[0].first, dist.mean_correct_class_probability);
        report.histogram = dist;
    } else if (opts.metric == "nn") {
        for (const auto& [iteration, ds] : series) {
            report.series.emplace_back(iteration, opposite_label_nn_proportion(ds));
        }
    } else if (opts.metric == "mmd") {
        // One kernel for the whole sweep: the median heuristic is evaluated
        // on the first snapshot so the series stays comparable.
        double bandwidth = opts.bandwidth;
        if (bandwidth <= 0.0) {
            bandwidth = median_pairwise_distance(series.front().second.features);
            if (!(bandwidth > 0.0)) {
                throw DataError("median pairwise distance is zero; pass --bandwidth explicitly");
            }
        }
        report.params["bandwidth"] = std::to_string(bandwidth);
        for (const auto& [iteration, ds] : series) {
            report.series.emplace_back(iteration, mmd_squared(ds, bandwidth));
        }
    } else {
        throw UsageError("unknown metric '" + opts.metric +
                         "' (expected cv, loo-nc, probs, nn or mmd)");
    }

    const fs::path report_path = out / "report.json";
    io::write_file_atomic(report_path, io::diagnostics_report_to_json(report));
    manifest.add_output(report_path);

    if (report.histogram) {
        const fs::path hist_path = out / "histogram.csv";
        io::write_file_atomic(hist_path, io::histogram_to_csv(*report.histogram));
        manifest.add_output(hist_path);
        const fs::path svg_path = out / "chart.svg";
        io::write_file_atomic(svg_path,
                              svg::probability_histogram("predicted probability by true class",
                                                         *report.histogram));
        manifest.add_output(svg_path);
    } else {
        const fs::path series_path = out / "series.csv";
        io::write_file_atomic(series_path, io::series_to_csv(report.series));
        manifest.add_output(series_path);
        if (opts.metric == "cv") {
            const fs::path svg_path = out / "chart.svg";
            io::write_file_atomic(svg_path,
                                  svg::line_chart("cross-validated accuracy", report.series));
            manifest.add_output(svg_path);
        }
    }
    manifest.write(out);
}

void run_recover(const RecoverOptions& opts) {
    const fs::path out = require_out_dir(opts.out);
    if (opts.input.empty()) throw UsageError("--input is required");

    Manifest manifest("recover", opts.seed);
    manifest.add_input(opts.input);
    manifest.set_param("restarts", opts.restarts);

    io::MaybeLabeled loaded = io::load_features_csv(opts.input);
    std::optional<Eigen::VectorXi> reference = loaded.labels;
    if (!opts.labels_reference.empty()) {
        io::MaybeLabeled ref = io::load_features_csv(opts.labels_reference);
        if (!ref.labels) {
            throw DataError("labels reference " + opts.labels_reference + " has no label column");
        }
        reference = ref.labels;
        manifest.add_input(opts.labels_reference);
    }

    Dataset ds;
    ds.features = std::move(loaded.features);
    if (reference) {
        if (reference->size() != ds.features.rows()) {
            throw DataError("reference label count does not match the dataset");
        }
        ds.labels = *reference;
    } else {
        // recover_labels only reads the geometry; a placeholder labeling
        // keeps the container valid.
        ds.labels = Eigen::VectorXi::Zero(ds.features.rows());
        for (Eigen::Index i = 0; i < ds.features.rows(); i += 2) ds.labels(i) = 1;
    }

    AnticlusterConfig cfg;
    cfg.restarts = static_cast<int>(opts.restarts);
    cfg.max_passes = static_cast<int>(opts.max_passes);
    const RecoveryResult result = recover_labels(ds, cfg, Seed{opts.seed});

    const fs::path partition_path = out / "partition.csv";
    io::save_partition_csv(partition_path, result.partition);
    manifest.add_output(partition_path);

    json j;
    j["k"] = result.partition.k;
    j["restarts"] = opts.restarts;
    j["winning_restart"] = result.winning_restart;
    j["objective"] = result.final_objectives[static_cast<std::size_t>(result.winning_restart)];
    j["objective_per_restart"] = result.final_objectives;
    if (reference) {
        j["purity"] = cluster_purity(result.partition, *reference);
    } else {
        j["purity"] = nullptr;
        j["note"] = "no reference labels supplied; purity omitted";
        manifest.add_note("no reference labels supplied; purity omitted");
    }
    const fs::path report_path = out / "report.json";
    io::write_file_atomic(report_path, j.dump(2) + "\n");
    manifest.add_output(report_path);
    manifest.write(out);
}

void run_report(const ReportOptions& opts) {
    const fs::path out = require_out_dir(opts.out);
    if (opts.inputs.empty()) throw UsageError("at least one --input directory is required");

    Manifest manifest("report", 0);
    json combined = json::array();
    std::string csv = "source,metric,iteration,value\n";
    for (const auto& dir : opts.inputs) {
        const fs::path report_path = fs::path(dir) / "report.json";
        if (!fs::exists(report_path)) {
            throw DataError("no report.json under " + dir);
        }
        manifest.add_input(report_path);
        const json parsed = json::parse(io::read_file(report_path));
        combined.push_back({{"source", dir}, {"report", parsed}});
        const std::string metric = parsed.value("metric", "unknown");
        if (parsed.contains("values")) {
            for (const auto& entry : parsed["values"]) {
                csv += dir + "," + metric + "," + std::to_string(entry["iteration"].get<int>()) +
                       "," + std::to_string(entry["value"].get<double>()) + "\n";
            }
        }
    }

    const fs::path summary_json = out / "summary.json";
    io::write_file_atomic(summary_json, combined.dump(2) + "\n");
    manifest.add_output(summary_json);
    const fs::path summary_csv = out / "summary.csv";
    io::write_file_atomic(summary_csv, csv);
    manifest.add_output(summary_csv);
    manifest.write(out);
}

}  // namespace scrub::cli
