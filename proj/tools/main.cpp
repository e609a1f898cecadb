#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "scrub/errors.hpp"
#include "scrub/version.hpp"

namespace cli = scrub::cli;

// Exit codes: 0 success, 1 usage error, 2 data/precondition error,
// 3 internal numeric failure.
int main(int argc, char** argv) {
    CLI::App app{"projection-based concept removal and dataset diagnostics"};
    app.set_version_flag("--version", scrub::kVersion);
    app.require_subcommand(1);

    cli::GenerateOptions generate_opts;
    auto* generate = app.add_subcommand("generate", "sample an isotropic Gaussian dataset");
    generate->add_option("--n", generate_opts.n, "instance count (even)")->required();
    generate->add_option("--d", generate_opts.d, "feature dimension")->required();
    generate->add_option("--seed", generate_opts.seed, "RNG seed")->default_val(0);
    generate->add_option("--out", generate_opts.out, "output directory")->required();

    cli::VectorizeOptions vectorize_opts;
    auto* vectorize = app.add_subcommand("vectorize", "tf-idf bag-of-words from a JSONL corpus");
    vectorize->add_option("--corpus", vectorize_opts.corpus, "JSONL corpus file")->required();
    vectorize->add_option("--d", vectorize_opts.d, "feature dimension")->default_val(1024);
    vectorize->add_option("--model", vectorize_opts.model, "reuse a saved vectorizer JSON");
    vectorize->add_option("--out", vectorize_opts.out, "output directory")->required();

    cli::RemoveOptions remove_opts;
    auto* remove = app.add_subcommand("remove", "remove the label concept by projection");
    remove->add_option("--input", remove_opts.input, "dataset CSV")->required();
    remove->add_option("--method", remove_opts.method, "mp | inlp")->default_val("inlp");
    remove->add_option("--iterations", remove_opts.iterations, "projection iterations")
        ->default_val(10);
    remove->add_option("--classifier", remove_opts.classifier, "logistic | nearest-centroid")
        ->default_val("logistic");
    remove->add_option("--C", remove_opts.inverse_strength_c, "inverse regularization strength")
        ->default_val(1.0);
    remove->add_option("--seed", remove_opts.seed, "RNG seed")->default_val(0);
    remove->add_flag("--history", remove_opts.history, "write per-iteration snapshots");
    remove->add_option("--out", remove_opts.out, "output directory")->required();

    cli::DiagnoseOptions diagnose_opts;
    auto* diagnose = app.add_subcommand("diagnose", "run a leakage diagnostic");
    diagnose->add_option("--input", diagnose_opts.input, "dataset CSV or snapshot directory")
        ->required();
    diagnose->add_option("--metric", diagnose_opts.metric, "cv | loo-nc | probs | nn | mmd")
        ->required();
    diagnose->add_option("--k", diagnose_opts.folds, "fold count for cv/probs")->default_val(32);
    diagnose->add_option("--C", diagnose_opts.inverse_strength_c, "inverse regularization strength")
        ->default_val(1.0);
    diagnose->add_option("--bandwidth", diagnose_opts.bandwidth,
                         "kernel bandwidth for mmd (default: median heuristic)");
    diagnose->add_flag("--no-normalize", diagnose_opts.no_normalize,
                       "skip L2 row normalization before cv/probs");
    diagnose->add_option("--seed", diagnose_opts.seed, "RNG seed")->default_val(0);
    diagnose->add_option("--out", diagnose_opts.out, "output directory")->required();

    cli::RecoverOptions recover_opts;
    auto* recover = app.add_subcommand("recover", "anti-clustering label recovery");
    recover->add_option("--input", recover_opts.input, "dataset CSV (label column optional)")
        ->required();
    recover->add_option("--restarts", recover_opts.restarts, "search restarts")->default_val(100);
    recover->add_option("--max-passes", recover_opts.max_passes, "exchange sweeps per restart")
        ->default_val(1000);
    recover->add_option("--labels-reference", recover_opts.labels_reference,
                        "CSV providing reference labels for purity");
    recover->add_option("--seed", recover_opts.seed, "RNG seed")->default_val(0);
    recover->add_option("--out", recover_opts.out, "output directory")->required();

    cli::ReportOptions report_opts;
    auto* report = app.add_subcommand("report", "aggregate diagnostic reports");
    report->add_option("--input", report_opts.inputs, "run directories with report.json")
        ->required();
    report->add_option("--out", report_opts.out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    }

    try {
        if (generate->parsed()) cli::run_generate(generate_opts);
        if (vectorize->parsed()) cli::run_vectorize(vectorize_opts);
        if (remove->parsed()) cli::run_remove(remove_opts);
        if (diagnose->parsed()) cli::run_diagnose(diagnose_opts);
        if (recover->parsed()) cli::run_recover(recover_opts);
        if (report->parsed()) cli::run_report(report_opts);
    } catch (const cli::UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    } catch (const scrub::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const scrub::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const scrub::NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
