#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scrub::cli {

/// Bad command-line usage; mapped to exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GenerateOptions {
    long long n = 0;
    long long d = 0;
    std::uint64_t seed = 0;
    std::string out;
};
void run_generate(const GenerateOptions& opts);

struct VectorizeOptions {
    std::string corpus;
    long long d = 1024;
    std::string model;  // reuse a saved vectorizer when set
    std::string out;
};
void run_vectorize(const VectorizeOptions& opts);

struct RemoveOptions {
    std::string input;
    std::string method = "inlp";  // mp | inlp
    long long iterations = 10;
    std::string classifier = "logistic";  // logistic | nearest-centroid
    double inverse_strength_c = 1.0;
    std::uint64_t seed = 0;
    bool history = false;
    std::string out;
};
void run_remove(const RemoveOptions& opts);

struct DiagnoseOptions {
    std::string input;  // dataset CSV or a directory of iter_*.csv snapshots
    std::string metric;  // cv | loo-nc | probs | nn | mmd
    long long folds = 32;
    double inverse_strength_c = 1.0;
    double bandwidth = 0.0;  // 0 = median heuristic
    bool no_normalize = false;
    std::uint64_t seed = 0;
    std::string out;
};
void run_diagnose(const DiagnoseOptions& opts);

struct RecoverOptions {
    std::string input;
    long long restarts = 100;
    long long max_passes = 1000;
    std::string labels_reference;  // optional CSV with a label column
    std::uint64_t seed = 0;
    std::string out;
};
void run_recover(const RecoverOptions& opts);

struct ReportOptions {
    std::vector<std::string> inputs;  // run directories containing report.json
    std::string out;
};
void run_report(const ReportOptions& opts);

}  // namespace scrub::cli
