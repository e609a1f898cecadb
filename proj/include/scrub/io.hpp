#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scrub/anticluster.hpp"
#include "scrub/dataset.hpp"
#include "scrub/diagnostics.hpp"
#include "scrub/linear_model.hpp"
#include "scrub/tfidf.hpp"

namespace scrub::io {

/// JSON metadata sidecar written next to dataset CSVs.
struct DatasetMeta {
    Eigen::Index n = 0;
    Eigen::Index d = 0;
    std::uint64_t seed = 0;
    std::string provenance;
};

/// Header `f0,...,f{D-1},label`; features printed with 17 significant
/// digits so values round-trip exactly.
void save_dataset_csv(const std::filesystem::path& path, const Dataset& ds);

/// Loads and validates a dataset CSV. Parse failures, non-finite values and
/// non-binary labels are reported with their line number.
Dataset load_dataset_csv(const std::filesystem::path& path);

/// Feature CSV where the trailing `label` column is optional.
struct MaybeLabeled {
    Eigen::MatrixXd features;
    std::optional<Eigen::VectorXi> labels;
};
MaybeLabeled load_features_csv(const std::filesystem::path& path);

void save_dataset_meta(const std::filesystem::path& path, const DatasetMeta& meta);

enum class EmbeddingFormat { Csv, Jsonl };

/// Ingests externally computed dense vectors. The JSONL format is one
/// object per line: {"features": [...], "label": 0|1}.
Dataset load_embeddings(const std::filesystem::path& path, EmbeddingFormat format);

/// JSON lines corpus: {"text": ..., "label": 0|1} per line.
std::vector<Document> load_corpus_jsonl(const std::filesystem::path& path);

void save_vectorizer_json(const std::filesystem::path& path, const VectorizerModel& model);
VectorizerModel load_vectorizer_json(const std::filesystem::path& path);

std::string linear_model_to_json(const LinearModel& m);
LinearModel linear_model_from_json(const std::string& text);

std::string diagnostics_report_to_json(const DiagnosticsReport& report);

/// CSV with columns bin_left, bin_right, count_class0, count_class1.
std::string histogram_to_csv(const ProbabilityDistribution& dist);

/// CSV with columns iteration, value.
std::string series_to_csv(const std::vector<std::pair<int, double>>& series);

/// CSV with columns index, group.
void save_partition_csv(const std::filesystem::path& path, const Partition& p);

/// Writes to a temp file in the target directory, then renames into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// FNV-1a 64-bit digest of a file's bytes, as fixed-width hex.
std::string file_digest_fnv1a64(const std::filesystem::path& path);

}  // namespace scrub::io
