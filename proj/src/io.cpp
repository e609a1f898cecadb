#include "scrub/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scrub/rng.hpp"

namespace scrub::io {

namespace {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

double parse_double(std::string_view field, const std::filesystem::path& path, std::size_t line) {
    double value = 0.0;
    const auto* begin = field.data();
    const auto* end = field.data() + field.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw IoError(path.string() + ":" + std::to_string(line) + ": cannot parse '" +
                      std::string(field) + "' as a number");
    }
    return value;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

json parse_json(const std::string& text, const std::string& context) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) throw IoError(context + ": invalid JSON");
    return parsed;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path dir = path.parent_path().empty() ? "." : path.parent_path();
    std::filesystem::create_directories(dir);
    const std::filesystem::path temp = path.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + temp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("short write to " + temp.string());
    }
    std::filesystem::rename(temp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string file_digest_fnv1a64(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016" PRIx64, rng::fnv1a64(bytes));
    return hex;
}

void save_dataset_csv(const std::filesystem::path& path, const Dataset& ds) {
    validate(ds);
    std::string out;
    out.reserve(static_cast<std::size_t>(ds.n()) * static_cast<std::size_t>(ds.d()) * 8);
    for (Eigen::Index j = 0; j < ds.d(); ++j) {
        out += "f" + std::to_string(j) + ",";
    }
    out += "label\n";
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        for (Eigen::Index j = 0; j < ds.d(); ++j) {
            out += format_double(ds.features(i, j));
            out += ',';
        }
        out += std::to_string(ds.labels(i));
        out += '\n';
    }
    write_file_atomic(path, out);
}

MaybeLabeled load_features_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);
    const bool has_labels = !header.empty() && header.back() == "label";
    const std::size_t n_features = header.size() - (has_labels ? 1 : 0);
    if (n_features == 0) throw IoError(path.string() + ": no feature columns in header");

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                          std::to_string(header.size()) + " fields, got " +
                          std::to_string(fields.size()));
        }
        for (std::size_t j = 0; j < n_features; ++j) {
            const double value = parse_double(fields[j], path, line_no);
            if (!std::isfinite(value)) {
                throw IoError(path.string() + ":" + std::to_string(line_no) +
                              ": non-finite feature value");
            }
            values.push_back(value);
        }
        if (has_labels) {
            const double label = parse_double(fields.back(), path, line_no);
            if (label != 0.0 && label != 1.0) {
                throw IoError(path.string() + ":" + std::to_string(line_no) +
                              ": label must be 0 or 1, got " + std::string(fields.back()));
            }
            labels.push_back(static_cast<int>(label));
        }
    }

    const auto rows = static_cast<Eigen::Index>(values.size() / n_features);
    MaybeLabeled out;
    out.features.resize(rows, static_cast<Eigen::Index>(n_features));
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n_features); ++j) {
            out.features(i, j) = values[static_cast<std::size_t>(i) * n_features +
                                        static_cast<std::size_t>(j)];
        }
    }
    if (has_labels) {
        out.labels.emplace(rows);
        for (Eigen::Index i = 0; i < rows; ++i) {
            (*out.labels)(i) = labels[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

Dataset load_dataset_csv(const std::filesystem::path& path) {
    MaybeLabeled loaded = load_features_csv(path);
    if (!loaded.labels) throw IoError(path.string() + ": missing label column");
    Dataset ds{std::move(loaded.features), std::move(*loaded.labels)};
    validate(ds);
    return ds;
}

void save_dataset_meta(const std::filesystem::path& path, const DatasetMeta& meta) {
    const json j{{"n", meta.n}, {"d", meta.d}, {"seed", meta.seed}, {"provenance", meta.provenance}};
    write_file_atomic(path, j.dump(2) + "\n");
}

Dataset load_embeddings(const std::filesystem::path& path, EmbeddingFormat format) {
    if (format == EmbeddingFormat::Csv) return load_dataset_csv(path);

    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string context = path.string() + ":" + std::to_string(line_no);
        const json parsed = parse_json(line, context);
        if (!parsed.contains("features") || !parsed["features"].is_array()) {
            throw IoError(context + ": missing 'features' array");
        }
        if (!parsed.contains("label") || !parsed["label"].is_number_integer()) {
            throw IoError(context + ": missing integer 'label'");
        }
        const int label = parsed["label"].get<int>();
        if (label != 0 && label != 1) {
            throw IoError(context + ": label must be 0 or 1, got " + std::to_string(label));
        }
        std::vector<double> row;
        for (const auto& value : parsed["features"]) {
            if (!value.is_number()) throw IoError(context + ": non-numeric feature value");
            const double v = value.get<double>();
            if (!std::isfinite(v)) throw IoError(context + ": non-finite feature value");
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IoError(context + ": dimension " + std::to_string(row.size()) +
                          " does not match first row's " + std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
        labels.push_back(label);
    }
    if (rows.empty()) throw IoError(path.string() + ": no records");

    Dataset ds;
    ds.features.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(rows.front().size()));
    ds.labels.resize(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
        ds.labels(static_cast<Eigen::Index>(i)) = labels[i];
    }
    validate(ds);
    return ds;
}

std::vector<Document> load_corpus_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string context = path.string() + ":" + std::to_string(line_no);
        const json parsed = parse_json(line, context);
        if (!parsed.contains("text") || !parsed["text"].is_string()) {
            throw IoError(context + ": missing string 'text'");
        }
        if (!parsed.contains("label") || !parsed["label"].is_number_integer()) {
            throw IoError(context + ": missing integer 'label'");
        }
        const int label = parsed["label"].get<int>();
        if (label != 0 && label != 1) {
            throw IoError(context + ": label must be 0 or 1, got " + std::to_string(label));
        }
        docs.push_back(Document{parsed["text"].get<std::string>(), label});
    }
    if (docs.empty()) throw IoError(path.string() + ": no documents");
    return docs;
}

void save_vectorizer_json(const std::filesystem::path& path, const VectorizerModel& model) {
    json j;
    j["d"] = model.d;
    j["n_docs"] = model.n_docs;
    j["vocabulary"] = json::array();
    for (std::size_t t = 0; t < model.terms.size(); ++t) {
        j["vocabulary"].push_back(
            {{"term", model.terms[t]}, {"df", model.document_frequencies[t]}});
    }
    j["idf"] = std::vector<double>(model.idf.data(), model.idf.data() + model.idf.size());
    write_file_atomic(path, j.dump(2) + "\n");
}

VectorizerModel load_vectorizer_json(const std::filesystem::path& path) {
    const json j = parse_json(read_file(path), path.string());
    VectorizerModel model;
    model.d = j.at("d").get<Eigen::Index>();
    model.n_docs = j.at("n_docs").get<Eigen::Index>();
    for (const auto& entry : j.at("vocabulary")) {
        model.terms.push_back(entry.at("term").get<std::string>());
        model.document_frequencies.push_back(entry.at("df").get<int>());
    }
    const auto idf = j.at("idf").get<std::vector<double>>();
    if (idf.size() != model.terms.size()) {
        throw IoError(path.string() + ": idf length does not match vocabulary size");
    }
    model.idf = Eigen::Map<const Eigen::VectorXd>(idf.data(),
                                                  static_cast<Eigen::Index>(idf.size()));
    return model;
}

std::string linear_model_to_json(const LinearModel& m) {
    json j;
    j["kind"] = m.kind == ClassifierKind::NearestCentroid ? "nearest-centroid" : "logistic";
    j["weights"] = std::vector<double>(m.weights.data(), m.weights.data() + m.weights.size());
    j["bias"] = m.bias;
    if (m.kind == ClassifierKind::NearestCentroid) {
        j["centroids"] = {
            {"c0", std::vector<double>(m.centroid0.data(), m.centroid0.data() + m.centroid0.size())},
            {"c1", std::vector<double>(m.centroid1.data(), m.centroid1.data() + m.centroid1.size())}};
    }
    return j.dump(2) + "\n";
}

LinearModel linear_model_from_json(const std::string& text) {
    const json j = parse_json(text, "linear model");
    LinearModel m;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "nearest-centroid") {
        m.kind = ClassifierKind::NearestCentroid;
    } else if (kind == "logistic") {
        m.kind = ClassifierKind::Logistic;
    } else {
        throw IoError("unknown model kind '" + kind + "'");
    }
    const auto weights = j.at("weights").get<std::vector<double>>();
    m.weights = Eigen::Map<const Eigen::VectorXd>(weights.data(),
                                                  static_cast<Eigen::Index>(weights.size()));
    m.bias = j.at("bias").get<double>();
    if (m.kind == ClassifierKind::NearestCentroid) {
        const auto c0 = j.at("centroids").at("c0").get<std::vector<double>>();
        const auto c1 = j.at("centroids").at("c1").get<std::vector<double>>();
        m.centroid0 = Eigen::Map<const Eigen::VectorXd>(c0.data(),
                                                        static_cast<Eigen::Index>(c0.size()));
        m.centroid1 = Eigen::Map<const Eigen::VectorXd>(c1.data(),
                                                        static_cast<Eigen::Index>(c1.size()));
    }
    return m;
}

std::string diagnostics_report_to_json(const DiagnosticsReport& report) {
    json j;
    j["metric"] = report.metric;
    j["seed"] = report.seed;
    j["params"] = report.params;
    j["values"] = json::array();
    for (const auto& [iteration, value] : report.series) {
        j["values"].push_back({{"iteration", iteration}, {"value", value}});
    }
    if (report.histogram) {
        const auto& h = *report.histogram;
        j["histogram"] = {
            {"bin_edges", std::vector<double>(h.bin_edges.data(),
                                              h.bin_edges.data() + h.bin_edges.size())},
            {"counts_class0", std::vector<int>(h.counts_class0.data(),
                                               h.counts_class0.data() + h.counts_class0.size())},
            {"counts_class1", std::vector<int>(h.counts_class1.data(),
                                               h.counts_class1.data() + h.counts_class1.size())},
            {"mean_correct_class_probability", h.mean_correct_class_probability}};
    }
    return j.dump(2) + "\n";
}

std::string histogram_to_csv(const ProbabilityDistribution& dist) {
    std::string out = "bin_left,bin_right,count_class0,count_class1\n";
    for (Eigen::Index b = 0; b < dist.counts_class0.size(); ++b) {
        out += format_double(dist.bin_edges(b)) + "," + format_double(dist.bin_edges(b + 1)) + "," +
               std::to_string(dist.counts_class0(b)) + "," + std::to_string(dist.counts_class1(b)) +
               "\n";
    }
    return out;
}

std::string series_to_csv(const std::vector<std::pair<int, double>>& series) {
    std::string out = "iteration,value\n";
    for (const auto& [iteration, value] : series) {
        out += std::to_string(iteration) + "," + format_double(value) + "\n";
    }
    return out;
}

void save_partition_csv(const std::filesystem::path& path, const Partition& p) {
    std::string out = "index,group\n";
    for (std::size_t i = 0; i < p.assignment.size(); ++i) {
        out += std::to_string(i) + "," + std::to_string(p.assignment[i]) + "\n";
    }
    write_file_atomic(path, out);
}

}  // namespace scrub::io
