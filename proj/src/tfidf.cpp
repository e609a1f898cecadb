#include "scrub/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace scrub {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (const char raw : text) {
        const auto c = static_cast<unsigned char>(raw);
        const bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
        if (alnum) {
            current.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

VectorizerModel fit_tfidf(const std::vector<Document>& corpus, Eigen::Index d) {
    if (corpus.empty()) throw DataError("cannot fit a vectorizer on an empty corpus");
    if (d < 1) throw DataError("feature dimension must be at least 1");

    std::map<std::string, int> doc_freq;
    for (const Document& doc : corpus) {
        std::set<std::string> seen;
        for (auto& token : tokenize(doc.text)) seen.insert(std::move(token));
        for (const auto& term : seen) ++doc_freq[term];
    }
    if (doc_freq.empty()) throw DataError("corpus tokenizes to an empty vocabulary");

    std::vector<std::pair<std::string, int>> ranked(doc_freq.begin(), doc_freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<Eigen::Index>(ranked.size()) > d) {
        ranked.resize(static_cast<std::size_t>(d));
    }

    VectorizerModel model;
    model.d = d;
    model.n_docs = static_cast<Eigen::Index>(corpus.size());
    model.idf.resize(static_cast<Eigen::Index>(ranked.size()));
    for (std::size_t t = 0; t < ranked.size(); ++t) {
        model.terms.push_back(ranked[t].first);
        model.document_frequencies.push_back(ranked[t].second);
        model.idf(static_cast<Eigen::Index>(t)) =
            std::log((1.0 + static_cast<double>(model.n_docs)) /
                     (1.0 + static_cast<double>(ranked[t].second))) +
            1.0;
    }
    return model;
}

Dataset transform_tfidf(const VectorizerModel& model, const std::vector<Document>& corpus) {
    if (model.terms.empty()) throw DataError("vectorizer model has an empty vocabulary");
    std::unordered_map<std::string, Eigen::Index> index;
    for (std::size_t t = 0; t < model.terms.size(); ++t) {
        index.emplace(model.terms[t], static_cast<Eigen::Index>(t));
    }

    const auto vocab_size = static_cast<Eigen::Index>(model.terms.size());
    Dataset out;
    out.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(corpus.size()), vocab_size);
    out.labels.resize(static_cast<Eigen::Index>(corpus.size()));
    for (std::size_t row = 0; row < corpus.size(); ++row) {
        const auto i = static_cast<Eigen::Index>(row);
        out.labels(i) = corpus[row].label;
        for (const auto& token : tokenize(corpus[row].text)) {
            const auto found = index.find(token);
            if (found != index.end()) out.features(i, found->second) += model.idf(found->second);
        }
        const double norm = out.features.row(i).norm();
        if (norm > 0.0) out.features.row(i) /= norm;
    }
    return out;
}

std::vector<Eigen::Index> zero_rows(const Dataset& ds) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        if (ds.features.row(i).isZero(0.0)) rows.push_back(i);
    }
    return rows;
}

}  // namespace scrub
