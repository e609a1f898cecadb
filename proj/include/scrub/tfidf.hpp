#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "scrub/dataset.hpp"

namespace scrub {

struct Document {
    std::string text;
    int label = 0;  // 0 or 1
};

/// Fitted tf-idf vocabulary. Terms are ordered by document frequency
/// (descending), ties broken lexicographically, truncated to at most `d`
/// entries. idf(t) = ln((1 + n_docs) / (1 + df(t))) + 1.
struct VectorizerModel {
    Eigen::Index d = 0;               // requested feature dimension
    std::vector<std::string> terms;   // size <= d
    std::vector<int> document_frequencies;
    Eigen::VectorXd idf;
    Eigen::Index n_docs = 0;
};

/// Lowercases and splits on runs of non-alphanumeric bytes.
std::vector<std::string> tokenize(const std::string& text);

/// Throws DataError on an empty corpus or an empty post-tokenization
/// vocabulary.
VectorizerModel fit_tfidf(const std::vector<Document>& corpus, Eigen::Index d);

/// One row per document: raw term count times idf per vocabulary term, then
/// L2-normalized. Out-of-vocabulary terms are ignored; documents with no
/// in-vocabulary terms become zero rows (kept).
Dataset transform_tfidf(const VectorizerModel& model, const std::vector<Document>& corpus);

/// Row indices whose features are all zero (e.g. all-OOV documents).
std::vector<Eigen::Index> zero_rows(const Dataset& ds);

}  // namespace scrub
