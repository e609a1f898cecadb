#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "scrub/dataset.hpp"
#include "scrub/rng.hpp"
#include "scrub/tfidf.hpp"

namespace oracles {

inline scrub::Dataset make_dataset(const std::vector<std::vector<double>>& rows,
                                   const std::vector<int>& labels) {
    scrub::Dataset ds;
    ds.features.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(rows.front().size()));
    ds.labels.resize(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
        ds.labels(static_cast<Eigen::Index>(i)) = labels[i];
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Gradient descent with Armijo backtracking for the L2-regularized logistic
// objective. Deliberately written with plain loops as a second optimizer.
// ---------------------------------------------------------------------------

struct GdResult {
    Eigen::VectorXd w;
    double b = 0.0;
    double objective = 0.0;
    bool converged = false;
};

inline double gd_objective(const scrub::Dataset& ds, double c, const Eigen::VectorXd& w, double b) {
    double loss = 0.0;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        const double y = ds.labels(i) == 1 ? 1.0 : -1.0;
        double margin = b;
        for (Eigen::Index j = 0; j < ds.d(); ++j) margin += w(j) * ds.features(i, j);
        const double m = y * margin;
        loss += m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
    }
    double reg = 0.0;
    for (Eigen::Index j = 0; j < ds.d(); ++j) reg += w(j) * w(j);
    return 0.5 * reg + c * loss;
}

inline GdResult gd_logistic_oracle(const scrub::Dataset& ds, double c, double tol = 1e-9,
                                   int max_iter = 500000) {
    const Eigen::Index d = ds.d();
    GdResult result;
    result.w = Eigen::VectorXd::Zero(d);
    result.b = 0.0;

    for (int iter = 0; iter < max_iter; ++iter) {
        Eigen::VectorXd grad_w = result.w;
        double grad_b = 0.0;
        for (Eigen::Index i = 0; i < ds.n(); ++i) {
            const double y = ds.labels(i) == 1 ? 1.0 : -1.0;
            double margin = result.b;
            for (Eigen::Index j = 0; j < d; ++j) margin += result.w(j) * ds.features(i, j);
            const double m = y * margin;
            const double sig = m >= 0.0 ? std::exp(-m) / (1.0 + std::exp(-m))
                                        : 1.0 / (1.0 + std::exp(m));
            for (Eigen::Index j = 0; j < d; ++j) grad_w(j) -= c * y * sig * ds.features(i, j);
            grad_b -= c * y * sig;
        }
        const double grad_norm = std::sqrt(grad_w.squaredNorm() + grad_b * grad_b);
        if (grad_norm <= tol) {
            result.converged = true;
            break;
        }

        const double f0 = gd_objective(ds, c, result.w, result.b);
        double step = 1.0;
        while (step > 1e-20) {
            const Eigen::VectorXd w_new = result.w - step * grad_w;
            const double b_new = result.b - step * grad_b;
            if (gd_objective(ds, c, w_new, b_new) <=
                f0 - 1e-4 * step * (grad_w.squaredNorm() + grad_b * grad_b)) {
                result.w = w_new;
                result.b = b_new;
                break;
            }
            step *= 0.5;
        }
    }
    result.objective = gd_objective(ds, c, result.w, result.b);
    return result;
}

// ---------------------------------------------------------------------------
// Exhaustive maximum of the diversity criterion over balanced bipartitions.
// ---------------------------------------------------------------------------

inline double enumerate_max_diversity(const Eigen::MatrixXd& rows,
                                      std::vector<int>* best_assignment = nullptr) {
    const auto n = static_cast<int>(rows.rows());
    const int half = (n + 1) / 2;
    std::vector<int> selector(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < half; ++i) selector[static_cast<std::size_t>(i)] = 1;
    std::sort(selector.begin(), selector.end());

    double best = -1.0;
    do {
        double objective = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (selector[static_cast<std::size_t>(i)] == selector[static_cast<std::size_t>(j)]) {
                    objective += (rows.row(i) - rows.row(j)).norm();
                }
            }
        }
        if (objective > best) {
            best = objective;
            if (best_assignment != nullptr) {
                best_assignment->assign(selector.begin(), selector.end());
            }
        }
    } while (std::next_permutation(selector.begin(), selector.end()));
    return best;
}

// ---------------------------------------------------------------------------
// Brute-force unbiased squared MMD with a Gaussian kernel, triple loops.
// ---------------------------------------------------------------------------

inline double brute_force_mmd_squared(const scrub::Dataset& ds, double sigma) {
    std::vector<Eigen::Index> g0;
    std::vector<Eigen::Index> g1;
    for (Eigen::Index i = 0; i < ds.n(); ++i) (ds.labels(i) == 0 ? g0 : g1).push_back(i);

    const auto kern = [&](Eigen::Index a, Eigen::Index b) {
        double sq = 0.0;
        for (Eigen::Index j = 0; j < ds.d(); ++j) {
            const double diff = ds.features(a, j) - ds.features(b, j);
            sq += diff * diff;
        }
        return std::exp(-sq / (2.0 * sigma * sigma));
    };

    const auto m = static_cast<double>(g0.size());
    const auto n = static_cast<double>(g1.size());
    double xx = 0.0;
    for (const auto a : g0) {
        for (const auto b : g0) {
            if (a != b) xx += kern(a, b);
        }
    }
    double yy = 0.0;
    for (const auto a : g1) {
        for (const auto b : g1) {
            if (a != b) yy += kern(a, b);
        }
    }
    double xy = 0.0;
    for (const auto a : g0) {
        for (const auto b : g1) xy += kern(a, b);
    }
    return xx / (m * (m - 1.0)) + yy / (n * (n - 1.0)) - 2.0 * xy / (m * n);
}

// ---------------------------------------------------------------------------
// Misc numeric helpers.
// ---------------------------------------------------------------------------

inline Eigen::Index matrix_rank(const Eigen::MatrixXd& m, double rel_threshold = 1e-8) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > rel_threshold * sv(0)) ++rank;
    }
    return rank;
}

inline Eigen::MatrixXd random_orthogonal(Eigen::Index d, scrub::rng::Xoshiro256& gen) {
    Eigen::MatrixXd raw(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) raw(i, j) = gen.normal();
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
    return qr.householderQ();
}

// Synthetic two-topic corpus: each class draws most tokens from its own half
// of the vocabulary, so the classes genuinely differ in distribution.
inline std::vector<scrub::Document> make_surrogate_corpus(int docs_per_class, int vocab_size,
                                                          int doc_length, scrub::Seed seed) {
    auto gen = scrub::rng::derive(seed, "surrogate-corpus");
    std::vector<scrub::Document> docs;
    for (int label = 0; label <= 1; ++label) {
        for (int d = 0; d < docs_per_class; ++d) {
            std::string text;
            for (int t = 0; t < doc_length; ++t) {
                int word;
                if (gen.uniform01() < 0.8) {
                    const int half = vocab_size / 2;
                    word = label * half + static_cast<int>(gen.below(static_cast<std::uint64_t>(half)));
                } else {
                    word = static_cast<int>(gen.below(static_cast<std::uint64_t>(vocab_size)));
                }
                text += "w" + std::to_string(word) + " ";
            }
            docs.push_back(scrub::Document{text, label});
        }
    }
    return docs;
}

}  // namespace oracles
