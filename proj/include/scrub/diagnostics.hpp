#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scrub/dataset.hpp"
#include "scrub/linear_model.hpp"
#include "scrub/rng.hpp"

namespace scrub {

/// Assignment of instances to k cross-validation folds, stratified by label
/// so every training split keeps both classes where possible. Deterministic
/// given (seed, labels, k); fold sizes differ by at most one.
struct FoldPlan {
    int k = 0;
    std::vector<int> assignment;  // fold index per instance
};

FoldPlan make_stratified_folds(const Eigen::VectorXi& labels, int k, Seed seed);

/// Pooled k-fold cross-validation accuracy of an L2-regularized logistic
/// classifier predicting the labels. A margin of exactly zero counts as
/// incorrect. Callers are expected to pre-normalize rows where the pipeline
/// calls for it. Throws DataError (naming the fold) when a training split
/// contains a single class.
double cross_val_accuracy(const Dataset& ds, int k, const RegularizationConfig& cfg, Seed seed);

/// Leave-one-out nearest-centroid audit. For each instance, a
/// nearest-centroid model is fit on the remaining rows and the margin toward
/// the instance's true class is recorded (positive = correctly classified).
/// Accuracy counts strictly positive margins only. Requires at least two
/// members per class.
struct LooAudit {
    double accuracy = 0.0;
    Eigen::VectorXd margins;
};
LooAudit loo_nearest_centroid_audit(const Dataset& ds);

/// Cross-validated predicted probabilities summarized as per-class
/// histograms over 20 uniform bins on [0, 1].
struct ProbabilityDistribution {
    Eigen::VectorXd bin_edges;      // 21 edges
    Eigen::VectorXi counts_class0;  // instances with true label 0
    Eigen::VectorXi counts_class1;  // instances with true label 1
    double mean_correct_class_probability = 0.0;
    Eigen::VectorXd probabilities;  // per instance, P(class 1)
};
ProbabilityDistribution probability_distribution(const Dataset& ds, int k,
                                                 const RegularizationConfig& cfg, Seed seed);

/// Uniform random permutation of the label vector; features untouched.
Dataset shuffle_labels(const Dataset& ds, Seed seed);

/// Fraction of instances whose Euclidean nearest neighbor (ties broken by
/// lowest row index) carries the opposite label.
double opposite_label_nn_proportion(const Dataset& ds);

/// Unbiased squared maximum mean discrepancy between the class-0 and
/// class-1 rows under a Gaussian kernel exp(-||x-y||^2 / (2 sigma^2)). The
/// estimate may be slightly negative. Requires two members per class and a
/// positive bandwidth.
double mmd_squared(const Dataset& ds, double bandwidth);

/// Median-heuristic variant: bandwidth = median pairwise distance over all
/// rows. Throws DataError when the median distance is zero.
double mmd_squared(const Dataset& ds);

/// Lower median of the Euclidean distances over all row pairs.
double median_pairwise_distance(const Eigen::MatrixXd& rows);

/// Structured result of one diagnostic run, serialized by the I/O layer.
struct DiagnosticsReport {
    std::string metric;
    std::vector<std::pair<int, double>> series;  // (iteration, value)
    std::optional<ProbabilityDistribution> histogram;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
};

}  // namespace scrub
