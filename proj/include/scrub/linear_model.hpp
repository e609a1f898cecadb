#pragma once

#include <Eigen/Dense>

#include "scrub/dataset.hpp"

namespace scrub {

enum class ClassifierKind { NearestCentroid, Logistic };

struct RegularizationConfig {
    double inverse_strength_c = 1.0;  // C in the C-parameterized objective
    double convergence_tolerance = 1e-8;
    int max_iterations = 1000;
};

/// Linear binary predictor. For nearest-centroid models the centroids are
/// stored alongside the induced discriminant weights = c1 - c0.
struct LinearModel {
    ClassifierKind kind = ClassifierKind::Logistic;
    Eigen::VectorXd weights;
    double bias = 0.0;
    Eigen::VectorXd centroid0;  // nearest-centroid only
    Eigen::VectorXd centroid1;  // nearest-centroid only
};

/// Predicts the class of the nearer centroid. Throws DataError when a class
/// is empty.
LinearModel fit_nearest_centroid(const Dataset& ds);

/// Minimizes (1/2)||w||^2 + C * sum_i log(1 + exp(-y_i (<w, x_i> + b))) with
/// y in {-1, +1} mapped from {0, 1}; the bias is unregularized. Damped
/// Newton from w = 0, b = 0; the gradient norm at the returned solution is
/// at most cfg.convergence_tolerance. When D exceeds N the problem is solved
/// in the row span of the feature matrix (where the minimizer lives) and
/// mapped back. Deterministic. Throws NumericError when the iteration budget
/// is exhausted before convergence.
LinearModel fit_logistic(const Dataset& ds, const RegularizationConfig& cfg = {});

/// Signed classification score: positive predicts class 1, negative class 0,
/// zero lies on the decision boundary. Logistic: <w, x> + b. Nearest
/// centroid: dist(x, c0) - dist(x, c1).
double predict_margin(const LinearModel& m, const Eigen::Ref<const Eigen::VectorXd>& x);

/// sigmoid(<w, x> + b); probability of class 1. Logistic models only.
double predict_probability(const LinearModel& m, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Value of the regularized logistic objective at (w, b).
double logistic_objective(const Dataset& ds, const RegularizationConfig& cfg,
                          const Eigen::VectorXd& w, double b);

/// Numerically stable sigmoid.
double sigmoid(double t);

}  // namespace scrub
