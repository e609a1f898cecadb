#pragma once

#include <Eigen/Dense>

#include "scrub/errors.hpp"

namespace scrub {

/// Feature matrix (N instances x D dimensions) paired with binary labels.
/// Treated as immutable: operations take const references and return new
/// values, so shared instances are safe to read from multiple threads.
struct Dataset {
    Eigen::MatrixXd features;  // N x D
    Eigen::VectorXi labels;    // N entries, each 0 or 1

    Eigen::Index n() const { return features.rows(); }
    Eigen::Index d() const { return features.cols(); }
};

/// Throws DataError unless N >= 2, D >= 1, exactly one binary label per row
/// and every feature value is finite.
void validate(const Dataset& ds);

struct ClassCounts {
    Eigen::Index n0 = 0;
    Eigen::Index n1 = 0;
};
ClassCounts class_counts(const Dataset& ds);

/// Arithmetic mean of rows per class. Throws DataError if a class is empty.
struct Centroids {
    Eigen::VectorXd c0;
    Eigen::VectorXd c1;
};
Centroids class_centroids(const Dataset& ds);

/// Scales every nonzero row to unit Euclidean norm; zero rows stay zero.
Dataset l2_normalize_rows(const Dataset& ds);

}  // namespace scrub
