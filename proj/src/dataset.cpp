#include "scrub/dataset.hpp"

#include <cmath>
#include <string>

namespace scrub {

void validate(const Dataset& ds) {
    if (ds.n() < 2) throw DataError("dataset needs at least 2 instances, got " + std::to_string(ds.n()));
    if (ds.d() < 1) throw DataError("dataset needs at least 1 feature dimension");
    if (ds.labels.size() != ds.n()) {
        throw DataError("label count " + std::to_string(ds.labels.size()) +
                        " does not match instance count " + std::to_string(ds.n()));
    }
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        if (ds.labels(i) != 0 && ds.labels(i) != 1) {
            throw DataError("label at row " + std::to_string(i) + " is " +
                            std::to_string(ds.labels(i)) + "; labels must be 0 or 1");
        }
    }
    if (!ds.features.allFinite()) {
        for (Eigen::Index i = 0; i < ds.n(); ++i) {
            if (!ds.features.row(i).allFinite()) {
                throw DataError("non-finite feature value in row " + std::to_string(i));
            }
        }
    }
}

ClassCounts class_counts(const Dataset& ds) {
    ClassCounts counts;
    for (Eigen::Index i = 0; i < ds.labels.size(); ++i) {
        (ds.labels(i) == 0 ? counts.n0 : counts.n1)++;
    }
    return counts;
}

Centroids class_centroids(const Dataset& ds) {
    const auto counts = class_counts(ds);
    if (counts.n0 == 0) throw DataError("class 0 has no members; cannot form centroid");
    if (counts.n1 == 0) throw DataError("class 1 has no members; cannot form centroid");

    Centroids out;
    out.c0 = Eigen::VectorXd::Zero(ds.d());
    out.c1 = Eigen::VectorXd::Zero(ds.d());
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        (ds.labels(i) == 0 ? out.c0 : out.c1) += ds.features.row(i).transpose();
    }
    out.c0 /= static_cast<double>(counts.n0);
    out.c1 /= static_cast<double>(counts.n1);
    return out;
}

Dataset l2_normalize_rows(const Dataset& ds) {
    Dataset out = ds;
    for (Eigen::Index i = 0; i < out.n(); ++i) {
        const double norm = out.features.row(i).norm();
        if (norm > 0.0) out.features.row(i) /= norm;
    }
    return out;
}

}  // namespace scrub
