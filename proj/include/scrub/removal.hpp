#pragma once

#include <string>
#include <vector>

#include "scrub/dataset.hpp"
#include "scrub/linear_model.hpp"
#include "scrub/projection.hpp"
#include "scrub/rng.hpp"

namespace scrub {

struct InlpConfig {
    int iterations = 10;  // at most D; 0 is accepted and leaves the data unchanged
    ClassifierKind classifier = ClassifierKind::Logistic;
    RegularizationConfig classifier_config;
    bool record_history = false;
};

struct RemovalResult {
    Projection projection;
    Dataset projected;                // input after all completed iterations
    std::vector<Dataset> snapshots;   // one per iteration when record_history
    std::vector<double> residual_norms;  // direction norm after re-orthogonalization
    bool stopped_early = false;
    std::string stop_reason;

    Eigen::Index completed_iterations() const { return projection.count(); }
};

/// Removes the single direction u = (c1 - c0) / ||c1 - c0||; afterwards the
/// two class centroids coincide. Throws DataError when the centroids already
/// coincide (difference norm <= 1e-12) instead of silently returning the
/// input.
RemovalResult mean_projection(const Dataset& ds);

/// Iterative nullspace projection: per iteration, fit the configured
/// classifier on the current data, re-orthogonalize its weight vector
/// against the removed directions, normalize, and project the data onto the
/// complement. Stops early when the re-orthogonalized direction norm falls
/// below 1e-10 (degenerate classifier or exhausted rank). The seed is
/// reserved for stochastic classifiers; both current classifiers are
/// deterministic.
RemovalResult inlp(const Dataset& ds, const InlpConfig& cfg, Seed seed);

}  // namespace scrub
