#include "scrub/removal.hpp"

#include <string>

namespace scrub {

RemovalResult mean_projection(const Dataset& ds) {
    const Centroids cents = class_centroids(ds);
    const Eigen::VectorXd diff = cents.c1 - cents.c0;
    const double norm = diff.norm();
    if (!(norm > 1e-12)) {
        throw DataError("class centroids already coincide (difference norm " +
                        std::to_string(norm) + "); no direction to remove");
    }
    RemovalResult result{Projection(ds.d()), {}, {}, {}, false, {}};
    result.residual_norms.push_back(result.projection.add_direction(diff, 1e-12));
    result.projected = apply_projection(result.projection, ds);
    return result;
}

RemovalResult inlp(const Dataset& ds, const InlpConfig& cfg, Seed /*seed*/) {
    if (cfg.iterations < 0) throw DataError("iteration count must be non-negative");
    if (cfg.iterations > ds.d()) {
        throw DataError("iteration count " + std::to_string(cfg.iterations) +
                        " exceeds feature dimension " + std::to_string(ds.d()));
    }
    const auto counts = class_counts(ds);
    if (counts.n0 == 0 || counts.n1 == 0) throw DataError("inlp requires both classes present");

    RemovalResult result{Projection(ds.d()), ds, {}, {}, false, {}};
    for (int iter = 0; iter < cfg.iterations; ++iter) {
        LinearModel model;
        if (cfg.classifier == ClassifierKind::NearestCentroid) {
            model = fit_nearest_centroid(result.projected);
        } else {
            model = fit_logistic(result.projected, cfg.classifier_config);
        }

        const double residual = result.projection.add_direction(model.weights, 1e-10);
        if (residual < 1e-10) {
            result.stopped_early = true;
            result.stop_reason = "stopped after " + std::to_string(iter) +
                                 " of " + std::to_string(cfg.iterations) +
                                 " iterations: classifier direction norm " +
                                 std::to_string(residual) +
                                 " after re-orthogonalization (rank exhausted or degenerate fit)";
            break;
        }
        result.residual_norms.push_back(residual);

        const Eigen::VectorXd direction = result.projection.direction(result.projection.count() - 1);
        result.projected.features -=
            (result.projected.features * direction) * direction.transpose();
        if (cfg.record_history) result.snapshots.push_back(result.projected);
    }
    return result;
}

}  // namespace scrub
