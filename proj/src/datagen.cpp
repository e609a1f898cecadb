#include "scrub/datagen.hpp"

#include <string>

namespace scrub {

Dataset generate_gaussian(const SyntheticSpec& spec) {
    if (spec.n < 4) throw DataError("synthetic datasets need at least 4 instances");
    if (spec.n % 2 != 0) {
        throw DataError("instance count must be even for balanced labels, got " +
                        std::to_string(spec.n));
    }
    if (spec.d < 1) throw DataError("dimension must be at least 1");

    auto feature_gen = rng::derive(spec.seed, "gaussian-features");
    Eigen::MatrixXd features(spec.n, spec.d);
    for (Eigen::Index i = 0; i < spec.n; ++i) {
        for (Eigen::Index j = 0; j < spec.d; ++j) features(i, j) = feature_gen.normal();
    }
    Eigen::VectorXi labels(spec.n);
    for (Eigen::Index i = 0; i < spec.n; ++i) labels(i) = i < spec.n / 2 ? 0 : 1;

    auto order_gen = rng::derive(spec.seed, "gaussian-rows");
    const std::vector<int> order = rng::permutation(static_cast<int>(spec.n), order_gen);

    Dataset out;
    out.features.resize(spec.n, spec.d);
    out.labels.resize(spec.n);
    for (Eigen::Index i = 0; i < spec.n; ++i) {
        out.features.row(i) = features.row(order[static_cast<std::size_t>(i)]);
        out.labels(i) = labels(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

}  // namespace scrub
