#include "scrub/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scrub/parallel.hpp"

namespace scrub {

FoldPlan make_stratified_folds(const Eigen::VectorXi& labels, int k, Seed seed) {
    const int n = static_cast<int>(labels.size());
    if (k < 2) throw DataError("fold count must be at least 2");
    if (k > n) throw DataError("fold count " + std::to_string(k) + " exceeds instance count " +
                               std::to_string(n));

    std::vector<int> class0;
    std::vector<int> class1;
    for (int i = 0; i < n; ++i) (labels(i) == 0 ? class0 : class1).push_back(i);

    auto gen = rng::derive(seed, "fold-plan");
    gen.shuffle(class0);
    gen.shuffle(class1);

    // Deal the shuffled instances round-robin, class 0 first, so overall and
    // per-class fold sizes each differ by at most one.
    FoldPlan plan;
    plan.k = k;
    plan.assignment.assign(static_cast<std::size_t>(n), 0);
    int fold = 0;
    for (const auto* group : {&class0, &class1}) {
        for (const int idx : *group) {
            plan.assignment[static_cast<std::size_t>(idx)] = fold;
            fold = (fold + 1) % k;
        }
    }
    return plan;
}

namespace {

void check_training_splits(const Eigen::VectorXi& labels, const FoldPlan& plan) {
    const int n = static_cast<int>(labels.size());
    std::vector<int> fold_count0(static_cast<std::size_t>(plan.k), 0);
    std::vector<int> fold_count1(static_cast<std::size_t>(plan.k), 0);
    int total0 = 0;
    int total1 = 0;
    for (int i = 0; i < n; ++i) {
        const auto f = static_cast<std::size_t>(plan.assignment[static_cast<std::size_t>(i)]);
        if (labels(i) == 0) {
            ++fold_count0[f];
            ++total0;
        } else {
            ++fold_count1[f];
            ++total1;
        }
    }
    for (int f = 0; f < plan.k; ++f) {
        const auto fi = static_cast<std::size_t>(f);
        if (total0 - fold_count0[fi] == 0 || total1 - fold_count1[fi] == 0) {
            throw DataError("training split for fold " + std::to_string(f) +
                            " contains a single class");
        }
    }
}

// Cross-validated decision value <w, x> + b for every instance.
Eigen::VectorXd cross_validated_margins(const Dataset& ds, int k,
                                        const RegularizationConfig& cfg, Seed seed) {
    validate(ds);
    const FoldPlan plan = make_stratified_folds(ds.labels, k, seed);
    check_training_splits(ds.labels, plan);

    const Eigen::Index n = ds.n();
    Eigen::VectorXd margins(n);
    parallel_for(static_cast<std::size_t>(k), [&](std::size_t fold) {
        std::vector<Eigen::Index> train;
        std::vector<Eigen::Index> test;
        for (Eigen::Index i = 0; i < n; ++i) {
            (plan.assignment[static_cast<std::size_t>(i)] == static_cast<int>(fold) ? test : train)
                .push_back(i);
        }
        Dataset split;
        split.features.resize(static_cast<Eigen::Index>(train.size()), ds.d());
        split.labels.resize(static_cast<Eigen::Index>(train.size()));
        for (std::size_t row = 0; row < train.size(); ++row) {
            split.features.row(static_cast<Eigen::Index>(row)) = ds.features.row(train[row]);
            split.labels(static_cast<Eigen::Index>(row)) = ds.labels(train[row]);
        }
        const LinearModel model = fit_logistic(split, cfg);
        for (const Eigen::Index i : test) {
            margins(i) = model.weights.dot(ds.features.row(i)) + model.bias;
        }
    });
    return margins;
}

}  // namespace

double cross_val_accuracy(const Dataset& ds, int k, const RegularizationConfig& cfg, Seed seed) {
    const Eigen::VectorXd margins = cross_validated_margins(ds, k, cfg, seed);
    Eigen::Index correct = 0;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        const bool hit = (margins(i) > 0.0 && ds.labels(i) == 1) ||
                         (margins(i) < 0.0 && ds.labels(i) == 0);
        if (hit) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(ds.n());
}

LooAudit loo_nearest_centroid_audit(const Dataset& ds) {
    validate(ds);
    const auto counts = class_counts(ds);
    if (counts.n0 < 2 || counts.n1 < 2) {
        throw DataError("leave-one-out audit needs at least 2 members per class; got " +
                        std::to_string(counts.n0) + " / " + std::to_string(counts.n1));
    }

    Eigen::VectorXd sum0 = Eigen::VectorXd::Zero(ds.d());
    Eigen::VectorXd sum1 = Eigen::VectorXd::Zero(ds.d());
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        (ds.labels(i) == 0 ? sum0 : sum1) += ds.features.row(i).transpose();
    }

    LooAudit audit;
    audit.margins.resize(ds.n());
    parallel_for(static_cast<std::size_t>(ds.n()), [&](std::size_t idx) {
        const auto i = static_cast<Eigen::Index>(idx);
        const Eigen::VectorXd x = ds.features.row(i).transpose();
        Eigen::VectorXd own_centroid;
        Eigen::VectorXd other_centroid;
        if (ds.labels(i) == 0) {
            own_centroid = (sum0 - x) / static_cast<double>(counts.n0 - 1);
            other_centroid = sum1 / static_cast<double>(counts.n1);
        } else {
            own_centroid = (sum1 - x) / static_cast<double>(counts.n1 - 1);
            other_centroid = sum0 / static_cast<double>(counts.n0);
        }
        audit.margins(i) = (x - other_centroid).norm() - (x - own_centroid).norm();
    });

    Eigen::Index correct = 0;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        if (audit.margins(i) > 0.0) ++correct;
    }
    audit.accuracy = static_cast<double>(correct) / static_cast<double>(ds.n());
    return audit;
}

ProbabilityDistribution probability_distribution(const Dataset& ds, int k,
                                                 const RegularizationConfig& cfg, Seed seed) {
    const Eigen::VectorXd margins = cross_validated_margins(ds, k, cfg, seed);
    constexpr int kBins = 20;

    ProbabilityDistribution dist;
    dist.bin_edges.resize(kBins + 1);
    for (int b = 0; b <= kBins; ++b) dist.bin_edges(b) = static_cast<double>(b) / kBins;
    dist.counts_class0 = Eigen::VectorXi::Zero(kBins);
    dist.counts_class1 = Eigen::VectorXi::Zero(kBins);
    dist.probabilities.resize(ds.n());

    double correct_mass = 0.0;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        const double p = sigmoid(margins(i));
        dist.probabilities(i) = p;
        const int bin = std::min(kBins - 1, static_cast<int>(p * kBins));
        (ds.labels(i) == 0 ? dist.counts_class0 : dist.counts_class1)(bin) += 1;
        correct_mass += ds.labels(i) == 1 ? p : 1.0 - p;
    }
    dist.mean_correct_class_probability = correct_mass / static_cast<double>(ds.n());
    return dist;
}

Dataset shuffle_labels(const Dataset& ds, Seed seed) {
    auto gen = rng::derive(seed, "shuffle-labels");
    const std::vector<int> order = rng::permutation(static_cast<int>(ds.n()), gen);
    Dataset out = ds;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        out.labels(i) = ds.labels(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

double opposite_label_nn_proportion(const Dataset& ds) {
    validate(ds);
    const Eigen::Index n = ds.n();
    std::vector<Eigen::Index> neighbor(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t idx) {
        const auto i = static_cast<Eigen::Index>(idx);
        Eigen::Index best = -1;
        double best_dist = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dist = (ds.features.row(i) - ds.features.row(j)).squaredNorm();
            if (best < 0 || dist < best_dist) {
                best = j;
                best_dist = dist;
            }
        }
        neighbor[idx] = best;
    });

    Eigen::Index opposite = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (ds.labels(neighbor[static_cast<std::size_t>(i)]) != ds.labels(i)) ++opposite;
    }
    return static_cast<double>(opposite) / static_cast<double>(n);
}

double median_pairwise_distance(const Eigen::MatrixXd& rows) {
    const Eigen::Index n = rows.rows();
    if (n < 2) throw DataError("median pairwise distance needs at least 2 rows");
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            dists.push_back((rows.row(i) - rows.row(j)).norm());
        }
    }
    const auto mid = dists.begin() + static_cast<std::ptrdiff_t>((dists.size() - 1) / 2);
    std::nth_element(dists.begin(), mid, dists.end());
    return *mid;
}

double mmd_squared(const Dataset& ds, double bandwidth) {
    validate(ds);
    if (!(bandwidth > 0.0)) throw DataError("kernel bandwidth must be positive");
    const auto counts = class_counts(ds);
    if (counts.n0 < 2 || counts.n1 < 2) {
        throw DataError("mmd_squared needs at least 2 members per class");
    }

    std::vector<Eigen::Index> group0;
    std::vector<Eigen::Index> group1;
    for (Eigen::Index i = 0; i < ds.n(); ++i) (ds.labels(i) == 0 ? group0 : group1).push_back(i);

    const double scale = 1.0 / (2.0 * bandwidth * bandwidth);
    const auto kernel = [&](Eigen::Index i, Eigen::Index j) {
        return std::exp(-(ds.features.row(i) - ds.features.row(j)).squaredNorm() * scale);
    };

    double within0 = 0.0;
    for (std::size_t a = 0; a < group0.size(); ++a) {
        for (std::size_t b = a + 1; b < group0.size(); ++b) {
            within0 += kernel(group0[a], group0[b]);
        }
    }
    double within1 = 0.0;
    for (std::size_t a = 0; a < group1.size(); ++a) {
        for (std::size_t b = a + 1; b < group1.size(); ++b) {
            within1 += kernel(group1[a], group1[b]);
        }
    }
    double cross = 0.0;
    for (const Eigen::Index i : group0) {
        for (const Eigen::Index j : group1) cross += kernel(i, j);
    }

    const auto m = static_cast<double>(group0.size());
    const auto n = static_cast<double>(group1.size());
    return 2.0 * within0 / (m * (m - 1.0)) + 2.0 * within1 / (n * (n - 1.0)) -
           2.0 * cross / (m * n);
}

double mmd_squared(const Dataset& ds) {
    validate(ds);
    const double median = median_pairwise_distance(ds.features);
    if (!(median > 0.0)) {
        throw DataError("median pairwise distance is zero; bandwidth heuristic is degenerate");
    }
    return mmd_squared(ds, median);
}

}  // namespace scrub
