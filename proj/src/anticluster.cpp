#include "scrub/anticluster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scrub/parallel.hpp"

namespace scrub {

namespace {

// Squared-size cache pays off up to this many instances; beyond it,
// distances are recomputed on the fly.
constexpr Eigen::Index kDistanceCacheLimit = 4096;

class PairwiseDistances {
public:
    explicit PairwiseDistances(const Eigen::MatrixXd& rows) : rows_(rows) {
        const Eigen::Index n = rows.rows();
        if (n <= kDistanceCacheLimit) {
            cache_.resize(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                cache_(i, i) = 0.0;
                for (Eigen::Index j = i + 1; j < n; ++j) {
                    const double dist = (rows.row(i) - rows.row(j)).norm();
                    cache_(i, j) = dist;
                    cache_(j, i) = dist;
                }
            }
        }
    }

    double operator()(Eigen::Index i, Eigen::Index j) const {
        if (cache_.size() > 0) return cache_(i, j);
        return (rows_.row(i) - rows_.row(j)).norm();
    }

private:
    const Eigen::MatrixXd& rows_;
    Eigen::MatrixXd cache_;
};

void check_partition(const Dataset& ds, const Partition& p) {
    if (static_cast<Eigen::Index>(p.assignment.size()) != ds.n()) {
        throw DataError("partition length " + std::to_string(p.assignment.size()) +
                        " does not match instance count " + std::to_string(ds.n()));
    }
    if (p.k < 1) throw DataError("partition group count must be positive");
    for (const int g : p.assignment) {
        if (g < 0 || g >= p.k) throw DataError("group index " + std::to_string(g) + " out of range");
    }
}

// Balanced group sizes: the first n % k groups take the extra instance.
std::vector<int> balanced_sizes(int n, int k) {
    std::vector<int> sizes(static_cast<std::size_t>(k), n / k);
    for (int g = 0; g < n % k; ++g) ++sizes[static_cast<std::size_t>(g)];
    return sizes;
}

struct SearchOutcome {
    Partition partition;
    double initial_objective = 0.0;
    double final_objective = 0.0;
};

double objective_from_sums(const Eigen::MatrixXd& group_sums, const std::vector<int>& assignment) {
    double total = 0.0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        total += group_sums(static_cast<Eigen::Index>(i), assignment[i]);
    }
    return 0.5 * total;
}

double exact_objective(const PairwiseDistances& dist, const std::vector<int>& assignment) {
    double total = 0.0;
    const auto n = static_cast<Eigen::Index>(assignment.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (assignment[static_cast<std::size_t>(i)] == assignment[static_cast<std::size_t>(j)]) {
                total += dist(i, j);
            }
        }
    }
    return total;
}

SearchOutcome search_once(const PairwiseDistances& dist, Eigen::Index n,
                          const AnticlusterConfig& cfg, rng::Xoshiro256 gen) {
    // Random balanced initialization: shuffled order cut into group chunks.
    const std::vector<int> order = rng::permutation(static_cast<int>(n), gen);
    const std::vector<int> sizes = balanced_sizes(static_cast<int>(n), cfg.k);
    std::vector<int> assignment(static_cast<std::size_t>(n), 0);
    {
        std::size_t cursor = 0;
        for (int g = 0; g < cfg.k; ++g) {
            for (int s = 0; s < sizes[static_cast<std::size_t>(g)]; ++s) {
                assignment[static_cast<std::size_t>(order[cursor++])] = g;
            }
        }
    }

    // group_sums(i, g) = sum of distances from i to the members of group g.
    Eigen::MatrixXd group_sums = Eigen::MatrixXd::Zero(n, cfg.k);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = dist(i, j);
            group_sums(i, assignment[static_cast<std::size_t>(j)]) += d;
            group_sums(j, assignment[static_cast<std::size_t>(i)]) += d;
        }
    }

    SearchOutcome outcome;
    outcome.initial_objective = objective_from_sums(group_sums, assignment);

    double objective = outcome.initial_objective;
    for (int pass = 0; pass < cfg.max_passes; ++pass) {
        double best_delta = 1e-12;
        Eigen::Index best_i = -1;
        Eigen::Index best_j = -1;
        for (Eigen::Index i = 0; i < n; ++i) {
            const int gi = assignment[static_cast<std::size_t>(i)];
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const int gj = assignment[static_cast<std::size_t>(j)];
                if (gi == gj) continue;
                const double delta = (group_sums(i, gj) - group_sums(i, gi)) +
                                     (group_sums(j, gi) - group_sums(j, gj)) - 2.0 * dist(i, j);
                if (delta > best_delta) {
                    best_delta = delta;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_i < 0) break;

        const int gi = assignment[static_cast<std::size_t>(best_i)];
        const int gj = assignment[static_cast<std::size_t>(best_j)];
        for (Eigen::Index t = 0; t < n; ++t) {
            if (t == best_i || t == best_j) continue;
            const double di = dist(t, best_i);
            const double dj = dist(t, best_j);
            group_sums(t, gi) += dj - di;
            group_sums(t, gj) += di - dj;
        }
        const double dij = dist(best_i, best_j);
        group_sums(best_i, gi) += dij;
        group_sums(best_i, gj) -= dij;
        group_sums(best_j, gj) += dij;
        group_sums(best_j, gi) -= dij;
        assignment[static_cast<std::size_t>(best_i)] = gj;
        assignment[static_cast<std::size_t>(best_j)] = gi;
        objective += best_delta;
    }

    outcome.partition = Partition{std::move(assignment), cfg.k};
    outcome.final_objective = exact_objective(dist, outcome.partition.assignment);
    return outcome;
}

void check_config(const Dataset& ds, const AnticlusterConfig& cfg) {
    if (cfg.k < 2) throw DataError("anticluster group count must be at least 2");
    if (cfg.restarts < 1) throw DataError("restart count must be positive");
    if (cfg.max_passes < 1) throw DataError("max_passes must be positive");
    if (ds.n() < cfg.k) throw DataError("fewer instances than groups");
}

}  // namespace

double diversity_objective(const Dataset& ds, const Partition& p) {
    check_partition(ds, p);
    double total = 0.0;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        for (Eigen::Index j = i + 1; j < ds.n(); ++j) {
            if (p.assignment[static_cast<std::size_t>(i)] ==
                p.assignment[static_cast<std::size_t>(j)]) {
                total += (ds.features.row(i) - ds.features.row(j)).norm();
            }
        }
    }
    return total;
}

Partition anti_kmeans_pass(const Dataset& ds, const Partition& p) {
    check_partition(ds, p);
    const Eigen::Index n = ds.n();

    Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(p.k, ds.d());
    std::vector<int> member_count(static_cast<std::size_t>(p.k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
        centroids.row(p.assignment[static_cast<std::size_t>(i)]) += ds.features.row(i);
        ++member_count[static_cast<std::size_t>(p.assignment[static_cast<std::size_t>(i)])];
    }
    for (int g = 0; g < p.k; ++g) {
        if (member_count[static_cast<std::size_t>(g)] == 0) {
            throw DataError("group " + std::to_string(g) + " is empty");
        }
        centroids.row(g) /= static_cast<double>(member_count[static_cast<std::size_t>(g)]);
    }

    const int capacity = static_cast<int>((n + p.k - 1) / p.k);  // ceil(N / K)
    std::vector<int> filled(static_cast<std::size_t>(p.k), 0);
    Partition out;
    out.k = p.k;
    out.assignment.assign(static_cast<std::size_t>(n), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int current = p.assignment[static_cast<std::size_t>(i)];
        int chosen = -1;
        double chosen_dist = 0.0;
        for (int g = 0; g < p.k; ++g) {
            if (filled[static_cast<std::size_t>(g)] >= capacity) continue;
            const double dist = (ds.features.row(i) - centroids.row(g)).norm();
            const bool better =
                chosen < 0 || dist > chosen_dist ||
                (dist == chosen_dist && g == current && chosen != current);
            if (better) {
                chosen = g;
                chosen_dist = dist;
            }
        }
        out.assignment[static_cast<std::size_t>(i)] = chosen;
        ++filled[static_cast<std::size_t>(chosen)];
    }
    return out;
}

Partition exchange_search(const Dataset& ds, const AnticlusterConfig& cfg, Seed seed) {
    return recover_labels(ds, cfg, seed).partition;
}

double cluster_purity(const Partition& p, const Eigen::VectorXi& labels) {
    if (static_cast<Eigen::Index>(p.assignment.size()) != labels.size()) {
        throw DataError("partition length " + std::to_string(p.assignment.size()) +
                        " does not match label count " + std::to_string(labels.size()));
    }
    std::vector<int> count0(static_cast<std::size_t>(p.k), 0);
    std::vector<int> count1(static_cast<std::size_t>(p.k), 0);
    for (std::size_t i = 0; i < p.assignment.size(); ++i) {
        const auto g = static_cast<std::size_t>(p.assignment[i]);
        (labels(static_cast<Eigen::Index>(i)) == 0 ? count0 : count1)[g] += 1;
    }
    int majority_total = 0;
    for (int g = 0; g < p.k; ++g) {
        majority_total += std::max(count0[static_cast<std::size_t>(g)],
                                   count1[static_cast<std::size_t>(g)]);
    }
    return static_cast<double>(majority_total) / static_cast<double>(p.assignment.size());
}

RecoveryResult recover_labels(const Dataset& ds, const AnticlusterConfig& cfg, Seed seed) {
    validate(ds);
    check_config(ds, cfg);

    const PairwiseDistances dist(ds.features);
    std::vector<SearchOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
    parallel_for(static_cast<std::size_t>(cfg.restarts), [&](std::size_t restart) {
        outcomes[restart] = search_once(dist, ds.n(), cfg,
                                        rng::derive(seed, "anticluster", restart));
    });

    RecoveryResult result;
    result.initial_objectives.reserve(outcomes.size());
    result.final_objectives.reserve(outcomes.size());
    int best = 0;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        result.initial_objectives.push_back(outcomes[r].initial_objective);
        result.final_objectives.push_back(outcomes[r].final_objective);
        if (outcomes[r].final_objective > outcomes[static_cast<std::size_t>(best)].final_objective) {
            best = static_cast<int>(r);
        }
    }
    result.winning_restart = best;
    result.partition = std::move(outcomes[static_cast<std::size_t>(best)].partition);
    return result;
}

}  // namespace scrub
