#pragma once

#include <Eigen/Dense>

#include <vector>

#include "scrub/dataset.hpp"
#include "scrub/rng.hpp"

namespace scrub {

/// Balanced assignment of instances to k groups; sizes differ by at most 1.
struct Partition {
    std::vector<int> assignment;  // group index per instance
    int k = 0;
};

enum class AnticlusterObjective { Diversity };

struct AnticlusterConfig {
    int k = 2;
    int restarts = 100;
    AnticlusterObjective objective = AnticlusterObjective::Diversity;
    int max_passes = 1000;
};

/// Sum over groups of all within-group pairwise Euclidean distances.
/// Anti-clustering maximizes this.
double diversity_objective(const Dataset& ds, const Partition& p);

/// One Lloyd-style anti-clustering sweep: group centroids are computed once,
/// then instances are reassigned in row order to the group with the farthest
/// centroid that still has room (per-group capacities keep the partition
/// balanced). Distance ties prefer the instance's current group, then the
/// lowest group index.
Partition anti_kmeans_pass(const Dataset& ds, const Partition& p);

/// Best-improvement pairwise-exchange local search for the diversity
/// criterion over `restarts` random balanced initializations; returns the
/// partition with the highest objective (ties resolved by lowest restart
/// index). Deterministic per seed.
Partition exchange_search(const Dataset& ds, const AnticlusterConfig& cfg, Seed seed);

/// Fraction of instances covered by their group's majority reference label.
/// Invariant to group renumbering and to flipping the label values.
double cluster_purity(const Partition& p, const Eigen::VectorXi& labels);

/// exchange_search plus the per-restart objective trace used for reporting.
struct RecoveryResult {
    Partition partition;
    std::vector<double> initial_objectives;  // objective of each restart's initialization
    std::vector<double> final_objectives;    // objective after local search
    int winning_restart = 0;
};
RecoveryResult recover_labels(const Dataset& ds, const AnticlusterConfig& cfg, Seed seed);

}  // namespace scrub
