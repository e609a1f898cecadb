#pragma once

#include "scrub/dataset.hpp"
#include "scrub/rng.hpp"

namespace scrub {

struct SyntheticSpec {
    Eigen::Index n = 0;  // must be even (balanced labels) and >= 4
    Eigen::Index d = 0;  // >= 1
    Seed seed;
};

/// n x d matrix of i.i.d. standard normal entries with exactly n/2 labels
/// per class; the row order is shuffled with the seed. Bit-identical output
/// for identical specs.
Dataset generate_gaussian(const SyntheticSpec& spec);

}  // namespace scrub
