#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scrub/diagnostics.hpp"

namespace scrub::svg {

/// Single-series line chart (iteration on x, value on y).
std::string line_chart(const std::string& title,
                       const std::vector<std::pair<int, double>>& series);

/// Paired histogram of predicted probabilities per true class.
std::string probability_histogram(const std::string& title, const ProbabilityDistribution& dist);

}  // namespace scrub::svg
