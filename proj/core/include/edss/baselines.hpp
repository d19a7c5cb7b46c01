#pragma once

#include <vector>

#include "edss/model.hpp"
#include "edss/rlga.hpp"

namespace edss {

/// Task ids sorted by profit, highest first; lower id wins ties.
[[nodiscard]] std::vector<int> profit_order(const Instance& instance);

/// Construction heuristic: decode of profit_order().
[[nodiscard]] Plan cha(const Instance& instance);

inline constexpr double kClassicCrossoverRate = 0.9;
inline constexpr double kClassicMutationRate = 0.1;

/// Plain GA on the same loop and budget as run_rlga: C1 crossover with
/// probability 0.9 and swap mutation with probability 0.1, no learning and
/// no elite retention.
[[nodiscard]] RunResult run_classic_ga(const Instance& instance, const SolverConfig& cfg);

} // namespace edss
