#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "edss/model.hpp"

namespace edss {

using Rng = std::mt19937_64;

/// A task permutation plus the profit of its decoded plan.
struct Individual {
    std::vector<int> order;
    Profit fitness = 0;

    friend bool operator==(const Individual&, const Individual&) = default;
};

inline constexpr int kCrossoverCount = 7;
inline constexpr int kMutationCount = 1;
inline constexpr int kActionCount = kCrossoverCount * kMutationCount + kCrossoverCount + kMutationCount;
inline constexpr int kStateCount = 2;

/// Search state: I when the last evolution step improved on its parent.
enum class State : int { Improved = 0, NotImproved = 1 };

/// An evolution action. Index layout: 0..6 crossover C1..C7 alone,
/// 7 mutation alone, 8..14 crossover C1..C7 followed by mutation.
struct Action {
    int crossover = 0; // 0 = none, 1..7 = C1..C7
    bool mutate = false;

    [[nodiscard]] static Action from_index(int index);
    [[nodiscard]] int index() const;
    [[nodiscard]] std::string name() const;

    friend bool operator==(const Action&, const Action&) = default;
};

struct QTable {
    std::array<std::array<double, kActionCount>, kStateCount> values{};

    [[nodiscard]] std::span<const double, kActionCount> row(State s) const {
        return values[static_cast<std::size_t>(s)];
    }
    [[nodiscard]] double& at(State s, int action) {
        return values[static_cast<std::size_t>(s)][static_cast<std::size_t>(action)];
    }
    [[nodiscard]] double at(State s, int action) const {
        return values[static_cast<std::size_t>(s)][static_cast<std::size_t>(action)];
    }
    /// Index of the largest entry in a row; lowest index on ties.
    [[nodiscard]] int argmax(State s) const;

    friend bool operator==(const QTable&, const QTable&) = default;
};

struct SolverConfig {
    int np = 10;
    long mfe = 5000;
    double alpha = 0.01;
    double gamma = 0.95;
    double temp = 1000.0;
    double eps = 0.01;
    long thre = 100;
    int seg_len = 2;
    std::uint64_t seed = 1;
    bool elite_retention = true;

    /// Throws InputError on an invalid combination.
    void validate() const;
};

struct TracePoint {
    long eval = 0;
    Profit best = 0;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunResult {
    std::string algorithm;
    std::uint64_t seed = 0;
    Plan best_plan;
    std::vector<int> best_order;
    std::vector<TracePoint> trace; // best-so-far after every evaluation
    QTable qtable;
    std::array<long, kActionCount> action_counts{};
    std::size_t decodes = 0;
    double elapsed_ms = 0.0;
};

[[nodiscard]] std::array<double, kActionCount> softmax_probs(std::span<const double, kActionCount> qrow, double temp);

/// epsilon-greedy over a softmax policy: with probability eps a uniform
/// action, otherwise a draw from softmax_probs of the state's row.
[[nodiscard]] Action select_action(const QTable& qtable, State state, const SolverConfig& cfg, Rng& rng);

/// Fitness-proportional selection; uniform when all fitnesses are zero.
/// Throws StructuralError on an empty list.
[[nodiscard]] std::size_t roulette_select(std::span<const Profit> fitnesses, Rng& rng);

[[nodiscard]] inline double reward(Profit current, Profit previous) {
    return static_cast<double>(current - previous);
}

/// Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)).
void q_update(QTable& qtable, State state, int action, double r, State next_state, const SolverConfig& cfg);

/// Applies `action` to a copy of `parent.order`. Fitness of the result is
/// left at zero; the caller decodes it.
[[nodiscard]] Individual apply_operator(const Individual& parent, Action action, const SolverConfig& cfg,
                                        const Instance& instance, Rng& rng);

/// Deterministic building blocks of the operators.
namespace ops {
/// Swaps order[a, a+len) with order[b, b+len); the ranges must be disjoint.
void swap_segments(std::span<int> order, std::size_t a, std::size_t b, std::size_t len);
void reverse_segment(std::span<int> order, std::size_t at, std::size_t len);
/// Stable sort of order[at, at+len) by ascending key(task).
template <typename Key>
void sort_segment(std::span<int> order, std::size_t at, std::size_t len, Key key) {
    auto first = order.begin() + static_cast<std::ptrdiff_t>(at);
    std::stable_sort(first, first + static_cast<std::ptrdiff_t>(len),
                     [&](int a, int b) { return key(a) < key(b); });
}
void swap_positions(std::span<int> order, std::size_t i, std::size_t j);

void crossover(std::span<int> order, int which, int seg_len, const Instance& instance, Rng& rng);
void mutate(std::span<int> order, Rng& rng);
} // namespace ops

/// State after the end-of-generation bookkeeping (elite step included).
struct GenerationStats {
    long generation = 0;
    long evaluations = 0;
    Profit population_max = 0;
    Profit global_best = 0;
    long count = 0; // non-improving generations so far
    bool retention_active = false;
};
using GenerationObserver = std::function<void(const GenerationStats&)>;

/// Q-learning guided genetic algorithm. Performs exactly np + mfe decodes.
[[nodiscard]] RunResult run_rlga(const Instance& instance, const SolverConfig& cfg,
                                 const GenerationObserver& observer = {});

} // namespace edss
