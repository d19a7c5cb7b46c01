#include "edss/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "edss/decoder.hpp"
#include "evolution.hpp"

namespace edss {

std::vector<int> profit_order(const Instance& instance) {
    std::vector<int> order(instance.task_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return instance.task(a).profit > instance.task(b).profit; });
    return order;
}

Plan cha(const Instance& instance) { return decode(profit_order(instance), instance); }

namespace {

class FixedRatePolicy {
public:
    explicit FixedRatePolicy(const SolverConfig& cfg) : cfg_(cfg) {}

    Individual vary(const Individual& parent, const Instance& instance, Rng& rng) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const bool cross = unit(rng) < kClassicCrossoverRate;
        const bool mutate = unit(rng) < kClassicMutationRate;
        Individual child{parent.order, 0};
        if (cross) {
            ops::crossover(child.order, 1, cfg_.seg_len, instance, rng);
            ++counts_[static_cast<std::size_t>(Action{1, false}.index())];
        }
        if (mutate) {
            ops::mutate(child.order, rng);
            ++counts_[static_cast<std::size_t>(Action{0, true}.index())];
        }
        return child;
    }

    void observe(Profit, Profit) {}
    [[nodiscard]] bool elite_retention() const { return false; }
    void finish(RunResult& result) const { result.action_counts = counts_; }

private:
    const SolverConfig& cfg_;
    std::array<long, kActionCount> counts_{};
};

} // namespace

RunResult run_classic_ga(const Instance& instance, const SolverConfig& cfg) {
    FixedRatePolicy policy(cfg);
    return detail::evolve(instance, cfg, "classic_ga", policy, {});
}

} // namespace edss
