#include "edss/rlga.hpp"

#include <cmath>
#include <limits>

#include "edss/errors.hpp"
#include "evolution.hpp"

namespace edss {

Action Action::from_index(int index) {
    if (index < 0 || index >= kActionCount) throw InputError("action index " + std::to_string(index) + " out of range");
    if (index < kCrossoverCount) return Action{index + 1, false};
    if (index == kCrossoverCount) return Action{0, true};
    return Action{index - kCrossoverCount, true};
}

int Action::index() const {
    if (crossover == 0) return kCrossoverCount;
    return mutate ? kCrossoverCount + crossover : crossover - 1;
}

std::string Action::name() const {
    if (crossover == 0) return "M";
    std::string out = "C" + std::to_string(crossover);
    if (mutate) out += "+M";
    return out;
}

int QTable::argmax(State s) const {
    const auto r = row(s);
    return static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());
}

void SolverConfig::validate() const {
    if (np < 2) throw InputError("np must be >= 2");
    if (mfe < np) throw InputError("mfe must be >= np");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("alpha must be in (0,1]");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InputError("gamma must be in [0,1)");
    if (!(temp > 0.0)) throw InputError("temp must be > 0");
    if (!(eps >= 0.0 && eps < 1.0)) throw InputError("eps must be in [0,1)");
    if (thre < 0) throw InputError("thre must be >= 0");
    if (seg_len < 1) throw InputError("seg_len must be >= 1");
}

std::array<double, kActionCount> softmax_probs(std::span<const double, kActionCount> qrow, double temp) {
    const double top = *std::max_element(qrow.begin(), qrow.end());
    std::array<double, kActionCount> p{};
    double sum = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        p[j] = std::exp((qrow[j] - top) / temp);
        sum += p[j];
    }
    for (double& v : p) v /= sum;
    return p;
}

Action select_action(const QTable& qtable, State state, const SolverConfig& cfg, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (unit(rng) < cfg.eps) {
        std::uniform_int_distribution<int> any(0, kActionCount - 1);
        return Action::from_index(any(rng));
    }
    const auto p = softmax_probs(qtable.row(state), cfg.temp);
    const double r = unit(rng);
    double acc = 0.0;
    for (int j = 0; j < kActionCount; ++j) {
        acc += p[static_cast<std::size_t>(j)];
        if (r < acc) return Action::from_index(j);
    }
    // r landed in the rounding slack above the last cumulative value.
    for (int j = kActionCount - 1; j >= 0; --j)
        if (p[static_cast<std::size_t>(j)] > 0.0) return Action::from_index(j);
    return Action::from_index(kActionCount - 1);
}

std::size_t roulette_select(std::span<const Profit> fitnesses, Rng& rng) {
    if (fitnesses.empty()) throw StructuralError("roulette_select on an empty population");
    Profit total = 0;
    for (Profit f : fitnesses) {
        if (f < 0) throw InputError("roulette_select needs non-negative fitness");
        total += f;
    }
    if (total == 0) {
        std::uniform_int_distribution<std::size_t> any(0, fitnesses.size() - 1);
        return any(rng);
    }
    std::uniform_int_distribution<Profit> ticket(0, total - 1);
    Profit r = ticket(rng);
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        if (r < fitnesses[i]) return i;
        r -= fitnesses[i];
    }
    return fitnesses.size() - 1;
}

void q_update(QTable& qtable, State state, int action, double r, State next_state, const SolverConfig& cfg) {
    const double future = qtable.at(next_state, qtable.argmax(next_state));
    double& q = qtable.at(state, action);
    q += cfg.alpha * (r + cfg.gamma * future - q);
}

namespace ops {

void swap_segments(std::span<int> order, std::size_t a, std::size_t b, std::size_t len) {
    auto first = order.begin();
    std::swap_ranges(first + static_cast<std::ptrdiff_t>(a), first + static_cast<std::ptrdiff_t>(a + len),
                     first + static_cast<std::ptrdiff_t>(b));
}

void reverse_segment(std::span<int> order, std::size_t at, std::size_t len) {
    auto first = order.begin() + static_cast<std::ptrdiff_t>(at);
    std::reverse(first, first + static_cast<std::ptrdiff_t>(len));
}

void swap_positions(std::span<int> order, std::size_t i, std::size_t j) { std::swap(order[i], order[j]); }

namespace {

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> d(lo, hi);
    return d(rng);
}

// Two disjoint segments of length len; n >= 2 * len.
std::pair<std::size_t, std::size_t> pick_disjoint(std::size_t n, std::size_t len, Rng& rng) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        const std::size_t a = uniform_index(rng, 0, n - len);
        const std::size_t b = uniform_index(rng, 0, n - len);
        if (a + len <= b || b + len <= a) return {a, b};
    }
    const std::size_t a = uniform_index(rng, 0, n - 2 * len);
    return {a, a + len};
}

} // namespace

void crossover(std::span<int> order, int which, int seg_len, const Instance& instance, Rng& rng) {
    const std::size_t n = order.size();
    const auto base = static_cast<std::size_t>(seg_len);
    auto pair_len = [&](std::size_t want) { return 2 * want > n ? n / 2 : want; };
    auto single_len = [&](std::size_t want) { return std::min(want, n); };

    switch (which) {
    case 1:
    case 2:
    case 3: {
        const std::size_t len = pair_len(base * static_cast<std::size_t>(which));
        if (len == 0) return;
        const auto [a, b] = pick_disjoint(n, len, rng);
        swap_segments(order, a, b, len);
        return;
    }
    case 4: {
        const std::size_t len = single_len(base);
        if (len == 0) return;
        reverse_segment(order, uniform_index(rng, 0, n - len), len);
        return;
    }
    case 5: {
        // The front segment and the chosen one must not overlap.
        const std::size_t len = pair_len(base);
        if (len == 0) return;
        swap_segments(order, 0, uniform_index(rng, len, n - len), len);
        return;
    }
    case 6: {
        const std::size_t len = single_len(base);
        if (len == 0) return;
        sort_segment(order, uniform_index(rng, 0, n - len), len, [&](int t) { return instance.task(t).est; });
        return;
    }
    case 7: {
        const std::size_t len = single_len(base);
        if (len == 0) return;
        sort_segment(order, uniform_index(rng, 0, n - len), len, [&](int t) { return instance.task(t).dur; });
        return;
    }
    default: throw InputError("unknown crossover operator C" + std::to_string(which));
    }
}

void mutate(std::span<int> order, Rng& rng) {
    const std::size_t n = order.size();
    if (n < 2) return;
    const std::size_t i = uniform_index(rng, 0, n - 1);
    std::size_t j = uniform_index(rng, 0, n - 2);
    if (j >= i) ++j;
    swap_positions(order, i, j);
}

} // namespace ops

Individual apply_operator(const Individual& parent, Action action, const SolverConfig& cfg,
                          const Instance& instance, Rng& rng) {
    Individual child{parent.order, 0};
    if (action.crossover != 0) ops::crossover(child.order, action.crossover, cfg.seg_len, instance, rng);
    if (action.mutate) ops::mutate(child.order, rng);
    return child;
}

namespace {

class QLearningPolicy {
public:
    QLearningPolicy(const SolverConfig& cfg) : cfg_(cfg) {}

    Individual vary(const Individual& parent, const Instance& instance, Rng& rng) {
        last_action_ = select_action(qtable_, state_, cfg_, rng).index();
        ++counts_[static_cast<std::size_t>(last_action_)];
        return apply_operator(parent, Action::from_index(last_action_), cfg_, instance, rng);
    }

    void observe(Profit child, Profit parent) {
        const double r = reward(child, parent);
        const State next = r > 0.0 ? State::Improved : State::NotImproved;
        q_update(qtable_, state_, last_action_, r, next, cfg_);
        state_ = next;
    }

    [[nodiscard]] bool elite_retention() const { return cfg_.elite_retention; }

    void finish(RunResult& result) const {
        result.qtable = qtable_;
        result.action_counts = counts_;
    }

private:
    const SolverConfig& cfg_;
    QTable qtable_{};
    State state_ = State::NotImproved;
    int last_action_ = 0;
    std::array<long, kActionCount> counts_{};
};

} // namespace

RunResult run_rlga(const Instance& instance, const SolverConfig& cfg, const GenerationObserver& observer) {
    QLearningPolicy policy(cfg);
    return detail::evolve(instance, cfg, cfg.elite_retention ? "rlga" : "rlga_we", policy, observer);
}

} // namespace edss
