#pragma once

// Generation loop shared by the RL-guided GA and the classic GA. The policy
// decides how a parent is varied and is told the resulting fitness.

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "edss/decoder.hpp"
#include "edss/errors.hpp"
#include "edss/rlga.hpp"

namespace edss::detail {

template <typename Policy>
RunResult evolve(const Instance& instance, const SolverConfig& cfg, std::string name, Policy& policy,
                 const GenerationObserver& observer) {
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();

    RunResult result;
    result.algorithm = std::move(name);
    result.seed = cfg.seed;

    Rng rng(cfg.seed);
    Decoder decoder(instance);
    const auto np = static_cast<std::size_t>(cfg.np);

    Profit best_ever = -1;
    long evals = 0;
    auto evaluate = [&](Individual& ind) {
        ind.fitness = decoder.evaluate(ind.order);
        ++result.decodes;
        ++evals;
        if (ind.fitness > best_ever) {
            best_ever = ind.fitness;
            result.best_order = ind.order;
        }
        result.trace.push_back(TracePoint{evals, best_ever});
    };

    result.trace.reserve(np + static_cast<std::size_t>(cfg.mfe));
    std::vector<Individual> population(np);
    for (Individual& ind : population) {
        ind.order.resize(instance.task_count());
        std::iota(ind.order.begin(), ind.order.end(), 0);
        std::shuffle(ind.order.begin(), ind.order.end(), rng);
        evaluate(ind);
    }

    long num_eval = 0;
    long count = 0;
    Profit global_best = 0;
    Profit last_local_best = 0;
    std::vector<int> global_best_order;

    long generation = 0;
    std::vector<Individual> parents;
    std::vector<Profit> parent_fitness(np);
    while (num_eval < cfg.mfe) {
        parents = population;
        for (std::size_t i = 0; i < np; ++i) parent_fitness[i] = parents[i].fitness;

        for (std::size_t p = 0; p < np && num_eval < cfg.mfe; ++p) {
            const Individual& parent = parents[roulette_select(parent_fitness, rng)];
            Individual child = policy.vary(parent, instance, rng);
            evaluate(child);
            ++num_eval;
            policy.observe(child.fitness, parent.fitness);
            population[p] = std::move(child);
        }

        const auto local = std::max_element(population.begin(), population.end(),
                                            [](const Individual& a, const Individual& b) {
                                                return a.fitness < b.fitness;
                                            });
        const Profit local_best = local->fitness;
        if (local_best > global_best) {
            global_best = local_best;
            global_best_order = local->order;
        } else if (policy.elite_retention() && count < cfg.thre && !global_best_order.empty()) {
            const auto worst = std::min_element(population.begin(), population.end(),
                                                [](const Individual& a, const Individual& b) {
                                                    return a.fitness < b.fitness;
                                                });
            worst->order = global_best_order;
            worst->fitness = global_best;
        }
        if (local_best <= last_local_best) ++count;
        last_local_best = local_best;

        if (observer) {
            GenerationStats stats;
            stats.generation = ++generation;
            stats.evaluations = evals;
            stats.population_max =
                std::max_element(population.begin(), population.end(), [](const Individual& a, const Individual& b) {
                    return a.fitness < b.fitness;
                })->fitness;
            stats.global_best = global_best;
            stats.count = count;
            stats.retention_active = policy.elite_retention() && count < cfg.thre;
            observer(stats);
        }
    }

    result.best_plan = decoder.decode(result.best_order);
    if (result.best_plan.profit != best_ever)
        throw StructuralError("decoder is not deterministic: best plan profit changed on re-decode");
    policy.finish(result);
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return result;
}

} // namespace edss::detail
