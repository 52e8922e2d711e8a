#include "gxtsp/ga.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace gxtsp {

namespace {

void check_config(const Instance& inst, const GAConfig& cfg) {
    if (cfg.population_size < 2) {
        throw std::invalid_argument("GAConfig: population_size must be >= 2, got " +
                                    std::to_string(cfg.population_size));
    }
    if (cfg.generation_size < 1) {
        throw std::invalid_argument("GAConfig: generation_size must be >= 1, got " +
                                    std::to_string(cfg.generation_size));
    }
    if (cfg.max_outer_loops < 1) {
        throw std::invalid_argument("GAConfig: max_outer_loops must be >= 1, got " +
                                    std::to_string(cfg.max_outer_loops));
    }
    if (cfg.ls.max_passes && *cfg.ls.max_passes < 1) {
        throw std::invalid_argument("GAConfig: ls.max_passes must be >= 1");
    }
    if (cfg.fixed_start && (*cfg.fixed_start < 0 || *cfg.fixed_start >= inst.n())) {
        throw std::invalid_argument("GAConfig: fixed_start " + std::to_string(*cfg.fixed_start) +
                                    " out of range for n = " + std::to_string(inst.n()));
    }
}

} // namespace

void Population::add(Tour tour) {
    const std::int64_t len = tour.length();
    members_.push_back({std::move(tour), next_serial_++});
    if (members_.size() == 1 || len < members_[best_index_].tour.length()) {
        best_index_ = members_.size() - 1;
    }
}

const Individual& Population::best() const {
    if (members_.empty()) {
        throw std::logic_error("Population::best: empty population");
    }
    return members_[best_index_];
}

bool Population::any_serial_at_least(std::uint64_t serial) const noexcept {
    return std::any_of(members_.begin(), members_.end(),
                       [serial](const Individual& m) { return m.serial >= serial; });
}

bool Population::contains_order(std::span<const int> order) const noexcept {
    return std::any_of(members_.begin(), members_.end(), [order](const Individual& m) {
        const auto& o = m.tour.order();
        return o.size() == order.size() && std::equal(o.begin(), o.end(), order.begin());
    });
}

Population init_population(const Instance& inst, const GAConfig& cfg, Rng& rng) {
    check_config(inst, cfg);
    Population pop;
    std::vector<int> base(static_cast<std::size_t>(inst.n()));
    std::iota(base.begin(), base.end(), 0);
    for (int i = 0; i < cfg.population_size; ++i) {
        std::vector<int> order = base;
        std::shuffle(order.begin(), order.end(), rng);
        pop.add(Tour(std::move(order), inst));
    }
    return pop;
}

std::pair<const Tour&, const Tour&> select_parents(const Population& pop, Rng& rng) {
    const int s = static_cast<int>(pop.size());
    if (s < 2) {
        throw std::invalid_argument("select_parents: population has " + std::to_string(s) +
                                    " members, need at least 2");
    }
    const int i = uniform_int(rng, 0, s - 1);
    int j = uniform_int(rng, 0, s - 2);
    if (j >= i) {
        ++j;
    }
    return {pop.at(static_cast<std::size_t>(i)).tour, pop.at(static_cast<std::size_t>(j)).tour};
}

Population reduce_population(Population pool, const GAConfig& cfg) {
    if (pool.members_.size() < static_cast<std::size_t>(cfg.population_size)) {
        throw std::invalid_argument("reduce_population: pool of " +
                                    std::to_string(pool.members_.size()) +
                                    " is smaller than population_size " +
                                    std::to_string(cfg.population_size));
    }
    // (length, serial) is a total order: equal lengths keep the earlier
    // insertion, so an incumbent is never displaced by an equal child.
    std::sort(pool.members_.begin(), pool.members_.end(),
              [](const Individual& x, const Individual& y) {
                  if (x.tour.length() != y.tour.length()) {
                      return x.tour.length() < y.tour.length();
                  }
                  return x.serial < y.serial;
              });
    pool.members_.resize(static_cast<std::size_t>(cfg.population_size));
    pool.best_index_ = 0;
    return pool;
}

GAResult run_ga(const Instance& inst, const GAConfig& cfg) {
    check_config(inst, cfg);
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(cfg.seed);

    Population pop = init_population(inst, cfg, rng);
    GAResult result;
    result.best_history.push_back(pop.best().tour.length());

    bool changed = true;
    while (changed) {
        if (result.outer_loops >= cfg.max_outer_loops) {
            result.hit_loop_cap = true;
            break;
        }
        ++result.outer_loops;

        Population pool = pop;
        const std::uint64_t first_child_serial = pool.next_serial();
        for (int g = 0; g < cfg.generation_size; ++g) {
            const auto parents = select_parents(pop, rng);
            Tour child = crossover(cfg.op, parents.first, parents.second, inst, rng,
                                   cfg.fixed_start);
            child = improve(child, inst, cfg.ls);
            ++result.children_produced;
            if (cfg.reject_duplicates && pool.contains_order(child.order())) {
                continue;
            }
            pool.add(std::move(child));
        }
        pop = reduce_population(std::move(pool), cfg);
        changed = pop.any_serial_at_least(first_child_serial);
        result.best_history.push_back(pop.best().tour.length());
    }

    const Individual& best = pop.best();
    result.best_tour = best.tour;
    result.best_length = best.tour.length();
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

} // namespace gxtsp
