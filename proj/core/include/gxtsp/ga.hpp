#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gxtsp/crossover.hpp"
#include "gxtsp/instance.hpp"
#include "gxtsp/local_search.hpp"
#include "gxtsp/rng.hpp"
#include "gxtsp/tour.hpp"

namespace gxtsp {

struct GAConfig {
    int population_size = 50;
    int generation_size = 500;
    CrossoverOp op = CrossoverOp::igx;
    LocalSearchConfig ls{};
    std::uint64_t seed = 1;
    /// Safety cap on outer-loop iterations; hitting it sets
    /// GAResult::hit_loop_cap.
    int max_outer_loops = 10000;
    /// When set, children identical to an existing individual are not
    /// added to the pool.
    bool reject_duplicates = false;
    /// Forces every crossover to start from this node (default: uniform
    /// random per invocation).
    std::optional<int> fixed_start{};
};

struct Individual {
    Tour tour;
    std::uint64_t serial = 0; // insertion order, breaks length ties
};

/// A pool of tours ordered by insertion serial. Size may exceed the
/// configured population size between merging children and reduction.
class Population {
  public:
    void add(Tour tour);

    std::size_t size() const noexcept { return members_.size(); }
    const Individual& at(std::size_t i) const { return members_.at(i); }
    std::span<const Individual> members() const noexcept { return members_; }

    /// Minimum-length member; ties resolve to the earliest inserted. O(1).
    const Individual& best() const;

    /// Serial the next add() will assign.
    std::uint64_t next_serial() const noexcept { return next_serial_; }
    bool any_serial_at_least(std::uint64_t serial) const noexcept;
    bool contains_order(std::span<const int> order) const noexcept;

    friend Population reduce_population(Population pool, const GAConfig& cfg);

  private:
    std::vector<Individual> members_;
    std::uint64_t next_serial_ = 0;
    std::size_t best_index_ = 0;
};

/// population_size uniformly random tours.
Population init_population(const Instance& inst, const GAConfig& cfg, Rng& rng);

/// Two distinct individuals drawn uniformly without replacement.
/// Requires a population of at least 2.
std::pair<const Tour&, const Tour&> select_parents(const Population& pop, Rng& rng);

/// Keeps the population_size shortest tours; equal lengths keep the
/// earlier-inserted individual. Requires |pool| >= population_size.
Population reduce_population(Population pool, const GAConfig& cfg);

struct GAResult {
    Tour best_tour;
    std::int64_t best_length = 0;
    /// Number of outer-loop iterations executed (each produces
    /// generation_size children and reduces once).
    int outer_loops = 0;
    double wall_seconds = 0.0;
    std::int64_t children_produced = 0;
    bool hit_loop_cap = false;
    /// Best population length after each outer loop; non-increasing.
    std::vector<std::int64_t> best_history;
};

/// The memetic loop: initialize randomly, then repeatedly produce
/// generation_size children (crossover + 2-opt + 3-opt), merge them into
/// the pool, and truncate back to population_size. The outer loop runs
/// while at least one child of the iteration survives reduction.
/// Deterministic for a fixed (instance, config) pair.
GAResult run_ga(const Instance& inst, const GAConfig& cfg);

} // namespace gxtsp
