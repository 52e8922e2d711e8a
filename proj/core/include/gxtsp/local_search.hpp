#pragma once

#include <optional>

#include "gxtsp/instance.hpp"
#include "gxtsp/tour.hpp"

namespace gxtsp {

struct LocalSearchConfig {
    bool two_opt_enabled = true;
    bool three_opt_enabled = true;
    /// Maximum number of full improvement passes; empty runs to
    /// convergence. Must be >= 1 when set.
    std::optional<int> max_passes{};
};

/// First-improvement 2-exchange: reverses the segment between two edges
/// whenever the reconnection is shorter, sweeping all edge pairs until a
/// full pass finds nothing (or max_passes is hit). Output length is never
/// worse than the input. The enable flags in `cfg` are consumed by
/// improve(); calling two_opt directly always runs it.
Tour two_opt(const Tour& tour, const Instance& inst, const LocalSearchConfig& cfg = {});

/// Sequential 3-exchange: for each index triple evaluates the seven
/// non-identity reconnections and applies the best improving one,
/// sweeping until a full pass finds nothing (or max_passes is hit).
Tour three_opt(const Tour& tour, const Instance& inst, const LocalSearchConfig& cfg = {});

/// The child-improvement pipeline: 2-opt then 3-opt, honoring the enable
/// flags.
Tour improve(const Tour& tour, const Instance& inst, const LocalSearchConfig& cfg = {});

} // namespace gxtsp
