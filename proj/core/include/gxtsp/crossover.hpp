#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gxtsp/instance.hpp"
#include "gxtsp/rng.hpp"
#include "gxtsp/tour.hpp"

namespace gxtsp {

/// The greedy-crossover operator family. Each operator builds one child
/// tour from two parents by repeatedly extending the child from the most
/// recently added node; they differ in how neighbor candidates are probed
/// and what happens when every candidate has already been placed.
enum class CrossoverOp {
    /// Probes the parents through twin doubly-linked lists that shrink as
    /// nodes are placed, so every probe hits an unvisited node and the
    /// whole construction is O(n). Needs no fallback.
    igx,
    /// Reads neighbors from the static parent tours; when all four are
    /// visited, scans every remaining node for the nearest (the accurate
    /// but slow variant).
    vgx,
    /// Considers only the single nearest static neighbor; picks a uniform
    /// random unvisited node whenever that one is visited.
    gx_random,
    /// Nearest unvisited of the four static neighbors; uniform random
    /// unvisited node when all four are visited.
    gx_four_random,
    /// As gx_four_random, but the fallback draws min(20, #unvisited)
    /// distinct unvisited nodes and keeps the nearest of the sample.
    gx_four_best20,
};

/// Names accepted on the command line, in declaration order.
std::span<const std::string_view> operator_names();
std::string_view to_string(CrossoverOp op);
std::optional<CrossoverOp> parse_operator(std::string_view name);

/// Where a candidate neighbor was captured from.
enum class CandidateSource { father_prev, father_next, mother_prev, mother_next };
std::string_view to_string(CandidateSource source);

/// Up to four neighbor candidates in fixed probe order (father-prev,
/// father-next, mother-prev, mother-next), deduplicated on insertion.
/// The probe order doubles as the tie-break: among equidistant
/// candidates the earliest entry wins.
class CandidateSet {
  public:
    struct Entry {
        int node;
        CandidateSource source;
    };

    /// Adds a candidate unless the node is already in the set.
    void add(int node, CandidateSource source);
    void add(std::optional<int> node, CandidateSource source);

    std::span<const Entry> entries() const noexcept { return {entries_.data(), count_}; }
    bool empty() const noexcept { return count_ == 0; }
    int size() const noexcept { return static_cast<int>(count_); }

  private:
    std::array<Entry, 4> entries_{};
    std::size_t count_ = 0;
};

/// Step-by-step record of one crossover invocation, for the `trace` tool
/// and for tests that inspect probing behavior.
struct CrossoverTrace {
    /// How the step's node was chosen.
    enum class Choice {
        greedy,           // nearest candidate
        random_fallback,  // uniform random unvisited node
        sampled_fallback, // nearest of a random sample of unvisited nodes
        scan_fallback,    // nearest over all unvisited nodes
    };

    struct Candidate {
        int node;
        CandidateSource source;
        std::int32_t dist;
        bool visited;
    };

    struct Step {
        int current;
        std::vector<Candidate> candidates;
        int chosen;
        Choice choice;
    };

    int start = -1;
    std::vector<Step> steps;
};

/// Each operator takes two parent tours over `inst` and produces a valid
/// child tour. Given identical parents, start node, and RNG state the
/// output is deterministic. `start` forces the first child node (drawn
/// uniformly when absent); `trace`, when non-null, receives the full
/// step log. Throws std::invalid_argument on mismatched parent sizes or
/// an out-of-range start node.
Tour igx(const Tour& father, const Tour& mother, const Instance& inst, Rng& rng,
         std::optional<int> start = std::nullopt, CrossoverTrace* trace = nullptr);
Tour vgx(const Tour& father, const Tour& mother, const Instance& inst, Rng& rng,
         std::optional<int> start = std::nullopt, CrossoverTrace* trace = nullptr);
Tour gx_random(const Tour& father, const Tour& mother, const Instance& inst, Rng& rng,
               std::optional<int> start = std::nullopt, CrossoverTrace* trace = nullptr);
Tour gx_four_random(const Tour& father, const Tour& mother, const Instance& inst, Rng& rng,
                    std::optional<int> start = std::nullopt, CrossoverTrace* trace = nullptr);
Tour gx_four_best20(const Tour& father, const Tour& mother, const Instance& inst, Rng& rng,
                    std::optional<int> start = std::nullopt, CrossoverTrace* trace = nullptr);

/// Dispatch by operator kind.
Tour crossover(CrossoverOp op, const Tour& father, const Tour& mother, const Instance& inst,
               Rng& rng, std::optional<int> start = std::nullopt,
               CrossoverTrace* trace = nullptr);

/// Quadratic reference construction for igx(): maintains an explicit
/// visited set and scans outward from the current node's position in each
/// original parent order to the first unvisited node. Shares the probe
/// order and tie-break with igx() and must match it node for node, but
/// never touches LinkedTourList.
Tour reference_igx_oracle(const Tour& father, const Tour& mother, const Instance& inst,
                          int start);

} // namespace gxtsp
