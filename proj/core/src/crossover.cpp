#include "gxtsp/crossover.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace gxtsp {

namespace {

constexpr std::array<std::string_view, 5> kOperatorNames = {
    "igx", "vgx", "gx_random", "gx_four_random", "gx_four_best20",
};

void check_parents(const Tour& father, const Tour& mother, const Instance& inst,
                   std::optional<int> start) {
    if (father.size() != inst.n() || mother.size() != inst.n()) {
        throw std::invalid_argument("crossover: parent sizes " +
                                    std::to_string(father.size()) + "/" +
                                    std::to_string(mother.size()) + " do not match instance n = " +
                                    std::to_string(inst.n()));
    }
    if (!is_permutation(father.order(), inst.n()) || !is_permutation(mother.order(), inst.n())) {
        throw std::invalid_argument("crossover: parent is not a valid tour");
    }
    if (start && (*start < 0 || *start >= inst.n())) {
        throw std::invalid_argument("crossover: start node " + std::to_string(*start) +
                                    " out of range for n = " + std::to_string(inst.n()));
    }
}

int pick_start(std::optional<int> start, int n, Rng& rng) {
    return start ? *start : uniform_int(rng, 0, n - 1);
}

/// Neighbor lookup into the unchanged parent orders, used by the GX
/// variants (IGX reads its shrinking linked lists instead).
struct StaticNeighbors {
    std::vector<int> prev;
    std::vector<int> next;

    explicit StaticNeighbors(const Tour& t)
        : prev(static_cast<std::size_t>(t.size())), next(static_cast<std::size_t>(t.size())) {
        const auto& order = t.order();
        const int n = t.size();
        for (int k = 0; k < n; ++k) {
            const int v = order[static_cast<std::size_t>(k)];
            next[static_cast<std::size_t>(v)] = order[static_cast<std::size_t>((k + 1) % n)];
            prev[static_cast<std::size_t>(v)] = order[static_cast<std::size_t>((k + n - 1) % n)];
        }
    }
};

/// The not-yet-placed nodes, supporting O(1) removal, uniform draws, and
/// distinct-sample draws. Element order is unspecified.
class UnvisitedPool {
  public:
    explicit UnvisitedPool(int n)
        : nodes_(static_cast<std::size_t>(n)), pos_(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) {
            nodes_[static_cast<std::size_t>(i)] = i;
            pos_[static_cast<std::size_t>(i)] = i;
        }
    }

    int size() const noexcept { return static_cast<int>(nodes_.size()); }
    std::span<const int> nodes() const noexcept { return nodes_; }

    void remove(int v) {
        const int i = pos_[static_cast<std::size_t>(v)];
        const int last = nodes_.back();
        nodes_[static_cast<std::size_t>(i)] = last;
        pos_[static_cast<std::size_t>(last)] = i;
        nodes_.pop_back();
    }

    int random(Rng& rng) const { return nodes_[static_cast<std::size_t>(uniform_int(rng, 0, size() - 1))]; }

    /// k distinct nodes drawn uniformly, returned as the pool's first k
    /// entries (partial Fisher-Yates; reorders the pool).
    std::span<const int> sample_distinct(int k, Rng& rng) {
        for (int t = 0; t < k; ++t) {
            const int j = uniform_int(rng, t, size() - 1);
            std::swap(nodes_[static_cast<std::size_t>(t)], nodes_[static_cast<std::size_t>(j)]);
            pos_[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(t)])] = t;
            pos_[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(j)])] = j;
        }
        return {nodes_.data(), static_cast<std::size_t>(k)};
    }

  private:
    std::vector<int> nodes_;
    std::vector<int> pos_;
};

void record_step(CrossoverTrace* trace, int current, const CandidateSet& cands,
                 const Instance& inst, const std::vector<char>& visited, int chosen,
                 CrossoverTrace::Choice choice) {
    if (!trace) {
        return;
    }
    CrossoverTrace::Step step;
    step.current = current;
    for (const auto& e : cands.entries()) {
        step.candidates.push_back({e.node, e.source, inst.distance_unchecked(current, e.node),
                                   static_cast<bool>(visited[static_cast<std::size_t>(e.node)])});
    }
    step.chosen = chosen;
    step.choice = choice;
    trace->steps.push_back(std::move(step));
}

void init_trace(CrossoverTrace* trace, int start) {
    if (trace) {
        trace->start = start;
        trace->steps.clear();
    }
}

/// First strict minimum in entry order; -1 when no entry passes the
/// visited filter (pass an empty `visited` to disable the filter).
int nearest_entry(const CandidateSet& cands, int current, const Instance& inst,
                  const std::vector<char>& visited) {
    int best = -1;
    std::int32_t best_d = std::numeric_limits<std::int32_t>::max();
    for (const auto& e : cands.entries()) {
        if (!visited.empty() && visited[static_cast<std::size_t>(e.node)]) {
            continue;
        }
        const std::int32_t d = inst.distance_unchecked(current, e.node);
        if (d < best_d) {
            best_d = d;
            best = e.node;
        }
    }
    return best;
}

} // namespace

std::span<const std::string_view> operator_names() { return kOperatorNames; }

std::string_view to_string(CrossoverOp op) {
    return kOperatorNames[static_cast<std::size_t>(op)];
}

std::optional<CrossoverOp> parse_operator(std::string_view name) {
    for (std::size_t i = 0; i < kOperatorNames.size(); ++i) {
        if (kOperatorNames[i] == name) {
            return static_cast<CrossoverOp>(i);
        }
    }
    return std::nullopt;
}

std::string_view to_string(CandidateSource source) {
    switch (source) {
    case CandidateSource::father_prev: return "father-prev";
    case CandidateSource::father_next: return "father-next";
    case CandidateSource::mother_prev: return "mother-prev";
    case CandidateSource::mother_next: return "mother-next";
    }
    return "?";
}

void CandidateSet::add(int node, CandidateSource source) {
    for (std::size_t i = 0; i < count_; ++i) {
        if (entries_[i].node == node) {
            return;
        }
    }
    entries_[count_++] = {node, source};
}

void CandidateSet::add(std::optional<int> node, CandidateSource source) {
    if (node) {
        add(*node, source);
    }
}

Tour igx(const Tour& father, const Tour& mother, const Instance& inst, Rng& rng,
         std::optional<int> start, CrossoverTrace* trace) {
    check_parents(father, mother, inst, start);
    const int n = inst.n();
    LinkedTourList father_list(father);
    LinkedTourList mother_list(mother);

    std::vector<int> child;
    child.reserve(static_cast<std::size_t>(n));
    std::vector<char> visited(static_cast<std::size_t>(n), 0);

    int current = pick_start(start, n, rng);
    init_trace(trace, current);
    child.push_back(current);
    visited[static_cast<std::size_t>(current)] = 1;
    std::int64_t length = 0;

    while (static_cast<int>(child.size()) < n) {
        // Dropping the current node out of both lists splices its list
        // neighbors together and hands them to us; everything still linked
        // is unvisited, so no candidate needs a visited check.
        const LinkedTourList::Neighbors fn = father_list.unlink(current);
        const LinkedTourList::Neighbors mn = mother_list.unlink(current);
        CandidateSet cands;
        cands.add(fn.left, CandidateSource::father_prev);
        cands.add(fn.right, CandidateSource::father_next);
        cands.add(mn.left, CandidateSource::mother_prev);
        cands.add(mn.right, CandidateSource::mother_next);
        if (cands.empty()) {
            throw std::logic_error("igx: empty candidate set before child completion");
        }
        int best = -1;
        std::int32_t best_d = std::numeric_limits<std::int32_t>::max();
        for (const auto& e : cands.entries()) {
            assert(!visited[static_cast<std::size_t>(e.node)]);
            const std::int32_t d = inst.distance_unchecked(current, e.node);
            if (d < best_d) {
                best_d = d;
                best = e.node;
            }
        }
        record_step(trace, current, cands, inst, visited, best, CrossoverTrace::Choice::greedy);
        length += best_d;
        child.push_back(best);
        visited[static_cast<std::size_t>(best)] = 1;
        current = best;
    }
    length += inst.distance_unchecked(current, child.front());
    return Tour::with_length(std::move(child), length);
}

Tour vgx(const Tour& father, const Tour& mother, const Instance& inst, Rng& rng,
         std::optional<int> start, CrossoverTrace* trace) {
    check_parents(father, mother, inst, start);
    const int n = inst.n();
    const StaticNeighbors fnb(father);
    const StaticNeighbors mnb(mother);

    std::vector<int> child;
    child.reserve(static_cast<std::size_t>(n));
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    UnvisitedPool pool(n);

    int current = pick_start(start, n, rng);
    init_trace(trace, current);
    child.push_back(current);
    visited[static_cast<std::size_t>(current)] = 1;
    pool.remove(current);
    std::int64_t length = 0;

    while (static_cast<int>(child.size()) < n) {
        CandidateSet cands;
        cands.add(fnb.prev[static_cast<std::size_t>(current)], CandidateSource::father_prev);
        cands.add(fnb.next[static_cast<std::size_t>(current)], CandidateSource::father_next);
        cands.add(mnb.prev[static_cast<std::size_t>(current)], CandidateSource::mother_prev);
        cands.add(mnb.next[static_cast<std::size_t>(current)], CandidateSource::mother_next);
        int best = nearest_entry(cands, current, inst, visited);
        CrossoverTrace::Choice choice = CrossoverTrace::Choice::greedy;
        if (best < 0) {
            // All four parent neighbors already placed: full greedy scan,
            // distance ties to the lowest node id.
            std::int32_t best_d = std::numeric_limits<std::int32_t>::max();
            for (const int v : pool.nodes()) {
                const std::int32_t d = inst.distance_unchecked(current, v);
                if (d < best_d || (d == best_d && v < best)) {
                    best_d = d;
                    best = v;
                }
            }
            choice = CrossoverTrace::Choice::scan_fallback;
        }
        record_step(trace, current, cands, inst, visited, best, choice);
        length += inst.distance_unchecked(current, best);
        child.push_back(best);
        visited[static_cast<std::size_t>(best)] = 1;
        pool.remove(best);
        current = best;
    }
    length += inst.distance_unchecked(current, child.front());
    return Tour::with_length(std::move(child), length);
}

Tour gx_random(const Tour& father, const Tour& mother, const Instance& inst, Rng& rng,
               std::optional<int> start, CrossoverTrace* trace) {
    check_parents(father, mother, inst, start);
    const int n = inst.n();
    const StaticNeighbors fnb(father);
    const StaticNeighbors mnb(mother);

    std::vector<int> child;
    child.reserve(static_cast<std::size_t>(n));
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    UnvisitedPool pool(n);

    int current = pick_start(start, n, rng);
    init_trace(trace, current);
    child.push_back(current);
    visited[static_cast<std::size_t>(current)] = 1;
    pool.remove(current);
    std::int64_t length = 0;

    const std::vector<char> no_filter;
    while (static_cast<int>(child.size()) < n) {
        CandidateSet cands;
        cands.add(fnb.prev[static_cast<std::size_t>(current)], CandidateSource::father_prev);
        cands.add(fnb.next[static_cast<std::size_t>(current)], CandidateSource::father_next);
        cands.add(mnb.prev[static_cast<std::size_t>(current)], CandidateSource::mother_prev);
        cands.add(mnb.next[static_cast<std::size_t>(current)], CandidateSource::mother_next);
        // The overall-nearest neighbor is the only one considered; when it
        // is already placed the step is random, the remaining three
        // candidates notwithstanding.
        int best = nearest_entry(cands, current, inst, no_filter);
        CrossoverTrace::Choice choice = CrossoverTrace::Choice::greedy;
        if (visited[static_cast<std::size_t>(best)]) {
            best = pool.random(rng);
            choice = CrossoverTrace::Choice::random_fallback;
        }
        record_step(trace, current, cands, inst, visited, best, choice);
        length += inst.distance_unchecked(current, best);
        child.push_back(best);
        visited[static_cast<std::size_t>(best)] = 1;
        pool.remove(best);
        current = best;
    }
    length += inst.distance_unchecked(current, child.front());
    return Tour::with_length(std::move(child), length);
}

Tour gx_four_random(const Tour& father, const Tour& mother, const Instance& inst, Rng& rng,
                    std::optional<int> start, CrossoverTrace* trace) {
    check_parents(father, mother, inst, start);
    const int n = inst.n();
    const StaticNeighbors fnb(father);
    const StaticNeighbors mnb(mother);

    std::vector<int> child;
    child.reserve(static_cast<std::size_t>(n));
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    UnvisitedPool pool(n);

    int current = pick_start(start, n, rng);
    init_trace(trace, current);
    child.push_back(current);
    visited[static_cast<std::size_t>(current)] = 1;
    pool.remove(current);
    std::int64_t length = 0;

    while (static_cast<int>(child.size()) < n) {
        CandidateSet cands;
        cands.add(fnb.prev[static_cast<std::size_t>(current)], CandidateSource::father_prev);
        cands.add(fnb.next[static_cast<std::size_t>(current)], CandidateSource::father_next);
        cands.add(mnb.prev[static_cast<std::size_t>(current)], CandidateSource::mother_prev);
        cands.add(mnb.next[static_cast<std::size_t>(current)], CandidateSource::mother_next);
        int best = nearest_entry(cands, current, inst, visited);
        CrossoverTrace::Choice choice = CrossoverTrace::Choice::greedy;
        if (best < 0) {
            best = pool.random(rng);
            choice = CrossoverTrace::Choice::random_fallback;
        }
        record_step(trace, current, cands, inst, visited, best, choice);
        length += inst.distance_unchecked(current, best);
        child.push_back(best);
        visited[static_cast<std::size_t>(best)] = 1;
        pool.remove(best);
        current = best;
    }
    length += inst.distance_unchecked(current, child.front());
    return Tour::with_length(std::move(child), length);
}

Tour gx_four_best20(const Tour& father, const Tour& mother, const Instance& inst, Rng& rng,
                    std::optional<int> start, CrossoverTrace* trace) {
    check_parents(father, mother, inst, start);
    const int n = inst.n();
    const StaticNeighbors fnb(father);
    const StaticNeighbors mnb(mother);

    std::vector<int> child;
    child.reserve(static_cast<std::size_t>(n));
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    UnvisitedPool pool(n);

    int current = pick_start(start, n, rng);
    init_trace(trace, current);
    child.push_back(current);
    visited[static_cast<std::size_t>(current)] = 1;
    pool.remove(current);
    std::int64_t length = 0;

    while (static_cast<int>(child.size()) < n) {
        CandidateSet cands;
        cands.add(fnb.prev[static_cast<std::size_t>(current)], CandidateSource::father_prev);
        cands.add(fnb.next[static_cast<std::size_t>(current)], CandidateSource::father_next);
        cands.add(mnb.prev[static_cast<std::size_t>(current)], CandidateSource::mother_prev);
        cands.add(mnb.next[static_cast<std::size_t>(current)], CandidateSource::mother_next);
        int best = nearest_entry(cands, current, inst, visited);
        CrossoverTrace::Choice choice = CrossoverTrace::Choice::greedy;
        if (best < 0) {
            const int k = std::min(20, pool.size());
            const std::span<const int> sample = pool.sample_distinct(k, rng);
            std::int32_t best_d = std::numeric_limits<std::int32_t>::max();
            for (const int v : sample) {
                const std::int32_t d = inst.distance_unchecked(current, v);
                if (d < best_d) {
                    best_d = d;
                    best = v;
                }
            }
            choice = CrossoverTrace::Choice::sampled_fallback;
        }
        record_step(trace, current, cands, inst, visited, best, choice);
        length += inst.distance_unchecked(current, best);
        child.push_back(best);
        visited[static_cast<std::size_t>(best)] = 1;
        pool.remove(best);
        current = best;
    }
    length += inst.distance_unchecked(current, child.front());
    return Tour::with_length(std::move(child), length);
}

Tour crossover(CrossoverOp op, const Tour& father, const Tour& mother, const Instance& inst,
               Rng& rng, std::optional<int> start, CrossoverTrace* trace) {
    switch (op) {
    case CrossoverOp::igx: return igx(father, mother, inst, rng, start, trace);
    case CrossoverOp::vgx: return vgx(father, mother, inst, rng, start, trace);
    case CrossoverOp::gx_random: return gx_random(father, mother, inst, rng, start, trace);
    case CrossoverOp::gx_four_random:
        return gx_four_random(father, mother, inst, rng, start, trace);
    case CrossoverOp::gx_four_best20:
        return gx_four_best20(father, mother, inst, rng, start, trace);
    }
    throw std::invalid_argument("crossover: unknown operator");
}

Tour reference_igx_oracle(const Tour& father, const Tour& mother, const Instance& inst,
                          int start) {
    check_parents(father, mother, inst, start);
    const int n = inst.n();
    const auto& forder = father.order();
    const auto& morder = mother.order();
    std::vector<int> fpos(static_cast<std::size_t>(n));
    std::vector<int> mpos(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        fpos[static_cast<std::size_t>(forder[static_cast<std::size_t>(k)])] = k;
        mpos[static_cast<std::size_t>(morder[static_cast<std::size_t>(k)])] = k;
    }

    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<int> child;
    child.reserve(static_cast<std::size_t>(n));
    int current = start;
    child.push_back(current);
    visited[static_cast<std::size_t>(current)] = 1;

    // Walks outward from the node's position to the first unvisited node
    // in the given direction (dir = -1 toward prev, +1 toward next).
    const auto scan = [&](const std::vector<int>& order, int pos, int dir) -> std::optional<int> {
        for (int step = 1; step < n; ++step) {
            const int idx = ((pos + dir * step) % n + n) % n;
            const int v = order[static_cast<std::size_t>(idx)];
            if (!visited[static_cast<std::size_t>(v)]) {
                return v;
            }
        }
        return std::nullopt;
    };

    while (static_cast<int>(child.size()) < n) {
        CandidateSet cands;
        cands.add(scan(forder, fpos[static_cast<std::size_t>(current)], -1),
                  CandidateSource::father_prev);
        cands.add(scan(forder, fpos[static_cast<std::size_t>(current)], +1),
                  CandidateSource::father_next);
        cands.add(scan(morder, mpos[static_cast<std::size_t>(current)], -1),
                  CandidateSource::mother_prev);
        cands.add(scan(morder, mpos[static_cast<std::size_t>(current)], +1),
                  CandidateSource::mother_next);
        int best = -1;
        std::int32_t best_d = std::numeric_limits<std::int32_t>::max();
        for (const auto& e : cands.entries()) {
            const std::int32_t d = inst.distance_unchecked(current, e.node);
            if (d < best_d) {
                best_d = d;
                best = e.node;
            }
        }
        child.push_back(best);
        visited[static_cast<std::size_t>(best)] = 1;
        current = best;
    }
    return Tour(std::move(child), inst);
}

} // namespace gxtsp
