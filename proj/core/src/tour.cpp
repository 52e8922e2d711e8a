#include "gxtsp/tour.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace gxtsp {

bool is_permutation(std::span<const int> order, int n) {
    if (order.size() != static_cast<std::size_t>(n)) {
        return false;
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const int v : order) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            return false;
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

std::int64_t tour_length(std::span<const int> order, const Instance& inst) {
    if (!is_permutation(order, inst.n())) {
        throw std::invalid_argument("tour_length: order is not a permutation of 0.." +
                                    std::to_string(inst.n() - 1));
    }
    std::int64_t total = 0;
    const std::size_t n = order.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        total += inst.distance_unchecked(order[k], order[k + 1]);
    }
    total += inst.distance_unchecked(order[n - 1], order[0]);
    return total;
}

Tour::Tour(std::vector<int> order, const Instance& inst)
    : order_(std::move(order)), length_(tour_length(order_, inst)) {}

Tour Tour::with_length(std::vector<int> order, std::int64_t length) {
    Tour t;
    t.order_ = std::move(order);
    t.length_ = length;
    return t;
}

LinkedTourList::LinkedTourList(const Tour& tour)
    : LinkedTourList(tour.order(), tour.size()) {}

LinkedTourList::LinkedTourList(std::span<const int> order, int n)
    : next_(static_cast<std::size_t>(n)),
      prev_(static_cast<std::size_t>(n)),
      present_(static_cast<std::size_t>(n), 0),
      size_(n) {
    if (!is_permutation(order, n)) {
        throw std::invalid_argument("LinkedTourList: order is not a permutation of 0.." +
                                    std::to_string(n - 1));
    }
    for (int k = 0; k < n; ++k) {
        const int v = order[static_cast<std::size_t>(k)];
        next_[static_cast<std::size_t>(v)] = order[static_cast<std::size_t>((k + 1) % n)];
        prev_[static_cast<std::size_t>(v)] = order[static_cast<std::size_t>((k + n - 1) % n)];
        present_[static_cast<std::size_t>(v)] = 1;
    }
}

void LinkedTourList::check_present(int v, const char* op) const {
    if (v < 0 || v >= static_cast<int>(present_.size()) ||
        !present_[static_cast<std::size_t>(v)]) {
        throw std::invalid_argument(std::string("LinkedTourList::") + op + ": node " +
                                    std::to_string(v) + " not present");
    }
}

LinkedTourList::Neighbors LinkedTourList::unlink(int v) {
    check_present(v, "unlink");
    Neighbors out;
    if (size_ > 1) {
        const int p = prev_[static_cast<std::size_t>(v)];
        const int x = next_[static_cast<std::size_t>(v)];
        out.left = p;
        out.right = x;
        next_[static_cast<std::size_t>(p)] = x;
        prev_[static_cast<std::size_t>(x)] = p;
    }
    present_[static_cast<std::size_t>(v)] = 0;
    --size_;
    return out;
}

bool LinkedTourList::contains(int v) const {
    return v >= 0 && v < static_cast<int>(present_.size()) &&
           present_[static_cast<std::size_t>(v)];
}

int LinkedTourList::next(int v) const {
    check_present(v, "next");
    return next_[static_cast<std::size_t>(v)];
}

int LinkedTourList::prev(int v) const {
    check_present(v, "prev");
    return prev_[static_cast<std::size_t>(v)];
}

} // namespace gxtsp
