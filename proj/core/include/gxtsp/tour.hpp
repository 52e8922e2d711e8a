#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gxtsp/instance.hpp"

namespace gxtsp {

/// True when `order` holds each of 0..n-1 exactly once.
bool is_permutation(std::span<const int> order, int n);

/// Length of the closed tour visiting `order` in sequence, including the
/// edge back to the start. Throws std::invalid_argument when `order` is
/// not a permutation of 0..n-1.
std::int64_t tour_length(std::span<const int> order, const Instance& inst);

/// A closed tour: a cyclic permutation of 0..n-1 with its cached length.
/// Immutable once built.
class Tour {
  public:
    Tour() = default;

    /// Validates the permutation and computes the length.
    Tour(std::vector<int> order, const Instance& inst);

    /// Adopts a precomputed length without validation. For internal hot
    /// paths that maintain lengths incrementally; the caller guarantees
    /// both the permutation and the length.
    static Tour with_length(std::vector<int> order, std::int64_t length);

    const std::vector<int>& order() const noexcept { return order_; }
    int size() const noexcept { return static_cast<int>(order_.size()); }
    std::int64_t length() const noexcept { return length_; }

    friend bool operator==(const Tour& a, const Tour& b) = default;

  private:
    std::vector<int> order_;
    std::int64_t length_ = 0;
};

/// Circular doubly-linked list over node ids 0..n-1 with O(1) removal.
/// Backed by flat next/prev arrays; a node's identity is its index. A
/// mutable scratch structure owned by a single crossover invocation.
class LinkedTourList {
  public:
    explicit LinkedTourList(const Tour& tour);
    LinkedTourList(std::span<const int> order, int n);

    /// Former neighbors captured by unlink(). Both empty when the removed
    /// node was the last one present; left == right when exactly one
    /// other node remains.
    struct Neighbors {
        std::optional<int> left;  // former predecessor
        std::optional<int> right; // former successor
    };

    /// Remove v and splice its neighbors together, returning them as they
    /// were at the moment of removal. Throws std::invalid_argument when v
    /// is absent.
    Neighbors unlink(int v);

    bool contains(int v) const;
    int size() const noexcept { return size_; }

    /// Successor/predecessor of a present node.
    int next(int v) const;
    int prev(int v) const;

  private:
    void check_present(int v, const char* op) const;

    std::vector<int> next_;
    std::vector<int> prev_;
    std::vector<char> present_;
    int size_ = 0;
};

} // namespace gxtsp
