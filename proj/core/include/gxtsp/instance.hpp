#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gxtsp {

/// Raised when TSPLIB text cannot be parsed. When the problem can be tied
/// to a specific input line, line() is its 1-based number (0 otherwise)
/// and what() names it.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, int line = 0);
    int line() const noexcept { return line_; }

  private:
    int line_;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// One symmetric TSP instance: node count plus an integral, symmetric
/// distance function with zero diagonal. The distance source is either a
/// set of 2-D coordinates (rounded Euclidean metric) or an explicit full
/// matrix. Instances are immutable after construction and safe to share
/// across concurrent solver runs.
class Instance {
  public:
    /// Coordinate instances at or below this node count get a precomputed
    /// full distance matrix; larger ones compute distances on demand.
    static constexpr int kDefaultMatrixThreshold = 1000;

    static Instance from_coords(std::string name, std::vector<Point> coords,
                                int matrix_threshold = kDefaultMatrixThreshold);

    /// `matrix` is row-major n*n; it must be symmetric, non-negative, and
    /// zero on the diagonal.
    static Instance from_matrix(std::string name, int n, std::vector<std::int32_t> matrix);

    int n() const noexcept { return n_; }
    const std::string& name() const noexcept { return name_; }
    bool has_coords() const noexcept { return !coords_.empty(); }
    std::span<const Point> coords() const noexcept { return coords_; }

    /// Optimal tour length, when a published value is known. Not parsed
    /// from instance files; supplied by the caller (see known_optimum()
    /// in bench.hpp for the bundled lookup).
    std::optional<std::int64_t> known_optimum() const noexcept { return known_optimum_; }
    void set_known_optimum(std::int64_t value);

    /// Symmetric distance between nodes i and j. Throws std::invalid_argument
    /// on an out-of-range index.
    std::int32_t distance(int i, int j) const {
        if (static_cast<unsigned>(i) >= static_cast<unsigned>(n_) ||
            static_cast<unsigned>(j) >= static_cast<unsigned>(n_)) {
            throw std::invalid_argument("Instance::distance: node index out of range for " +
                                        name_);
        }
        return distance_unchecked(i, j);
    }

    /// Same as distance() without the range check. Callers on hot paths
    /// must guarantee 0 <= i,j < n().
    std::int32_t distance_unchecked(int i, int j) const noexcept {
        if (!matrix_.empty()) {
            return matrix_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                           static_cast<std::size_t>(j)];
        }
        return euclidean_rounded(coords_[static_cast<std::size_t>(i)],
                                 coords_[static_cast<std::size_t>(j)]);
    }

    /// Nearest-integer Euclidean distance; halves round up (the TSPLIB
    /// EUC_2D convention).
    static std::int32_t euclidean_rounded(Point a, Point b) noexcept {
        const double dx = a.x - b.x;
        const double dy = a.y - b.y;
        return static_cast<std::int32_t>(std::sqrt(dx * dx + dy * dy) + 0.5);
    }

  private:
    Instance() = default;

    std::string name_;
    int n_ = 0;
    std::vector<Point> coords_;
    std::vector<std::int32_t> matrix_; // row-major n*n; empty when computed on demand
    std::optional<std::int64_t> known_optimum_;
};

/// Parse TSPLIB text (EUC_2D only). Keywords are case-insensitive and
/// whitespace-tolerant; 1-based node labels are renumbered to 0..n-1.
/// Throws ParseError naming the offending line on malformed input.
Instance parse_tsplib(std::string_view text,
                      int matrix_threshold = Instance::kDefaultMatrixThreshold);

/// Read a TSPLIB file from disk and parse it.
Instance load_tsplib_file(const std::string& path,
                          int matrix_threshold = Instance::kDefaultMatrixThreshold);

/// Serialize a coordinate instance back to TSPLIB text. Coordinates are
/// written with full precision so reparsing reproduces every distance.
std::string to_tsplib(const Instance& inst);

/// Built-in 8-node matrix instance ("demo8") used by the unit tests and
/// the `trace` tool.
Instance demo8_instance();

} // namespace gxtsp
