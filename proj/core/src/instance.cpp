#include "gxtsp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>

namespace gxtsp {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::string upper_copy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

// "KEY : value", "KEY: value", or "KEY value". Returns false when the line
// has no value part at all.
bool split_key_value(std::string_view line, std::string& key, std::string& value) {
    const std::size_t colon = line.find(':');
    if (colon != std::string_view::npos) {
        key = std::string(trim(line.substr(0, colon)));
        value = std::string(trim(line.substr(colon + 1)));
        return !key.empty();
    }
    std::size_t split = 0;
    while (split < line.size() && !is_space(line[split])) {
        ++split;
    }
    if (split == line.size()) {
        return false;
    }
    key = std::string(line.substr(0, split));
    value = std::string(trim(line.substr(split)));
    return true;
}

struct NumberedLine {
    int number = 0;
    std::string_view text;
};

std::vector<NumberedLine> split_lines(std::string_view text) {
    std::vector<NumberedLine> lines;
    int number = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        lines.push_back({number, text.substr(pos, end - pos)});
        ++number;
        pos = end + 1;
        if (end == text.size()) {
            break;
        }
    }
    return lines;
}

} // namespace

ParseError::ParseError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      line_(line) {}

Instance Instance::from_coords(std::string name, std::vector<Point> coords,
                               int matrix_threshold) {
    if (coords.size() < 3) {
        throw std::invalid_argument("Instance::from_coords: need at least 3 nodes, got " +
                                    std::to_string(coords.size()));
    }
    Instance inst;
    inst.name_ = std::move(name);
    inst.n_ = static_cast<int>(coords.size());
    inst.coords_ = std::move(coords);
    if (inst.n_ <= matrix_threshold) {
        inst.matrix_.resize(static_cast<std::size_t>(inst.n_) * inst.n_);
        for (int i = 0; i < inst.n_; ++i) {
            for (int j = i + 1; j < inst.n_; ++j) {
                const std::int32_t d = euclidean_rounded(inst.coords_[i], inst.coords_[j]);
                inst.matrix_[static_cast<std::size_t>(i) * inst.n_ + j] = d;
                inst.matrix_[static_cast<std::size_t>(j) * inst.n_ + i] = d;
            }
        }
    }
    return inst;
}

Instance Instance::from_matrix(std::string name, int n, std::vector<std::int32_t> matrix) {
    if (n < 3) {
        throw std::invalid_argument("Instance::from_matrix: need at least 3 nodes, got " +
                                    std::to_string(n));
    }
    if (matrix.size() != static_cast<std::size_t>(n) * n) {
        throw std::invalid_argument("Instance::from_matrix: matrix size " +
                                    std::to_string(matrix.size()) + " != n*n for n = " +
                                    std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
        if (matrix[static_cast<std::size_t>(i) * n + i] != 0) {
            throw std::invalid_argument("Instance::from_matrix: nonzero diagonal at node " +
                                        std::to_string(i));
        }
        for (int j = 0; j < n; ++j) {
            const std::int32_t d = matrix[static_cast<std::size_t>(i) * n + j];
            if (d < 0) {
                throw std::invalid_argument("Instance::from_matrix: negative distance at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            }
            if (d != matrix[static_cast<std::size_t>(j) * n + i]) {
                throw std::invalid_argument("Instance::from_matrix: asymmetric entry at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    Instance inst;
    inst.name_ = std::move(name);
    inst.n_ = n;
    inst.matrix_ = std::move(matrix);
    return inst;
}

void Instance::set_known_optimum(std::int64_t value) {
    if (value <= 0) {
        throw std::invalid_argument("Instance::set_known_optimum: optimum must be positive");
    }
    known_optimum_ = value;
}

Instance parse_tsplib(std::string_view text, int matrix_threshold) {
    std::string name = "unnamed";
    int dimension = -1;
    int dimension_line = 0;
    bool weight_type_seen = false;

    const std::vector<NumberedLine> lines = split_lines(text);
    std::size_t idx = 0;

    // Header: KEY/VALUE pairs until NODE_COORD_SECTION.
    bool in_coords = false;
    for (; idx < lines.size(); ++idx) {
        const std::string_view line = trim(lines[idx].text);
        const int lineno = lines[idx].number;
        if (line.empty()) {
            continue;
        }
        const std::string word = upper_copy(line);
        if (word == "NODE_COORD_SECTION") {
            in_coords = true;
            ++idx;
            break;
        }
        if (word == "EOF") {
            break;
        }
        std::string key;
        std::string value;
        if (!split_key_value(line, key, value)) {
            throw ParseError("unrecognized header line \"" + std::string(line) + "\"", lineno);
        }
        const std::string upper_key = upper_copy(key);
        if (upper_key == "NAME") {
            name = value;
        } else if (upper_key == "TYPE") {
            // Some files annotate the value, e.g. "TSP (Eilon)".
            std::istringstream vs(value);
            std::string first;
            vs >> first;
            if (upper_copy(first) != "TSP") {
                throw ParseError("unsupported TYPE \"" + value + "\" (only TSP)", lineno);
            }
        } else if (upper_key == "DIMENSION") {
            try {
                dimension = std::stoi(value);
            } catch (const std::exception&) {
                throw ParseError("DIMENSION is not an integer: \"" + value + "\"", lineno);
            }
            if (dimension < 3) {
                throw ParseError("DIMENSION must be at least 3, got " + value, lineno);
            }
            dimension_line = lineno;
        } else if (upper_key == "EDGE_WEIGHT_TYPE") {
            if (upper_copy(value) != "EUC_2D") {
                throw ParseError("unsupported EDGE_WEIGHT_TYPE \"" + value +
                                 "\" (only EUC_2D)",
                                 lineno);
            }
            weight_type_seen = true;
        } else if (std::string_view(line).find(':') == std::string_view::npos) {
            throw ParseError("unrecognized header line \"" + std::string(line) + "\"", lineno);
        }
        // Other keyed fields (COMMENT, DISPLAY_DATA_TYPE, ...) carry no
        // information we use.
    }

    if (!in_coords) {
        throw ParseError("NODE_COORD_SECTION missing");
    }
    if (dimension < 0) {
        throw ParseError("DIMENSION missing");
    }
    if (!weight_type_seen) {
        throw ParseError("EDGE_WEIGHT_TYPE missing (only EUC_2D supported)");
    }
    (void)dimension_line;

    std::vector<Point> coords(static_cast<std::size_t>(dimension));
    std::vector<char> seen(static_cast<std::size_t>(dimension), 0);
    int read = 0;
    int last_lineno = lines.empty() ? 0 : lines.back().number;
    for (; idx < lines.size() && read < dimension; ++idx) {
        const std::string_view line = trim(lines[idx].text);
        const int lineno = lines[idx].number;
        if (line.empty()) {
            continue;
        }
        std::istringstream ls{std::string(line)};
        long label = 0;
        double x = 0.0;
        double y = 0.0;
        if (!(ls >> label >> x >> y)) {
            throw ParseError("malformed coordinate line \"" + std::string(line) + "\"", lineno);
        }
        std::string rest;
        if (ls >> rest) {
            throw ParseError("trailing content after coordinates: \"" + rest + "\"", lineno);
        }
        if (label < 1 || label > dimension) {
            throw ParseError("node label " + std::to_string(label) + " outside 1.." +
                             std::to_string(dimension),
                             lineno);
        }
        if (seen[static_cast<std::size_t>(label - 1)]) {
            throw ParseError("duplicate node label " + std::to_string(label), lineno);
        }
        seen[static_cast<std::size_t>(label - 1)] = 1;
        coords[static_cast<std::size_t>(label - 1)] = {x, y};
        ++read;
        last_lineno = lineno;
    }
    if (read < dimension) {
        throw ParseError("NODE_COORD_SECTION ended after " + std::to_string(read) + " of " +
                         std::to_string(dimension) + " coordinates",
                         last_lineno);
    }

    // Only blank lines and one optional EOF marker may follow.
    bool eof_seen = false;
    for (; idx < lines.size(); ++idx) {
        const std::string_view line = trim(lines[idx].text);
        if (line.empty()) {
            continue;
        }
        if (!eof_seen && upper_copy(line) == "EOF") {
            eof_seen = true;
            continue;
        }
        throw ParseError("unexpected content after coordinates: \"" + std::string(line) + "\"",
                         lines[idx].number);
    }

    return Instance::from_coords(std::move(name), std::move(coords), matrix_threshold);
}

Instance load_tsplib_file(const std::string& path, int matrix_threshold) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_tsplib(buffer.str(), matrix_threshold);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

std::string to_tsplib(const Instance& inst) {
    if (!inst.has_coords()) {
        throw std::invalid_argument("to_tsplib: instance \"" + inst.name() +
                                    "\" has no coordinates");
    }
    std::ostringstream out;
    out << "NAME: " << inst.name() << "\n"
        << "TYPE: TSP\n"
        << "DIMENSION: " << inst.n() << "\n"
        << "EDGE_WEIGHT_TYPE: EUC_2D\n"
        << "NODE_COORD_SECTION\n";
    out << std::setprecision(17);
    for (int i = 0; i < inst.n(); ++i) {
        const Point p = inst.coords()[static_cast<std::size_t>(i)];
        out << (i + 1) << " " << p.x << " " << p.y << "\n";
    }
    out << "EOF\n";
    return out.str();
}

Instance demo8_instance() {
    // clang-format off
    static const std::int32_t entries[64] = {
         0, 12, 19, 31, 22, 17, 23, 12,
        12,  0, 15, 37, 21, 28, 35, 22,
        19, 15,  0, 50, 36, 35, 35, 21,
        31, 37, 50,  0, 20, 21, 37, 38,
        22, 21, 36, 20,  0, 25, 40, 33,
        17, 28, 35, 21, 25,  0, 16, 18,
        23, 35, 35, 37, 40, 16,  0, 14,
        12, 22, 21, 38, 33, 18, 14,  0,
    };
    // clang-format on
    return Instance::from_matrix("demo8", 8,
                                 std::vector<std::int32_t>(entries, entries + 64));
}

} // namespace gxtsp
