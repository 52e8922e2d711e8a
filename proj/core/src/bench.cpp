#include "gxtsp/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace gxtsp {

namespace {

std::string lower_copy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string normalize_instance_key(const std::string& name) {
    std::string key = lower_copy(name);
    if (key.size() > 4 && key.ends_with(".tsp")) {
        key.resize(key.size() - 4);
    }
    return key;
}

std::string file_stem(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

bool is_builtin_instance(const std::string& value) {
    const std::string key = normalize_instance_key(value);
    return key == "demo8" || key == "fig1";
}

double quality_of(double cost, std::int64_t optimum) {
    return (cost - static_cast<double>(optimum)) / static_cast<double>(optimum) * 100.0;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string format_fixed(double v, int places) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(places) << v;
    return s.str();
}

std::string annotated(const std::string& value, std::optional<double> quality) {
    return quality ? value + "(" + format_fixed(*quality, 2) + "%)" : value;
}

struct RunOutcome {
    std::int64_t length = 0;
    int outer_loops = 0;
    double seconds = 0.0;
};

} // namespace

double quality_percent(std::int64_t cost, std::int64_t optimum) {
    if (optimum <= 0) {
        throw std::invalid_argument("quality_percent: optimum must be positive, got " +
                                    std::to_string(optimum));
    }
    return quality_of(static_cast<double>(cost), optimum);
}

std::optional<std::int64_t> known_optimum(const std::string& name) {
    static constexpr std::array<std::pair<std::string_view, std::int64_t>, 6> kOptima = {{
        {"eil51", 426},
        {"eil101", 629},
        {"kroa100", 21282},
        {"kroa200", 29368},
        {"a280", 2579},
        {"lin318", 42029},
    }};
    const std::string key = normalize_instance_key(name);
    for (const auto& [known, value] : kOptima) {
        if (key == known) {
            return value;
        }
    }
    return std::nullopt;
}

std::vector<RunReport> run_experiment(const ExperimentSpec& spec) {
    std::vector<std::string> problems;
    if (spec.instance_paths.empty()) {
        problems.emplace_back("no instances given");
    }
    if (spec.operators.empty()) {
        problems.emplace_back("no operators given");
    }
    if (spec.runs < 1) {
        problems.emplace_back("runs must be >= 1, got " + std::to_string(spec.runs));
    }
    if (spec.threads < 0) {
        problems.emplace_back("threads must be >= 0, got " + std::to_string(spec.threads));
    }
    if (spec.ga.population_size < 2) {
        problems.emplace_back("population_size must be >= 2, got " +
                              std::to_string(spec.ga.population_size));
    }
    if (spec.ga.generation_size < 1) {
        problems.emplace_back("generation_size must be >= 1, got " +
                              std::to_string(spec.ga.generation_size));
    }

    std::vector<Instance> instances;
    instances.reserve(spec.instance_paths.size());
    for (const std::string& path : spec.instance_paths) {
        try {
            Instance inst = is_builtin_instance(path) ? demo8_instance() : load_tsplib_file(path);
            std::optional<std::int64_t> opt = known_optimum(inst.name());
            if (!opt) {
                opt = known_optimum(file_stem(path));
            }
            if (opt) {
                inst.set_known_optimum(*opt);
            }
            if (spec.ga.fixed_start && *spec.ga.fixed_start >= inst.n()) {
                problems.emplace_back("fixed start node " + std::to_string(*spec.ga.fixed_start) +
                                      " out of range for " + inst.name());
            }
            instances.push_back(std::move(inst));
        } catch (const std::exception& e) {
            problems.emplace_back(e.what());
        }
    }

    if (!problems.empty()) {
        std::string message = "experiment spec invalid:";
        for (const std::string& p : problems) {
            message += "\n  - " + p;
        }
        throw std::invalid_argument(message);
    }

    struct Cell {
        std::size_t instance_index;
        CrossoverOp op;
    };
    std::vector<Cell> cells;
    for (std::size_t ii = 0; ii < instances.size(); ++ii) {
        for (const CrossoverOp op : spec.operators) {
            cells.push_back({ii, op});
        }
    }

    const std::size_t runs = static_cast<std::size_t>(spec.runs);
    std::vector<std::vector<RunOutcome>> outcomes(cells.size(), std::vector<RunOutcome>(runs));
    const std::size_t total_tasks = cells.size() * runs;

    std::atomic<std::size_t> next_task{0};
    std::mutex error_mutex;
    std::string first_error;
    const auto worker = [&] {
        for (;;) {
            const std::size_t task = next_task.fetch_add(1);
            if (task >= total_tasks) {
                return;
            }
            const std::size_t cell_index = task / runs;
            const std::size_t run_index = task % runs;
            const Cell& cell = cells[cell_index];
            GAConfig cfg = spec.ga;
            cfg.op = cell.op;
            cfg.seed = spec.base_seed + run_index;
            try {
                const GAResult res = run_ga(instances[cell.instance_index], cfg);
                outcomes[cell_index][run_index] = {res.best_length, res.outer_loops,
                                                   res.wall_seconds};
            } catch (const std::exception& e) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) {
                    first_error = e.what();
                }
                next_task.store(total_tasks); // drain remaining tasks
                return;
            }
        }
    };

    std::size_t thread_count =
        spec.threads > 0 ? static_cast<std::size_t>(spec.threads)
                         : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    thread_count = std::min(thread_count, total_tasks);
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t) {
            threads.emplace_back(worker);
        }
        for (std::thread& t : threads) {
            t.join();
        }
    }
    if (!first_error.empty()) {
        throw std::runtime_error("experiment run failed: " + first_error);
    }

    std::vector<RunReport> reports;
    reports.reserve(cells.size());
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const Instance& inst = instances[cells[ci].instance_index];
        RunReport report;
        report.instance = inst.name();
        report.op = cells[ci].op;
        report.runs = spec.runs;
        std::int64_t total_length = 0;
        double total_loops = 0.0;
        double total_seconds = 0.0;
        report.best = outcomes[ci][0].length;
        report.worst = outcomes[ci][0].length;
        for (const RunOutcome& out : outcomes[ci]) {
            report.best = std::min(report.best, out.length);
            report.worst = std::max(report.worst, out.length);
            total_length += out.length;
            total_loops += out.outer_loops;
            total_seconds += out.seconds;
        }
        report.avg = static_cast<double>(total_length) / static_cast<double>(runs);
        report.avg_outer_loops = total_loops / static_cast<double>(runs);
        report.avg_seconds = total_seconds / static_cast<double>(runs);
        if (const std::optional<std::int64_t> opt = inst.known_optimum()) {
            report.best_quality = quality_percent(report.best, *opt);
            report.avg_quality = quality_of(report.avg, *opt);
            report.worst_quality = quality_percent(report.worst, *opt);
        }
        reports.push_back(std::move(report));
    }

    if (!spec.output_csv.empty()) {
        write_csv_file(spec.output_csv, reports);
    }
    return reports;
}

std::string to_csv(const std::vector<RunReport>& reports) {
    std::ostringstream out;
    out << "instance,operator,runs,best,best_q,avg,avg_q,worst,worst_q,avg_loops,avg_secs\n";
    for (const RunReport& r : reports) {
        out << csv_escape(r.instance) << ',' << to_string(r.op) << ',' << r.runs << ','
            << r.best << ',' << (r.best_quality ? format_fixed(*r.best_quality, 2) : "") << ','
            << format_fixed(r.avg, 2) << ','
            << (r.avg_quality ? format_fixed(*r.avg_quality, 2) : "") << ',' << r.worst << ','
            << (r.worst_quality ? format_fixed(*r.worst_quality, 2) : "") << ','
            << format_fixed(r.avg_outer_loops, 2) << ',' << format_fixed(r.avg_seconds, 3)
            << '\n';
    }
    return out.str();
}

std::string format_table(const std::vector<RunReport>& reports) {
    static constexpr std::array<std::string_view, 7> kHeader = {
        "instance", "operator", "best", "average", "worst", "loops", "secs",
    };
    std::vector<std::array<std::string, 7>> rows;
    rows.reserve(reports.size());
    for (const RunReport& r : reports) {
        rows.push_back({
            r.instance,
            std::string(to_string(r.op)),
            annotated(std::to_string(r.best), r.best_quality),
            annotated(format_fixed(r.avg, 1), r.avg_quality),
            annotated(std::to_string(r.worst), r.worst_quality),
            format_fixed(r.avg_outer_loops, 1),
            format_fixed(r.avg_seconds, 2),
        });
    }
    std::array<std::size_t, 7> widths{};
    for (std::size_t c = 0; c < kHeader.size(); ++c) {
        widths[c] = kHeader[c].size();
        for (const auto& row : rows) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    std::ostringstream out;
    const auto emit = [&](const auto& row) {
        for (std::size_t c = 0; c < widths.size(); ++c) {
            out << (c == 0 ? "" : "  ") << std::left << std::setw(static_cast<int>(widths[c]))
                << row[c];
        }
        out << '\n';
    };
    emit(kHeader);
    for (const auto& row : rows) {
        emit(row);
    }
    return out.str();
}

void write_csv_file(const std::string& path, const std::vector<RunReport>& reports) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write \"" + path + "\"");
    }
    out << to_csv(reports);
    if (!out) {
        throw std::runtime_error("write to \"" + path + "\" failed");
    }
}

} // namespace gxtsp
