#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gxtsp/bench.hpp"
#include "gxtsp/crossover.hpp"
#include "gxtsp/ga.hpp"
#include "gxtsp/instance.hpp"
#include "gxtsp/local_search.hpp"
#include "gxtsp/tour.hpp"

namespace {

using namespace gxtsp;

std::string lower_copy(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_builtin_name(const std::string& value) {
    const std::string key = lower_copy(value);
    return key == "demo8" || key == "fig1";
}

// Try the value as given, then under --tsplib-dir; builtin names resolve
// to the bundled 8-node instance.
Instance open_instance(const std::string& value, const std::string& tsplib_dir) {
    if (is_builtin_name(value)) {
        return demo8_instance();
    }
    std::string path = value;
    if (!std::filesystem::exists(path) && !tsplib_dir.empty()) {
        const std::filesystem::path candidate = std::filesystem::path(tsplib_dir) / value;
        if (std::filesystem::exists(candidate)) {
            path = candidate.string();
        }
    }
    Instance inst = load_tsplib_file(path);
    if (const auto opt = known_optimum(inst.name())) {
        inst.set_known_optimum(*opt);
    }
    return inst;
}

CrossoverOp operator_from_name(const std::string& name) {
    if (const auto op = parse_operator(name)) {
        return *op;
    }
    std::string valid;
    for (const auto n : operator_names()) {
        valid += valid.empty() ? std::string(n) : ", " + std::string(n);
    }
    throw std::runtime_error("unknown operator \"" + name + "\" (valid: " + valid + ")");
}

std::string labels_1based(std::span<const int> order) {
    std::ostringstream out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        out << (i == 0 ? "" : " ") << order[i] + 1;
    }
    return out.str();
}

// "4,5,7,3,2,1,6,8" with 1-based labels -> 0-based tour order.
std::vector<int> parse_label_list(const std::string& text, int n, const char* what) {
    std::vector<int> order;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            order.push_back(std::stoi(item) - 1);
        } catch (const std::exception&) {
            throw std::runtime_error(std::string(what) + ": \"" + item +
                                     "\" is not a node label");
        }
    }
    if (!is_permutation(order, n)) {
        throw std::runtime_error(std::string(what) + " must list each label 1.." +
                                 std::to_string(n) + " exactly once, got \"" + text + "\"");
    }
    return order;
}

std::string_view choice_name(CrossoverTrace::Choice choice) {
    switch (choice) {
    case CrossoverTrace::Choice::greedy: return "greedy";
    case CrossoverTrace::Choice::random_fallback: return "random-fallback";
    case CrossoverTrace::Choice::sampled_fallback: return "sampled-fallback";
    case CrossoverTrace::Choice::scan_fallback: return "scan-fallback";
    }
    return "?";
}

struct SolveOptions {
    std::string instance;
    std::string tsplib_dir;
    std::string operator_name = "igx";
    GAConfig ga;
    std::optional<int> start_label;
};

void run_solve(const SolveOptions& opt) {
    const Instance inst = open_instance(opt.instance, opt.tsplib_dir);
    GAConfig cfg = opt.ga;
    cfg.op = operator_from_name(opt.operator_name);
    if (opt.start_label) {
        if (*opt.start_label < 1 || *opt.start_label > inst.n()) {
            throw std::runtime_error("start node " + std::to_string(*opt.start_label) +
                                     " outside 1.." + std::to_string(inst.n()));
        }
        cfg.fixed_start = *opt.start_label - 1;
    }
    const GAResult result = run_ga(inst, cfg);

    std::cout << "instance: " << inst.name() << " (n=" << inst.n() << ")\n"
              << "operator: " << to_string(cfg.op) << "\n"
              << "seed: " << cfg.seed << "\n"
              << "best length: " << result.best_length << "\n";
    if (const auto opt_len = inst.known_optimum()) {
        std::cout << "quality: " << std::fixed << std::setprecision(2)
                  << quality_percent(result.best_length, *opt_len) << "%\n";
        std::cout.unsetf(std::ios::floatfield);
    }
    std::cout << "outer loops: " << result.outer_loops << "\n"
              << "children produced: " << result.children_produced << "\n"
              << "time: " << std::fixed << std::setprecision(2) << result.wall_seconds
              << "s\n";
    std::cout.unsetf(std::ios::floatfield);
    if (result.hit_loop_cap) {
        std::cout << "warning: stopped at the outer-loop safety cap (" << cfg.max_outer_loops
                  << ")\n";
    }
    std::cout << "tour: " << labels_1based(result.best_tour.order()) << "\n";
}

struct BenchOptions {
    std::vector<std::string> instances;
    std::string tsplib_dir;
    std::vector<std::string> operator_names_;
    int runs = 30;
    std::uint64_t base_seed = 1;
    std::string out_csv;
    int threads = 0;
    GAConfig ga;
};

void run_bench(const BenchOptions& opt) {
    ExperimentSpec spec;
    for (const std::string& value : opt.instances) {
        if (is_builtin_name(value) || std::filesystem::exists(value) || opt.tsplib_dir.empty()) {
            spec.instance_paths.push_back(value);
        } else {
            spec.instance_paths.push_back(
                (std::filesystem::path(opt.tsplib_dir) / value).string());
        }
    }
    for (const std::string& name : opt.operator_names_) {
        spec.operators.push_back(operator_from_name(name));
    }
    spec.runs = opt.runs;
    spec.ga = opt.ga;
    spec.base_seed = opt.base_seed;
    spec.output_csv = opt.out_csv;
    spec.threads = opt.threads;

    const std::vector<RunReport> reports = run_experiment(spec);
    std::cout << format_table(reports);
    if (!opt.out_csv.empty()) {
        std::cout << "wrote " << opt.out_csv << "\n";
    }
}

struct TraceOptions {
    std::string fixture;
    std::string instance;
    std::string tsplib_dir;
    std::string operator_name = "igx";
    std::string father;
    std::string mother;
    std::optional<int> start_label;
    std::uint64_t seed = 1;
};

void run_trace(const TraceOptions& opt) {
    if (opt.fixture.empty() == opt.instance.empty()) {
        throw std::runtime_error("trace needs exactly one of --fixture or --instance");
    }
    const Instance inst = [&opt] {
        if (opt.fixture.empty()) {
            return open_instance(opt.instance, opt.tsplib_dir);
        }
        if (!is_builtin_name(opt.fixture)) {
            throw std::runtime_error("unknown fixture \"" + opt.fixture +
                                     "\" (valid: demo8, fig1)");
        }
        return demo8_instance();
    }();

    const CrossoverOp op = operator_from_name(opt.operator_name);
    const Tour father(parse_label_list(opt.father, inst.n(), "--father"), inst);
    const Tour mother(parse_label_list(opt.mother, inst.n(), "--mother"), inst);
    std::optional<int> start;
    if (opt.start_label) {
        if (*opt.start_label < 1 || *opt.start_label > inst.n()) {
            throw std::runtime_error("start node " + std::to_string(*opt.start_label) +
                                     " outside 1.." + std::to_string(inst.n()));
        }
        start = *opt.start_label - 1;
    }

    Rng rng(opt.seed);
    CrossoverTrace trace;
    const Tour child = crossover(op, father, mother, inst, rng, start, &trace);

    std::cout << "operator: " << to_string(op) << "\n"
              << "instance: " << inst.name() << " (n=" << inst.n() << ")\n"
              << "father: " << labels_1based(father.order()) << "  (length " << father.length()
              << ")\n"
              << "mother: " << labels_1based(mother.order()) << "  (length " << mother.length()
              << ")\n"
              << "start: " << trace.start + 1 << "\n";
    for (std::size_t s = 0; s < trace.steps.size(); ++s) {
        const CrossoverTrace::Step& step = trace.steps[s];
        std::cout << "step " << s + 1 << ": current=" << step.current + 1 << " candidates:";
        for (const CrossoverTrace::Candidate& cand : step.candidates) {
            std::cout << " " << cand.node + 1 << "(" << to_string(cand.source)
                      << ",d=" << cand.dist << (cand.visited ? ",visited" : "") << ")";
        }
        std::cout << " -> selected " << step.chosen + 1 << " (" << choice_name(step.choice)
                  << ")\n";
    }
    std::cout << "child: " << labels_1based(child.order()) << "  (length " << child.length()
              << ")\n";
}

void add_ga_flags(CLI::App* cmd, GAConfig& ga) {
    cmd->add_option("--pop", ga.population_size, "Population size")
        ->capture_default_str()
        ->check(CLI::Range(2, 1000000));
    cmd->add_option("--gen", ga.generation_size, "Children per outer loop")
        ->capture_default_str()
        ->check(CLI::Range(1, 100000000));
    cmd->add_option("--max-loops", ga.max_outer_loops, "Outer-loop safety cap")
        ->capture_default_str()
        ->check(CLI::Range(1, 100000000));
    cmd->add_flag_callback(
        "--no-2opt", [&ga] { ga.ls.two_opt_enabled = false; }, "Skip 2-opt on children");
    cmd->add_flag_callback(
        "--no-3opt", [&ga] { ga.ls.three_opt_enabled = false; }, "Skip 3-opt on children");
    cmd->add_option_function<int>(
           "--ls-max-passes", [&ga](const int v) { ga.ls.max_passes = v; },
           "Cap local-search passes per child")
        ->check(CLI::Range(1, 100000000));
    cmd->add_flag("--reject-duplicates", ga.reject_duplicates,
                  "Drop children identical to an existing individual");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Greedy-crossover memetic TSP solver"};
    app.require_subcommand(1);

    SolveOptions solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Run the GA once on one instance");
    solve_cmd->add_option("--instance", solve.instance, "TSPLIB file, path, or builtin name")
        ->required();
    solve_cmd->add_option("--tsplib-dir", solve.tsplib_dir,
                          "Directory searched for instance files");
    solve_cmd->add_option("--operator", solve.operator_name, "Crossover operator")
        ->capture_default_str();
    solve_cmd->add_option("--seed", solve.ga.seed, "RNG seed")->capture_default_str();
    add_ga_flags(solve_cmd, solve.ga);
    solve_cmd->add_option_function<int>(
        "--start-node", [&solve](const int v) { solve.start_label = v; },
        "Fix every crossover's first node (1-based label)");
    solve_cmd->callback([&solve] { run_solve(solve); });

    BenchOptions bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Run a (instances x operators x runs) experiment");
    bench_cmd->add_option("--instance", bench.instances, "Instance file/name (repeatable)")
        ->required();
    bench_cmd->add_option("--tsplib-dir", bench.tsplib_dir,
                          "Directory searched for instance files");
    bench_cmd->add_option("--operator", bench.operator_names_, "Operator name (repeatable)")
        ->required();
    bench_cmd->add_option("--runs", bench.runs, "GA runs per (instance, operator) cell")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    bench_cmd->add_option("--seed", bench.base_seed, "Base seed; run r uses seed+r")
        ->capture_default_str();
    bench_cmd->add_option("--out", bench.out_csv, "Write results as CSV to this path");
    bench_cmd->add_option("--threads", bench.threads,
                          "Worker threads (0 = one per hardware thread)")
        ->capture_default_str()
        ->check(CLI::Range(0, 4096));
    add_ga_flags(bench_cmd, bench.ga);
    bench_cmd->add_option_function<int>(
        "--start-node", [&bench](const int v) { bench.ga.fixed_start = v - 1; },
        "Fix every crossover's first node (1-based label)");
    bench_cmd->callback([&bench] { run_bench(bench); });

    TraceOptions trace;
    CLI::App* trace_cmd =
        app.add_subcommand("trace", "Run one crossover and print each probe and selection");
    trace_cmd->add_option("--fixture", trace.fixture, "Builtin instance (demo8 or fig1)");
    trace_cmd->add_option("--instance", trace.instance, "TSPLIB file or path");
    trace_cmd->add_option("--tsplib-dir", trace.tsplib_dir,
                          "Directory searched for instance files");
    trace_cmd->add_option("--operator", trace.operator_name, "Crossover operator")
        ->capture_default_str();
    trace_cmd->add_option("--father", trace.father, "Father tour, 1-based labels, e.g. 4,5,7")
        ->required();
    trace_cmd->add_option("--mother", trace.mother, "Mother tour, 1-based labels")->required();
    trace_cmd->add_option_function<int>(
        "--start", [&trace](const int v) { trace.start_label = v; },
        "First child node (1-based label; random when omitted)");
    trace_cmd->add_option("--seed", trace.seed, "RNG seed")->capture_default_str();
    trace_cmd->callback([&trace] { run_trace(trace); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help and --version land here
        }
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
