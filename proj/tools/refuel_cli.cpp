// Command-line front end: gen, solve, validate, count, bench.
#include "refuel/refuel.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace refuel;

namespace {

enum Exit : int { ok = 0, failure = 1, usage = 2, guard = 3, timed_out = 4, invalid = 5 };

struct Config {
    // gen
    std::size_t n = 10;
    double sigma = 0.1;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    std::string dataset;
    double scale = 1.0;
    // shared
    std::string input;
    std::string output;
    std::string algo = "fast";
    std::string mode = "fast";
    std::optional<double> timeout_s;
    bool prune = false;
    bool bound = false;
    bool override_size_guard = false;
    bool emit_order = false;
    bool emit_json = false;
    // validate
    std::string order;
    // count
    bool brute = false;
    // bench
    std::string manifest;
    std::vector<std::string> algos{"fast", "astar"};
    double bench_timeout_s = 60.0;
    std::size_t workers = 1;
    double min_time_s = 0.0;
    bool no_astar_prune = false;
};

NumericMode mode_or_throw(const std::string& s) {
    if (auto m = parse_mode(s)) return *m;
    throw CLI::ValidationError("--mode", "expected fast or exact, got '" + s + "'");
}

Algo algo_or_throw(const std::string& s) {
    if (auto a = parse_algo(s)) return *a;
    throw CLI::ValidationError("--algo", "expected fast, astar, brute or greedy, got '" + s + "'");
}

std::vector<JobId> parse_order(const std::string& text) {
    std::string s = text;
    for (char& c : s)
        if (c == ',' || c == '[' || c == ']') c = ' ';
    std::istringstream in(s);
    std::vector<JobId> out;
    long long v;
    while (in >> v) out.push_back(static_cast<JobId>(v));
    if (!in.eof()) throw CLI::ValidationError("--order", "expected a list of job ids, got '" + text + "'");
    return out;
}

int cmd_gen(const Config& c) {
    if (!c.dataset.empty()) {
        const auto kind = parse_dataset_kind(c.dataset);
        if (!kind || *kind == DatasetKind::custom)
            throw CLI::ValidationError("--dataset", "expected S1, S2 or S3, got '" + c.dataset + "'");
        const Manifest m = generate_dataset(*kind, c.scale, c.seed, c.output);
        std::cout << "wrote " << m.size() << " instances and manifest.csv to " << c.output << "\n";
        return ok;
    }
    const Instance inst = generate_instance({c.n, c.sigma, c.seed, 1}, c.index);
    if (c.output.empty() || c.output == "-") std::cout << instance_to_string(inst);
    else save_instance(c.output, inst);
    return ok;
}

int cmd_solve(const Config& c) {
    const Instance inst = load_instance(c.input);
    RunOptions ro;
    ro.prune = c.prune;
    ro.bound = c.bound;
    ro.override_size_guard = c.override_size_guard;
    ro.timeout_s = c.timeout_s;
    const RunReport r = solve(inst, algo_or_throw(c.algo), mode_or_throw(c.mode), ro);
    if (c.emit_json) std::cout << report_to_json(r, c.emit_order).dump(2) << "\n";
    else std::cout << report_to_text(r, c.emit_order);
    return ok;
}

int cmd_validate(const Config& c) {
    const Instance inst = load_instance(c.input);
    const std::vector<JobId> order = parse_order(c.order);
    const PotentialCheck check = mode_or_throw(c.mode) == NumericMode::exact ? is_potential<Rational>(inst, order)
                                                                               : is_potential<double>(inst, order);
    if (c.emit_json) {
        std::cout << violations_to_json(check).dump(2) << "\n";
    } else {
        std::cout << (check.valid ? "valid" : "invalid") << "\n";
        for (const Violation& v : check.violations)
            std::cout << "violation " << v.earlier << " " << v.later << " " << to_string(v.reason) << "\n";
    }
    return check.valid ? ok : invalid;
}

int cmd_count(const Config& c) {
    const Instance inst = load_instance(c.input);
    const bool exact = mode_or_throw(c.mode) == NumericMode::exact;
    Deadline deadline = c.timeout_s ? Deadline::after(*c.timeout_s) : Deadline{};
    std::uint64_t k = 0;
    if (c.brute) {
        BaselineOptions bo{c.override_size_guard, deadline};
        k = exact ? count_potential_brute<Rational>(inst, bo) : count_potential_brute<double>(inst, bo);
    } else {
        k = exact ? enumerate_potential<Rational>(inst, nullptr, deadline)
                  : enumerate_potential<double>(inst, nullptr, deadline);
    }
    if (c.emit_json) std::cout << nlohmann::ordered_json{{"count", k}, {"method", c.brute ? "brute" : "enumerate"}}.dump(2) << "\n";
    else std::cout << "count " << k << "\n";
    return ok;
}

int cmd_bench(const Config& c) {
    const Manifest m = load_manifest(c.manifest);
    BenchOptions o;
    o.algos.clear();
    for (const auto& a : c.algos) o.algos.push_back(algo_or_throw(a));
    o.timeout_s = c.bench_timeout_s;
    o.mode = mode_or_throw(c.mode);
    o.workers = c.workers;
    o.min_time_s = c.min_time_s;
    o.astar_prune = !c.no_astar_prune;
    const auto records = run_bench(m, o);

    const fs::path dir = c.output;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create " + dir.string() + ": " + ec.message());
    write_text(dir / "records.csv", records_to_csv(records));
    const auto speed = speedup_report(records);
    write_text(dir / "speedup.csv", speedup_to_csv(speed));
    const auto hard = hardness_report(records);
    write_text(dir / "hardness.csv", hardness_to_csv(hard));
    write_text(dir / "table.csv", table_to_csv(table_report(records)));

    std::string sx = "n,ratio\n";
    for (const auto& r : speed.rows)
        if (r.instances > 0) sx += std::to_string(r.n) + "," + format_double(r.ratio) + "\n";
    write_text(dir / "speedup_plot.csv", sx);
    std::string hx = "log_leaves,log_elapsed_s\n";
    for (const auto& r : hard.rows)
        hx += format_double(std::log(static_cast<double>(r.leaves))) + "," +
              format_double(std::log(std::max(r.elapsed_s, 1e-12))) + "\n";
    write_text(dir / "hardness_plot.csv", hx);

    std::size_t timeouts = 0, skipped = 0;
    for (const auto& r : records) {
        timeouts += r.status == BenchStatus::timeout;
        skipped += r.status == BenchStatus::skipped;
    }
    std::cout << "records " << records.size() << " timeouts " << timeouts << " skipped " << skipped << "\n";
    if (hard.correlation) std::cout << "spearman_logK_logelapsed " << format_double(*hard.correlation) << "\n";
    std::cout << "wrote records.csv speedup.csv hardness.csv table.csv to " << dir.string() << "\n";
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    Config c;
    CLI::App app{"Exact solver and benchmarks for single-machine scheduling with reciprocal completion-time payoff"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "Generate an instance or a dataset");
    auto* n_opt = gen->add_option("--n", c.n, "Number of jobs")->check(CLI::PositiveNumber);
    auto* s_opt = gen->add_option("--sigma", c.sigma, "Std dev of log2(w/p)")->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", c.seed, "Random seed");
    auto* i_opt = gen->add_option("--index", c.index, "Instance index within the seed");
    auto* d_opt = gen->add_option("--dataset", c.dataset, "S1, S2 or S3");
    auto* sc_opt = gen->add_option("--scale", c.scale, "Dataset scale factor")->check(CLI::PositiveNumber);
    gen->add_option("-o,--output", c.output, "Output file (single instance, default stdout) or directory (dataset)");
    d_opt->excludes(n_opt)->excludes(s_opt)->excludes(i_opt);
    sc_opt->needs(d_opt);

    auto add_common = [&](CLI::App* sub, bool with_algo) {
        sub->add_option("-i,--input", c.input, "Instance file")->required()->check(CLI::ExistingFile);
        sub->add_option("--mode", c.mode, "Numeric mode: fast or exact");
        sub->add_flag("--emit-json", c.emit_json, "Print JSON instead of text");
        if (!with_algo) return;
        sub->add_option("--algo", c.algo, "fast, astar, brute or greedy");
        sub->add_option("--timeout", c.timeout_s, "Timeout in seconds")->check(CLI::PositiveNumber);
        sub->add_flag("--prune", c.prune, "Dominance pruning for astar");
        sub->add_flag("--bound", c.bound, "Bound-based pruning for fast (leaves no longer counts every schedule)");
        sub->add_flag("--override-size-guard", c.override_size_guard, "Allow brute and astar beyond their size limits");
        sub->add_flag("--emit-order", c.emit_order, "Include the schedule order");
    };

    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
    add_common(solve_cmd, true);

    auto* validate_cmd = app.add_subcommand("validate", "Check an order against the dominance rules");
    add_common(validate_cmd, false);
    validate_cmd->add_option("--order", c.order, "Job ids in processing order, e.g. 1,0,2")->required();

    auto* count_cmd = app.add_subcommand("count", "Count potential schedules");
    add_common(count_cmd, false);
    count_cmd->add_flag("--brute", c.brute, "Filter all permutations instead of enumerating");
    count_cmd->add_flag("--override-size-guard", c.override_size_guard, "Allow --brute beyond its size limit");
    count_cmd->add_option("--timeout", c.timeout_s, "Timeout in seconds")->check(CLI::PositiveNumber);

    auto* bench_cmd = app.add_subcommand("bench", "Run algorithms over a dataset manifest");
    bench_cmd->add_option("--manifest", c.manifest, "manifest.csv from gen --dataset")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--algos", c.algos, "Algorithms to run")->delimiter(',');
    bench_cmd->add_option("--timeout", c.bench_timeout_s, "Per-solve timeout in seconds")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--mode", c.mode, "Numeric mode: fast or exact");
    bench_cmd->add_option("--workers", c.workers, "Concurrent solves")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--min-time", c.min_time_s, "Repeat short solves until this many seconds accumulate");
    bench_cmd->add_flag("--no-astar-prune", c.no_astar_prune, "Run astar without dominance pruning");
    bench_cmd->add_option("-o,--output", c.output, "Output directory")->required();

    try {
        app.parse(argc, argv);
        if (gen->parsed() && !c.dataset.empty() && c.output.empty())
            throw CLI::RequiredError("--output (directory) is required with --dataset");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (gen->parsed()) return cmd_gen(c);
        if (solve_cmd->parsed()) return cmd_solve(c);
        if (validate_cmd->parsed()) return cmd_validate(c);
        if (count_cmd->parsed()) return cmd_count(c);
        if (bench_cmd->parsed()) return cmd_bench(c);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const size_guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return guard;
    } catch (const timeout_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return timed_out;
    } catch (const malformed_permutation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failure;
    }
    return usage;
}
