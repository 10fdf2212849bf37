// Command-line front end: instance generation (random families, the tight
// approximation family, and the SAT reductions), solving with any of the
// library algorithms, seeding verification, and a CSV benchmark harness.
//
// Exit codes: 0 success, 2 usage/parse/kind errors, 3 semantic failures
// (verification mismatch, target not reached).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "bracketopt/bench.hpp"
#include "bracketopt/json_io.hpp"
#include "bracketopt/solve_dispatch.hpp"

namespace {

using namespace bracketopt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSemantic = 3;

Player brute_cap_from_env() {
    if (const char* raw = std::getenv("BRACKETOPT_BRUTE_CAP")) {
        try {
            const int cap = std::stoi(raw);
            if (cap >= 1) return static_cast<Player>(cap);
        } catch (const std::exception&) {
        }
        throw ValidationError("BRACKETOPT_BRUTE_CAP must be a positive integer");
    }
    return 8;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << content;
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

struct GenerateArgs {
    Player general_n = 0, round_oblivious_n = 0, win_count_n = 0, popularity_n = 0;
    std::vector<std::int64_t> tight;  // n, scale
    std::string reduce1, reduce2;
    bool nonneg = false;
    int values = 0;
    int disagree = -1;
    bool monotone = false;
    Value vmin = -9, vmax = 9;
    bool vmin_set = false;
    std::uint64_t seed = 0;
    std::string out, layout_out;
};

int cmd_generate(const GenerateArgs& args) {
    int families = 0;
    for (bool selected : {args.general_n > 0, args.round_oblivious_n > 0, args.win_count_n > 0,
                          args.popularity_n > 0, !args.tight.empty(), !args.reduce1.empty(),
                          !args.reduce2.empty()})
        families += selected;
    if (families != 1) {
        std::cerr << "generate: select exactly one instance family\n";
        return kExitUsage;
    }

    Instance instance;
    std::optional<ReductionLayout> layout;
    json preprocess_info;
    if (!args.reduce1.empty() || !args.reduce2.empty()) {
        const bool second = !args.reduce2.empty();
        auto formula = parse_dimacs(read_file(second ? args.reduce2 : args.reduce1));
        auto pre = preprocess(formula);
        auto built = second ? construct2(pre.formula, args.nonneg) : construct1(pre.formula);
        instance = built.first;
        layout = built.second;
        json fixed = json::object();
        for (auto [var, value] : pre.fixed) fixed[std::to_string(var)] = value;
        preprocess_info = {{"original_num_vars", pre.original_num_vars},
                           {"var_map", pre.var_map},
                           {"fixed", std::move(fixed)},
                           {"satisfied_offset", pre.satisfied_offset}};
    } else if (!args.tight.empty()) {
        if (args.tight.size() != 2) {
            std::cerr << "generate: --tight takes N SCALE\n";
            return kExitUsage;
        }
        instance = make_tight_instance(static_cast<Player>(args.tight[0]), args.tight[1]);
    } else {
        RandomInstanceSpec spec;
        Rng rng(args.seed);
        if (args.values > 0) spec.distinct_values = args.values;
        if (args.disagree >= 0) spec.planted_disagreement = args.disagree;
        spec.monotone = args.monotone;
        spec.vmin = args.vmin;
        spec.vmax = args.vmax;
        if (args.general_n > 0) {
            spec.n = args.general_n;
            instance = random_general_instance(rng, spec);
        } else if (args.round_oblivious_n > 0) {
            spec.n = args.round_oblivious_n;
            instance = random_round_oblivious_instance(rng, spec);
        } else if (args.win_count_n > 0) {
            spec.n = args.win_count_n;
            instance = random_win_count_instance(rng, spec);
        } else {
            spec.n = args.popularity_n;
            if (!args.vmin_set) spec.vmin = 0;
            instance = random_popularity_instance(rng, spec);
        }
    }
    write_output(args.out, dump_canonical(instance_to_json(instance)));
    if (!args.layout_out.empty()) {
        if (!layout) {
            std::cerr << "generate: --layout-out requires --reduce1 or --reduce2\n";
            return kExitUsage;
        }
        json layout_json = layout_to_json(*layout);
        layout_json["preprocess"] = std::move(preprocess_info);
        write_output(args.layout_out, dump_canonical(layout_json));
    }
    return kExitOk;
}

struct SolveArgs {
    std::string instance_path;
    std::string algorithm = "auto";
    std::optional<Value> target;
    bool target_from_instance = false;
    std::string out;
};

int cmd_solve(const SolveArgs& args) {
    const Instance instance = instance_from_json(load_json(args.instance_path));
    const Player cap = brute_cap_from_env();
    Algorithm algorithm;
    if (args.algorithm == "auto") {
        algorithm = auto_algorithm(instance, cap);
    } else if (auto parsed = algorithm_from_string(args.algorithm)) {
        algorithm = *parsed;
        if (!algorithm_applies(instance, algorithm, cap))
            throw KindError(std::string("algorithm ") + to_string(algorithm) +
                            " does not apply to this instance");
    } else {
        std::cerr << "solve: unknown algorithm '" << args.algorithm << "'\n";
        return kExitUsage;
    }
    const SolveResult result = run_algorithm(instance, algorithm, cap);
    write_output(args.out, dump_canonical(solve_result_to_json(result)));
    std::optional<Value> target = args.target;
    if (args.target_from_instance) {
        if (!instance.target)
            throw ValidationError("--target-from-instance: the instance stores no target");
        target = instance.target;
    }
    if (target && result.value < *target) return kExitSemantic;
    return kExitOk;
}

struct VerifyArgs {
    std::string instance_path, seeding_path;
    Value claimed = 0;
};

int cmd_verify(const VerifyArgs& args) {
    const Instance instance = instance_from_json(load_json(args.instance_path));
    const Seeding seeding = seeding_from_json(load_json(args.seeding_path));
    const EvaluationReport report = evaluate(instance, seeding);
    std::cout << "round,winner,loser,value\n";
    for (const auto& game : report.games)
        std::cout << game.round << ',' << game.winner << ',' << game.loser << ','
                  << game.value << '\n';
    std::cout << "total," << report.total << ",claimed," << args.claimed << '\n';
    return report.total == args.claimed ? kExitOk : kExitSemantic;
}

struct BenchArgs {
    std::string family = "popularity";
    int count = 10;
    Player n = 8;
    Value vmin = 0, vmax = 9;
    int values = 0;
    int disagree = -1;
    bool monotone = false;
    Value tight_scale_step = 10;
    std::string algorithms = "brute";
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_bench(const BenchArgs& args) {
    BenchSpec spec;
    const auto family = bench_family_from_string(args.family);
    if (!family) {
        std::cerr << "bench: unknown family '" << args.family << "'\n";
        return kExitUsage;
    }
    spec.family = *family;
    spec.count = args.count;
    spec.instance.n = args.n;
    spec.instance.vmin = args.vmin;
    spec.instance.vmax = args.vmax;
    if (args.values > 0) spec.instance.distinct_values = args.values;
    if (args.disagree >= 0) spec.instance.planted_disagreement = args.disagree;
    spec.instance.monotone = args.monotone;
    spec.tight_scale_step = args.tight_scale_step;
    spec.seed = args.seed;
    spec.brute_cap = brute_cap_from_env();
    std::istringstream list(args.algorithms);
    std::string name;
    while (std::getline(list, name, ',')) {
        if (name.empty()) continue;
        auto algorithm = algorithm_from_string(name);
        if (!algorithm) {
            std::cerr << "bench: unknown algorithm '" << name
                      << "' (bench needs concrete algorithms, not auto)\n";
            return kExitUsage;
        }
        spec.algorithms.push_back(*algorithm);
    }
    if (spec.algorithms.empty()) {
        std::cerr << "bench: no algorithms selected\n";
        return kExitUsage;
    }
    write_output(args.out, bench_to_csv(run_bench(spec)));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knockout tournament seeding optimizer"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "write an instance JSON file");
    generate->add_option("--general", gen.general_n, "random general instance with N players");
    generate->add_option("--round-oblivious", gen.round_oblivious_n,
                         "random round-oblivious instance with N players");
    generate->add_option("--win-count", gen.win_count_n,
                         "random win-count instance with N players");
    generate->add_option("--popularity", gen.popularity_n,
                         "random popularity instance with N players");
    generate->add_option("--tight", gen.tight,
                         "tight approximation family: N SCALE")
        ->expected(2);
    generate->add_option("--reduce1", gen.reduce1,
                         "build the round-dependent 0/1 reduction from a DIMACS file");
    generate->add_option("--reduce2", gen.reduce2,
                         "build the round-oblivious {0,1,-5} reduction from a DIMACS file");
    generate->add_flag("--nonneg", gen.nonneg, "shift the reduce2 values by +6");
    generate->add_option("--values", gen.values, "popularity: number of distinct values");
    generate->add_option("--disagree", gen.disagree,
                         "popularity: re-roll this many players of a monotone base");
    generate->add_flag("--monotone", gen.monotone, "popularity: monotone in strength");
    generate->add_option("--vmin", gen.vmin, "minimum drawn value")
        ->each([&](const std::string&) { gen.vmin_set = true; });
    generate->add_option("--vmax", gen.vmax, "maximum drawn value");
    generate->add_option("--rng-seed", gen.seed, "random seed (default 0)");
    generate->add_option("--out", gen.out, "output file (default stdout)");
    generate->add_option("--layout-out", gen.layout_out, "reduction layout JSON output");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "solve an instance");
    solve_cmd->add_option("instance", solve.instance_path, "instance JSON file")->required();
    solve_cmd->add_option("--algorithm", solve.algorithm,
                          "brute|dp|greedy2|agree|fpt|matching|auto");
    solve_cmd->add_option("--target", solve.target,
                          "exit 3 unless the solved value reaches this target");
    solve_cmd->add_flag("--target-from-instance", solve.target_from_instance,
                        "check against the target stored in the instance");
    solve_cmd->add_option("--out", solve.out, "result file (default stdout)");

    VerifyArgs verify;
    auto* verify_cmd =
        app.add_subcommand("verify", "re-evaluate a seeding and check a claimed value");
    verify_cmd->add_option("instance", verify.instance_path, "instance JSON file")->required();
    verify_cmd->add_option("seeding", verify.seeding_path, "seeding JSON file")->required();
    verify_cmd->add_option("claimed", verify.claimed, "claimed tournament value")->required();

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "run an algorithm/instance grid to CSV");
    bench_cmd->add_option("--family", bench.family,
                          "general|round-oblivious|win-count|popularity|tight");
    bench_cmd->add_option("--count", bench.count, "number of instances");
    bench_cmd->add_option("--n", bench.n, "players per instance");
    bench_cmd->add_option("--vmin", bench.vmin, "minimum drawn value");
    bench_cmd->add_option("--vmax", bench.vmax, "maximum drawn value");
    bench_cmd->add_option("--values", bench.values, "popularity: number of distinct values");
    bench_cmd->add_option("--disagree", bench.disagree, "popularity: planted disagreement");
    bench_cmd->add_flag("--monotone", bench.monotone, "popularity: monotone in strength");
    bench_cmd->add_option("--tight-scale-step", bench.tight_scale_step,
                          "tight family: instance t gets scale (t+1)*step");
    bench_cmd->add_option("--algorithms", bench.algorithms,
                          "comma-separated algorithm list (default brute)");
    bench_cmd->add_option("--rng-seed", bench.seed, "random seed (default 0)");
    bench_cmd->add_option("--out", bench.out, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() ==
            static_cast<int>(CLI::ExitCodes::Success)) {  // --help
            return app.exit(e);
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(gen);
        if (solve_cmd->parsed()) return cmd_solve(solve);
        if (verify_cmd->parsed()) return cmd_verify(verify);
        if (bench_cmd->parsed()) return cmd_bench(bench);
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return kExitUsage;
    }
}
