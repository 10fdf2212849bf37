#pragma once

// Benchmark harness: one CSV row per (instance, algorithm), with the
// brute-force optimum and a rational value/optimum ratio filled in whenever
// the instance is small enough.

#include <chrono>
#include <numeric>
#include <sstream>

#include "bracketopt/generators.hpp"
#include "bracketopt/solve_dispatch.hpp"
#include "bracketopt/solver_matching.hpp"

namespace bracketopt {

enum class BenchFamily { General, RoundOblivious, WinCount, Popularity, Tight };

inline std::optional<BenchFamily> bench_family_from_string(const std::string& s) {
    if (s == "general") return BenchFamily::General;
    if (s == "round-oblivious") return BenchFamily::RoundOblivious;
    if (s == "win-count") return BenchFamily::WinCount;
    if (s == "popularity") return BenchFamily::Popularity;
    if (s == "tight") return BenchFamily::Tight;
    return std::nullopt;
}

inline const char* to_string(BenchFamily f) {
    switch (f) {
        case BenchFamily::General: return "general";
        case BenchFamily::RoundOblivious: return "round-oblivious";
        case BenchFamily::WinCount: return "win-count";
        case BenchFamily::Popularity: return "popularity";
        case BenchFamily::Tight: return "tight";
    }
    return "?";
}

struct BenchRow {
    std::string instance_id;
    Player n = 0;
    ValueKind kind = ValueKind::General;
    Algorithm algorithm = Algorithm::BruteForce;
    Value value = 0;
    std::optional<Value> optimum;
    std::optional<std::pair<Value, Value>> ratio;  // reduced value/optimum
    std::int64_t wall_ms = 0;
};

struct BenchSpec {
    BenchFamily family = BenchFamily::Popularity;
    int count = 10;
    RandomInstanceSpec instance;  // n, value range, popularity knobs
    Value tight_scale_step = 10;  // tight family: instance t gets scale (t+1)*step
    std::vector<Algorithm> algorithms;
    std::uint64_t seed = 0;
    Player brute_cap = 8;
};

inline Instance bench_make_instance(const BenchSpec& spec, Rng& rng, int index) {
    switch (spec.family) {
        case BenchFamily::General: return random_general_instance(rng, spec.instance);
        case BenchFamily::RoundOblivious:
            return random_round_oblivious_instance(rng, spec.instance);
        case BenchFamily::WinCount: return random_win_count_instance(rng, spec.instance);
        case BenchFamily::Popularity: return random_popularity_instance(rng, spec.instance);
        case BenchFamily::Tight:
            return make_tight_instance(spec.instance.n,
                                       spec.tight_scale_step * (index + 1));
    }
    throw InternalError("unknown bench family");
}

inline std::vector<BenchRow> run_bench(const BenchSpec& spec) {
    Rng rng(spec.seed);
    std::vector<BenchRow> rows;
    for (int index = 0; index < spec.count; ++index) {
        const Instance instance = bench_make_instance(spec, rng, index);
        std::optional<Value> optimum;
        if (instance.n <= spec.brute_cap) {
            BruteForceOptions options;
            options.max_n = spec.brute_cap;
            optimum = brute_force(instance, options).value;
        }
        for (Algorithm algorithm : spec.algorithms) {
            if (!algorithm_applies(instance, algorithm, spec.brute_cap))
                throw KindError(std::string("algorithm ") + to_string(algorithm) +
                                " does not apply to the " + to_string(spec.family) +
                                " family");
            const auto start = std::chrono::steady_clock::now();
            const SolveResult result = run_algorithm(instance, algorithm, spec.brute_cap);
            const auto elapsed = std::chrono::steady_clock::now() - start;
            BenchRow row;
            row.instance_id = std::string(to_string(spec.family)) + "-" + std::to_string(index);
            row.n = instance.n;
            row.kind = instance.values.kind();
            row.algorithm = algorithm;
            row.value = result.value;
            row.optimum = optimum;
            if (optimum) {
                if (row.value > *optimum)
                    throw InternalError("solver value exceeds the brute-force optimum");
                Value num = row.value, den = *optimum;
                const Value g = std::gcd(num, den);
                if (g > 1) {
                    num /= g;
                    den /= g;
                }
                row.ratio = {num, den};
            }
            row.wall_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

/// Header row plus one comma-separated line per BenchRow, LF line endings.
/// Everything except wall_ms is deterministic for a fixed seed.
inline std::string bench_to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "instance_id,n,kind,algorithm,value,optimum,ratio_num,ratio_den,wall_ms\n";
    for (const auto& row : rows) {
        out << row.instance_id << ',' << row.n << ',' << to_string(row.kind) << ','
            << to_string(row.algorithm) << ',' << row.value << ',';
        if (row.optimum) out << *row.optimum;
        out << ',';
        if (row.ratio) out << row.ratio->first;
        out << ',';
        if (row.ratio) out << row.ratio->second;
        out << ',' << row.wall_ms << '\n';
    }
    return out.str();
}

}  // namespace bracketopt
