#pragma once

// Seeded random instance families for the CLI, the benchmark harness and the
// test suites. All draws go through a rejection-sampled bound on mt19937_64,
// so outputs are identical across platforms for a fixed seed.

#include <random>

#include "bracketopt/core.hpp"

namespace bracketopt {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % bound;
    }

    Value value_in(Value lo, Value hi) {
        if (lo > hi) throw ValidationError("empty value range");
        return lo + static_cast<Value>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 engine_;
};

struct RandomInstanceSpec {
    Player n = 8;
    Value vmin = -9;
    Value vmax = 9;
    /// Popularity only: draw player values from this many distinct levels.
    std::optional<int> distinct_values;
    /// Popularity only: start from a monotone assignment and re-roll this
    /// many players to plant disagreement.
    std::optional<int> planted_disagreement;
    bool monotone = false;
};

inline Instance random_general_instance(Rng& rng, const RandomInstanceSpec& spec) {
    Instance inst;
    inst.n = spec.n;
    inst.values = GameValueFunction(ValueKind::General);
    for (Player i = 1; i <= spec.n; ++i)
        for (Player j = 1; j <= spec.n; ++j) {
            if (i == j) continue;
            for (int r = 1; r <= inst.rounds(); ++r)
                inst.values.set_general(i, j, r, rng.value_in(spec.vmin, spec.vmax));
        }
    inst.validate();
    return inst;
}

inline Instance random_round_oblivious_instance(Rng& rng, const RandomInstanceSpec& spec) {
    Instance inst;
    inst.n = spec.n;
    inst.values = GameValueFunction(ValueKind::RoundOblivious);
    for (Player i = 1; i <= spec.n; ++i)
        for (Player j = 1; j <= spec.n; ++j)
            if (i != j) inst.values.set_round_oblivious(i, j, rng.value_in(spec.vmin, spec.vmax));
    inst.validate();
    return inst;
}

inline Instance random_win_count_instance(Rng& rng, const RandomInstanceSpec& spec) {
    Instance inst;
    inst.n = spec.n;
    inst.values = GameValueFunction(ValueKind::WinCount);
    for (Player i = 2; i <= spec.n; ++i)
        for (int r = 1; r <= inst.rounds(); ++r)
            inst.values.set_win_count(i, r, rng.value_in(spec.vmin, spec.vmax));
    inst.validate();
    return inst;
}

inline Instance random_popularity_instance(Rng& rng, const RandomInstanceSpec& spec) {
    const Value lo = std::max<Value>(spec.vmin, 0);  // popularity values live in the naturals
    const Value hi = std::max<Value>(spec.vmax, lo);
    std::vector<Value> values(static_cast<std::size_t>(spec.n));
    if (spec.distinct_values) {
        const int k = *spec.distinct_values;
        if (k < 1 || Value{k} > hi - lo + 1)
            throw ValidationError("cannot draw " + std::to_string(k) +
                                  " distinct values from the range");
        std::set<Value> levels;
        while (static_cast<int>(levels.size()) < k) levels.insert(rng.value_in(lo, hi));
        std::vector<Value> pool(levels.begin(), levels.end());
        for (auto& v : values) v = pool[rng.below(pool.size())];
    } else {
        for (auto& v : values) v = rng.value_in(lo, hi);
    }
    if (spec.monotone || spec.planted_disagreement) std::sort(values.begin(), values.end());
    if (spec.planted_disagreement) {
        for (int t = 0; t < *spec.planted_disagreement; ++t)
            values[rng.below(values.size())] = rng.value_in(lo, hi);
    }
    Instance inst;
    inst.n = spec.n;
    inst.values = GameValueFunction(ValueKind::Popularity);
    for (Player i = 1; i <= spec.n; ++i) inst.values.set_popularity(i, values[i - 1]);
    inst.validate();
    return inst;
}

}  // namespace bracketopt
