#pragma once

// Test-only oracles. Everything here is deliberately written straight-line or
// by exhaustive enumeration, independent of the library code paths it is used
// to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "bracketopt/core.hpp"

namespace oracle {

using bracketopt::Instance;
using bracketopt::Player;
using bracketopt::Seeding;
using bracketopt::Value;

/// Iterative round-by-round tournament simulation (contrast with the
/// half-split recursion in the library).
inline Value evaluate(const Instance& instance, const std::vector<Player>& order) {
    std::vector<Player> alive = order;
    Value total = 0;
    int round = 1;
    while (alive.size() > 1) {
        std::vector<Player> next;
        for (std::size_t p = 0; p + 1 < alive.size(); p += 2) {
            total += instance.values.game_value(alive[p], alive[p + 1], round);
            next.push_back(std::max(alive[p], alive[p + 1]));
        }
        alive = std::move(next);
        ++round;
    }
    return total;
}

struct BestSeeding {
    Value value = 0;
    std::vector<Player> order;
};

/// Exhaustive optimum over all n! seedings; first maximum in lexicographic
/// enumeration order, i.e. the lexicographically smallest optimal seeding.
inline BestSeeding best_seeding(const Instance& instance) {
    std::vector<Player> order(static_cast<std::size_t>(instance.n));
    std::iota(order.begin(), order.end(), 1);
    BestSeeding best{evaluate(instance, order), order};
    while (std::next_permutation(order.begin(), order.end())) {
        Value v = evaluate(instance, order);
        if (v > best.value) best = {v, order};
    }
    return best;
}

/// Per-round value sums of a seeding.
inline std::vector<Value> round_sums(const Instance& instance, const std::vector<Player>& order) {
    std::vector<Player> alive = order;
    std::vector<Value> sums;
    int round = 1;
    while (alive.size() > 1) {
        Value s = 0;
        std::vector<Player> next;
        for (std::size_t p = 0; p + 1 < alive.size(); p += 2) {
            s += instance.values.game_value(alive[p], alive[p + 1], round);
            next.push_back(std::max(alive[p], alive[p + 1]));
        }
        sums.push_back(s);
        alive = std::move(next);
        ++round;
    }
    return sums;
}

/// Maximum total weight over all matchings of the complete graph on 1..n,
/// by branching on the lowest unmatched vertex.
inline Value max_matching_weight(Player n, const std::map<std::pair<Player, Player>, Value>& w) {
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    auto weight = [&](Player a, Player b) {
        auto it = w.find({std::min(a, b), std::max(a, b)});
        return it == w.end() ? Value{0} : it->second;
    };
    std::function<Value(Player)> rec = [&](Player from) -> Value {
        Player a = 0;
        for (Player i = from; i <= n; ++i)
            if (!used[i]) {
                a = i;
                break;
            }
        if (a == 0) return 0;
        used[a] = true;
        Value best = rec(a + 1);  // leave a unmatched
        for (Player b = a + 1; b <= n; ++b) {
            if (used[b]) continue;
            used[b] = true;
            best = std::max(best, weight(a, b) + rec(a + 1));
            used[b] = false;
        }
        used[a] = false;
        return best;
    };
    return rec(1);
}

/// Minimum size of a subset of 1..n covering every given unordered pair.
inline int min_cover_size(Player n, const std::vector<std::pair<Player, Player>>& edges) {
    for (int k = 0; k <= n; ++k) {
        std::vector<Player> subset;
        std::function<bool(Player, int)> pick = [&](Player from, int left) -> bool {
            if (left == 0) {
                for (auto [a, b] : edges) {
                    bool covered = false;
                    for (Player s : subset)
                        if (s == a || s == b) covered = true;
                    if (!covered) return false;
                }
                return true;
            }
            for (Player i = from; i <= n; ++i) {
                subset.push_back(i);
                if (pick(i + 1, left - 1)) return true;
                subset.pop_back();
            }
            return false;
        };
        if (pick(1, k)) return k;
    }
    return n;
}

/// Minimum number of players whose removal makes popularity monotone in
/// strength, by subset enumeration.
inline int min_disagreement_size(const std::vector<Value>& popularity_by_player) {
    const int n = static_cast<int>(popularity_by_player.size());
    auto monotone_without = [&](std::uint32_t removed) {
        Value prev = 0;
        bool first = true;
        for (int i = 0; i < n; ++i) {
            if (removed & (1u << i)) continue;
            if (!first && popularity_by_player[i] < prev) return false;
            prev = popularity_by_player[i];
            first = false;
        }
        return true;
    };
    int best = n;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        if (monotone_without(mask)) best = std::min(best, __builtin_popcount(mask));
    return best;
}

/// Deterministic cross-platform uniform integer in [0, bound).
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

inline Value uniform_value(std::mt19937_64& rng, Value lo, Value hi) {
    return lo + static_cast<Value>(bounded(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline std::vector<Player> random_permutation(std::mt19937_64& rng, Player n) {
    std::vector<Player> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[bounded(rng, i)]);
    return order;
}

}  // namespace oracle
