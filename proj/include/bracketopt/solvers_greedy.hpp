#pragma once

// Solvers for player-popularity-based value functions: the linear-time greedy
// for two distinct popularity values, the agree-order greedy for monotone
// popularities, and the fixed-parameter algorithm for bounded disagreement
// between popularity and strength.

#include <algorithm>
#include <set>
#include <vector>

#include "bracketopt/brackets.hpp"
#include "bracketopt/solvers_exact.hpp"

namespace bracketopt {

/// Popularity values per player; the value of every game is the winner's
/// popularity. Popularities are nonnegative by definition.
struct PopularityInstance {
    Player n = 1;
    std::vector<Value> popularity;  // index 0 unused; popularity[i] for player i

    static PopularityInstance from_instance(const Instance& instance) {
        if (instance.values.kind() != ValueKind::Popularity)
            throw KindError("expected a popularity instance");
        instance.validate();
        PopularityInstance out;
        out.n = instance.n;
        out.popularity.assign(static_cast<std::size_t>(instance.n) + 1, 0);
        for (Player i = 1; i <= instance.n; ++i) {
            const Value v = instance.values.popularity(i);
            if (v < 0) throw ValidationError("popularity values must be nonnegative");
            out.popularity[i] = v;
        }
        return out;
    }

    Instance to_instance() const {
        Instance out;
        out.n = n;
        out.values = GameValueFunction(ValueKind::Popularity);
        for (Player i = 1; i <= n; ++i) out.values.set_popularity(i, popularity[i]);
        return out;
    }

    bool monotone() const {
        for (Player i = 1; i < n; ++i)
            if (popularity[i] > popularity[i + 1]) return false;
        return true;
    }

    std::set<Value> distinct_values() const {
        return std::set<Value>(popularity.begin() + 1, popularity.end());
    }
};

namespace detail {

inline SolveResult finish_greedy(const PopularityInstance& instance, Algorithm tag, Value value,
                                 SlotPool& pool) {
    SolveResult result{tag, value, seeding_from_ba(pool.tree())};
    check_witness(instance.to_instance(), result);
    return result;
}

}  // namespace detail

/// Greedy for exactly two distinct popularity values a > b: walking the
/// players from strongest to weakest, a popular player closes a largest open
/// subtournament (gaining r*a) and an unpopular one closes a smallest
/// (gaining r'*b).
inline SolveResult greedy_two_values(const PopularityInstance& instance) {
    auto distinct = instance.distinct_values();
    if (distinct.size() > 2)
        throw KindError("two-value greedy requires at most two distinct popularity values");
    const Value a = *distinct.rbegin();
    SlotPool pool(instance.n);
    Value value = 0;
    for (Player i = instance.n; i >= 1; --i) {
        const bool popular = instance.popularity[i] == a;
        const int r = popular ? pool.max_rounds() : pool.min_rounds();
        if (!pool.close_any(i, r)) throw InternalError("greedy found no open subtournament");
        value = checked_add(value, checked_mul(Value{r}, instance.popularity[i]));
    }
    return detail::finish_greedy(instance, Algorithm::GreedyTwoValues, value, pool);
}

/// Greedy for popularities that agree with the strength order: every player
/// acts as a popular one and closes a largest open subtournament.
inline SolveResult greedy_agree_order(const PopularityInstance& instance) {
    if (!instance.monotone())
        throw KindError("agree-order greedy requires popularity monotone in strength");
    SlotPool pool(instance.n);
    Value value = 0;
    for (Player i = instance.n; i >= 1; --i) {
        const int r = pool.max_rounds();
        if (!pool.close_any(i, r)) throw InternalError("greedy found no open subtournament");
        value = checked_add(value, checked_mul(Value{r}, instance.popularity[i]));
    }
    return detail::finish_greedy(instance, Algorithm::GreedyAgreeOrder, value, pool);
}

/// Minimum set of players whose removal leaves popularity monotone in
/// strength, plus its size.
struct DisagreementSet {
    std::set<Player> players;
    int k = 0;
};

namespace detail {

/// First conflicting pair among the active players: walk the strength order
/// and the (popularity, strength)-lexicographic order in parallel; the first
/// ordinal position where they differ yields players i > j with v_i < v_j.
inline std::optional<std::pair<Player, Player>> find_conflict(
    const PopularityInstance& instance, const std::set<Player>& removed) {
    std::vector<Player> by_strength;
    for (Player i = instance.n; i >= 1; --i)
        if (!removed.count(i)) by_strength.push_back(i);
    std::vector<Player> by_value = by_strength;
    std::stable_sort(by_value.begin(), by_value.end(), [&](Player a, Player b) {
        if (instance.popularity[a] != instance.popularity[b])
            return instance.popularity[a] > instance.popularity[b];
        return a > b;
    });
    for (std::size_t pos = 0; pos < by_strength.size(); ++pos)
        if (by_strength[pos] != by_value[pos]) return std::pair{by_strength[pos], by_value[pos]};
    return std::nullopt;
}

inline bool disagreement_branch(const PopularityInstance& instance, std::set<Player>& removed,
                                int budget) {
    auto conflict = find_conflict(instance, removed);
    if (!conflict) return true;
    if (budget == 0) return false;
    for (Player endpoint : {conflict->first, conflict->second}) {
        removed.insert(endpoint);
        if (disagreement_branch(instance, removed, budget - 1)) return true;
        removed.erase(endpoint);
    }
    return false;
}

}  // namespace detail

/// Vertex-cover style branching on conflicting pairs with iterative
/// deepening, so the returned set has minimum cardinality.
inline DisagreementSet compute_disagreement_set(const PopularityInstance& instance) {
    for (int k = 0; k <= instance.n; ++k) {
        std::set<Player> removed;
        if (detail::disagreement_branch(instance, removed, k))
            return DisagreementSet{removed, static_cast<int>(removed.size())};
    }
    throw InternalError("disagreement search failed to terminate");
}

/// Intended win counts for the disagreeing players, one guess out of
/// (log2(n) + 1)^k.
struct WinGuess {
    std::map<Player, int> wins;
};

namespace detail {

/// One restricted greedy pass for a fixed guess. Disagreeing players wait for
/// the moment the largest open round count matches their guessed win count;
/// everyone else is treated as popular. Every slot may only be closed by a
/// player weaker than its restrictor. Returns the result or nullopt if the
/// pass aborts.
inline std::optional<SolveResult> fpt_pass(const PopularityInstance& instance,
                                           const std::vector<Player>& agreeing,
                                           const std::vector<std::pair<int, Player>>& guessed) {
    SlotPool pool(instance.n);
    Value value = 0;
    std::size_t next_agreeing = 0;
    std::size_t next_guessed = 0;
    for (Player seeded = 0; seeded < instance.n; ++seeded) {
        const int max_rounds = pool.max_rounds();
        if (next_guessed < guessed.size()) {
            const auto [wins, j] = guessed[next_guessed];
            if (wins > max_rounds) return std::nullopt;  // can never be met
            if (wins == max_rounds) {
                if (!pool.close_restricted(j, wins)) return std::nullopt;
                value = checked_add(value, checked_mul(Value{wins}, instance.popularity[j]));
                ++next_guessed;
                continue;
            }
        }
        if (next_agreeing >= agreeing.size()) return std::nullopt;
        const Player i = agreeing[next_agreeing];
        const int r = pool.max_rounds_for(i);
        if (r < 0 || !pool.close_restricted(i, r)) return std::nullopt;
        value = checked_add(value, checked_mul(Value{r}, instance.popularity[i]));
        ++next_agreeing;
    }
    SolveResult result{Algorithm::FptDisagreement, value, seeding_from_ba(pool.tree())};
    return result;
}

}  // namespace detail

/// Exact solver parameterized by the disagreement k: guesses the win counts
/// of the k disagreeing players and runs the restricted greedy per guess,
/// keeping the best completed pass.
inline SolveResult fpt_disagreement(const PopularityInstance& instance) {
    const DisagreementSet disagreeing = compute_disagreement_set(instance);
    std::vector<Player> agreeing;
    for (Player i = instance.n; i >= 1; --i)
        if (!disagreeing.players.count(i)) agreeing.push_back(i);
    const std::vector<Player> guessed_players(disagreeing.players.begin(),
                                              disagreeing.players.end());
    const int rounds = log2_exact(instance.n);

    std::optional<SolveResult> best;
    std::vector<int> guess(guessed_players.size(), 0);
    while (true) {
        // Disagreeing players sorted lexicographically by (guessed wins,
        // strength), strongest guesses first.
        std::vector<std::pair<int, Player>> order;
        for (std::size_t t = 0; t < guessed_players.size(); ++t)
            order.emplace_back(guess[t], guessed_players[t]);
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second > b.second;
        });
        auto candidate = detail::fpt_pass(instance, agreeing, order);
        if (candidate) {
            detail::check_witness(instance.to_instance(), *candidate);
            if (!best || candidate->value > best->value ||
                (candidate->value == best->value &&
                 candidate->seeding.order < best->seeding.order))
                best = candidate;
        }
        // Next guess vector, odometer over win counts 0..log2(n).
        std::size_t t = 0;
        while (t < guess.size() && guess[t] == rounds) guess[t++] = 0;
        if (t == guess.size()) break;
        guess[t] += 1;
    }
    if (!best) throw InternalError("every win-count guess aborted");
    return *best;
}

}  // namespace bracketopt
