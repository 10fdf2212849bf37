#pragma once

// Exact solvers: a memoized exhaustive search over all seedings (the ground
// truth at desk scale) and the quasi-polynomial dynamic program over
// subtournament profiles for win-count oriented value functions, with full
// seeding reconstruction.

#include <bit>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bracketopt/brackets.hpp"
#include "bracketopt/core.hpp"

namespace bracketopt {

enum class Algorithm {
    BruteForce,
    DpWinCount,
    GreedyTwoValues,
    GreedyAgreeOrder,
    FptDisagreement,
    ApproxMatching,
};

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::BruteForce: return "brute";
        case Algorithm::DpWinCount: return "dp";
        case Algorithm::GreedyTwoValues: return "greedy2";
        case Algorithm::GreedyAgreeOrder: return "agree";
        case Algorithm::FptDisagreement: return "fpt";
        case Algorithm::ApproxMatching: return "matching";
    }
    return "?";
}

struct SolveResult {
    Algorithm algorithm = Algorithm::BruteForce;
    Value value = 0;
    Seeding seeding;
};

namespace detail {

/// Every solver promises that its witness seeding reproduces its value.
inline void check_witness(const Instance& instance, const SolveResult& result) {
    if (evaluate(instance, result.seeding).total != result.value)
        throw InternalError("solver witness does not evaluate to the reported value");
}

}  // namespace detail

struct BruteForceOptions {
    Player max_n = 8;
    /// Merge seedings that differ only by swapping the two halves of a block.
    /// Sound only for home-team oblivious value functions; by default enabled
    /// exactly when the table is detected to be one.
    std::optional<bool> prune_sibling_swaps;
};

namespace detail {

struct BlockSolution {
    Value value = 0;
    std::vector<Player> order;  // lexicographically smallest optimal layout
};

class BruteForceSearch {
public:
    BruteForceSearch(const Instance& instance, bool prune)
        : instance_(instance), prune_(prune) {}

    BlockSolution solve(std::uint64_t mask) {
        auto memo = memo_.find(mask);
        if (memo != memo_.end()) return memo->second;
        BlockSolution best;
        const int count = std::popcount(mask);
        if (count == 1) {
            best.order = {static_cast<Player>(std::bit_width(mask))};
        } else {
            const int round = log2_exact(count);
            const Player strongest = static_cast<Player>(std::bit_width(mask));
            bool have = false;
            // Enumerate lower-half player sets; under pruning only those
            // containing the block's strongest player (each unordered split
            // once), otherwise every ordered split.
            for (std::uint64_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
                if (std::popcount(sub) != count / 2) continue;
                if (prune_ && !(sub >> (strongest - 1) & 1)) continue;
                const std::uint64_t rest = mask ^ sub;
                BlockSolution lower = solve(sub);
                BlockSolution upper = solve(rest);
                const Player lower_winner = static_cast<Player>(std::bit_width(sub));
                const Player upper_winner = static_cast<Player>(std::bit_width(rest));
                const Value game =
                    instance_.values.game_value(lower_winner, upper_winner, round);
                const Value total =
                    checked_add(checked_add(lower.value, upper.value), game);
                if (!have || total > best.value) {
                    best.value = total;
                    best.order = concat(lower.order, upper.order);
                    if (prune_) best.order = std::min(best.order, concat(upper.order, lower.order));
                    have = true;
                } else if (total == best.value) {
                    best.order = std::min(best.order, concat(lower.order, upper.order));
                    if (prune_) best.order = std::min(best.order, concat(upper.order, lower.order));
                }
            }
        }
        memo_.emplace(mask, best);
        return best;
    }

private:
    static std::vector<Player> concat(const std::vector<Player>& a,
                                      const std::vector<Player>& b) {
        std::vector<Player> out = a;
        out.insert(out.end(), b.begin(), b.end());
        return out;
    }

    const Instance& instance_;
    bool prune_;
    std::unordered_map<std::uint64_t, BlockSolution> memo_;
};

}  // namespace detail

/// Exhaustive optimum over all seedings, returning the lexicographically
/// smallest optimal one. Refuses instances above the configured player cap.
inline SolveResult brute_force(const Instance& instance, BruteForceOptions options = {}) {
    instance.validate();
    if (instance.n > options.max_n)
        throw CapError("brute force refused: n = " + std::to_string(instance.n) +
                       " exceeds the cap of " + std::to_string(options.max_n));
    const bool symmetric = instance.values.is_home_team_oblivious();
    const bool prune = options.prune_sibling_swaps.value_or(symmetric);
    if (prune && !symmetric)
        throw KindError("sibling-swap pruning requires a home-team oblivious value function");
    detail::BruteForceSearch search(instance, prune);
    auto block = search.solve(instance.n == 64 ? ~std::uint64_t{0}
                                               : (std::uint64_t{1} << instance.n) - 1);
    SolveResult result{Algorithm::BruteForce, block.value, Seeding{block.order}};
    detail::check_witness(instance, result);
    return result;
}

/// All subtournament profiles within the per-round capacity bounds.
inline std::vector<SubtournamentProfile> enumerate_profiles(Player n) {
    if (!is_power_of_two(n)) throw ValidationError("player count must be a power of two");
    const int len = log2_exact(n);
    std::vector<SubtournamentProfile> out;
    SubtournamentProfile current{std::vector<int>(len, 0)};
    while (true) {
        out.push_back(current);
        int r = 0;
        while (r < len && current.x[r] == SubtournamentProfile::capacity(n, r)) {
            current.x[r] = 0;
            ++r;
        }
        if (r == len) break;
        current.x[r] += 1;
    }
    return out;
}

namespace detail {

/// Win-count table for any instance whose values decompose over winners, or
/// a KindError naming the offending kind.
inline GameValueFunction win_count_table(const Instance& instance) {
    auto detected = detect_win_count(instance);
    if (!detected)
        throw KindError(std::string("instance of kind ") + to_string(instance.values.kind()) +
                        " is not win-count oriented");
    return *detected;
}

class ProfilePacker {
public:
    explicit ProfilePacker(Player n) : len_(log2_exact(n)) {
        int total = 0;
        for (int r = 0; r < len_; ++r) {
            widths_.push_back(std::bit_width(
                static_cast<unsigned>(SubtournamentProfile::capacity(n, r))));
            total += widths_.back();
        }
        if (total > 64)
            throw CapError("profile state does not fit in 64 bits at n = " + std::to_string(n));
    }

    std::uint64_t pack(const std::vector<int>& x) const {
        std::uint64_t key = 0;
        for (int r = 0; r < len_; ++r) key = key << widths_[r] | static_cast<unsigned>(x[r]);
        return key;
    }

private:
    int len_;
    std::vector<int> widths_;
};

}  // namespace detail

/// Maximum tournament value for a win-count oriented instance, by dynamic
/// programming over (number of strongest players seeded, subtournament
/// profile). Accepts win_count and popularity kinds directly and any other
/// kind that passes detect_win_count. Also reconstructs a witness seeding by
/// backtracking the win counts and assembling the execution tree.
inline SolveResult dp_wincount(const Instance& instance) {
    instance.validate();
    const GameValueFunction win_values = detail::win_count_table(instance);
    const Player n = instance.n;
    const int rounds = instance.rounds();
    const auto p = player_eval_from_win_count(win_values, n);
    const detail::ProfilePacker packer(n);

    // Layer l holds T[l, X] for reachable X. The champion seeds first and
    // opens one subtournament of every smaller round count.
    std::vector<std::unordered_map<std::uint64_t, Value>> layers(
        static_cast<std::size_t>(n) + 1);
    SubtournamentProfile initial{std::vector<int>(static_cast<std::size_t>(rounds), 1)};
    layers[1][packer.pack(initial.x)] = p(n, rounds);

    std::unordered_map<std::uint64_t, std::vector<int>> unpack;
    unpack[packer.pack(initial.x)] = initial.x;

    for (Player l = 2; l <= n; ++l) {
        const Player player = n - l + 1;
        for (const auto& [key, val] : layers[l - 1]) {
            const std::vector<int>& x = unpack.at(key);
            for (int r = 0; r < rounds; ++r) {
                if (x[r] < 1) continue;
                SubtournamentProfile next{x};
                next.x[r] -= 1;
                for (int rr = 0; rr < r; ++rr) next.x[rr] += 1;
                next.validate();  // capacity bound must hold for reachable states
                const Value total = checked_add(val, p(player, r));
                const std::uint64_t next_key = packer.pack(next.x);
                auto [it, inserted] = layers[l].try_emplace(next_key, total);
                if (!inserted && total > it->second) it->second = total;
                if (inserted) unpack.emplace(next_key, next.x);
            }
        }
    }

    // Table-size bound: at most n * prod_r (capacity_r + 1) states.
    std::uint64_t bound = 1;
    for (int r = 0; r < rounds; ++r)
        bound *= static_cast<std::uint64_t>(SubtournamentProfile::capacity(n, r)) + 1;
    std::uint64_t total_entries = 0;
    for (const auto& layer : layers) total_entries += layer.size();
    if (total_entries > bound * static_cast<std::uint64_t>(n))
        throw InternalError("dp table exceeded its size bound");

    const SubtournamentProfile all_zero{std::vector<int>(static_cast<std::size_t>(rounds), 0)};
    auto answer = layers[n].find(packer.pack(all_zero.x));
    if (answer == layers[n].end()) throw InternalError("dp did not reach the final state");
    const Value best = answer->second;

    // Backtrack win counts, preferring the smallest round count on ties.
    std::vector<int> wins(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> x = all_zero.x;
    Value remaining = best;
    for (Player l = n; l >= 2; --l) {
        const Player player = n - l + 1;
        bool found = false;
        for (int r = 0; r < rounds && !found; ++r) {
            std::vector<int> prev = x;
            prev[r] += 1;
            bool ok = prev[r] <= SubtournamentProfile::capacity(n, r);
            for (int rr = 0; rr < r && ok; ++rr) ok = --prev[rr] >= 0;
            if (!ok) continue;
            auto it = layers[l - 1].find(packer.pack(prev));
            if (it == layers[l - 1].end()) continue;
            if (checked_add(it->second, p(player, r)) != remaining) continue;
            wins[player] = r;
            remaining = it->second;
            x = std::move(prev);
            found = true;
        }
        if (!found) throw InternalError("dp backtrack lost the optimal path");
    }
    wins[n] = rounds;

    // Assemble the execution tree: strongest first, each player closes the
    // oldest open slot matching its win count.
    SlotPool pool(n);
    for (Player player = n; player >= 1; --player)
        if (!pool.close_any(player, wins[player]))
            throw InternalError("dp reconstruction found no open slot");
    SolveResult result{Algorithm::DpWinCount, best, seeding_from_ba(pool.tree())};
    detail::check_witness(instance, result);
    return result;
}

}  // namespace bracketopt
