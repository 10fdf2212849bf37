#pragma once

// Structural machinery shared by the solvers: the execution tree of a seeding
// (who knocked out whom) is a binomial arborescence, and partially built
// seedings are tracked as multisets of open subtournaments classified by
// round count.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "bracketopt/core.hpp"

namespace bracketopt {

/// Rooted tree over players 1..n: an edge (u, child) means u beat that child.
/// Children are kept in decreasing subtree-size order, which for execution
/// trees is decreasing order of the round in which they were beaten.
struct BinomialArborescence {
    Player root = 0;
    std::map<Player, std::vector<Player>> children;

    const std::vector<Player>& children_of(Player u) const {
        static const std::vector<Player> none;
        auto it = children.find(u);
        return it == children.end() ? none : it->second;
    }

    bool operator==(const BinomialArborescence& o) const = default;
};

namespace detail {

/// Subtree sizes keyed by player; throws if the children map is not a tree
/// over exactly the players 1..n.
inline std::map<Player, Player> ba_subtree_sizes(const BinomialArborescence& ba, Player n) {
    std::map<Player, Player> size;
    std::function<Player(Player)> visit = [&](Player u) -> Player {
        if (u < 1 || u > n) throw ValidationError("tree vertex out of range");
        if (size.count(u)) throw ValidationError("tree vertex visited twice");
        size[u] = 1;  // mark
        Player total = 1;
        for (Player c : ba.children_of(u)) total += visit(c);
        size[u] = total;
        return total;
    };
    if (visit(ba.root) != n)
        throw ValidationError("tree does not span all players");
    return size;
}

}  // namespace detail

/// Check the recursive binomial shape (a node with 2^k descendants has k
/// children of sizes 2^{k-1}, ..., 1, listed in that order) and that every
/// parent is stronger than its children. Throws ValidationError otherwise.
inline void validate_ba(const BinomialArborescence& ba, Player n) {
    if (!is_power_of_two(n)) throw ValidationError("vertex count must be a power of two");
    auto size = detail::ba_subtree_sizes(ba, n);
    for (const auto& [u, sz] : size) {
        if (!is_power_of_two(sz)) throw ValidationError("subtree size is not a power of two");
        const auto& kids = ba.children_of(u);
        if (static_cast<int>(kids.size()) != log2_exact(sz))
            throw ValidationError("wrong child count for subtree size");
        Player expected = sz / 2;
        for (Player c : kids) {
            if (c >= u) throw ValidationError("child is not weaker than its parent");
            if (size.at(c) != expected)
                throw ValidationError("children not in decreasing subtree-size order");
            expected /= 2;
        }
    }
}

/// Execution tree of a seeding: rooted at the champion (player n), with the
/// players each winner knocked out as its children.
inline BinomialArborescence execution_tree_from_seeding(const Instance& instance,
                                                        const Seeding& seeding) {
    auto report = evaluate(instance, seeding);
    BinomialArborescence ba;
    ba.root = report.winner;
    for (auto it = report.games.rbegin(); it != report.games.rend(); ++it)
        ba.children[it->winner].push_back(it->loser);
    return ba;
}

/// Deterministic inverse of execution_tree_from_seeding: the winner of every
/// block takes the block's first position and child blocks follow in
/// decreasing size order, so the largest child roots the upper half.
inline Seeding seeding_from_ba(const BinomialArborescence& ba) {
    std::set<Player> seen{ba.root};
    for (const auto& [u, kids] : ba.children) {
        seen.insert(u);
        seen.insert(kids.begin(), kids.end());
    }
    const Player n = static_cast<Player>(seen.size());
    validate_ba(ba, n);
    Seeding seeding;
    seeding.order.assign(static_cast<std::size_t>(n), 0);
    std::function<void(Player, std::size_t, std::size_t)> place = [&](Player u, std::size_t lo,
                                                                      std::size_t len) {
        std::size_t block = len;
        for (Player c : ba.children_of(u)) {
            block /= 2;  // child blocks have sizes len/2, len/4, ..., 1
            place(c, lo + block, block);
        }
        seeding.order[lo] = u;
    };
    place(ba.root, 0, static_cast<std::size_t>(n));
    return seeding;
}

/// DP state of the win-count solver: x[r] counts the open subtournaments
/// with r rounds, r in 0..log2(n)-1. The root subtournament (log2(n) rounds)
/// exists only before the first player is seeded and is not part of the
/// profile.
struct SubtournamentProfile {
    std::vector<int> x;

    Player n() const { return Player{1} << x.size(); }
    static int capacity(Player n, int r) { return static_cast<int>(n >> (r + 1)); }

    bool all_zero() const {
        for (int v : x)
            if (v != 0) return false;
        return true;
    }

    void validate() const {
        const Player total = n();
        for (std::size_t r = 0; r < x.size(); ++r)
            if (x[r] < 0 || x[r] > capacity(total, static_cast<int>(r)))
                throw ValidationError("subtournament profile exceeds capacity");
    }

    auto operator<=>(const SubtournamentProfile&) const = default;
};

/// Seeding a player as winner of an open subtournament with r rounds closes
/// it and opens one subtournament for every smaller round count, including
/// the degenerate round-zero one.
inline SubtournamentProfile close_subtournament(const SubtournamentProfile& profile, int r) {
    if (r < 0 || static_cast<std::size_t>(r) >= profile.x.size() || profile.x[r] < 1)
        throw IllegalTransitionError("no open subtournament with " + std::to_string(r) +
                                     " rounds");
    SubtournamentProfile out = profile;
    out.x[r] -= 1;
    for (int rr = 0; rr < r; ++rr) out.x[rr] += 1;
    out.validate();
    return out;
}

/// Open-subtournament pool with restrictor bookkeeping, used by the greedy,
/// FPT and DP-reconstruction passes. Every slot remembers which player's
/// seeding opened it (its restrictor); only weaker players may close it.
/// Closing attaches the closing player to the opener in the execution tree
/// being assembled. The initial root slot has no restrictor.
class SlotPool {
public:
    static constexpr Player kUnrestricted = std::numeric_limits<Player>::max();

    explicit SlotPool(Player n) : n_(n) {
        slots_.emplace(Key{log2_exact(n), kUnrestricted}, next_seq_++);
    }

    bool empty() const { return slots_.empty(); }

    /// Largest round count among all open slots, or -1 if none.
    int max_rounds() const {
        return slots_.empty() ? -1 : std::prev(slots_.end())->first.rounds;
    }

    /// Smallest round count among all open slots, or -1 if none.
    int min_rounds() const { return slots_.empty() ? -1 : slots_.begin()->first.rounds; }

    /// Largest round count among slots a given player may close (restrictor
    /// strictly stronger), or -1 if none.
    int max_rounds_for(Player p) const {
        int best = -1;
        for (const auto& [key, seq] : slots_)
            if (key.restrictor > p) best = std::max(best, key.rounds);
        return best;
    }

    /// Close the slot with the given round count whose restrictor is the
    /// weakest player still stronger than p; false if no such slot.
    bool close_restricted(Player p, int rounds) {
        auto it = slots_.lower_bound(Key{rounds, p + 1});
        if (it == slots_.end() || it->first.rounds != rounds) return false;
        close(it, p);
        return true;
    }

    /// Close the oldest open slot with the given round count; false if none.
    bool close_any(Player p, int rounds) {
        auto lo = slots_.lower_bound(Key{rounds, 0});
        auto hi = slots_.lower_bound(Key{rounds + 1, 0});
        auto oldest = hi;
        for (auto it = lo; it != hi; ++it)
            if (oldest == hi || it->second < oldest->second) oldest = it;
        if (oldest == hi) return false;
        close(oldest, p);
        return true;
    }

    /// Execution tree of a complete run. Valid once every player is seeded.
    BinomialArborescence tree() const {
        if (!slots_.empty()) throw InternalError("slot pool still has open slots");
        BinomialArborescence ba;
        ba.root = root_;
        for (const auto& [parent, kids] : children_by_round_) {
            auto& out = ba.children[parent];
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) out.push_back(it->second);
        }
        return ba;
    }

private:
    struct Key {
        int rounds;
        Player restrictor;
        auto operator<=>(const Key&) const = default;
    };

    void close(std::map<Key, std::uint64_t>::iterator it, Player p) {
        const Key key = it->first;
        slots_.erase(it);
        if (key.restrictor == kUnrestricted)
            root_ = p;
        else
            children_by_round_[key.restrictor].emplace(key.rounds, p);
        for (int rr = 0; rr < key.rounds; ++rr) slots_.emplace(Key{rr, p}, next_seq_++);
    }

    Player n_;
    Player root_ = 0;
    std::uint64_t next_seq_ = 0;
    std::map<Key, std::uint64_t> slots_;
    std::map<Player, std::map<int, Player>> children_by_round_;  // parent -> round -> child
};

/// Minimum set of players touching every pair with a nonzero game value, by
/// iterative-deepening vertex-cover branching on the nonzero-value graph.
/// Deterministic: branches on the lexicographically first uncovered pair and
/// tries its stronger endpoint first (high-value pairs cluster around strong
/// players, so this finds covers made of them).
inline std::set<Player> compute_influential_set(const Instance& instance) {
    instance.validate();
    std::set<std::pair<Player, Player>> edge_set;
    auto add_edge = [&](Player a, Player b) {
        if (a != b) edge_set.emplace(std::min(a, b), std::max(a, b));
    };
    switch (instance.values.kind()) {
        case ValueKind::General:
        case ValueKind::RoundOblivious:
            for (const auto& [key, v] : instance.values.entries()) add_edge(key[0], key[1]);
            break;
        case ValueKind::WinCount:
        case ValueKind::Popularity:
            for (const auto& [key, v] : instance.values.entries())
                for (Player j = 1; j < key[0]; ++j) add_edge(key[0], j);
            break;
    }
    std::vector<std::pair<Player, Player>> edges(edge_set.begin(), edge_set.end());
    std::set<Player> chosen;
    std::function<bool(int)> branch = [&](int budget) -> bool {
        auto uncovered = edges.end();
        for (auto it = edges.begin(); it != edges.end(); ++it)
            if (!chosen.count(it->first) && !chosen.count(it->second)) {
                uncovered = it;
                break;
            }
        if (uncovered == edges.end()) return true;
        if (budget == 0) return false;
        for (Player endpoint : {uncovered->second, uncovered->first}) {
            chosen.insert(endpoint);
            if (branch(budget - 1)) return true;
            chosen.erase(endpoint);
        }
        return false;
    };
    for (int k = 0; k <= instance.n; ++k) {
        chosen.clear();
        if (branch(k)) return chosen;
    }
    throw InternalError("vertex-cover search failed to terminate");
}

}  // namespace bracketopt
