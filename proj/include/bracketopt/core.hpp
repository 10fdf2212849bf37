#pragma once

// Instance model for knockout-tournament value maximization: players are the
// integers 1..n with "larger id beats smaller id", a seeding assigns players
// to the n leaf positions of a complete binary bracket, and a game-value
// function assigns an integer to every (pair, round) combination. The
// tournament value of a seeding is the sum of the values of the n-1 games it
// induces.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bracketopt/common.hpp"

namespace bracketopt {

enum class ValueKind {
    General,         // v(i, j, r)
    RoundOblivious,  // v(i, j)
    WinCount,        // v'(winner, r); game value is v'(max(i,j), r)
    Popularity,      // v_i; game value is v_{max(i,j)}
};

inline const char* to_string(ValueKind k) {
    switch (k) {
        case ValueKind::General: return "general";
        case ValueKind::RoundOblivious: return "round_oblivious";
        case ValueKind::WinCount: return "win_count";
        case ValueKind::Popularity: return "popularity";
    }
    return "?";
}

inline std::optional<ValueKind> value_kind_from_string(const std::string& s) {
    if (s == "general") return ValueKind::General;
    if (s == "round_oblivious") return ValueKind::RoundOblivious;
    if (s == "win_count") return ValueKind::WinCount;
    if (s == "popularity") return ValueKind::Popularity;
    return std::nullopt;
}

/// Sparse integer-valued game-value table; absent keys are 0. Key layout per
/// kind: General (i, j, r), RoundOblivious (i, j, 0), WinCount (i, 0, r),
/// Popularity (i, 0, 0). Explicit zeros are never stored, so tables have a
/// canonical form and compare with ==.
class GameValueFunction {
public:
    using Key = std::array<std::int32_t, 3>;

    GameValueFunction() = default;
    explicit GameValueFunction(ValueKind kind) : kind_(kind) {}

    ValueKind kind() const { return kind_; }
    const std::map<Key, Value>& entries() const { return table_; }
    std::size_t size() const { return table_.size(); }

    bool operator==(const GameValueFunction& o) const = default;

    void set(Key key, Value v) {
        if (v == 0)
            table_.erase(key);
        else
            table_[key] = v;
    }

    Value get(Key key) const {
        auto it = table_.find(key);
        return it == table_.end() ? 0 : it->second;
    }

    // Kind-specific setters.
    void set_general(Player i, Player j, int round, Value v) {
        require_kind(ValueKind::General);
        set({i, j, round}, v);
    }
    void set_round_oblivious(Player i, Player j, Value v) {
        require_kind(ValueKind::RoundOblivious);
        set({i, j, 0}, v);
    }
    void set_win_count(Player winner, int round, Value v) {
        require_kind(ValueKind::WinCount);
        set({winner, 0, round}, v);
    }
    void set_popularity(Player i, Value v) {
        require_kind(ValueKind::Popularity);
        set({i, 0, 0}, v);
    }

    Value win_count_value(Player winner, int round) const {
        require_kind(ValueKind::WinCount);
        return get({winner, 0, round});
    }
    Value popularity(Player i) const {
        require_kind(ValueKind::Popularity);
        return get({i, 0, 0});
    }

    /// Value of a game between i and j in round `round`. The argument order
    /// of (i, j) matters for General and RoundOblivious tables.
    Value game_value(Player i, Player j, int round) const {
        switch (kind_) {
            case ValueKind::General: return get({i, j, round});
            case ValueKind::RoundOblivious: return get({i, j, 0});
            case ValueKind::WinCount: return get({std::max(i, j), 0, round});
            case ValueKind::Popularity: return get({std::max(i, j), 0, 0});
        }
        return 0;
    }

    /// True iff v(i,j,r) == v(j,i,r) for all reachable keys. WinCount and
    /// Popularity tables are symmetric by construction.
    bool is_home_team_oblivious() const {
        if (kind_ == ValueKind::WinCount || kind_ == ValueKind::Popularity) return true;
        for (const auto& [key, v] : table_) {
            if (get({key[1], key[0], key[2]}) != v) return false;
        }
        return true;
    }

    void validate_keys(Player n) const {
        const int rounds = log2_exact(n);
        for (const auto& [key, v] : table_) {
            auto [a, b, c] = key;
            switch (kind_) {
                case ValueKind::General:
                    check(a >= 1 && a <= n && b >= 1 && b <= n && a != b, key);
                    check(c >= 1 && c <= rounds, key);
                    break;
                case ValueKind::RoundOblivious:
                    check(a >= 1 && a <= n && b >= 1 && b <= n && a != b, key);
                    check(c == 0, key);
                    break;
                case ValueKind::WinCount:
                    check(a >= 1 && a <= n && b == 0, key);
                    check(c >= 1 && c <= rounds, key);
                    break;
                case ValueKind::Popularity:
                    check(a >= 1 && a <= n && b == 0 && c == 0, key);
                    break;
            }
        }
    }

private:
    void require_kind(ValueKind k) const {
        if (kind_ != k)
            throw KindError(std::string("value-table access for kind ") + to_string(k) +
                            " on a table of kind " + to_string(kind_));
    }
    static void check(bool ok, Key key) {
        if (!ok)
            throw ValidationError("invalid value-table key (" + std::to_string(key[0]) + "," +
                                  std::to_string(key[1]) + "," + std::to_string(key[2]) + ")");
    }

    ValueKind kind_ = ValueKind::General;
    std::map<Key, Value> table_;
};

struct Instance {
    Player n = 1;
    GameValueFunction values;
    std::optional<Value> target;

    void validate() const {
        if (!is_power_of_two(n)) throw ValidationError("player count must be a power of two");
        values.validate_keys(n);
    }

    int rounds() const { return log2_exact(n); }

    bool operator==(const Instance& o) const = default;
};

/// order[p-1] is the player seeded at position p.
struct Seeding {
    std::vector<Player> order;

    std::size_t size() const { return order.size(); }

    void validate(Player n) const {
        if (static_cast<Player>(order.size()) != n)
            throw ValidationError("seeding has " + std::to_string(order.size()) +
                                  " positions, expected " + std::to_string(n));
        std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
        for (Player p : order) {
            if (p < 1 || p > n || seen[static_cast<std::size_t>(p)])
                throw ValidationError("seeding is not a permutation of 1.." + std::to_string(n));
            seen[static_cast<std::size_t>(p)] = true;
        }
    }

    bool operator==(const Seeding& o) const = default;
};

struct Game {
    int round = 0;
    Player winner = 0;
    Player loser = 0;
    Value value = 0;

    bool operator==(const Game& o) const = default;
};

struct EvaluationReport {
    Value total = 0;
    std::vector<Game> games;  // round-major, lower positions first
    Player winner = 0;
    std::map<Player, int> win_counts;
};

namespace detail {

// Recursion of the tournament-value definition: split the position block in
// half, evaluate both halves, then play the block final in round
// log2(block size) with the lower-half winner as first argument.
inline std::pair<Player, Value> evaluate_block(const Instance& instance,
                                               const std::vector<Player>& order, std::size_t lo,
                                               std::size_t len, std::vector<Game>& games) {
    if (len == 1) return {order[lo], 0};
    const std::size_t half = len / 2;
    auto [lower_winner, lower_value] = evaluate_block(instance, order, lo, half, games);
    auto [upper_winner, upper_value] = evaluate_block(instance, order, lo + half, half, games);
    const int round = log2_exact(static_cast<std::int64_t>(len));
    const Value game = instance.values.game_value(lower_winner, upper_winner, round);
    games.push_back(Game{round, std::max(lower_winner, upper_winner),
                         std::min(lower_winner, upper_winner), game});
    Value total = checked_add(checked_add(lower_value, upper_value), game);
    return {std::max(lower_winner, upper_winner), total};
}

}  // namespace detail

/// Play out the bracket and report every game. n = 1 yields total 0 and no
/// games. Throws ValidationError for a non-permutation and OverflowError if
/// any partial sum overflows.
inline EvaluationReport evaluate(const Instance& instance, const Seeding& seeding) {
    instance.validate();
    seeding.validate(instance.n);
    EvaluationReport report;
    auto [winner, total] =
        detail::evaluate_block(instance, seeding.order, 0, seeding.order.size(), report.games);
    report.winner = winner;
    report.total = total;
    // Game list comes out of the recursion depth-first; reorder round-major.
    std::stable_sort(report.games.begin(), report.games.end(),
                     [](const Game& a, const Game& b) { return a.round < b.round; });
    for (Player p = 1; p <= instance.n; ++p) report.win_counts[p] = 0;
    for (const Game& g : report.games) report.win_counts[g.winner] += 1;
    return report;
}

/// Home-team normalization: v'(i,j,r) = max(v(i,j,r), v(j,i,r)). The optimal
/// tournament value is unchanged. Only meaningful for kinds that carry an
/// argument order.
inline Instance symmetrize(const Instance& instance) {
    const ValueKind kind = instance.values.kind();
    if (kind != ValueKind::General && kind != ValueKind::RoundOblivious)
        throw KindError("symmetrize expects a general or round-oblivious instance");
    instance.validate();
    Instance out = instance;
    GameValueFunction sym(kind);
    for (const auto& [key, v] : instance.values.entries()) {
        const GameValueFunction::Key rev{key[1], key[0], key[2]};
        const Value m = std::max(v, instance.values.get(rev));
        sym.set(key, m);
        sym.set(rev, m);
    }
    out.values = std::move(sym);
    return out;
}

/// Add c to every game value, including the implicit zeros: the sparse table
/// is densified over all reachable keys. A stored target moves by (n-1)*c.
inline Instance shift_values(const Instance& instance, Value c) {
    instance.validate();
    Instance out = instance;
    GameValueFunction shifted(instance.values.kind());
    const int rounds = instance.rounds();
    auto shift_key = [&](GameValueFunction::Key key) {
        shifted.set(key, checked_add(instance.values.get(key), c));
    };
    switch (instance.values.kind()) {
        case ValueKind::General:
            for (Player i = 1; i <= instance.n; ++i)
                for (Player j = 1; j <= instance.n; ++j) {
                    if (i == j) continue;
                    for (int r = 1; r <= rounds; ++r) shift_key({i, j, r});
                }
            break;
        case ValueKind::RoundOblivious:
            for (Player i = 1; i <= instance.n; ++i)
                for (Player j = 1; j <= instance.n; ++j)
                    if (i != j) shift_key({i, j, 0});
            break;
        case ValueKind::WinCount:
            for (Player i = 1; i <= instance.n; ++i)
                for (int r = 1; r <= rounds; ++r) shift_key({i, 0, r});
            break;
        case ValueKind::Popularity:
            for (Player i = 1; i <= instance.n; ++i) shift_key({i, 0, 0});
            break;
    }
    out.values = std::move(shifted);
    if (instance.target)
        out.target = checked_add(*instance.target, checked_mul(Value{instance.n} - 1, c));
    return out;
}

/// If the game value depends only on the stronger player and the round
/// (v(i,j,r) = v'(max(i,j), r) for all pairs and rounds), return that v' as a
/// WinCount table; otherwise return nullopt. Round-oblivious input is treated
/// as constant in r; WinCount input is returned as-is and Popularity input
/// lifts to a round-constant v'.
inline std::optional<GameValueFunction> detect_win_count(const Instance& instance) {
    instance.validate();
    const int rounds = instance.rounds();
    GameValueFunction out(ValueKind::WinCount);
    switch (instance.values.kind()) {
        case ValueKind::WinCount: return instance.values;
        case ValueKind::Popularity:
            for (Player i = 2; i <= instance.n; ++i)
                for (int r = 1; r <= rounds; ++r)
                    out.set_win_count(i, r, instance.values.popularity(i));
            return out;
        default: break;
    }
    const bool round_oblivious = instance.values.kind() == ValueKind::RoundOblivious;
    for (Player i = 2; i <= instance.n; ++i) {
        for (int r = 1; r <= rounds; ++r) {
            const int stored_round = round_oblivious ? 0 : r;
            const Value common = instance.values.get({i, 1, stored_round});
            for (Player j = 1; j < i; ++j) {
                if (instance.values.get({i, j, stored_round}) != common) return std::nullopt;
                if (instance.values.get({j, i, stored_round}) != common) return std::nullopt;
            }
            out.set_win_count(i, r, common);
        }
    }
    return out;
}

/// p(i, w) = sum of v'(i, r) for r = 1..w, with p(i, 0) = 0. Dense over all
/// players and win counts 0..log2(n).
class PlayerEvalFunction {
public:
    PlayerEvalFunction(const GameValueFunction& win_count_values, Player n)
        : n_(n), rounds_(log2_exact(n)) {
        if (win_count_values.kind() != ValueKind::WinCount)
            throw KindError("player evaluation requires a win-count value table");
        table_.assign(static_cast<std::size_t>(n) + 1,
                      std::vector<Value>(static_cast<std::size_t>(rounds_) + 1, 0));
        for (Player i = 1; i <= n; ++i)
            for (int w = 1; w <= rounds_; ++w)
                table_[i][w] = checked_add(table_[i][w - 1], win_count_values.win_count_value(i, w));
    }

    Value operator()(Player i, int wins) const {
        if (i < 1 || i > n_ || wins < 0 || wins > rounds_)
            throw ValidationError("player evaluation out of range");
        return table_[i][wins];
    }

    Player player_count() const { return n_; }
    int max_wins() const { return rounds_; }

private:
    Player n_;
    int rounds_;
    std::vector<std::vector<Value>> table_;
};

inline PlayerEvalFunction player_eval_from_win_count(const GameValueFunction& win_count_values,
                                                     Player n) {
    return PlayerEvalFunction(win_count_values, n);
}

}  // namespace bracketopt
