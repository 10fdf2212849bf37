#pragma once

// Executable hardness reductions from Max (2,3)-SAT: two instance
// constructions (round-dependent 0/1 values, and round-oblivious values over
// {0, 1, -5} with an optional nonnegative shift), the assignment-to-seeding
// builders that realize k satisfied clauses as tournament value k + n, and
// the seeding-to-assignment extractors that recover at least value - n
// satisfied clauses.

#include <array>
#include <sstream>
#include <string>

#include "bracketopt/core.hpp"

namespace bracketopt {

struct Literal {
    int var = 0;
    bool negated = false;

    bool satisfied_by(bool value) const { return value != negated; }
    bool operator==(const Literal&) const = default;
};

using Clause23 = std::array<Literal, 2>;

/// Formula with exactly two literals per clause and at most three occurrences
/// per variable.
struct Formula23 {
    int num_vars = 0;
    std::vector<Clause23> clauses;

    std::vector<int> occurrence_counts() const {
        std::vector<int> count(static_cast<std::size_t>(num_vars) + 1, 0);
        for (const auto& clause : clauses)
            for (const auto& lit : clause) count[lit.var] += 1;
        return count;
    }

    void validate() const {
        for (const auto& clause : clauses) {
            for (const auto& lit : clause)
                if (lit.var < 1 || lit.var > num_vars)
                    throw ValidationError("literal variable out of range");
            if (clause[0].var == clause[1].var)
                throw ValidationError("clause must mention two distinct variables");
        }
        auto counts = occurrence_counts();
        for (int v = 1; v <= num_vars; ++v)
            if (counts[v] > 3)
                throw ValidationError("variable x" + std::to_string(v) +
                                      " occurs more than three times");
    }

    bool operator==(const Formula23&) const = default;
};

inline int count_satisfied(const Formula23& formula, const std::vector<bool>& assignment) {
    int satisfied = 0;
    for (const auto& clause : formula.clauses)
        for (const auto& lit : clause)
            if (lit.satisfied_by(assignment[static_cast<std::size_t>(lit.var)])) {
                ++satisfied;
                break;
            }
    return satisfied;
}

/// DIMACS CNF with the (2,3) promise checked while parsing.
inline Formula23 parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string token;
    Formula23 formula;
    int declared_clauses = -1;
    bool header_seen = false;
    std::vector<int> pending;
    while (in >> token) {
        if (token == "c") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (token == "p") {
            std::string fmt;
            if (!(in >> fmt >> formula.num_vars >> declared_clauses) || fmt != "cnf")
                throw ValidationError("malformed DIMACS header");
            header_seen = true;
            continue;
        }
        int lit;
        try {
            lit = std::stoi(token);
        } catch (const std::exception&) {
            throw ValidationError("unexpected token '" + token + "' in DIMACS input");
        }
        if (!header_seen) throw ValidationError("clause before DIMACS header");
        if (lit == 0) {
            if (pending.size() != 2)
                throw ValidationError("clause has " + std::to_string(pending.size()) +
                                      " literals, expected exactly 2");
            formula.clauses.push_back(
                Clause23{Literal{std::abs(pending[0]), pending[0] < 0},
                         Literal{std::abs(pending[1]), pending[1] < 0}});
            pending.clear();
        } else {
            pending.push_back(lit);
        }
    }
    if (!header_seen) throw ValidationError("missing DIMACS header");
    if (!pending.empty()) throw ValidationError("unterminated clause in DIMACS input");
    if (declared_clauses >= 0 && static_cast<int>(formula.clauses.size()) != declared_clauses)
        throw ValidationError("clause count does not match the DIMACS header");
    formula.validate();
    return formula;
}

/// Result of the occurrence preprocessing: variables in no clause are
/// dropped, variables in exactly one clause are fixed to satisfy it and
/// removed together with that clause, cascading until every remaining
/// variable occurs at least twice.
struct PreprocessResult {
    Formula23 formula;                 // renumbered to 1..formula.num_vars
    std::vector<int> var_map;          // new index (1-based) -> original index
    std::map<int, bool> fixed;         // original index -> forced value
    int satisfied_offset = 0;          // clauses removed, all satisfied
    int original_num_vars = 0;

    /// Lift an assignment of the preprocessed formula back to the original
    /// variables.
    std::vector<bool> extend(const std::vector<bool>& assignment) const {
        std::vector<bool> full(static_cast<std::size_t>(original_num_vars) + 1, false);
        for (const auto& [var, value] : fixed) full[static_cast<std::size_t>(var)] = value;
        for (std::size_t i = 1; i < var_map.size(); ++i)
            full[static_cast<std::size_t>(var_map[i])] = assignment[i];
        return full;
    }
};

inline PreprocessResult preprocess(const Formula23& input) {
    input.validate();
    PreprocessResult result;
    result.original_num_vars = input.num_vars;
    std::vector<Clause23> clauses = input.clauses;
    std::vector<bool> removed(static_cast<std::size_t>(input.num_vars) + 1, false);
    for (;;) {
        std::vector<int> count(static_cast<std::size_t>(input.num_vars) + 1, 0);
        for (const auto& clause : clauses)
            for (const auto& lit : clause) count[lit.var] += 1;
        int chosen = 0;
        for (int v = 1; v <= input.num_vars && !chosen; ++v)
            if (!removed[v] && count[v] <= 1) chosen = v;
        if (!chosen) break;
        removed[chosen] = true;
        if (count[chosen] == 0) {
            result.fixed[chosen] = false;  // unconstrained
            continue;
        }
        const auto home = std::find_if(clauses.begin(), clauses.end(), [&](const Clause23& c) {
            return c[0].var == chosen || c[1].var == chosen;
        });
        const Literal lit = home->at(home->at(0).var == chosen ? 0 : 1);
        result.fixed[chosen] = !lit.negated;
        result.satisfied_offset += 1;
        clauses.erase(home);
    }
    std::vector<int> renumber(static_cast<std::size_t>(input.num_vars) + 1, 0);
    result.var_map.push_back(0);
    for (int v = 1; v <= input.num_vars; ++v)
        if (!removed[v]) {
            result.var_map.push_back(v);
            renumber[v] = static_cast<int>(result.var_map.size()) - 1;
        }
    result.formula.num_vars = static_cast<int>(result.var_map.size()) - 1;
    for (const auto& clause : clauses)
        result.formula.clauses.push_back(Clause23{
            Literal{renumber[clause[0].var], clause[0].negated},
            Literal{renumber[clause[1].var], clause[1].negated}});
    result.formula.validate();
    return result;
}

enum class Role {
    Variable,
    VarTrue,
    VarFalse,
    Clause,
    SpecialHat,
    SpecialMid,
    SpecialTilde,
    Dummy,
};

inline const char* to_string(Role role) {
    switch (role) {
        case Role::Variable: return "variable";
        case Role::VarTrue: return "var_true";
        case Role::VarFalse: return "var_false";
        case Role::Clause: return "clause";
        case Role::SpecialHat: return "special_hat";
        case Role::SpecialMid: return "special_mid";
        case Role::SpecialTilde: return "special_tilde";
        case Role::Dummy: return "dummy";
    }
    return "?";
}

/// Who is who in a constructed instance: the strength ranking fixes a player
/// id for every gadget role, and every clause literal carries its global
/// occurrence index (the round in which the clause player can meet its truth
/// player).
struct ReductionLayout {
    int construction = 1;
    int nprime = 0;
    Player total_players = 0;
    int padding = 0;  // 2^nprime - 16n
    int num_vars = 0;
    int num_clauses = 0;
    int num_dummies = 0;
    Value value_shift = 0;  // 6 for the nonnegative variant of construction 2

    struct OccurrenceLiteral {
        Literal literal;
        int occurrence = 0;  // 1..3, global occurrence index of the variable
    };
    std::vector<std::array<OccurrenceLiteral, 2>> clause_literals;  // by clause index

    Player by_rank(int rank) const { return total_players - rank + 1; }

    Player var_player(int i) const {
        const int base = construction == 1 ? 0 : 3 * num_vars;
        return by_rank(base + 3 * (i - 1) + 1);
    }
    Player var_true(int i) const {
        const int base = construction == 1 ? 0 : 3 * num_vars;
        return by_rank(base + 3 * (i - 1) + 2);
    }
    Player var_false(int i) const {
        const int base = construction == 1 ? 0 : 3 * num_vars;
        return by_rank(base + 3 * (i - 1) + 3);
    }
    Player special_hat(int i) const { return by_rank(3 * (i - 1) + 1); }
    Player special_mid(int i) const { return by_rank(3 * (i - 1) + 2); }
    Player special_tilde(int i) const { return by_rank(3 * (i - 1) + 3); }
    Player clause_player(int j) const {
        const int base = construction == 1 ? 3 * num_vars : 6 * num_vars;
        return by_rank(base + j);
    }

    Role role_of(Player player) const {
        const int rank = total_players - player + 1;
        const int specials = construction == 1 ? 0 : 3 * num_vars;
        if (rank <= specials) {
            const int slot = (rank - 1) % 3;
            return slot == 0 ? Role::SpecialHat : (slot == 1 ? Role::SpecialMid : Role::SpecialTilde);
        }
        if (rank <= specials + 3 * num_vars) {
            const int slot = (rank - specials - 1) % 3;
            return slot == 0 ? Role::Variable : (slot == 1 ? Role::VarTrue : Role::VarFalse);
        }
        if (rank <= specials + 3 * num_vars + num_clauses) return Role::Clause;
        return Role::Dummy;
    }

    /// Gadget index of a player (variable index, clause index, or dummy
    /// ordinal), each counted from 1.
    int index_of(Player player) const {
        const int rank = total_players - player + 1;
        const int specials = construction == 1 ? 0 : 3 * num_vars;
        if (rank <= specials) return (rank - 1) / 3 + 1;
        if (rank <= specials + 3 * num_vars) return (rank - specials - 1) / 3 + 1;
        if (rank <= specials + 3 * num_vars + num_clauses)
            return rank - specials - 3 * num_vars;
        return rank - specials - 3 * num_vars - num_clauses;
    }
};

namespace detail {

inline void set_symmetric(GameValueFunction& fn, Player a, Player b, int round, Value v) {
    if (fn.kind() == ValueKind::General) {
        fn.set_general(a, b, round, v);
        fn.set_general(b, a, round, v);
    } else {
        fn.set_round_oblivious(a, b, v);
        fn.set_round_oblivious(b, a, v);
    }
}

inline ReductionLayout layout_for(const Formula23& formula, int construction) {
    formula.validate();
    const int n = formula.num_vars;
    const int m = static_cast<int>(formula.clauses.size());
    if (n < 1) throw ValidationError("construction needs at least one variable");
    const auto counts = formula.occurrence_counts();
    for (int v = 1; v <= n; ++v)
        if (counts[v] < 2)
            throw ValidationError("construction requires a preprocessed formula (every "
                                  "variable in at least two clauses)");
    ReductionLayout layout;
    layout.construction = construction;
    layout.num_vars = n;
    layout.num_clauses = m;
    int nprime = 0;
    while ((std::int64_t{16} * n) > (std::int64_t{1} << nprime)) ++nprime;
    layout.nprime = nprime;
    layout.total_players = Player{1} << nprime;
    layout.padding = static_cast<int>(layout.total_players - 16 * n);
    layout.num_dummies =
        (construction == 1 ? 13 : 10) * n + layout.padding - m;
    std::vector<int> occurrence(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& clause : formula.clauses) {
        std::array<ReductionLayout::OccurrenceLiteral, 2> with_occ;
        for (int t = 0; t < 2; ++t)
            with_occ[t] = {clause[t], ++occurrence[clause[t].var]};
        layout.clause_literals.push_back(with_occ);
    }
    return layout;
}

}  // namespace detail

/// Round-dependent {0,1}-valued instance: each variable player is worth 1
/// against either of its truth players in round one, and each clause player
/// is worth 1 against the truth player of a satisfying literal in the round
/// equal to that literal's occurrence index.
inline std::pair<Instance, ReductionLayout> construct1(const Formula23& formula) {
    ReductionLayout layout = detail::layout_for(formula, 1);
    Instance inst;
    inst.n = layout.total_players;
    inst.values = GameValueFunction(ValueKind::General);
    for (int i = 1; i <= layout.num_vars; ++i) {
        detail::set_symmetric(inst.values, layout.var_player(i), layout.var_true(i), 1, 1);
        detail::set_symmetric(inst.values, layout.var_player(i), layout.var_false(i), 1, 1);
    }
    for (int j = 1; j <= layout.num_clauses; ++j)
        for (const auto& [literal, occurrence] : layout.clause_literals[j - 1]) {
            const Player partner =
                literal.negated ? layout.var_false(literal.var) : layout.var_true(literal.var);
            detail::set_symmetric(inst.values, layout.clause_player(j), partner, occurrence, 1);
        }
    inst.validate();
    return {inst, layout};
}

/// Round-oblivious instance over {0, 1, -5}: the 1-values mirror
/// construction 1, three special players per variable shield it from the
/// penalty, and the variable and middle special player are worth -5 against
/// everyone outside their gadget. With `nonneg` every value is shifted by 6,
/// mapping {0, 1, -5} to {6, 7, 1}.
inline std::pair<Instance, ReductionLayout> construct2(const Formula23& formula,
                                                       bool nonneg = false) {
    ReductionLayout layout = detail::layout_for(formula, 2);
    Instance inst;
    inst.n = layout.total_players;
    inst.values = GameValueFunction(ValueKind::RoundOblivious);
    for (int i = 1; i <= layout.num_vars; ++i) {
        detail::set_symmetric(inst.values, layout.var_player(i), layout.var_true(i), 0, 1);
        detail::set_symmetric(inst.values, layout.var_player(i), layout.var_false(i), 0, 1);
    }
    for (int j = 1; j <= layout.num_clauses; ++j)
        for (const auto& [literal, occurrence] : layout.clause_literals[j - 1]) {
            const Player partner =
                literal.negated ? layout.var_false(literal.var) : layout.var_true(literal.var);
            detail::set_symmetric(inst.values, layout.clause_player(j), partner, 0, 1);
        }
    for (int i = 1; i <= layout.num_vars; ++i) {
        const Player var = layout.var_player(i);
        const Player mid = layout.special_mid(i);
        const std::set<Player> var_keeps{layout.var_true(i), layout.var_false(i), mid};
        const std::set<Player> mid_keeps{layout.special_hat(i), layout.special_tilde(i), var};
        for (Player y = 1; y <= layout.total_players; ++y) {
            if (y != var && !var_keeps.count(y))
                detail::set_symmetric(inst.values, var, y, 0, -5);
            if (y != mid && !mid_keeps.count(y))
                detail::set_symmetric(inst.values, mid, y, 0, -5);
        }
    }
    inst.validate();
    if (nonneg) {
        inst = shift_values(inst, 6);
        layout.value_shift = 6;
    }
    return {inst, layout};
}

/// Seeding realizing a given assignment: every variable player meets its
/// falsified truth player in round one, the other truth player anchors a
/// satellite block, and each satisfied clause player is planted so it meets
/// that truth player in the round of its satisfying literal's occurrence.
/// Unsatisfied clause players are kept out of the satellite blocks; dummies
/// fill everything else.
inline Seeding seeding_from_assignment(const ReductionLayout& layout,
                                       const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != layout.num_vars + 1)
        throw ValidationError("assignment must cover variables 1..n (index 0 unused)");
    const int n = layout.num_vars;
    std::vector<Player> order(static_cast<std::size_t>(layout.total_players), 0);
    auto place = [&](std::int64_t position, Player player) {
        if (position < 1 || position > layout.total_players)
            throw InternalError("seed position out of range");
        auto& slot = order[static_cast<std::size_t>(position - 1)];
        if (slot != 0) throw InternalError("seed position collision");
        slot = player;
    };
    for (int i = 1; i <= n; ++i) {
        const bool value = assignment[static_cast<std::size_t>(i)];
        const Player stays = value ? layout.var_false(i) : layout.var_true(i);
        const Player exiled = value ? layout.var_true(i) : layout.var_false(i);
        if (layout.construction == 1) {
            place(2 * i - 1, layout.var_player(i));
            place(2 * i, stays);
        } else {
            place(8 * i - 7, layout.var_player(i));
            place(8 * i - 6, stays);
            place(8 * i - 5, layout.special_mid(i));
            place(8 * i - 4, layout.special_tilde(i));
            place(8 * i - 3, layout.special_hat(i));
        }
        place(8 * n + 8 * i - 7, exiled);
    }
    std::vector<Player> leftover_clauses;
    for (int j = 1; j <= layout.num_clauses; ++j) {
        const auto& literals = layout.clause_literals[j - 1];
        const auto satisfying =
            std::find_if(literals.begin(), literals.end(), [&](const auto& ol) {
                return ol.literal.satisfied_by(
                    assignment[static_cast<std::size_t>(ol.literal.var)]);
            });
        if (satisfying == literals.end()) {
            leftover_clauses.push_back(layout.clause_player(j));
        } else {
            const int i = satisfying->literal.var;
            place(8 * n + 8 * i + (std::int64_t{1} << (satisfying->occurrence - 1)) - 7,
                  layout.clause_player(j));
        }
    }
    // Unsatisfied clause players must stay below the satellite region, or
    // they could knock a satisfied clause player out before its scoring game.
    std::sort(leftover_clauses.begin(), leftover_clauses.end());
    std::size_t cursor = 0;
    for (Player player : leftover_clauses) {
        while (cursor < static_cast<std::size_t>(8 * n) && order[cursor] != 0) ++cursor;
        if (cursor >= static_cast<std::size_t>(8 * n))
            throw InternalError("no room for unsatisfied clause players below the satellites");
        order[cursor] = player;
    }
    Player next_dummy = 1;  // dummies are exactly the weakest ids
    for (auto& slot : order)
        if (slot == 0) slot = next_dummy++;
    if (next_dummy - 1 != layout.num_dummies)
        throw InternalError("dummy count mismatch while filling the seeding");
    return Seeding{order};
}

namespace detail {

struct GadgetGames {
    int true_ones = 0;      // value-1 games of the true player against clause players
    int false_ones = 0;     // same for the false player
    bool true_plays_var = false;
    bool false_plays_var = false;
    Player var_round1_opponent = 0;
};

inline std::vector<GadgetGames> gadget_games(const ReductionLayout& layout,
                                             const EvaluationReport& report) {
    std::vector<GadgetGames> out(static_cast<std::size_t>(layout.num_vars) + 1);
    std::map<Player, std::pair<int, Player>> info;  // player -> (var index, 0=var 1=true 2=false)
    for (int i = 1; i <= layout.num_vars; ++i) {
        info[layout.var_player(i)] = {i, 0};
        info[layout.var_true(i)] = {i, 1};
        info[layout.var_false(i)] = {i, 2};
    }
    const Value one = 1 + layout.value_shift;
    for (const auto& game : report.games) {
        for (auto [a, b] : {std::pair{game.winner, game.loser}, std::pair{game.loser, game.winner}}) {
            auto it = info.find(a);
            if (it == info.end()) continue;
            auto [i, kind] = it->second;
            auto& gadget = out[static_cast<std::size_t>(i)];
            if (kind == 0) {
                if (game.round == 1) gadget.var_round1_opponent = b;
                if (b == layout.var_true(i)) gadget.true_plays_var = true;
                if (b == layout.var_false(i)) gadget.false_plays_var = true;
            } else if (layout.role_of(b) == Role::Clause && game.value == one) {
                (kind == 1 ? gadget.true_ones : gadget.false_ones) += 1;
            }
        }
    }
    return out;
}

}  // namespace detail

struct ExtractionResult {
    std::vector<bool> assignment;  // index 0 unused
    int repairs = 0;               // construction 1 cheat repairs performed
};

/// Read an assignment back out of a seeding.
///
/// Construction 1 first repairs "cheating" variable gadgets (both truth
/// players scoring against clause players) by swapping the less productive
/// truth player next to its variable player; each swap is checked to never
/// decrease the tournament value and never create new cheats. A variable is
/// then true iff some clause player scored against its true player.
///
/// Construction 2 applies the three-case rule directly: an uncheating gadget
/// follows its true player's clause games; a cheating gadget away from its
/// variable player keeps the more productive side; anything else (which
/// forces a -5 game) defaults to true.
inline ExtractionResult extract_assignment(const Instance& instance,
                                           const ReductionLayout& layout, Seeding seeding) {
    ExtractionResult result;
    result.assignment.assign(static_cast<std::size_t>(layout.num_vars) + 1, false);
    auto report = evaluate(instance, seeding);
    auto gadgets = detail::gadget_games(layout, report);

    if (layout.construction == 1) {
        auto cheats = [&](const detail::GadgetGames& g) {
            return g.true_ones >= 1 && g.false_ones >= 1;
        };
        for (int guard = 0; guard <= layout.num_vars; ++guard) {
            int cheating = 0;
            for (int i = 1; i <= layout.num_vars && !cheating; ++i)
                if (cheats(gadgets[static_cast<std::size_t>(i)])) cheating = i;
            if (!cheating) break;
            if (guard == layout.num_vars)
                throw InternalError("cheat repair did not terminate");
            const auto& gadget = gadgets[static_cast<std::size_t>(cheating)];
            const Player mover = gadget.true_ones <= gadget.false_ones
                                     ? layout.var_true(cheating)
                                     : layout.var_false(cheating);
            const Player opponent = gadget.var_round1_opponent;
            if (opponent == layout.var_true(cheating) || opponent == layout.var_false(cheating))
                throw InternalError("cheating gadget with a scoring first-round game");
            auto position_of = [&](Player p) {
                return std::find(seeding.order.begin(), seeding.order.end(), p);
            };
            std::iter_swap(position_of(mover), position_of(opponent));
            auto next_report = evaluate(instance, seeding);
            if (next_report.total < report.total)
                throw InternalError("cheat repair decreased the tournament value");
            auto next_gadgets = detail::gadget_games(layout, next_report);
            for (int i = 1; i <= layout.num_vars; ++i)
                if (i != cheating && !cheats(gadgets[static_cast<std::size_t>(i)]) &&
                    cheats(next_gadgets[static_cast<std::size_t>(i)]))
                    throw InternalError("cheat repair created a new cheating gadget");
            report = std::move(next_report);
            gadgets = std::move(next_gadgets);
            result.repairs += 1;
        }
        for (int i = 1; i <= layout.num_vars; ++i)
            result.assignment[static_cast<std::size_t>(i)] =
                gadgets[static_cast<std::size_t>(i)].true_ones >= 1;
        return result;
    }

    for (int i = 1; i <= layout.num_vars; ++i) {
        const auto& g = gadgets[static_cast<std::size_t>(i)];
        const bool cheat_clauses = g.true_ones >= 1 && g.false_ones >= 1;
        const bool cheat_var = g.true_plays_var && g.false_plays_var;
        bool value;
        if (!cheat_clauses && !cheat_var) {
            value = g.true_ones >= 1;
        } else if (cheat_clauses && !g.true_plays_var && !g.false_plays_var) {
            // One side scores at most once; keep the other side's clauses.
            value = g.true_ones > g.false_ones;
        } else {
            value = true;  // a -5 game cancels this gadget's contribution
        }
        result.assignment[static_cast<std::size_t>(i)] = value;
    }
    return result;
}

}  // namespace bracketopt
