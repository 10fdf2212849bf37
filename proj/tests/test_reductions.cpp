#include <catch2/catch_amalgamated.hpp>

#include "bracketopt/brackets.hpp"
#include "bracketopt/reductions_sat.hpp"
#include "oracle_helpers.hpp"

using namespace bracketopt;

namespace {

Formula23 make_formula(int num_vars, std::vector<std::array<int, 2>> clauses) {
    Formula23 f;
    f.num_vars = num_vars;
    for (auto [a, b] : clauses)
        f.clauses.push_back(Clause23{Literal{std::abs(a), a < 0}, Literal{std::abs(b), b < 0}});
    return f;
}

// phi = (x1 v x2) & (!x1 v x2)
Formula23 example_formula() { return make_formula(2, {{1, 2}, {-1, 2}}); }

std::vector<bool> assignment_from_mask(int num_vars, unsigned mask) {
    std::vector<bool> a(static_cast<std::size_t>(num_vars) + 1, false);
    for (int i = 1; i <= num_vars; ++i) a[static_cast<std::size_t>(i)] = mask >> (i - 1) & 1;
    return a;
}

int max_sat(const Formula23& f) {
    int best = 0;
    for (unsigned mask = 0; mask < (1u << f.num_vars); ++mask)
        best = std::max(best, count_satisfied(f, assignment_from_mask(f.num_vars, mask)));
    return best;
}

const std::vector<Formula23>& small_corpus() {
    static const std::vector<Formula23> corpus = {
        make_formula(2, {{1, 2}, {-1, 2}}),
        make_formula(2, {{1, 2}, {-1, -2}}),
        make_formula(2, {{1, 2}, {-1, 2}, {1, -2}}),
        make_formula(3, {{1, 2}, {2, 3}, {3, 1}}),
        make_formula(3, {{-1, 2}, {-2, 3}, {-3, 1}}),
        make_formula(3, {{1, 2}, {-2, 3}, {-3, -1}, {2, 3}}),
        make_formula(4, {{1, 2}, {3, 4}, {-1, 3}, {-2, -4}}),
        make_formula(4, {{1, -2}, {2, -3}, {3, -4}, {4, -1}}),
        make_formula(4, {{1, 2}, {-1, 3}, {-2, 4}, {-3, -4}, {1, -4}}),
        make_formula(4, {{1, 2}, {1, 3}, {-1, 4}, {-2, -3}, {2, 4}, {-3, -4}}),
    };
    return corpus;
}

}  // namespace

TEST_CASE("dimacs: small formula parses") {
    auto f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0\n");
    CHECK(f.num_vars == 2);
    CHECK(f == example_formula());
}

TEST_CASE("dimacs: comments and layout quirks") {
    auto f = parse_dimacs("c a comment\np cnf 3 2\nc another\n1 -3 0 2 3 0\n");
    CHECK(f.clauses.size() == 2);
    CHECK(f.clauses[0] == Clause23{Literal{1, false}, Literal{3, true}});
}

TEST_CASE("dimacs: violations of the (2,3) promise") {
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 3 0\n"), ValidationError);  // arity
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n"),
                    ValidationError);  // four occurrences
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 -1 0\n"), ValidationError);  // same variable
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ValidationError);              // no header
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ValidationError);     // unterminated
}

TEST_CASE("preprocess: unused variable is dropped") {
    auto r = preprocess(make_formula(3, {{1, 2}, {-1, 2}}));
    CHECK(r.formula.num_vars == 2);
    CHECK(r.satisfied_offset == 0);
    CHECK(r.fixed == std::map<int, bool>{{3, false}});
    CHECK(r.formula == example_formula());
}

TEST_CASE("preprocess: cascade fixes and offsets") {
    auto r = preprocess(make_formula(3, {{3, 1}, {1, 2}, {-1, 2}}));
    // x3 occurs once -> fixed true, clause (x3 v x1) removed (+1). x1 then
    // occurs twice, x2 twice: stable.
    CHECK(r.satisfied_offset == 1);
    CHECK(r.fixed == std::map<int, bool>{{3, true}});
    CHECK(r.formula.num_vars == 2);
    CHECK(r.formula.clauses.size() == 2);
    // Lifting an assignment keeps the removed clause satisfied.
    auto full = r.extend({false, true, false});
    CHECK(full[3] == true);
    CHECK(count_satisfied(make_formula(3, {{3, 1}, {1, 2}, {-1, 2}}), full) >=
          count_satisfied(r.formula, {false, true, false}) + r.satisfied_offset);
}

TEST_CASE("preprocess: already-stable formula is unchanged") {
    auto r = preprocess(example_formula());
    CHECK(r.formula == example_formula());
    CHECK(r.satisfied_offset == 0);
    CHECK(r.fixed.empty());
}

TEST_CASE("construction 1: sizes and value structure for the example formula") {
    auto [inst, layout] = construct1(example_formula());
    CHECK(layout.nprime == 5);
    CHECK(layout.total_players == 32);
    CHECK(layout.padding == 0);
    CHECK(layout.num_dummies == 24);  // 13n + p - m = 26 - 2
    CHECK(inst.n == 32);
    for (const auto& [key, v] : inst.values.entries()) {
        CHECK(v == 1);
        CHECK(key[2] >= 1);
        CHECK(key[2] <= 3);
    }
    // Not win-count oriented: values depend on both endpoints.
    CHECK(!detect_win_count(inst).has_value());
    // Every nonzero pair touches a variable-gadget player.
    auto influential = compute_influential_set(inst);
    for (Player p : influential) {
        auto role = layout.role_of(p);
        bool variable_gadget =
            role == Role::Variable || role == Role::VarTrue || role == Role::VarFalse;
        CHECK(variable_gadget);
    }
}

TEST_CASE("construction 2: sizes, codomain, and kind") {
    auto [inst, layout] = construct2(example_formula());
    CHECK(layout.total_players == 32);
    CHECK(layout.num_dummies == 18);  // 10n + p - m = 20 - 2
    std::set<Value> codomain;
    for (const auto& [key, v] : inst.values.entries()) codomain.insert(v);
    CHECK(codomain == std::set<Value>{1, -5});  // zeros are implicit
    CHECK(!detect_win_count(inst).has_value());

    auto [shifted, shifted_layout] = construct2(example_formula(), true);
    CHECK(shifted_layout.value_shift == 6);
    std::set<Value> shifted_codomain;
    for (const auto& [key, v] : shifted.values.entries()) shifted_codomain.insert(v);
    CHECK(shifted_codomain == std::set<Value>{1, 6, 7});
}

TEST_CASE("construction: rejects unpreprocessed formulas") {
    CHECK_THROWS_AS(construct1(make_formula(2, {{1, 2}})), ValidationError);
}

TEST_CASE("reduction bounds: seeded assignments over the whole corpus") {
    for (const auto& f : small_corpus()) {
        const int n = f.num_vars;
        auto [inst1, layout1] = construct1(f);
        auto [inst2, layout2] = construct2(f);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            auto a = assignment_from_mask(n, mask);
            const Value sat = count_satisfied(f, a);
            auto report1 = evaluate(inst1, seeding_from_assignment(layout1, a));
            CHECK(report1.total >= sat + n);
            auto report2 = evaluate(inst2, seeding_from_assignment(layout2, a));
            CHECK(report2.total >= sat + n);
            for (const auto& game : report2.games) CHECK(game.value >= 0);
        }
    }
}

TEST_CASE("reduction bounds: extraction round trip keeps the satisfied count") {
    for (const auto& f : small_corpus()) {
        const int n = f.num_vars;
        auto [inst1, layout1] = construct1(f);
        auto [inst2, layout2] = construct2(f);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            auto a = assignment_from_mask(n, mask);
            const int sat = count_satisfied(f, a);
            auto back1 =
                extract_assignment(inst1, layout1, seeding_from_assignment(layout1, a));
            CHECK(count_satisfied(f, back1.assignment) >= sat);
            auto back2 =
                extract_assignment(inst2, layout2, seeding_from_assignment(layout2, a));
            CHECK(count_satisfied(f, back2.assignment) >= sat);
        }
    }
}

TEST_CASE("reduction bounds: random seedings extract at least value minus n") {
    std::mt19937_64 rng(123321);
    for (const auto& f : {small_corpus()[0], small_corpus()[3], small_corpus()[6]}) {
        auto [inst1, layout1] = construct1(f);
        auto [inst2, layout2] = construct2(f);
        for (int rep = 0; rep < 30; ++rep) {
            Seeding seeding{oracle::random_permutation(rng, layout1.total_players)};
            const Value total1 = evaluate(inst1, seeding).total;
            auto back1 = extract_assignment(inst1, layout1, seeding);
            CHECK(count_satisfied(f, back1.assignment) >= total1 - f.num_vars);
            const Value total2 = evaluate(inst2, seeding).total;
            auto back2 = extract_assignment(inst2, layout2, seeding);
            CHECK(count_satisfied(f, back2.assignment) >= total2 - f.num_vars);
        }
    }
}

TEST_CASE("extraction: a deliberately cheating seeding is repaired") {
    // phi = (x1 v x2) & (!x1 v x2). Hand-build a seeding where x1 plays a
    // dummy in round one while both of its truth players score: x1^T meets
    // clause 1 in round 1 (occurrence 1 of x1) and x1^F wins its round-one
    // game and meets clause 2 in round 2 (occurrence 2 of x1).
    auto f = example_formula();
    auto [inst, layout] = construct1(f);
    std::vector<Player> head{
        layout.var_player(1),  1, layout.var_true(1),  layout.clause_player(1),
        layout.var_false(1),   2, layout.clause_player(2), 3,
        layout.var_player(2),  layout.var_true(2),
    };
    std::set<Player> used(head.begin(), head.end());
    Seeding seeding{head};
    for (Player p = 1; p <= layout.total_players; ++p)
        if (!used.count(p)) seeding.order.push_back(p);

    const Value before = evaluate(inst, seeding).total;
    CHECK(before == 3);  // two cheating scores plus variable 2's pair
    auto result = extract_assignment(inst, layout, seeding);
    CHECK(result.repairs == 1);
    CHECK(result.assignment == std::vector<bool>{false, false, false});
    CHECK(count_satisfied(f, result.assignment) >= before - f.num_vars);
}

TEST_CASE("constructions: role partitions add up to a power of two") {
    for (const auto& f : small_corpus()) {
        const int n = f.num_vars;
        const int m = static_cast<int>(f.clauses.size());
        for (int which : {1, 2}) {
            auto [inst, layout] = which == 1 ? construct1(f) : construct2(f);
            CHECK(layout.total_players == (Player{1} << layout.nprime));
            CHECK(layout.padding == layout.total_players - 16 * n);
            CHECK(layout.num_dummies == (which == 1 ? 13 : 10) * n + layout.padding - m);
            std::map<Role, int> counts;
            for (Player p = 1; p <= layout.total_players; ++p) counts[layout.role_of(p)] += 1;
            CHECK(counts[Role::Variable] == n);
            CHECK(counts[Role::VarTrue] == n);
            CHECK(counts[Role::VarFalse] == n);
            CHECK(counts[Role::Clause] == m);
            CHECK(counts[Role::Dummy] == layout.num_dummies);
            CHECK(counts[Role::SpecialHat] == (which == 1 ? 0 : n));
            CHECK(counts[Role::SpecialMid] == (which == 1 ? 0 : n));
            CHECK(counts[Role::SpecialTilde] == (which == 1 ? 0 : n));
            // Accessors and role_of agree.
            for (int i = 1; i <= n; ++i) {
                CHECK(layout.role_of(layout.var_player(i)) == Role::Variable);
                CHECK(layout.index_of(layout.var_player(i)) == i);
                CHECK(layout.role_of(layout.var_true(i)) == Role::VarTrue);
                CHECK(layout.role_of(layout.var_false(i)) == Role::VarFalse);
            }
            for (int j = 1; j <= m; ++j) {
                CHECK(layout.role_of(layout.clause_player(j)) == Role::Clause);
                CHECK(layout.index_of(layout.clause_player(j)) == j);
            }
        }
    }
}

TEST_CASE("max-sat lower bound holds on the corpus") {
    for (const auto& f : small_corpus()) CHECK(max_sat(f) * 2 >= f.num_vars);
}

TEST_CASE("construction 2: shifted and plain evaluations differ by 6(N-1)") {
    std::mt19937_64 rng(777);
    auto f = small_corpus()[6];
    auto [plain, layout] = construct2(f, false);
    auto [shifted, shifted_layout] = construct2(f, true);
    for (int rep = 0; rep < 20; ++rep) {
        Seeding seeding{oracle::random_permutation(rng, layout.total_players)};
        const Value d = evaluate(shifted, seeding).total - evaluate(plain, seeding).total;
        CHECK(d == Value{6} * (layout.total_players - 1));
    }
}
