#include <catch2/catch_amalgamated.hpp>

#include "bracketopt/bench.hpp"
#include "bracketopt/json_io.hpp"
#include "oracle_helpers.hpp"

using namespace bracketopt;

TEST_CASE("json: instance round trip over all kinds") {
    Rng rng(14);
    RandomInstanceSpec spec;
    spec.n = 8;
    for (int rep = 0; rep < 10; ++rep) {
        for (auto make :
             {random_general_instance, random_round_oblivious_instance,
              random_win_count_instance, random_popularity_instance}) {
            Instance inst = make(rng, spec);
            if (rep % 2 == 0) inst.target = rng.value_in(-100, 100);
            auto round_tripped = instance_from_json(instance_to_json(inst));
            CHECK(round_tripped == inst);
            // Canonical form: same value, same bytes.
            CHECK(dump_canonical(instance_to_json(round_tripped)) ==
                  dump_canonical(instance_to_json(inst)));
        }
    }
}

TEST_CASE("json: malformed instances are rejected") {
    CHECK_THROWS_AS(instance_from_json(json::parse(R"({"n": 4})")), ValidationError);
    CHECK_THROWS_AS(instance_from_json(json::parse(R"({"n": 3, "kind": "popularity"})")),
                    ValidationError);
    CHECK_THROWS_AS(
        instance_from_json(json::parse(R"({"n": 4, "kind": "nope", "entries": []})")),
        ValidationError);
    CHECK_THROWS_AS(instance_from_json(json::parse(
                        R"({"n": 4, "kind": "popularity",
                            "entries": [{"i": 5, "v": 1}]})")),
                    ValidationError);
    CHECK_THROWS_AS(instance_from_json(json::parse(
                        R"({"n": 4, "kind": "popularity",
                            "entries": [{"i": 2, "v": 1}, {"i": 2, "v": 3}]})")),
                    ValidationError);
}

TEST_CASE("json: seeding and solve-result shapes") {
    Seeding seeding{{4, 1, 3, 2}};
    CHECK(seeding_from_json(seeding_to_json(seeding)) == seeding);
    CHECK_THROWS_AS(seeding_from_json(json::parse(R"({"orderx": []})")), ValidationError);
    SolveResult result{Algorithm::DpWinCount, 11, seeding};
    auto j = solve_result_to_json(result);
    CHECK(j.at("algorithm") == "dp");
    CHECK(j.at("value") == 11);
    CHECK(j.at("order") == std::vector<Player>{4, 1, 3, 2});
}

TEST_CASE("json: execution tree round trip") {
    Instance inst;
    inst.n = 16;
    inst.values = GameValueFunction(ValueKind::Popularity);
    Seeding seeding{{16, 15, 4, 2, 13, 9, 11, 5, 7, 6, 10, 8, 12, 14, 3, 1}};
    auto ba = execution_tree_from_seeding(inst, seeding);
    CHECK(execution_tree_from_json(execution_tree_to_json(ba)) == ba);
}

TEST_CASE("json: reduction layout round trip preserves behaviour") {
    Formula23 f;
    f.num_vars = 3;
    f.clauses = {Clause23{Literal{1, false}, Literal{2, false}},
                 Clause23{Literal{2, true}, Literal{3, false}},
                 Clause23{Literal{3, true}, Literal{1, true}}};
    for (int which : {1, 2}) {
        auto [inst, layout] = which == 1 ? construct1(f) : construct2(f, which == 2);
        auto restored = layout_from_json(layout_to_json(layout));
        std::vector<bool> a{false, true, false, true};
        CHECK(seeding_from_assignment(restored, a) == seeding_from_assignment(layout, a));
        CHECK(restored.value_shift == layout.value_shift);
        CHECK(restored.total_players == layout.total_players);
    }
}

TEST_CASE("bench: deterministic modulo wall time, ratio iff optimum") {
    BenchSpec spec;
    spec.family = BenchFamily::Popularity;
    spec.count = 6;
    spec.instance.n = 8;
    spec.instance.vmin = 0;
    spec.instance.vmax = 9;
    spec.instance.distinct_values = 2;
    spec.algorithms = {Algorithm::GreedyTwoValues, Algorithm::BruteForce};
    spec.seed = 99;
    auto rows1 = run_bench(spec);
    auto rows2 = run_bench(spec);
    REQUIRE(rows1.size() == rows2.size());
    for (std::size_t i = 0; i < rows1.size(); ++i) {
        CHECK(rows1[i].instance_id == rows2[i].instance_id);
        CHECK(rows1[i].value == rows2[i].value);
        CHECK(rows1[i].optimum == rows2[i].optimum);
        CHECK(rows1[i].ratio == rows2[i].ratio);
        CHECK(rows1[i].ratio.has_value() == rows1[i].optimum.has_value());
        if (rows1[i].optimum) CHECK(rows1[i].value <= *rows1[i].optimum);
    }
    // greedy2 is exact: every ratio reduces to 1/1.
    for (const auto& row : rows1)
        CHECK(row.ratio == std::pair<Value, Value>{1, 1});
    auto csv = bench_to_csv(rows1);
    CHECK(csv.starts_with(
        "instance_id,n,kind,algorithm,value,optimum,ratio_num,ratio_den,wall_ms\n"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
}

TEST_CASE("bench: tight family ratios satisfy the approximation bound") {
    BenchSpec spec;
    spec.family = BenchFamily::Tight;
    spec.count = 5;
    spec.instance.n = 8;
    spec.algorithms = {Algorithm::ApproxMatching};
    auto rows = run_bench(spec);
    for (const auto& row : rows) {
        REQUIRE(row.ratio.has_value());
        CHECK(row.ratio->first * 3 >= row.ratio->second);
    }
}

TEST_CASE("bench: fpt is exact on the planted-disagreement family") {
    BenchSpec spec;
    spec.family = BenchFamily::Popularity;
    spec.count = 8;
    spec.instance.n = 8;
    spec.instance.vmin = 0;
    spec.instance.vmax = 9;
    spec.instance.planted_disagreement = 2;
    spec.algorithms = {Algorithm::FptDisagreement, Algorithm::BruteForce};
    for (const auto& row : run_bench(spec))
        CHECK(row.ratio == std::pair<Value, Value>{1, 1});
}

TEST_CASE("bench: inapplicable algorithm is a kind error") {
    BenchSpec spec;
    spec.family = BenchFamily::General;
    spec.count = 1;
    spec.instance.n = 4;
    spec.algorithms = {Algorithm::GreedyTwoValues};
    CHECK_THROWS_AS(run_bench(spec), KindError);
}
