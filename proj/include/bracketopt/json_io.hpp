#pragma once

// JSON wire formats. Instances are {"n", "kind", "target", "entries"} with
// kind-specific entry shapes and omitted keys defaulting to 0; seedings are
// {"order": [...]}. Serialization is canonical: object keys and entry lists
// come out sorted, so equal values produce identical bytes.

#include <json.hpp>

#include "bracketopt/core.hpp"
#include "bracketopt/reductions_sat.hpp"
#include "bracketopt/solvers_exact.hpp"

namespace bracketopt {

using json = nlohmann::ordered_json;

inline json instance_to_json(const Instance& instance) {
    instance.validate();
    json out;
    out["n"] = instance.n;
    out["kind"] = to_string(instance.values.kind());
    out["target"] = instance.target ? json(*instance.target) : json(nullptr);
    json entries = json::array();
    for (const auto& [key, v] : instance.values.entries()) {
        json e;
        switch (instance.values.kind()) {
            case ValueKind::General:
                e = {{"i", key[0]}, {"j", key[1]}, {"r", key[2]}, {"v", v}};
                break;
            case ValueKind::RoundOblivious:
                e = {{"i", key[0]}, {"j", key[1]}, {"v", v}};
                break;
            case ValueKind::WinCount:
                e = {{"i", key[0]}, {"r", key[2]}, {"v", v}};
                break;
            case ValueKind::Popularity:
                e = {{"i", key[0]}, {"v", v}};
                break;
        }
        entries.push_back(std::move(e));
    }
    out["entries"] = std::move(entries);
    return out;
}

inline Instance instance_from_json(const json& in) {
    if (!in.is_object()) throw ValidationError("instance JSON must be an object");
    Instance instance;
    try {
        instance.n = in.at("n").get<Player>();
        const auto kind = value_kind_from_string(in.at("kind").get<std::string>());
        if (!kind) throw ValidationError("unknown instance kind");
        instance.values = GameValueFunction(*kind);
        if (in.contains("target") && !in.at("target").is_null())
            instance.target = in.at("target").get<Value>();
        for (const auto& e : in.value("entries", json::array())) {
            const Value v = e.at("v").get<Value>();
            GameValueFunction::Key key{};
            switch (*kind) {
                case ValueKind::General:
                    key = {e.at("i").get<Player>(), e.at("j").get<Player>(),
                           e.at("r").get<int>()};
                    break;
                case ValueKind::RoundOblivious:
                    key = {e.at("i").get<Player>(), e.at("j").get<Player>(), 0};
                    break;
                case ValueKind::WinCount:
                    key = {e.at("i").get<Player>(), 0, e.at("r").get<int>()};
                    break;
                case ValueKind::Popularity:
                    key = {e.at("i").get<Player>(), 0, 0};
                    break;
            }
            if (instance.values.get(key) != 0)
                throw ValidationError("duplicate value-table entry in instance JSON");
            instance.values.set(key, v);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed instance JSON: ") + e.what());
    }
    instance.validate();
    return instance;
}

inline json seeding_to_json(const Seeding& seeding) { return json{{"order", seeding.order}}; }

inline Seeding seeding_from_json(const json& in) {
    try {
        return Seeding{in.at("order").get<std::vector<Player>>()};
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed seeding JSON: ") + e.what());
    }
}

inline json solve_result_to_json(const SolveResult& result) {
    return json{{"algorithm", to_string(result.algorithm)},
                {"value", result.value},
                {"order", result.seeding.order}};
}

inline json execution_tree_to_json(const BinomialArborescence& ba) {
    json children = json::object();
    for (const auto& [player, kids] : ba.children)
        if (!kids.empty()) children[std::to_string(player)] = kids;
    return json{{"root", ba.root}, {"children", std::move(children)}};
}

inline BinomialArborescence execution_tree_from_json(const json& in) {
    BinomialArborescence ba;
    try {
        ba.root = in.at("root").get<Player>();
        for (const auto& [key, kids] : in.at("children").items())
            ba.children[static_cast<Player>(std::stoi(key))] =
                kids.get<std::vector<Player>>();
    } catch (const std::exception& e) {
        throw ValidationError(std::string("malformed tree JSON: ") + e.what());
    }
    return ba;
}

inline json layout_to_json(const ReductionLayout& layout) {
    json roles = json::object();
    for (Player p = 1; p <= layout.total_players; ++p) {
        json role{{"kind", to_string(layout.role_of(p))}};
        switch (layout.role_of(p)) {
            case Role::Variable:
            case Role::VarTrue:
            case Role::VarFalse:
            case Role::SpecialHat:
            case Role::SpecialMid:
            case Role::SpecialTilde:
                role["var"] = layout.index_of(p);
                break;
            case Role::Clause:
                role["clause"] = layout.index_of(p);
                break;
            case Role::Dummy:
                role["index"] = layout.index_of(p);
                break;
        }
        roles[std::to_string(p)] = std::move(role);
    }
    json clauses = json::array();
    for (const auto& clause : layout.clause_literals) {
        json lits = json::array();
        for (const auto& [literal, occurrence] : clause)
            lits.push_back(json{{"var", literal.var},
                                {"negated", literal.negated},
                                {"occurrence", occurrence}});
        clauses.push_back(std::move(lits));
    }
    return json{{"construction", layout.construction},
                {"nprime", layout.nprime},
                {"p", layout.padding},
                {"num_vars", layout.num_vars},
                {"num_clauses", layout.num_clauses},
                {"value_shift", layout.value_shift},
                {"roles", std::move(roles)},
                {"clauses", std::move(clauses)}};
}

inline ReductionLayout layout_from_json(const json& in) {
    ReductionLayout layout;
    try {
        layout.construction = in.at("construction").get<int>();
        layout.nprime = in.at("nprime").get<int>();
        layout.total_players = Player{1} << layout.nprime;
        layout.padding = in.at("p").get<int>();
        layout.num_vars = in.at("num_vars").get<int>();
        layout.num_clauses = in.at("num_clauses").get<int>();
        layout.value_shift = in.at("value_shift").get<Value>();
        layout.num_dummies = (layout.construction == 1 ? 13 : 10) * layout.num_vars +
                             layout.padding - layout.num_clauses;
        for (const auto& clause : in.at("clauses")) {
            std::array<ReductionLayout::OccurrenceLiteral, 2> lits;
            int t = 0;
            for (const auto& lit : clause) {
                if (t >= 2) throw ValidationError("clause with more than two literals");
                lits[t++] = {Literal{lit.at("var").get<int>(), lit.at("negated").get<bool>()},
                             lit.at("occurrence").get<int>()};
            }
            layout.clause_literals.push_back(lits);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed layout JSON: ") + e.what());
    }
    return layout;
}

inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace bracketopt
