#pragma once

// Algorithm selection: which solver applies to which instance kind, and the
// "auto" policy that picks the most specific applicable one.

#include <optional>

#include "bracketopt/solver_matching.hpp"
#include "bracketopt/solvers_greedy.hpp"

namespace bracketopt {

inline std::optional<Algorithm> algorithm_from_string(const std::string& s) {
    for (Algorithm a :
         {Algorithm::BruteForce, Algorithm::DpWinCount, Algorithm::GreedyTwoValues,
          Algorithm::GreedyAgreeOrder, Algorithm::FptDisagreement, Algorithm::ApproxMatching})
        if (s == to_string(a)) return a;
    return std::nullopt;
}

inline bool algorithm_applies(const Instance& instance, Algorithm algorithm, Player brute_cap) {
    const ValueKind kind = instance.values.kind();
    switch (algorithm) {
        case Algorithm::BruteForce: return instance.n <= brute_cap;
        case Algorithm::DpWinCount: return detect_win_count(instance).has_value();
        case Algorithm::GreedyTwoValues:
            return kind == ValueKind::Popularity &&
                   PopularityInstance::from_instance(instance).distinct_values().size() <= 2;
        case Algorithm::GreedyAgreeOrder:
            return kind == ValueKind::Popularity &&
                   PopularityInstance::from_instance(instance).monotone();
        case Algorithm::FptDisagreement: return kind == ValueKind::Popularity;
        case Algorithm::ApproxMatching:
            return kind == ValueKind::RoundOblivious || kind == ValueKind::Popularity;
    }
    return false;
}

/// Most specific applicable solver: the popularity greedies before the FPT
/// algorithm, exact algorithms before the approximation.
inline Algorithm auto_algorithm(const Instance& instance, Player brute_cap) {
    for (Algorithm a :
         {Algorithm::GreedyAgreeOrder, Algorithm::GreedyTwoValues, Algorithm::FptDisagreement,
          Algorithm::DpWinCount, Algorithm::BruteForce, Algorithm::ApproxMatching})
        if (algorithm_applies(instance, a, brute_cap)) return a;
    throw KindError("no applicable algorithm for this instance (general kind above the "
                    "brute-force cap)");
}

inline SolveResult run_algorithm(const Instance& instance, Algorithm algorithm,
                                 Player brute_cap) {
    BruteForceOptions brute_options;
    brute_options.max_n = brute_cap;
    switch (algorithm) {
        case Algorithm::BruteForce: return brute_force(instance, brute_options);
        case Algorithm::DpWinCount: return dp_wincount(instance);
        case Algorithm::GreedyTwoValues:
            return greedy_two_values(PopularityInstance::from_instance(instance));
        case Algorithm::GreedyAgreeOrder:
            return greedy_agree_order(PopularityInstance::from_instance(instance));
        case Algorithm::FptDisagreement:
            return fpt_disagreement(PopularityInstance::from_instance(instance));
        case Algorithm::ApproxMatching: return approx_matching(instance);
    }
    throw InternalError("unknown algorithm");
}

}  // namespace bracketopt
