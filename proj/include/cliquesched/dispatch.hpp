#pragma once

// Algorithm selection by instance class.

#include <string_view>

#include "cliquesched/enum_solvers.hpp"
#include "cliquesched/flow_solvers.hpp"
#include "cliquesched/ident.hpp"
#include "cliquesched/ipmodels.hpp"

namespace cliquesched {

enum class Algorithm { Auto, Identical, UnitFlow, TwoTwo, Copies, FixedBags, Dp, Ip };

inline constexpr std::pair<Algorithm, std::string_view> kAlgorithmNames[] = {
    {Algorithm::Auto, "auto"},   {Algorithm::Identical, "identical"}, {Algorithm::UnitFlow, "unit-flow"},
    {Algorithm::TwoTwo, "two-two"}, {Algorithm::Copies, "copies"},   {Algorithm::FixedBags, "fixed-bags"},
    {Algorithm::Dp, "dp"},       {Algorithm::Ip, "ip"},
};

inline std::string_view to_string(Algorithm a) {
    for (auto [alg, name] : kAlgorithmNames)
        if (alg == a) return name;
    return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (auto [alg, n] : kAlgorithmNames)
        if (n == name) return alg;
    return std::nullopt;
}

/// Size limits under which the enumeration solvers are chosen automatically.
struct DispatchLimits {
    int fixed_bags_max_cliques = 4;
    int dp_max_machines = 4;
    int dp_max_values = 3;
};

/// Whether `a` is an exact method for the instance (Auto always is).
inline bool applicable(Algorithm a, const Instance& inst, const DispatchLimits& lim = {}) {
    if (a == Algorithm::Auto || a == Algorithm::Ip) return true;
    if (!inst.unit_weights()) return false;
    switch (a) {
    case Algorithm::Identical:
        return inst.identical && !inst.has_restrictions();
    case Algorithm::UnitFlow:
        for (std::size_t j = 0; j < inst.jobs.size(); ++j)
            for (MachineId i = 0; i < inst.machine_count; ++i)
                if (inst.allowed(j, i) && inst.time(j, i) != 1) return false;
        return true;
    case Algorithm::TwoTwo:
        if (inst.clique_count != 2 || !two_time_values(inst)) return false;
        for (std::size_t j = 0; j < inst.jobs.size(); ++j)
            for (MachineId i = 0; i < inst.machine_count; ++i)
                if (!inst.allowed(j, i)) return false;
        return true;
    case Algorithm::Copies:
        return clique_uniform_times(inst);
    case Algorithm::FixedBags:
        return inst.identical && !inst.has_job_eligibility() && inst.clique_count <= lim.fixed_bags_max_cliques;
    case Algorithm::Dp:
        return inst.machine_count <= lim.dp_max_machines && static_cast<int>(distinct_times(inst).size()) <= lim.dp_max_values;
    default:
        return false;
    }
}

/// First applicable algorithm in order of increasing generality.
/// Fixed-bags is skipped when its multiset count alone would exceed the budget.
inline Algorithm choose_algorithm(const Instance& inst, std::uint64_t budget = kDefaultBudget, const DispatchLimits& lim = {}) {
    for (Algorithm a : {Algorithm::Identical, Algorithm::UnitFlow, Algorithm::TwoTwo, Algorithm::Copies, Algorithm::FixedBags,
                        Algorithm::Dp}) {
        if (!applicable(a, inst, lim)) continue;
        if (a == Algorithm::FixedBags) {
            const auto f = static_cast<std::uint64_t>(enumerate_machine_configurations(inst.clique_count).size());
            if (binomial_capped(static_cast<std::uint64_t>(inst.machine_count) + f - 1, f - 1, budget) > budget) continue;
        }
        return a;
    }
    return Algorithm::Ip;
}

struct SolveOutcome {
    Algorithm algorithm = Algorithm::Auto;
    Schedule schedule;
};

/// Runs `a` (or the automatic choice). Throws NoApplicableAlgorithm when an
/// explicit choice does not fit the instance; solver errors propagate.
inline SolveOutcome solve(const Instance& inst, Algorithm a = Algorithm::Auto, std::uint64_t budget = kDefaultBudget,
                          const DispatchLimits& lim = {}) {
    if (a == Algorithm::Auto) a = choose_algorithm(inst, budget, lim);
    // explicit fixed-bags and dp ignore the automatic size limits
    const DispatchLimits open{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
    if (!applicable(a, inst, open)) throw NoApplicableAlgorithm(std::string(to_string(a)) + " does not apply to this instance");
    switch (a) {
    case Algorithm::Identical:
        try {
            return {a, solve_identical(inst)};
        } catch (const CliqueTooLarge& e) {
            throw Infeasible(e.what());
        }
    case Algorithm::UnitFlow: return {a, solve_unit_unrelated(inst)};
    case Algorithm::TwoTwo: return {a, solve_two_cliques_two_times(inst)};
    case Algorithm::Copies: return {a, solve_clique_copies(inst)};
    case Algorithm::FixedBags: return {a, solve_fixed_bags(inst, budget)};
    case Algorithm::Dp: return {a, solve_dp_unrelated(inst, budget)};
    default: return {Algorithm::Ip, ip::solve_with_ip(inst, budget)};
    }
}

} // namespace cliquesched
