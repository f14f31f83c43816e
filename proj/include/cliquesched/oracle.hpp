#pragma once

// Exhaustive reference solver. Walks clique-feasible assignments clique by
// clique (largest clique first) and prunes on partial cost.

#include <cstdint>

#include "cliquesched/core.hpp"

namespace cliquesched {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Optimal schedule by exhaustive search; throws Infeasible or BudgetExceeded.
inline Schedule oracle_optimum(const Instance& inst, std::uint64_t budget = kDefaultBudget) {
    const int m = inst.machine_count;
    auto members = inst.clique_members();
    for (const auto& c : members)
        if (c.size() > static_cast<std::size_t>(m)) throw Infeasible("a clique has more jobs than there are machines");

    std::vector<int> order(members.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return members[static_cast<std::size_t>(a)].size() > members[static_cast<std::size_t>(b)].size();
    });
    std::vector<std::size_t> seq;
    for (int k : order)
        for (std::size_t j : members[static_cast<std::size_t>(k)]) seq.push_back(j);

    std::vector<MachineId> assign(inst.jobs.size(), -1);
    std::vector<std::vector<std::size_t>> on(static_cast<std::size_t>(m));
    std::vector<Cost> cost(static_cast<std::size_t>(m), 0);
    std::vector<char> used(static_cast<std::size_t>(m), 0); // machines taken by the current clique
    Cost partial = 0;
    Cost best = std::numeric_limits<Cost>::max();
    std::vector<MachineId> best_assign;
    std::uint64_t states = 0;

    auto dfs = [&](auto&& self, std::size_t pos) -> void {
        if (++states > budget) throw BudgetExceeded("oracle exceeded its budget of " + std::to_string(budget) + " states");
        if (pos == seq.size()) {
            if (partial < best) {
                best = partial;
                best_assign = assign;
            }
            return;
        }
        const std::size_t j = seq[pos];
        const bool new_clique = pos == 0 || inst.jobs[seq[pos - 1]].clique != inst.jobs[j].clique;
        std::vector<char> saved;
        if (new_clique) {
            saved = used;
            std::fill(used.begin(), used.end(), 0);
        }
        for (MachineId i = 0; i < m; ++i) {
            auto ui = static_cast<std::size_t>(i);
            if (used[ui] || !inst.allowed(j, i)) continue;
            on[ui].push_back(j);
            const Cost before = cost[ui];
            cost[ui] = machine_cost(inst, on[ui], i);
            partial += cost[ui] - before;
            if (partial < best) {
                used[ui] = 1;
                assign[j] = i;
                self(self, pos + 1);
                assign[j] = -1;
                used[ui] = 0;
            }
            partial -= cost[ui] - before;
            cost[ui] = before;
            on[ui].pop_back();
        }
        if (new_clique) used = saved;
    };
    dfs(dfs, 0);
    if (best_assign.empty() && !inst.jobs.empty()) throw Infeasible("no clique-feasible assignment exists");
    if (inst.jobs.empty()) return Schedule{};
    return make_schedule(inst, std::move(best_assign));
}

} // namespace cliquesched
