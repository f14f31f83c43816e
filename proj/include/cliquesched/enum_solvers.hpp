#pragma once

// Parameter-bounded exhaustive solvers: machine configurations for a constant
// number of cliques on identical machines with clique eligibility, and a
// division DP for few machines and few distinct processing times.

#include <atomic>
#include <map>
#include <set>

#include "cliquesched/core.hpp"
#include "cliquesched/netopt.hpp"
#include "cliquesched/oracle.hpp"

namespace cliquesched {

/// Ordered subset of cliques; entry 0 is the clique whose job runs last.
using MachineConfiguration = std::vector<int>;

/// All ordered subsets of {0..b-1}, by length and then lexicographically.
inline std::vector<MachineConfiguration> enumerate_machine_configurations(int b) {
    std::vector<MachineConfiguration> out;
    MachineConfiguration cur;
    std::vector<char> used(static_cast<std::size_t>(std::max(b, 0)), 0);
    for (int len = 0; len <= b; ++len) {
        auto rec = [&](auto&& self) -> void {
            if (static_cast<int>(cur.size()) == len) {
                out.push_back(cur);
                return;
            }
            for (int k = 0; k < b; ++k) {
                if (used[static_cast<std::size_t>(k)]) continue;
                used[static_cast<std::size_t>(k)] = 1;
                cur.push_back(k);
                self(self);
                cur.pop_back();
                used[static_cast<std::size_t>(k)] = 0;
            }
        };
        rec(rec);
    }
    return out;
}

/// C(n, k) saturating at `cap`.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(r);
}

struct FixedBagsStats {
    std::uint64_t multisets_visited = 0; // count vectors reaching full length m
    std::uint64_t multiset_bound = 0;    // C(m+f-1, f-1)
};

/// P|cliques, M(k)|ΣC_j with few cliques: try every multiset of m machine
/// configurations whose slots match the clique sizes.
inline Schedule solve_fixed_bags(const Instance& inst, std::uint64_t budget = kDefaultBudget,
                                 FixedBagsStats* stats = nullptr) {
    if (!inst.identical) throw PreconditionFailed("fixed-bags: machines are not identical");
    if (!inst.unit_weights()) throw PreconditionFailed("fixed-bags: weights must all be 1");
    if (inst.has_job_eligibility()) throw PreconditionFailed("fixed-bags: per-job eligibility is not supported");
    const int m = inst.machine_count;
    const int b = inst.clique_count;
    const auto configs = enumerate_machine_configurations(b);
    const auto f = static_cast<std::uint64_t>(configs.size());
    const std::uint64_t bound = binomial_capped(static_cast<std::uint64_t>(m) + f - 1, f - 1, budget);
    if (bound > budget)
        throw BudgetExceeded("fixed-bags: " + std::to_string(f) + " configurations on " + std::to_string(m) +
                             " machines exceed the search budget");
    FixedBagsStats local;
    local.multiset_bound = bound;

    auto members = inst.clique_members();
    for (auto& c : members)
        std::stable_sort(c.begin(), c.end(), [&](std::size_t a, std::size_t bb) { return inst.time(a, 0) < inst.time(bb, 0); });
    std::vector<int> need(static_cast<std::size_t>(b));
    for (int k = 0; k < b; ++k) need[static_cast<std::size_t>(k)] = static_cast<int>(members[static_cast<std::size_t>(k)].size());

    // which configurations may run on which machine under M(k)
    std::vector<std::vector<char>> fits(configs.size(), std::vector<char>(static_cast<std::size_t>(m), 1));
    for (std::size_t c = 0; c < configs.size(); ++c)
        for (int k : configs[c]) {
            auto it = inst.clique_eligible.find(k);
            if (it == inst.clique_eligible.end()) continue;
            for (MachineId i = 0; i < m; ++i)
                if (!std::binary_search(it->second.begin(), it->second.end(), i)) fits[c][static_cast<std::size_t>(i)] = 0;
        }

    std::optional<Schedule> best;
    std::vector<int> count(configs.size(), 0);
    std::vector<int> slots(static_cast<std::size_t>(b), 0);

    auto evaluate_multiset = [&] {
        std::vector<std::size_t> copies; // configuration of each copy
        for (std::size_t c = 0; c < configs.size(); ++c)
            for (int r = 0; r < count[c]; ++r) copies.push_back(c);
        // M': machines to configuration copies
        std::vector<std::pair<int, int>> medges;
        for (MachineId i = 0; i < m; ++i)
            for (std::size_t q = 0; q < copies.size(); ++q)
                if (fits[copies[q]][static_cast<std::size_t>(i)]) medges.emplace_back(i, static_cast<int>(q));
        netopt::Matching mm = netopt::max_bipartite_matching(m, static_cast<int>(copies.size()), medges);
        if (mm.size < m) return;
        // M'': jobs to slots (copy q, position l), cost (l+1)·p
        std::vector<std::pair<std::size_t, int>> slot_of; // (copy, position)
        std::vector<netopt::WeightedEdge> jedges;
        std::vector<std::size_t> job_list;
        for (const auto& c : members) job_list.insert(job_list.end(), c.begin(), c.end());
        std::vector<int> job_row(inst.jobs.size(), -1);
        for (std::size_t r = 0; r < job_list.size(); ++r) job_row[job_list[r]] = static_cast<int>(r);
        for (std::size_t q = 0; q < copies.size(); ++q) {
            const auto& conf = configs[copies[q]];
            for (std::size_t l = 0; l < conf.size(); ++l) {
                const int slot = static_cast<int>(slot_of.size());
                slot_of.emplace_back(q, static_cast<int>(l));
                for (std::size_t j : members[static_cast<std::size_t>(conf[l])])
                    jedges.push_back({job_row[j], slot, static_cast<netopt::FlowCost>(l + 1) * inst.time(j, 0)});
            }
        }
        netopt::Assignment jm = netopt::min_cost_perfect_matching(static_cast<int>(job_list.size()),
                                                                  static_cast<int>(slot_of.size()), jedges);
        std::vector<MachineId> a(inst.jobs.size(), -1);
        for (std::size_t r = 0; r < job_list.size(); ++r) {
            auto copy = slot_of[static_cast<std::size_t>(jm.left_to_right[r])].first;
            a[job_list[r]] = mm.right_to_left[copy];
        }
        Schedule cand = make_schedule(inst, std::move(a));
        if (!best || cand.objective < best->objective) best = std::move(cand);
    };

    auto rec = [&](auto&& self, std::size_t c, int left) -> void {
        if (c == configs.size()) {
            if (left != 0) return;
            ++local.multisets_visited;
            if (slots == need) evaluate_multiset();
            return;
        }
        const auto& conf = configs[c];
        int most = left;
        for (int k : conf)
            most = std::min(most, need[static_cast<std::size_t>(k)] - slots[static_cast<std::size_t>(k)]);
        if (c + 1 == configs.size() && most < left) return; // the last configuration must absorb all machines
        for (int r = most; r >= 0; --r) {
            count[c] = r;
            for (int k : conf) slots[static_cast<std::size_t>(k)] += r;
            self(self, c + 1, left - r);
            for (int k : conf) slots[static_cast<std::size_t>(k)] -= r;
        }
        count[c] = 0;
    };
    rec(rec, 0, m);
    if (local.multisets_visited > bound) throw std::logic_error("fixed-bags visited more multisets than exist");
    if (stats) *stats = local;
    if (!best) throw Infeasible("fixed-bags: no feasible machine configuration");
    return *best;
}

/// Per-machine counts of jobs for each distinct processing value, flattened row-major.
using Division = std::vector<int>;

/// The distinct finite values of an instance in increasing order.
inline std::vector<std::int64_t> distinct_times(const Instance& inst) {
    std::set<std::int64_t> values;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j)
        for (MachineId i = 0; i < inst.machine_count; ++i)
            if (inst.allowed(j, i)) values.insert(inst.time(j, i));
    return {values.begin(), values.end()};
}

/// Cost of a division: per machine, sorted times weighted by their position from the end.
inline Cost division_cost(const Division& d, const std::vector<std::int64_t>& values, int machines) {
    const auto k = values.size();
    Cost total = 0;
    for (int i = 0; i < machines; ++i) {
        std::int64_t remaining = 0;
        for (std::size_t v = 0; v < k; ++v) remaining += d[static_cast<std::size_t>(i) * k + v];
        for (std::size_t v = 0; v < k; ++v) {
            for (int c = 0; c < d[static_cast<std::size_t>(i) * k + v]; ++c) total += remaining-- * values[v];
        }
    }
    return total;
}

/// R|cliques|ΣC_j for few machines and few distinct times via divisions.
inline Schedule solve_dp_unrelated(const Instance& inst, std::uint64_t budget = kDefaultBudget) {
    if (!inst.unit_weights()) throw PreconditionFailed("dp: weights must all be 1");
    const int m = inst.machine_count;
    const auto values = distinct_times(inst);
    const std::size_t k = values.size();
    auto value_index = [&](std::int64_t p) {
        return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), p) - values.begin());
    };
    auto members = inst.clique_members();
    for (const auto& c : members)
        if (c.size() > static_cast<std::size_t>(m)) throw Infeasible("dp: a clique has more jobs than there are machines");

    std::map<Division, std::vector<MachineId>> layer;
    layer.emplace(Division(static_cast<std::size_t>(m) * k, 0), std::vector<MachineId>(inst.jobs.size(), -1));
    std::uint64_t states = 0;
    for (const auto& clique : members) {
        if (clique.empty()) continue;
        std::map<Division, std::vector<MachineId>> next;
        for (const auto& [div, witness] : layer) {
            Division d = div;
            std::vector<MachineId> w = witness;
            std::vector<char> used(static_cast<std::size_t>(m), 0);
            auto extend = [&](auto&& self, std::size_t pos) -> void {
                if (pos == clique.size()) {
                    if (++states > budget) throw BudgetExceeded("dp: exceeded its budget of " + std::to_string(budget) + " states");
                    [[maybe_unused]] auto [it, inserted] = next.try_emplace(d, w);
#ifdef CLIQUESCHED_SELF_CHECK
                    if (!inserted) {
                        auto partial = [&](const std::vector<MachineId>& a) {
                            auto per = std::vector<std::vector<std::size_t>>(static_cast<std::size_t>(m));
                            for (std::size_t j = 0; j < a.size(); ++j)
                                if (a[j] >= 0) per[static_cast<std::size_t>(a[j])].push_back(j);
                            Cost c = 0;
                            for (MachineId i = 0; i < m; ++i) c += machine_cost(inst, per[static_cast<std::size_t>(i)], i);
                            return c;
                        };
                        if (partial(it->second) != partial(w)) throw std::logic_error("dp: equal divisions with different cost");
                    }
#endif
                    return;
                }
                const std::size_t j = clique[pos];
                for (MachineId i = 0; i < m; ++i) {
                    if (used[static_cast<std::size_t>(i)] || !inst.allowed(j, i)) continue;
                    const std::size_t cell = static_cast<std::size_t>(i) * k + value_index(inst.time(j, i));
                    used[static_cast<std::size_t>(i)] = 1;
                    ++d[cell];
                    w[j] = i;
                    self(self, pos + 1);
                    w[j] = -1;
                    --d[cell];
                    used[static_cast<std::size_t>(i)] = 0;
                }
            };
            extend(extend, 0);
        }
        if (next.empty()) throw Infeasible("dp: a clique cannot be placed injectively on finite machines");
        layer = std::move(next);
    }
    const std::vector<MachineId>* winner = nullptr;
    Cost best = 0;
    for (const auto& [div, witness] : layer) {
        Cost c = division_cost(div, values, m);
        if (!winner || c < best) {
            best = c;
            winner = &witness;
        }
    }
    if (inst.jobs.empty()) return Schedule{};
    Schedule s = make_schedule(inst, *winner);
#ifdef CLIQUESCHED_SELF_CHECK
    if (s.objective != best) throw std::logic_error("dp: division cost differs from the schedule objective");
#endif
    return s;
}

} // namespace cliquesched
