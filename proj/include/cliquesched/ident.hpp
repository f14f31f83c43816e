#pragma once

// P|cliques|ΣC_j: pad every clique to m jobs with zero-time dummies, deal the
// jobs round robin into layers, then repair machine by machine with a
// clique-to-layer matching. Swaps stay inside a layer, so the cost is that of
// the clique-free round robin.

#include "cliquesched/core.hpp"
#include "cliquesched/netopt.hpp"

namespace cliquesched {

struct PaddedInstance {
    Instance instance;
    std::vector<bool> dummy; // per job of `instance`
    std::size_t real_jobs = 0; // real jobs come first, in input order
};

/// Adds zero-time dummy jobs until every clique has exactly m jobs.
inline PaddedInstance pad_cliques(const Instance& inst) {
    if (!inst.identical) throw PreconditionFailed("padding needs identical machines");
    const auto m = static_cast<std::size_t>(inst.machine_count);
    auto members = inst.clique_members();
    PaddedInstance out{inst, std::vector<bool>(inst.jobs.size(), false), inst.jobs.size()};
    JobId next_id = 1;
    for (const Job& job : inst.jobs) next_id = std::max(next_id, job.id + 1);
    for (std::size_t k = 0; k < members.size(); ++k) {
        if (members[k].size() > m)
            throw CliqueTooLarge("clique " + std::to_string(k + 1) + " has " + std::to_string(members[k].size()) +
                                 " jobs but there are only " + std::to_string(m) + " machines");
        for (std::size_t extra = members[k].size(); extra < m; ++extra) {
            Job d;
            d.id = next_id++;
            d.times.assign(m, ProcTime(0));
            d.clique = static_cast<int>(k);
            out.instance.jobs.push_back(std::move(d));
            out.dummy.push_back(true);
        }
    }
    return out;
}

/// slots[i][l] holds a job index; layer 0 runs last on its machine.
struct LayeredSchedule {
    static constexpr std::size_t kEmpty = static_cast<std::size_t>(-1);
    std::vector<std::vector<std::size_t>> slots;

    int machines() const { return static_cast<int>(slots.size()); }
    std::size_t layers() const { return slots.empty() ? 0 : slots.front().size(); }
};

/// Largest job to (machine 0, layer 0), next to (1, 0), and so on.
inline LayeredSchedule round_robin(const PaddedInstance& padded) {
    const Instance& inst = padded.instance;
    const auto m = static_cast<std::size_t>(inst.machine_count);
    const std::size_t n = inst.jobs.size();
    if (n % m != 0) throw PreconditionFailed("round robin needs a padded instance");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return inst.time(a, 0) > inst.time(b, 0); });
    LayeredSchedule s;
    s.slots.assign(m, std::vector<std::size_t>(n / m, LayeredSchedule::kEmpty));
    for (std::size_t pos = 0; pos < n; ++pos) s.slots[pos % m][pos / m] = order[pos];
    return s;
}

/// Σ over slots of (layer + 1) · p; the cost of running each machine in layer order.
inline Cost layered_cost(const Instance& inst, const LayeredSchedule& s) {
    Cost total = 0;
    for (const auto& machine : s.slots)
        for (std::size_t l = 0; l < machine.size(); ++l)
            if (machine[l] != LayeredSchedule::kEmpty)
                total += static_cast<Cost>(l + 1) * inst.time(machine[l], 0);
    return total;
}

/// Makes machine `i` clique-distinct, swapping jobs only within layers among
/// machines i..m-1. Machines before `i` must already be clique-distinct.
inline LayeredSchedule incompatibility_solving(int i, LayeredSchedule s, const Instance& inst) {
    const int m = s.machines();
    const auto b = static_cast<int>(s.layers());
    const int cliques = inst.clique_count;
    // Edge (k, l) when some job of clique k sits in layer l on machines i..m-1.
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<char>> present(static_cast<std::size_t>(cliques), std::vector<char>(static_cast<std::size_t>(b), 0));
    for (int l = 0; l < b; ++l)
        for (int h = i; h < m; ++h) {
            std::size_t j = s.slots[static_cast<std::size_t>(h)][static_cast<std::size_t>(l)];
            if (j != LayeredSchedule::kEmpty) present[static_cast<std::size_t>(inst.jobs[j].clique)][static_cast<std::size_t>(l)] = 1;
        }
    for (int k = 0; k < cliques; ++k)
        for (int l = 0; l < b; ++l)
            if (present[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]) edges.emplace_back(k, l);
    netopt::Matching match = netopt::max_bipartite_matching(cliques, b, edges);
    if (match.size < b)
        throw MatchingFailed("no perfect clique-layer matching for machine " + std::to_string(i + 1));

    auto& row = s.slots[static_cast<std::size_t>(i)];
    for (int l = 0; l < b; ++l) {
        const int k = match.right_to_left[static_cast<std::size_t>(l)];
        for (int h = i; h < m; ++h) {
            auto& slot = s.slots[static_cast<std::size_t>(h)][static_cast<std::size_t>(l)];
            if (slot != LayeredSchedule::kEmpty && inst.jobs[slot].clique == k) {
                std::swap(row[static_cast<std::size_t>(l)], slot);
                break;
            }
        }
    }
    return s;
}

/// Optimal schedule for identical machines, unit weights, no eligibility limits.
inline Schedule solve_identical(const Instance& inst) {
    if (!inst.identical) throw PreconditionFailed("identical: machines are not identical");
    if (inst.has_restrictions()) throw PreconditionFailed("identical: eligibility restrictions are not supported");
    if (!inst.unit_weights()) throw PreconditionFailed("identical: weights must all be 1");
    if (inst.jobs.empty()) return Schedule{};
    PaddedInstance padded = pad_cliques(inst);
    LayeredSchedule s = round_robin(padded);
#ifdef CLIQUESCHED_SELF_CHECK
    const Cost target = layered_cost(padded.instance, s);
#endif
    for (int i = 0; i < inst.machine_count; ++i) s = incompatibility_solving(i, std::move(s), padded.instance);

    std::vector<MachineId> assignment(inst.jobs.size(), -1);
    for (int i = 0; i < s.machines(); ++i)
        for (std::size_t j : s.slots[static_cast<std::size_t>(i)])
            if (j != LayeredSchedule::kEmpty && j < padded.real_jobs) assignment[j] = i;
    Schedule out = make_schedule(inst, std::move(assignment));
#ifdef CLIQUESCHED_SELF_CHECK
    if (layered_cost(padded.instance, s) != target || out.objective != target)
        throw std::logic_error("layer repair changed the objective");
#endif
    return out;
}

} // namespace cliquesched
