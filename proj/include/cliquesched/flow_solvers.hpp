#pragma once

// Exact solvers built on min-cost flow: unit/∞ unrelated machines, two cliques
// with two processing times, and clique-uniform times with job restrictions.

#include <functional>
#include <set>

#include "cliquesched/core.hpp"
#include "cliquesched/netopt.hpp"

namespace cliquesched {

/// Node layout of the unit-time network, kept so flows can be decoded.
struct UnitNetwork {
    netopt::FlowNetwork network;
    int s_prime = 2;
    int source_arc = -1;                      // (s, s')
    std::vector<std::vector<int>> position_arc; // [i][l-1]: (s', (m_i, l))
    std::vector<std::vector<int>> job_arc;    // [j]: arcs ((m_i, V_k), v) for each machine, -1 if absent
};

/// Arc filter deciding whether ((m_i, V_k), v) exists; defaults to finite time.
using PlacementFilter = std::function<bool(std::size_t job, MachineId machine)>;

/// Builds the layered network with parameter c on arc (s, s').
/// Position arcs cost l; placement arcs cost p_v^i − 1 (0 for unit times).
inline UnitNetwork build_unit_network(const Instance& inst, std::int64_t c, const PlacementFilter& keep = {}) {
    const int m = inst.machine_count;
    const auto n = static_cast<int>(inst.jobs.size());
    const int b = inst.clique_count;
    const int pos_base = 3;
    const int mach_base = pos_base + m * n;
    const int mk_base = mach_base + m;
    const int job_base = mk_base + m * b;
    UnitNetwork u{netopt::FlowNetwork(job_base + n, 0, 1), 2, -1, {}, {}};
    auto& net = u.network;
    u.source_arc = net.add_arc(0, u.s_prime, c, 0);
    u.position_arc.assign(static_cast<std::size_t>(m), {});
    for (int i = 0; i < m; ++i)
        for (int l = 1; l <= n; ++l)
            u.position_arc[static_cast<std::size_t>(i)].push_back(net.add_arc(u.s_prime, pos_base + i * n + (l - 1), 1, l));
    for (int i = 0; i < m; ++i)
        for (int l = 1; l <= n; ++l) net.add_arc(pos_base + i * n + (l - 1), mach_base + i, 1, 0);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < b; ++k) net.add_arc(mach_base + i, mk_base + i * b + k, 1, 0);
    u.job_arc.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(m), -1));
    for (int i = 0; i < m; ++i)
        for (int v = 0; v < n; ++v) {
            auto vj = static_cast<std::size_t>(v);
            if (!inst.allowed(vj, i)) continue;
            if (keep && !keep(vj, i)) continue;
            const int k = inst.jobs[vj].clique;
            u.job_arc[vj][static_cast<std::size_t>(i)] =
                net.add_arc(mk_base + i * b + k, job_base + v, 1, inst.time(vj, i) - 1);
        }
    for (int v = 0; v < n; ++v) net.add_arc(job_base + v, 1, 1, 0);
    return u;
}

namespace detail {

inline std::vector<MachineId> decode_unit_flow(const UnitNetwork& u, const netopt::FlowResult& fr) {
    std::vector<MachineId> a(u.job_arc.size(), -1);
    for (std::size_t v = 0; v < u.job_arc.size(); ++v)
        for (std::size_t i = 0; i < u.job_arc[v].size(); ++i) {
            int arc = u.job_arc[v][i];
            if (arc >= 0 && fr.flow[static_cast<std::size_t>(arc)] > 0) a[v] = static_cast<MachineId>(i);
        }
    return a;
}

#ifdef CLIQUESCHED_SELF_CHECK
// Positions on a machine are filled from the end without gaps.
inline void check_position_prefix(const UnitNetwork& u, const netopt::FlowResult& fr) {
    for (const auto& arcs : u.position_arc) {
        bool gap = false;
        for (int arc : arcs) {
            bool used = fr.flow[static_cast<std::size_t>(arc)] > 0;
            if (used && gap) throw std::logic_error("position arcs used with a gap");
            if (!used) gap = true;
        }
    }
}
#endif

} // namespace detail

/// R|cliques, p ∈ {1,∞}|ΣC_j. Throws Infeasible when not every job can be placed.
inline Schedule solve_unit_unrelated(const Instance& inst) {
    if (!inst.unit_weights()) throw PreconditionFailed("unit-flow: weights must all be 1");
    for (std::size_t j = 0; j < inst.jobs.size(); ++j)
        for (MachineId i = 0; i < inst.machine_count; ++i)
            if (inst.allowed(j, i) && inst.time(j, i) != 1)
                throw PreconditionFailed("unit-flow: every finite time must be 1");
    const auto n = static_cast<std::int64_t>(inst.jobs.size());
    UnitNetwork u = build_unit_network(inst, n);
    netopt::FlowResult fr = netopt::min_cost_max_flow(u.network);
    if (fr.value < n)
        throw Infeasible("only " + std::to_string(fr.value) + " of " + std::to_string(n) + " jobs can be placed");
#ifdef CLIQUESCHED_SELF_CHECK
    detail::check_position_prefix(u, fr);
#endif
    Schedule s = make_schedule(inst, detail::decode_unit_flow(u, fr));
#ifdef CLIQUESCHED_SELF_CHECK
    if (s.objective != fr.cost) throw std::logic_error("unit-flow cost differs from the schedule objective");
#endif
    return s;
}

/// The two distinct finite values of an instance with at most two, as (p1, p2).
inline std::optional<std::pair<std::int64_t, std::int64_t>> two_time_values(const Instance& inst) {
    std::set<std::int64_t> values;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j)
        for (MachineId i = 0; i < inst.machine_count; ++i)
            if (inst.allowed(j, i)) values.insert(inst.time(j, i));
    if (values.size() > 2) return std::nullopt;
    if (values.empty()) return std::pair<std::int64_t, std::int64_t>{1, 1};
    return std::pair<std::int64_t, std::int64_t>{*values.begin(), *values.rbegin()};
}

namespace detail {

// Places every job not yet assigned around a fixed partial assignment of p1
// jobs. With two cliques a machine holds at most two jobs: a machine already
// holding one job of time q adds q + t for a job of time t ≥ q; an empty
// machine takes its first job at t and a second one through a slot charged p2.
inline std::optional<std::vector<MachineId>> complete_two_cliques(const Instance& inst, std::vector<MachineId> a,
                                                                   std::int64_t p2) {
    const int m = inst.machine_count;
    const int b = inst.clique_count;
    std::vector<std::size_t> rest;
    std::vector<int> held(static_cast<std::size_t>(m), -1); // clique already on the machine, -2 when full
    std::vector<std::int64_t> held_time(static_cast<std::size_t>(m), 0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] < 0) {
            rest.push_back(j);
            continue;
        }
        auto ui = static_cast<std::size_t>(a[j]);
        if (held[ui] == -1) {
            held[ui] = inst.jobs[j].clique;
            held_time[ui] = inst.time(j, a[j]);
        } else {
            held[ui] = -2;
        }
    }
    if (rest.empty()) return a;
    const auto r = static_cast<int>(rest.size());
    // nodes: s, t, rest jobs, (i, k) in, (i, k) out, machine slot 1, machine slot 2
    const int job_base = 2;
    const int mk_base = job_base + r;
    const int mk_out = mk_base + m * b;
    const int slot_base = mk_out + m * b;
    netopt::FlowNetwork net(slot_base + 2 * m, 0, 1);
    std::vector<std::vector<std::pair<int, MachineId>>> arcs(static_cast<std::size_t>(r));
    for (int v = 0; v < r; ++v) {
        net.add_arc(0, job_base + v, 1);
        const std::size_t j = rest[static_cast<std::size_t>(v)];
        const int k = inst.jobs[j].clique;
        for (MachineId i = 0; i < m; ++i) {
            const int h = held[static_cast<std::size_t>(i)];
            if (!inst.allowed(j, i) || h == k || h == -2) continue;
            const std::int64_t t = inst.time(j, i);
            const std::int64_t cost = held[static_cast<std::size_t>(i)] >= 0 ? held_time[static_cast<std::size_t>(i)] + t : t;
            arcs[static_cast<std::size_t>(v)].emplace_back(net.add_arc(job_base + v, mk_base + i * b + k, 1, cost), i);
        }
    }
    for (MachineId i = 0; i < m; ++i) {
        for (int k = 0; k < b; ++k) {
            net.add_arc(mk_base + i * b + k, mk_out + i * b + k, 1, 0);
            net.add_arc(mk_out + i * b + k, slot_base + 2 * i, 1, 0);
            net.add_arc(mk_out + i * b + k, slot_base + 2 * i + 1, 1, 0);
        }
        const bool occupied = held[static_cast<std::size_t>(i)] >= 0;
        net.add_arc(slot_base + 2 * i, 1, 1, 0);
        if (!occupied) net.add_arc(slot_base + 2 * i + 1, 1, 1, p2);
    }
    netopt::FlowResult fr = netopt::min_cost_max_flow(net);
    if (fr.value < r) return std::nullopt;
    for (int v = 0; v < r; ++v)
        for (auto [arc, i] : arcs[static_cast<std::size_t>(v)])
            if (fr.flow[static_cast<std::size_t>(arc)] > 0) a[rest[static_cast<std::size_t>(v)]] = i;
    return a;
}

} // namespace detail

/// Two cliques, every time p1 or p2 (no forbidden placements). Guesses the number n1 of jobs run
/// at time p1, spreads them over as many machines as possible with the unit
/// network, completes the rest, and keeps the cheapest candidate.
inline Schedule solve_two_cliques_two_times(const Instance& inst) {
    if (inst.clique_count != 2) throw PreconditionFailed("two-two: exactly two cliques are required");
    if (!inst.unit_weights()) throw PreconditionFailed("two-two: weights must all be 1");
    for (std::size_t j = 0; j < inst.jobs.size(); ++j)
        for (MachineId i = 0; i < inst.machine_count; ++i)
            if (!inst.allowed(j, i)) throw PreconditionFailed("two-two: every job needs a finite time on every machine");
    auto values = two_time_values(inst);
    if (!values) throw PreconditionFailed("two-two: more than two distinct processing times");
    const auto [p1, p2] = *values;
    if (inst.jobs.empty()) return Schedule{};
    const auto n = static_cast<std::int64_t>(inst.jobs.size());

    std::optional<Schedule> best;
    for (std::int64_t n1 = 0; n1 <= n; ++n1) {
        UnitNetwork u = build_unit_network(inst, n1, [&](std::size_t j, MachineId i) { return inst.time(j, i) == p1; });
        netopt::FlowResult fr = netopt::min_cost_max_flow(u.network);
        if (fr.value < n1) continue;
        auto done = detail::complete_two_cliques(inst, detail::decode_unit_flow(u, fr), p2);
        if (!done) continue;
        Schedule cand = make_schedule(inst, std::move(*done));
        if (!best || cand.objective < best->objective) best = std::move(cand);
    }
    if (!best) throw Infeasible("two-two: no feasible schedule");
    return *best;
}

/// Jobs of each clique share one time vector; per-job eligibility is allowed.
inline bool clique_uniform_times(const Instance& inst) {
    std::map<int, const std::vector<ProcTime>*> first;
    for (const Job& job : inst.jobs) {
        auto [it, inserted] = first.try_emplace(job.clique, &job.times);
        if (!inserted && *it->second != job.times) return false;
    }
    return true;
}

/// R|cliques of copies, M(j)|ΣC_j via one min-cost flow over per-machine positions.
inline Schedule solve_clique_copies(const Instance& inst) {
    if (!inst.unit_weights()) throw PreconditionFailed("copies: weights must all be 1");
    if (!clique_uniform_times(inst)) throw PreconditionFailed("copies: jobs of a clique must share one time vector");
    const int m = inst.machine_count;
    const int b = inst.clique_count;
    const auto n = static_cast<int>(inst.jobs.size());
    if (n == 0) return Schedule{};
    const int positions = std::min(n, b);
    // nodes: s, t, jobs, (i,k,1), (i,k,2), (i, position)
    const int job_base = 2;
    const int in_base = job_base + n;
    const int out_base = in_base + m * b;
    const int pos_base = out_base + m * b;
    netopt::FlowNetwork net(pos_base + m * positions, 0, 1);
    std::vector<std::vector<std::pair<int, MachineId>>> job_arcs(static_cast<std::size_t>(n));
    std::vector<std::int64_t> clique_time(static_cast<std::size_t>(m * b), -1);
    for (int v = 0; v < n; ++v) {
        net.add_arc(0, job_base + v, 1);
        const auto vj = static_cast<std::size_t>(v);
        const int k = inst.jobs[vj].clique;
        for (MachineId i = 0; i < m; ++i) {
            if (!inst.allowed(vj, i)) continue;
            clique_time[static_cast<std::size_t>(i * b + k)] = inst.time(vj, i);
            job_arcs[vj].emplace_back(net.add_arc(job_base + v, in_base + i * b + k, 1), i);
        }
    }
    for (MachineId i = 0; i < m; ++i)
        for (int k = 0; k < b; ++k) {
            const std::int64_t p = clique_time[static_cast<std::size_t>(i * b + k)];
            if (p < 0) continue;
            net.add_arc(in_base + i * b + k, out_base + i * b + k, 1);
            for (int q = 1; q <= positions; ++q) net.add_arc(out_base + i * b + k, pos_base + i * positions + (q - 1), 1, q * p);
        }
    for (MachineId i = 0; i < m; ++i)
        for (int q = 0; q < positions; ++q) net.add_arc(pos_base + i * positions + q, 1, 1);

    netopt::FlowResult fr = netopt::min_cost_max_flow(net);
    if (fr.value < n) throw Infeasible("copies: only " + std::to_string(fr.value) + " of " + std::to_string(n) + " jobs can be placed");
    std::vector<MachineId> a(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        for (auto [arc, i] : job_arcs[static_cast<std::size_t>(v)])
            if (fr.flow[static_cast<std::size_t>(arc)] > 0) a[static_cast<std::size_t>(v)] = i;
    Schedule s = make_schedule(inst, std::move(a));
#ifdef CLIQUESCHED_SELF_CHECK
    if (s.objective != fr.cost) throw std::logic_error("copies: flow cost differs from the schedule objective");
#endif
    return s;
}

} // namespace cliquesched
