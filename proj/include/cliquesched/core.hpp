#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "cliquesched/errors.hpp"

namespace cliquesched {

using JobId = std::int64_t;
using MachineId = int; // 0-based everywhere inside the library
using Cost = std::int64_t;

/// Processing time of a job on a machine, or INFINITY (placement forbidden).
/// Reading the value of an infinite time throws InfiniteTime.
class ProcTime {
public:
    constexpr ProcTime() = default;
    constexpr explicit ProcTime(std::int64_t value) : value_(value) {}

    static constexpr ProcTime infinity() { return ProcTime(); }

    constexpr bool finite() const { return value_ >= 0; }

    std::int64_t value() const {
        if (!finite()) throw InfiniteTime("arithmetic on an infinite processing time");
        return value_;
    }

    friend constexpr bool operator==(ProcTime, ProcTime) = default;

private:
    std::int64_t value_ = -1;
};

struct Job {
    JobId id = 0;
    std::int64_t weight = 1;
    std::vector<ProcTime> times; // one entry per machine
    int clique = 0;              // 0-based clique index
    std::optional<std::vector<MachineId>> eligible; // M(j); absent = all machines

    friend bool operator==(const Job&, const Job&) = default;
};

/// A scheduling instance: machines, jobs, and a partition of the jobs into
/// incompatibility cliques, with optional eligibility per job and per clique.
struct Instance {
    int machine_count = 0;
    bool identical = false;
    int clique_count = 0;
    std::vector<Job> jobs;
    /// M(k) per clique; a missing key means every machine is eligible.
    std::map<int, std::vector<MachineId>> clique_eligible;

    friend bool operator==(const Instance&, const Instance&) = default;

    std::size_t job_count() const { return jobs.size(); }

    /// i ∈ M(j) and i ∈ M(clique(j)); ignores the processing time.
    bool eligible(std::size_t j, MachineId i) const {
        const Job& job = jobs[j];
        if (job.eligible && !std::binary_search(job.eligible->begin(), job.eligible->end(), i))
            return false;
        auto it = clique_eligible.find(job.clique);
        if (it != clique_eligible.end() && !std::binary_search(it->second.begin(), it->second.end(), i))
            return false;
        return true;
    }

    /// Job j may run on machine i: eligible and finite time.
    bool allowed(std::size_t j, MachineId i) const {
        return jobs[j].times[static_cast<std::size_t>(i)].finite() && eligible(j, i);
    }

    /// The processing time with every eligibility restriction folded in as INFINITY.
    ProcTime effective_time(std::size_t j, MachineId i) const {
        return allowed(j, i) ? jobs[j].times[static_cast<std::size_t>(i)] : ProcTime::infinity();
    }

    std::int64_t time(std::size_t j, MachineId i) const {
        return jobs[j].times[static_cast<std::size_t>(i)].value();
    }

    std::vector<std::vector<std::size_t>> clique_members() const {
        std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(clique_count));
        for (std::size_t j = 0; j < jobs.size(); ++j)
            members[static_cast<std::size_t>(jobs[j].clique)].push_back(j);
        return members;
    }

    bool unit_weights() const {
        return std::all_of(jobs.begin(), jobs.end(), [](const Job& j) { return j.weight == 1; });
    }

    bool has_job_eligibility() const {
        return std::any_of(jobs.begin(), jobs.end(), [](const Job& j) { return j.eligible.has_value(); });
    }

    bool has_restrictions() const { return has_job_eligibility() || !clique_eligible.empty(); }

    std::int64_t max_time() const {
        std::int64_t best = 0;
        for (const Job& job : jobs)
            for (ProcTime p : job.times)
                if (p.finite()) best = std::max(best, p.value());
        return best;
    }

    std::int64_t max_weight() const {
        std::int64_t best = 0;
        for (const Job& job : jobs) best = std::max(best, job.weight);
        return best;
    }

    /// Machines with identical processing-time columns share a kind (κ kinds in total).
    std::vector<int> machine_kinds() const {
        std::map<std::vector<std::int64_t>, int> seen;
        std::vector<int> kind(static_cast<std::size_t>(machine_count));
        for (MachineId i = 0; i < machine_count; ++i) {
            std::vector<std::int64_t> column;
            column.reserve(jobs.size());
            for (std::size_t j = 0; j < jobs.size(); ++j) {
                ProcTime p = effective_time(j, i);
                column.push_back(p.finite() ? p.value() : -1);
            }
            auto [it, inserted] = seen.try_emplace(std::move(column), static_cast<int>(seen.size()));
            kind[static_cast<std::size_t>(i)] = it->second;
        }
        return kind;
    }

    /// Jobs with equal effective time vectors and equal weights share a kind (ϑ kinds).
    /// Kinds are numbered in order of first appearance.
    std::vector<int> job_kinds() const {
        std::map<std::vector<std::int64_t>, int> seen;
        std::vector<int> kind(jobs.size());
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            std::vector<std::int64_t> key;
            key.reserve(static_cast<std::size_t>(machine_count) + 1);
            key.push_back(jobs[j].weight);
            for (MachineId i = 0; i < machine_count; ++i) {
                ProcTime p = effective_time(j, i);
                key.push_back(p.finite() ? p.value() : -1);
            }
            auto [it, inserted] = seen.try_emplace(std::move(key), static_cast<int>(seen.size()));
            kind[j] = it->second;
        }
        return kind;
    }
};

/// Checks the structural invariants of an instance; throws InvalidInstance.
/// Zero processing times are rejected unless `allow_zero_times` is set
/// (dummy jobs are an internal solver device).
inline void check_instance(const Instance& inst, bool allow_zero_times = false) {
    auto fail = [](const std::string& what) { throw InvalidInstance(what); };
    if (inst.machine_count <= 0) fail("machine count must be positive");
    if (inst.clique_count <= 0) fail("clique count must be positive");
    std::vector<JobId> ids;
    for (const Job& job : inst.jobs) {
        ids.push_back(job.id);
        if (job.weight <= 0) fail("job " + std::to_string(job.id) + ": weight must be positive");
        if (job.clique < 0 || job.clique >= inst.clique_count)
            fail("job " + std::to_string(job.id) + ": clique index out of range");
        if (job.times.size() != static_cast<std::size_t>(inst.machine_count))
            fail("job " + std::to_string(job.id) + ": expected one time per machine");
        for (ProcTime p : job.times) {
            if (!p.finite()) continue;
            if (p.value() < 0 || (p.value() == 0 && !allow_zero_times))
                fail("job " + std::to_string(job.id) + ": processing times must be positive");
        }
        if (inst.identical &&
            std::adjacent_find(job.times.begin(), job.times.end(), std::not_equal_to<>()) != job.times.end())
            fail("job " + std::to_string(job.id) + ": identical machines need a constant time row");
        if (job.eligible) {
            const auto& e = *job.eligible;
            if (!std::is_sorted(e.begin(), e.end()) || std::adjacent_find(e.begin(), e.end()) != e.end())
                fail("job " + std::to_string(job.id) + ": eligible set must be sorted and distinct");
            for (MachineId i : e)
                if (i < 0 || i >= inst.machine_count) fail("job " + std::to_string(job.id) + ": eligible machine out of range");
        }
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) fail("job ids must be unique");
    for (const auto& [k, machines] : inst.clique_eligible) {
        if (k < 0 || k >= inst.clique_count) fail("clique eligibility for unknown clique");
        if (!std::is_sorted(machines.begin(), machines.end()) ||
            std::adjacent_find(machines.begin(), machines.end()) != machines.end())
            fail("clique eligible set must be sorted and distinct");
        for (MachineId i : machines)
            if (i < 0 || i >= inst.machine_count) fail("clique eligible machine out of range");
    }
}

/// Convenience constructor for identical machines.
inline Instance make_identical_instance(int machines, std::span<const std::int64_t> times,
                                        std::span<const int> cliques, int clique_count,
                                        std::span<const std::int64_t> weights = {}) {
    Instance inst;
    inst.machine_count = machines;
    inst.identical = true;
    inst.clique_count = clique_count;
    for (std::size_t j = 0; j < times.size(); ++j) {
        Job job;
        job.id = static_cast<JobId>(j + 1);
        job.weight = weights.empty() ? 1 : weights[j];
        job.times.assign(static_cast<std::size_t>(machines), ProcTime(times[j]));
        job.clique = cliques[j];
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

/// Convenience constructor for unrelated machines; `times[j][i]` may be infinity.
inline Instance make_unrelated_instance(int machines, const std::vector<std::vector<ProcTime>>& times,
                                        std::span<const int> cliques, int clique_count,
                                        std::span<const std::int64_t> weights = {}) {
    Instance inst;
    inst.machine_count = machines;
    inst.identical = false;
    inst.clique_count = clique_count;
    for (std::size_t j = 0; j < times.size(); ++j) {
        Job job;
        job.id = static_cast<JobId>(j + 1);
        job.weight = weights.empty() ? 1 : weights[j];
        job.times = times[j];
        job.clique = cliques[j];
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

/// Job-to-machine assignment plus its exact objective Σ w_j C_j.
/// The per-machine order is always the canonical Smith order.
struct Schedule {
    std::vector<MachineId> assignment; // indexed like Instance::jobs
    Cost objective = 0;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

namespace detail {

/// Smith order on (weight, time, id) triples: ratio w/p non-increasing, then
/// smaller p, then smaller id. Ratios are compared by cross-multiplication.
inline bool smith_before(std::int64_t wa, std::int64_t pa, JobId ida, std::int64_t wb, std::int64_t pb, JobId idb) {
    const auto lhs = static_cast<__int128>(wa) * pb;
    const auto rhs = static_cast<__int128>(wb) * pa;
    if (lhs != rhs) return lhs > rhs;
    if (pa != pb) return pa < pb;
    return ida < idb;
}

/// Σ w C of jobs given as (weight, time) pairs already in execution order.
inline Cost sequence_cost(std::span<const std::pair<std::int64_t, std::int64_t>> ordered) {
    Cost total = 0;
    std::int64_t clock = 0;
    for (auto [w, p] : ordered) {
        clock += p;
        total += w * clock;
    }
    return total;
}

} // namespace detail

/// Orders the given jobs (indices into inst.jobs) for execution on machine `i`.
inline std::vector<std::size_t> smith_order(const Instance& inst, std::vector<std::size_t> job_indices, MachineId i) {
    for (std::size_t j : job_indices)
        if (!inst.jobs[j].times[static_cast<std::size_t>(i)].finite())
            throw InfiniteTime("job " + std::to_string(inst.jobs[j].id) + " has infinite time on machine " +
                               std::to_string(i + 1));
    std::sort(job_indices.begin(), job_indices.end(), [&](std::size_t a, std::size_t b) {
        const Job& ja = inst.jobs[a];
        const Job& jb = inst.jobs[b];
        return detail::smith_before(ja.weight, inst.time(a, i), ja.id, jb.weight, inst.time(b, i), jb.id);
    });
    return job_indices;
}

/// Σ w C of the jobs on one machine in Smith order.
inline Cost machine_cost(const Instance& inst, const std::vector<std::size_t>& job_indices, MachineId i) {
    std::vector<std::pair<std::int64_t, std::int64_t>> seq;
    seq.reserve(job_indices.size());
    for (std::size_t j : smith_order(inst, job_indices, i)) seq.emplace_back(inst.jobs[j].weight, inst.time(j, i));
    return detail::sequence_cost(seq);
}

inline std::vector<std::vector<std::size_t>> jobs_per_machine(const Instance& inst,
                                                              std::span<const MachineId> assignment) {
    if (assignment.size() != inst.jobs.size())
        throw PreconditionFailed("assignment size does not match the job count");
    std::vector<std::vector<std::size_t>> per(static_cast<std::size_t>(inst.machine_count));
    for (std::size_t j = 0; j < assignment.size(); ++j) {
        MachineId i = assignment[j];
        if (i < 0 || i >= inst.machine_count)
            throw PreconditionFailed("job " + std::to_string(inst.jobs[j].id) + " is not assigned to a valid machine");
        per[static_cast<std::size_t>(i)].push_back(j);
    }
    return per;
}

/// Total weighted completion time of an assignment, each machine in Smith order.
inline Cost evaluate(const Instance& inst, std::span<const MachineId> assignment) {
    const auto per = jobs_per_machine(inst, assignment);
    Cost total = 0;
    for (MachineId i = 0; i < inst.machine_count; ++i) total += machine_cost(inst, per[static_cast<std::size_t>(i)], i);
    return total;
}

inline Schedule make_schedule(const Instance& inst, std::vector<MachineId> assignment) {
    Schedule s;
    s.objective = evaluate(inst, assignment);
    s.assignment = std::move(assignment);
    return s;
}

enum class ViolationKind {
    SameCliqueOnMachine, // (a)
    JobIneligible,       // (b)
    CliqueIneligible,    // (c)
    InfinitePlacement,   // (d)
    ObjectiveMismatch,   // (e)
    Malformed,           // assignment missing or machine out of range
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::SameCliqueOnMachine: return "same-clique";
    case ViolationKind::JobIneligible: return "job-ineligible";
    case ViolationKind::CliqueIneligible: return "clique-ineligible";
    case ViolationKind::InfinitePlacement: return "infinite-time";
    case ViolationKind::ObjectiveMismatch: return "objective-mismatch";
    case ViolationKind::Malformed: return "malformed";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Lists every feasibility violation of `schedule`; an empty report means feasible.
inline ValidationReport validate(const Instance& inst, const Schedule& schedule) {
    ValidationReport report;
    auto add = [&](ViolationKind kind, std::string msg) { report.push_back({kind, std::move(msg)}); };
    const auto& a = schedule.assignment;
    if (a.size() != inst.jobs.size()) {
        add(ViolationKind::Malformed, "assignment covers " + std::to_string(a.size()) + " of " +
                                          std::to_string(inst.jobs.size()) + " jobs");
        return report;
    }
    bool placeable = true;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const Job& job = inst.jobs[j];
        const std::string who = "job " + std::to_string(job.id);
        MachineId i = a[j];
        if (i < 0 || i >= inst.machine_count) {
            add(ViolationKind::Malformed, who + " assigned to nonexistent machine " + std::to_string(i + 1));
            placeable = false;
            continue;
        }
        if (job.eligible && !std::binary_search(job.eligible->begin(), job.eligible->end(), i))
            add(ViolationKind::JobIneligible, who + " on machine " + std::to_string(i + 1) + " outside M(j)");
        auto it = inst.clique_eligible.find(job.clique);
        if (it != inst.clique_eligible.end() && !std::binary_search(it->second.begin(), it->second.end(), i))
            add(ViolationKind::CliqueIneligible, who + " of clique " + std::to_string(job.clique + 1) +
                                                     " on machine " + std::to_string(i + 1) + " outside M(k)");
        if (!job.times[static_cast<std::size_t>(i)].finite()) {
            add(ViolationKind::InfinitePlacement, who + " has infinite time on machine " + std::to_string(i + 1));
            placeable = false;
        }
    }
    std::map<std::pair<MachineId, int>, std::vector<JobId>> groups;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] >= 0 && a[j] < inst.machine_count) groups[{a[j], inst.jobs[j].clique}].push_back(inst.jobs[j].id);
    for (const auto& [key, ids] : groups) {
        if (ids.size() < 2) continue;
        std::ostringstream msg;
        msg << ids.size() << " jobs of clique " << key.second + 1 << " on machine " << key.first + 1 << ":";
        for (JobId id : ids) msg << ' ' << id;
        add(ViolationKind::SameCliqueOnMachine, msg.str());
    }
    if (placeable) {
        Cost actual = evaluate(inst, a);
        if (actual != schedule.objective)
            add(ViolationKind::ObjectiveMismatch, "stored objective " + std::to_string(schedule.objective) +
                                                      " but evaluation gives " + std::to_string(actual));
    }
    return report;
}

} // namespace cliquesched
