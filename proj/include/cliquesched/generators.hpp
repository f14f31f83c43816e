#pragma once

// Seeded random instance families, one per solver class.

#include <random>
#include <stdexcept>
#include <string>

#include "cliquesched/core.hpp"

namespace cliquesched::gen {

using Rng = std::mt19937_64;

namespace detail {

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Clique labels with every clique holding between 1 and `cap` jobs.
inline std::vector<int> clique_labels(Rng& rng, int n, int b, int cap) {
    if (b < 1 || n > b * cap) throw std::invalid_argument("clique_labels: " + std::to_string(n) + " jobs do not fit");
    std::vector<int> label;
    std::vector<int> size(static_cast<std::size_t>(b), 0);
    for (int k = 0; k < b && static_cast<int>(label.size()) < n; ++k) {
        label.push_back(k);
        ++size[static_cast<std::size_t>(k)];
    }
    while (static_cast<int>(label.size()) < n) {
        int k = uniform(rng, 0, b - 1);
        if (size[static_cast<std::size_t>(k)] >= cap) {
            // first clique with room
            k = 0;
            while (size[static_cast<std::size_t>(k)] >= cap) ++k;
        }
        label.push_back(k);
        ++size[static_cast<std::size_t>(k)];
    }
    std::shuffle(label.begin(), label.end(), rng);
    return label;
}

inline Instance assemble(int m, bool identical, int b, const std::vector<int>& cliques,
                         const std::vector<std::vector<ProcTime>>& times, const std::vector<std::int64_t>& weights) {
    Instance inst;
    inst.machine_count = m;
    inst.identical = identical;
    inst.clique_count = b;
    for (std::size_t j = 0; j < cliques.size(); ++j) {
        Job job;
        job.id = static_cast<JobId>(j + 1);
        job.weight = weights.empty() ? 1 : weights[j];
        job.times = times[j];
        job.clique = cliques[j];
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

inline int clique_count_for(Rng& rng, int n, int m, int b_max) {
    const int lo = std::max(1, (n + m - 1) / m);
    return uniform(rng, lo, std::max(lo, std::min(b_max, n)));
}

} // namespace detail

/// Identical machines, unit weights, every clique ≤ m jobs.
inline Instance random_identical(Rng& rng, int n_max = 8, int m_max = 3, int b_max = 5, int p_max = 9) {
    const int m = detail::uniform(rng, 1, m_max);
    const int n = detail::uniform(rng, 1, std::min(n_max, m * b_max));
    const int b = detail::clique_count_for(rng, n, m, b_max);
    auto cliques = detail::clique_labels(rng, n, b, m);
    std::vector<std::vector<ProcTime>> times;
    for (int j = 0; j < n; ++j) times.emplace_back(static_cast<std::size_t>(m), ProcTime(detail::uniform(rng, 1, p_max)));
    return detail::assemble(m, true, b, cliques, times, {});
}

/// Unrelated machines with times in {1, ∞}; may be infeasible.
inline Instance random_unit(Rng& rng, int n_max = 8, int m_max = 4) {
    const int m = detail::uniform(rng, 1, m_max);
    const int n = detail::uniform(rng, 1, n_max);
    const int b = detail::uniform(rng, 1, n);
    auto cliques = detail::clique_labels(rng, n, b, n);
    std::vector<std::vector<ProcTime>> times;
    for (int j = 0; j < n; ++j) {
        std::vector<ProcTime> row;
        for (int i = 0; i < m; ++i) row.push_back(detail::coin(rng, 0.7) ? ProcTime(1) : ProcTime::infinity());
        times.push_back(row);
    }
    return detail::assemble(m, false, b, cliques, times, {});
}

/// Two cliques; every time is one of two values. `inf_rate` adds forbidden placements.
inline Instance random_two_two(Rng& rng, int n_max = 8, int m_max = 4, int p_max = 9, double inf_rate = 0.0) {
    const int m = detail::uniform(rng, 1, m_max);
    const int n = detail::uniform(rng, 1, std::min(n_max, 2 * m));
    const std::int64_t p1 = detail::uniform(rng, 1, p_max);
    const std::int64_t p2 = detail::uniform(rng, static_cast<int>(p1), p_max);
    auto cliques = detail::clique_labels(rng, n, 2, m);
    std::vector<std::vector<ProcTime>> times;
    for (int j = 0; j < n; ++j) {
        std::vector<ProcTime> row;
        for (int i = 0; i < m; ++i) {
            if (inf_rate > 0 && detail::coin(rng, inf_rate)) row.push_back(ProcTime::infinity());
            else row.push_back(ProcTime(detail::coin(rng, 0.5) ? p1 : p2));
        }
        times.push_back(row);
    }
    return detail::assemble(m, false, 2, cliques, times, {});
}

/// Identical machines with clique eligibility M(k); may be infeasible.
inline Instance random_bags(Rng& rng, int n_max = 8, int m_max = 3, int b_max = 3, int p_max = 9) {
    const int m = detail::uniform(rng, 1, m_max);
    const int n = detail::uniform(rng, 1, std::min(n_max, m * b_max));
    const int b = detail::clique_count_for(rng, n, m, b_max);
    auto cliques = detail::clique_labels(rng, n, b, m);
    std::vector<std::vector<ProcTime>> times;
    for (int j = 0; j < n; ++j) times.emplace_back(static_cast<std::size_t>(m), ProcTime(detail::uniform(rng, 1, p_max)));
    Instance inst = detail::assemble(m, true, b, cliques, times, {});
    for (int k = 0; k < b; ++k) {
        if (!detail::coin(rng, 0.5)) continue;
        std::vector<MachineId> set;
        for (MachineId i = 0; i < m; ++i)
            if (detail::coin(rng, 0.7)) set.push_back(i);
        inst.clique_eligible[k] = set;
    }
    return inst;
}

/// Unrelated machines with times drawn from k distinct values plus ∞.
inline Instance random_dp(Rng& rng, int n_max = 8, int m_max = 3, int k_max = 2, int p_max = 9) {
    const int m = detail::uniform(rng, 1, m_max);
    const int n = detail::uniform(rng, 1, n_max);
    const int b = detail::uniform(rng, std::max(1, (n + m - 1) / m), n);
    auto cliques = detail::clique_labels(rng, n, b, m);
    const int k = detail::uniform(rng, 1, k_max);
    std::vector<std::int64_t> values;
    while (static_cast<int>(values.size()) < k) {
        std::int64_t v = detail::uniform(rng, 1, p_max);
        if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
    }
    std::vector<std::vector<ProcTime>> times;
    for (int j = 0; j < n; ++j) {
        std::vector<ProcTime> row;
        for (int i = 0; i < m; ++i) {
            if (detail::coin(rng, 0.15)) row.push_back(ProcTime::infinity());
            else row.push_back(ProcTime(values[static_cast<std::size_t>(detail::uniform(rng, 0, k - 1))]));
        }
        times.push_back(row);
    }
    return detail::assemble(m, false, b, cliques, times, {});
}

/// Cliques of copies: one time vector per clique, random per-job eligibility.
inline Instance random_copies(Rng& rng, int n_max = 8, int m_max = 3, int p_max = 9) {
    const int m = detail::uniform(rng, 1, m_max);
    const int n = detail::uniform(rng, 1, n_max);
    const int b = detail::uniform(rng, std::max(1, (n + m - 1) / m), n);
    auto cliques = detail::clique_labels(rng, n, b, m);
    std::vector<std::vector<ProcTime>> clique_times;
    for (int k = 0; k < b; ++k) {
        std::vector<ProcTime> row;
        for (int i = 0; i < m; ++i)
            row.push_back(detail::coin(rng, 0.15) ? ProcTime::infinity() : ProcTime(detail::uniform(rng, 1, p_max)));
        clique_times.push_back(row);
    }
    std::vector<std::vector<ProcTime>> times;
    for (int j = 0; j < n; ++j) times.push_back(clique_times[static_cast<std::size_t>(cliques[static_cast<std::size_t>(j)])]);
    Instance inst = detail::assemble(m, false, b, cliques, times, {});
    for (Job& job : inst.jobs) {
        if (!detail::coin(rng, 0.4)) continue;
        std::vector<MachineId> set;
        for (MachineId i = 0; i < m; ++i)
            if (detail::coin(rng, 0.7)) set.push_back(i);
        job.eligible = set;
    }
    return inst;
}

/// Unrelated machines with weights; every job has at least one finite time.
inline Instance random_weighted(Rng& rng, int n_max = 7, int m_max = 3, int b_max = 3, int p_max = 5, int w_max = 4) {
    const int m = detail::uniform(rng, 1, m_max);
    const int n = detail::uniform(rng, 1, std::min(n_max, m * b_max));
    const int b = detail::clique_count_for(rng, n, m, b_max);
    auto cliques = detail::clique_labels(rng, n, b, m);
    std::vector<std::vector<ProcTime>> times;
    std::vector<std::int64_t> weights;
    for (int j = 0; j < n; ++j) {
        std::vector<ProcTime> row;
        for (int i = 0; i < m; ++i)
            row.push_back(i > 0 && detail::coin(rng, 0.15) ? ProcTime::infinity() : ProcTime(detail::uniform(rng, 1, p_max)));
        times.push_back(row);
        weights.push_back(detail::uniform(rng, 1, w_max));
    }
    return detail::assemble(m, false, b, cliques, times, weights);
}

} // namespace cliquesched::gen
