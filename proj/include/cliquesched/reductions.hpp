#pragma once

// Hard-instance generators from SAT variants, each with a schedule built from
// a valuation whose cost is known in closed form.
//
// 3SAT*: every literal occurs exactly twice; as many 1-in-3 clauses as 2-in-3
// clauses. MAX 3SAT-6: every literal occurs in exactly 3 clauses.
//
// Occurrence slots of a variable (κ): odd slots are the 1st, 2nd, ... positive
// occurrences, even slots the negative ones, each in clause order.

#include <array>
#include <random>

#include "cliquesched/core.hpp"
#include "cliquesched/netopt.hpp"

namespace cliquesched::red {

struct Literal {
    int variable = 0; // 0-based
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

/// (clause index, position 0..2)
using Occurrence = std::pair<int, int>;

struct SatStarInstance {
    int variable_count = 0;
    std::vector<Clause> one_in_three;
    std::vector<Clause> two_in_three;
    /// Satisfying valuation planted by the generator; empty when unknown.
    std::vector<bool> witness;

    /// Clauses 1-in-3 first, then 2-in-3.
    std::vector<Clause> clauses() const {
        std::vector<Clause> all = one_in_three;
        all.insert(all.end(), two_in_three.begin(), two_in_three.end());
        return all;
    }
    bool is_one_in_three(int clause) const { return clause < static_cast<int>(one_in_three.size()); }
};

struct Max3Sat6Instance {
    int variable_count = 0;
    std::vector<Clause> clauses;
};

/// κ over `slots` occurrence slots per variable; throws InvalidInstance when a
/// literal has the wrong number of occurrences.
inline std::vector<std::vector<Occurrence>> occurrence_map(int variable_count, const std::vector<Clause>& clauses, int slots) {
    std::vector<std::vector<Occurrence>> kappa(static_cast<std::size_t>(variable_count));
    std::vector<std::array<int, 2>> seen(static_cast<std::size_t>(variable_count), {0, 0});
    for (auto& k : kappa) k.assign(static_cast<std::size_t>(slots), {-1, -1});
    for (std::size_t c = 0; c < clauses.size(); ++c)
        for (int pos = 0; pos < 3; ++pos) {
            const Literal& lit = clauses[c][static_cast<std::size_t>(pos)];
            if (lit.variable < 0 || lit.variable >= variable_count) throw InvalidInstance("literal names an unknown variable");
            int& count = seen[static_cast<std::size_t>(lit.variable)][lit.negated ? 1 : 0];
            const int slot = 2 * count + (lit.negated ? 1 : 0);
            if (slot >= slots) throw InvalidInstance("variable " + std::to_string(lit.variable + 1) + " occurs too often");
            kappa[static_cast<std::size_t>(lit.variable)][static_cast<std::size_t>(slot)] = {static_cast<int>(c), pos};
            ++count;
        }
    for (int v = 0; v < variable_count; ++v)
        for (int s = 0; s < slots; ++s)
            if (kappa[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)].first < 0)
                throw InvalidInstance("variable " + std::to_string(v + 1) + " occurs too rarely");
    return kappa;
}

inline bool literal_value(const Literal& lit, const std::vector<bool>& valuation) {
    return valuation[static_cast<std::size_t>(lit.variable)] != lit.negated;
}

inline int true_literals(const Clause& c, const std::vector<bool>& valuation) {
    int t = 0;
    for (const Literal& l : c) t += literal_value(l, valuation) ? 1 : 0;
    return t;
}

namespace detail {

inline void literal_counts(int variable_count, const std::vector<Clause>& clauses, int expected, const char* what,
                           std::vector<std::string>& out) {
    std::vector<std::array<int, 2>> count(static_cast<std::size_t>(std::max(variable_count, 0)), {0, 0});
    for (std::size_t c = 0; c < clauses.size(); ++c)
        for (const Literal& l : clauses[c]) {
            if (l.variable < 0 || l.variable >= variable_count) {
                out.push_back("clause " + std::to_string(c + 1) + " names unknown variable " + std::to_string(l.variable + 1));
                continue;
            }
            ++count[static_cast<std::size_t>(l.variable)][l.negated ? 1 : 0];
        }
    for (int v = 0; v < variable_count; ++v)
        for (int neg = 0; neg < 2; ++neg) {
            const int got = count[static_cast<std::size_t>(v)][static_cast<std::size_t>(neg)];
            if (got != expected)
                out.push_back(std::string(neg ? "literal -" : "literal +") + std::to_string(v + 1) + " occurs " + std::to_string(got) +
                              " times, " + what + " needs " + std::to_string(expected));
        }
}

} // namespace detail

/// Every violated invariant of a 3SAT* candidate; empty when valid.
inline std::vector<std::string> validate_sat_star(const SatStarInstance& phi) {
    std::vector<std::string> out;
    if (phi.variable_count <= 0) out.push_back("no variables");
    if (phi.one_in_three.size() != phi.two_in_three.size())
        out.push_back("1-in-3 and 2-in-3 clause counts differ (" + std::to_string(phi.one_in_three.size()) + " vs " +
                      std::to_string(phi.two_in_three.size()) + ")");
    detail::literal_counts(phi.variable_count, phi.clauses(), 2, "3SAT*", out);
    if (!phi.witness.empty() && static_cast<int>(phi.witness.size()) != phi.variable_count) out.push_back("witness has the wrong length");
    return out;
}

inline std::vector<std::string> validate_max3sat6(const Max3Sat6Instance& psi) {
    std::vector<std::string> out;
    if (psi.variable_count <= 0) out.push_back("no variables");
    if (psi.clauses.size() != 2 * static_cast<std::size_t>(std::max(psi.variable_count, 0)))
        out.push_back("expected " + std::to_string(2 * psi.variable_count) + " clauses, got " + std::to_string(psi.clauses.size()));
    detail::literal_counts(psi.variable_count, psi.clauses, 3, "MAX 3SAT-6", out);
    return out;
}

inline bool satisfies(const SatStarInstance& phi, const std::vector<bool>& valuation) {
    if (static_cast<int>(valuation.size()) != phi.variable_count) return false;
    for (const Clause& c : phi.one_in_three)
        if (true_literals(c, valuation) != 1) return false;
    for (const Clause& c : phi.two_in_three)
        if (true_literals(c, valuation) != 2) return false;
    return true;
}

inline int satisfied_clauses(const Max3Sat6Instance& psi, const std::vector<bool>& valuation) {
    int k = 0;
    for (const Clause& c : psi.clauses) k += true_literals(c, valuation) > 0 ? 1 : 0;
    return k;
}

namespace detail {

inline constexpr int kGeneratorRetries = 10000;

inline bool distinct_variables(const Clause& c) {
    return c[0].variable != c[1].variable && c[0].variable != c[2].variable && c[1].variable != c[2].variable;
}

} // namespace detail

/// Random 3SAT* formula with a planted satisfying valuation (kept in `witness`).
/// Clauses never repeat a variable. Throws InvalidSize unless |V| is a positive
/// multiple of 3.
inline SatStarInstance gen_sat_star(int variable_count, std::uint64_t seed) {
    if (variable_count <= 0 || variable_count % 3 != 0)
        throw InvalidSize("3SAT* needs a positive multiple of 3 variables, got " + std::to_string(variable_count));
    std::mt19937_64 rng(seed);
    const int clauses = 4 * variable_count / 3;
    for (int attempt = 0; attempt < detail::kGeneratorRetries; ++attempt) {
        SatStarInstance phi;
        phi.variable_count = variable_count;
        phi.witness.resize(static_cast<std::size_t>(variable_count));
        std::vector<Literal> truthy, falsy;
        for (int v = 0; v < variable_count; ++v) {
            const bool value = std::bernoulli_distribution(0.5)(rng);
            phi.witness[static_cast<std::size_t>(v)] = value;
            for (int rep = 0; rep < 2; ++rep) {
                truthy.push_back({v, !value});
                falsy.push_back({v, value});
            }
        }
        std::shuffle(truthy.begin(), truthy.end(), rng);
        std::shuffle(falsy.begin(), falsy.end(), rng);
        std::size_t t = 0, f = 0;
        bool ok = true;
        for (int c = 0; c < clauses && ok; ++c) {
            const bool one = c < clauses / 2;
            Clause cl{};
            cl[0] = truthy[t++];
            cl[1] = one ? falsy[f++] : truthy[t++];
            cl[2] = falsy[f++];
            std::shuffle(cl.begin(), cl.end(), rng);
            ok = detail::distinct_variables(cl);
            (one ? phi.one_in_three : phi.two_in_three).push_back(cl);
        }
        if (ok) return phi;
    }
    throw InvalidSize("could not place 3SAT* clauses without repeated variables");
}

/// Random MAX 3SAT-6 formula; clauses never repeat a variable. Needs |V| ≥ 3.
inline Max3Sat6Instance gen_max3sat6(int variable_count, std::uint64_t seed) {
    if (variable_count < 3) throw InvalidSize("MAX 3SAT-6 needs at least 3 variables, got " + std::to_string(variable_count));
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < detail::kGeneratorRetries; ++attempt) {
        std::vector<Literal> pool;
        for (int v = 0; v < variable_count; ++v)
            for (int rep = 0; rep < 3; ++rep) {
                pool.push_back({v, false});
                pool.push_back({v, true});
            }
        std::shuffle(pool.begin(), pool.end(), rng);
        Max3Sat6Instance psi;
        psi.variable_count = variable_count;
        bool ok = true;
        for (std::size_t c = 0; c < pool.size() && ok; c += 3) {
            Clause cl{pool[c], pool[c + 1], pool[c + 2]};
            ok = detail::distinct_variables(cl);
            psi.clauses.push_back(cl);
        }
        if (ok) return psi;
    }
    throw InvalidSize("could not place MAX 3SAT-6 clauses without repeated variables");
}

// Shared layout for both 3SAT* reductions ---------------------------------------
//
// Machines: m[v,i] = 4v + i - 1, then m[C,pos] = 4|V| + 3C + pos - 1.
// Jobs (ids 1-based in this order): j[v,1..4] for every v; j^T[v,i], j^F[v,i]
// for every v and i; j[C,1..3] for every clause.

namespace detail {

struct SatStarLayout {
    int nv = 0;
    int nc = 0;
    MachineId var_machine(int v, int i) const { return 4 * v + i - 1; }
    MachineId clause_machine(int c, int pos) const { return 4 * nv + 3 * c + pos; }
    std::size_t var_job(int v, int i) const { return static_cast<std::size_t>(4 * v + i - 1); }
    std::size_t true_job(int v, int i) const { return static_cast<std::size_t>(4 * nv + 8 * v + 2 * (i - 1)); }
    std::size_t false_job(int v, int i) const { return true_job(v, i) + 1; }
    std::size_t clause_job(int c, int q) const { return static_cast<std::size_t>(12 * nv + 3 * c + q - 1); }
    int machines() const { return 4 * nv + 3 * nc; }
    int jobs() const { return 12 * nv + 3 * nc; }
};

inline void check_increasing(std::initializer_list<std::int64_t> ps) {
    std::int64_t prev = 0;
    for (std::int64_t p : ps) {
        if (p <= prev) throw InvalidTimes("processing times must be positive and strictly increasing");
        prev = p;
    }
}

inline void require_valid(const SatStarInstance& phi) {
    auto problems = validate_sat_star(phi);
    if (!problems.empty()) throw InvalidInstance("invalid 3SAT* formula: " + problems.front());
}

// Variable-job placement and clause-side time of each consistency pair.
inline std::vector<MachineId> sat_star_assignment(const SatStarInstance& phi, const std::vector<bool>& valuation,
                                                  std::int64_t p1, std::int64_t p2) {
    const SatStarLayout L{phi.variable_count, static_cast<int>(phi.one_in_three.size() + phi.two_in_three.size())};
    const auto kappa = occurrence_map(phi.variable_count, phi.clauses(), 4);
    std::vector<MachineId> a(static_cast<std::size_t>(L.jobs()), -1);
    // time already sitting on each clause machine from its consistency job
    std::vector<std::int64_t> clause_load(static_cast<std::size_t>(L.machines()), 0);
    for (int v = 0; v < L.nv; ++v) {
        const bool value = valuation[static_cast<std::size_t>(v)];
        // variable job on m[v,i]; true keeps j[v,i] at home, false rotates j[v,i-1]
        static constexpr int kFalseRotation[4] = {4, 1, 2, 3};
        for (int i = 1; i <= 4; ++i) {
            const int job = value ? i : kFalseRotation[i - 1];
            a[L.var_job(v, job)] = L.var_machine(v, i);
            const bool long_job = job % 2 == 0; // j[v,2], j[v,4] take p2
            // the consistency job of the other length joins it; its twin goes to the clause
            const std::size_t home = long_job ? L.true_job(v, i) : L.false_job(v, i);
            const std::size_t away = long_job ? L.false_job(v, i) : L.true_job(v, i);
            a[home] = L.var_machine(v, i);
            const auto [c, pos] = kappa[static_cast<std::size_t>(v)][static_cast<std::size_t>(i - 1)];
            const MachineId cm = L.clause_machine(c, pos);
            a[away] = cm;
            clause_load[static_cast<std::size_t>(cm)] = long_job ? p2 : p1;
        }
    }
    // clause jobs: p1 jobs onto machines holding p2 and vice versa
    for (int c = 0; c < L.nc; ++c) {
        std::vector<std::size_t> short_jobs{L.clause_job(c, 1)};
        std::vector<std::size_t> long_jobs{L.clause_job(c, 2)};
        (phi.is_one_in_three(c) ? short_jobs : long_jobs).push_back(L.clause_job(c, 3));
        for (int pos = 0; pos < 3; ++pos) {
            const MachineId cm = L.clause_machine(c, pos);
            auto& pool = clause_load[static_cast<std::size_t>(cm)] == p2 ? short_jobs : long_jobs;
            if (pool.empty()) throw std::logic_error("clause machines cannot be balanced");
            a[pool.front()] = cm;
            pool.erase(pool.begin());
        }
    }
    return a;
}

inline void fill_jobs(Instance& inst, int count) {
    for (int j = 0; j < count; ++j) {
        Job job;
        job.id = j + 1;
        inst.jobs.push_back(std::move(job));
    }
}

} // namespace detail

/// Two cliques, three processing times, unrelated machines (m = 8|V|, n = 16|V|).
/// `p3` = 0 selects the default n·p2 + 1.
inline Instance reduce_sat_star_two_cliques(const SatStarInstance& phi, std::int64_t p1, std::int64_t p2, std::int64_t p3 = 0) {
    detail::require_valid(phi);
    const detail::SatStarLayout L{phi.variable_count, static_cast<int>(phi.one_in_three.size() + phi.two_in_three.size())};
    if (p3 == 0) p3 = static_cast<std::int64_t>(L.jobs()) * p2 + 1;
    detail::check_increasing({p1, p2, p3});
    const auto kappa = occurrence_map(phi.variable_count, phi.clauses(), 4);
    Instance inst;
    inst.machine_count = L.machines();
    inst.identical = false;
    inst.clique_count = 2;
    detail::fill_jobs(inst, L.jobs());
    for (Job& job : inst.jobs) job.times.assign(static_cast<std::size_t>(inst.machine_count), ProcTime(p3));
    auto set = [&](std::size_t j, MachineId i, std::int64_t p) { inst.jobs[j].times[static_cast<std::size_t>(i)] = ProcTime(p); };
    for (int v = 0; v < L.nv; ++v) {
        for (int i = 1; i <= 4; ++i) {
            const std::size_t j = L.var_job(v, i);
            inst.jobs[j].clique = 0;
            const std::int64_t p = i % 2 == 1 ? p1 : p2;
            set(j, L.var_machine(v, i), p);
            set(j, L.var_machine(v, i % 4 + 1), p);
            const auto [c, pos] = kappa[static_cast<std::size_t>(v)][static_cast<std::size_t>(i - 1)];
            for (auto [job, time] : {std::pair{L.true_job(v, i), p1}, std::pair{L.false_job(v, i), p2}}) {
                inst.jobs[job].clique = 1;
                set(job, L.var_machine(v, i), time);
                set(job, L.clause_machine(c, pos), time);
            }
        }
    }
    for (int c = 0; c < L.nc; ++c)
        for (int q = 1; q <= 3; ++q) {
            const std::size_t j = L.clause_job(c, q);
            inst.jobs[j].clique = 0;
            const std::int64_t p = q == 1 ? p1 : q == 2 ? p2 : (phi.is_one_in_three(c) ? p1 : p2);
            for (int pos = 0; pos < 3; ++pos) set(j, L.clause_machine(c, pos), p);
        }
    check_instance(inst);
    return inst;
}

/// Identical machines with clique eligibility; every clique has at most 2 jobs.
/// Cliques: V[v,1..4] (one variable job each), one clique per consistency pair,
/// then V[C,1..3] (one clause job each).
inline Instance reduce_sat_star_eligibility(const SatStarInstance& phi, std::int64_t p1, std::int64_t p2) {
    detail::require_valid(phi);
    detail::check_increasing({p1, p2});
    const detail::SatStarLayout L{phi.variable_count, static_cast<int>(phi.one_in_three.size() + phi.two_in_three.size())};
    const auto kappa = occurrence_map(phi.variable_count, phi.clauses(), 4);
    Instance inst;
    inst.machine_count = L.machines();
    inst.identical = true;
    detail::fill_jobs(inst, L.jobs());
    int next = 0;
    auto clique = [&](std::vector<MachineId> machines) {
        std::sort(machines.begin(), machines.end());
        inst.clique_eligible[next] = std::move(machines);
        return next++;
    };
    auto set = [&](std::size_t j, int k, std::int64_t p) {
        inst.jobs[j].clique = k;
        inst.jobs[j].times.assign(static_cast<std::size_t>(inst.machine_count), ProcTime(p));
    };
    for (int v = 0; v < L.nv; ++v)
        for (int i = 1; i <= 4; ++i)
            set(L.var_job(v, i), clique({L.var_machine(v, i), L.var_machine(v, i % 4 + 1)}), i % 2 == 1 ? p1 : p2);
    for (int v = 0; v < L.nv; ++v)
        for (int i = 1; i <= 4; ++i) {
            const auto [c, pos] = kappa[static_cast<std::size_t>(v)][static_cast<std::size_t>(i - 1)];
            const int k = clique({L.var_machine(v, i), L.clause_machine(c, pos)});
            set(L.true_job(v, i), k, p1);
            set(L.false_job(v, i), k, p2);
        }
    for (int c = 0; c < L.nc; ++c)
        for (int q = 1; q <= 3; ++q) {
            const std::int64_t p = q == 1 ? p1 : q == 2 ? p2 : (phi.is_one_in_three(c) ? p1 : p2);
            set(L.clause_job(c, q), clique({L.clause_machine(c, 0), L.clause_machine(c, 1), L.clause_machine(c, 2)}), p);
        }
    inst.clique_count = next;
    check_instance(inst);
    return inst;
}

/// m(2p1 + p2): the cost every schedule built from a satisfying valuation reaches.
inline Cost sat_star_target(const SatStarInstance& phi, std::int64_t p1, std::int64_t p2) {
    const auto m = static_cast<std::int64_t>(4 * phi.variable_count + 3 * (phi.one_in_three.size() + phi.two_in_three.size()));
    return m * (2 * p1 + p2);
}

namespace detail {

inline Schedule certify_sat_star(const Instance& inst, const SatStarInstance& phi, const std::vector<bool>& valuation,
                                 std::int64_t p1, std::int64_t p2) {
    if (!satisfies(phi, valuation)) throw ValuationNotSatisfying("the valuation does not satisfy the 3SAT* formula");
    Schedule s = make_schedule(inst, sat_star_assignment(phi, valuation, p1, p2));
    if (s.objective != sat_star_target(phi, p1, p2) || !validate(inst, s).empty())
        throw std::logic_error("certified 3SAT* schedule misses its target");
    return s;
}

} // namespace detail

/// Schedule of cost exactly m(2p1 + p2) for the two-clique reduction.
inline Schedule certify_sat_star_schedule(const SatStarInstance& phi, const std::vector<bool>& valuation, std::int64_t p1,
                                          std::int64_t p2, std::int64_t p3 = 0) {
    return detail::certify_sat_star(reduce_sat_star_two_cliques(phi, p1, p2, p3), phi, valuation, p1, p2);
}

/// Schedule of cost exactly m(2p1 + p2) for the eligibility reduction.
inline Schedule certify_sat_star_eligibility_schedule(const SatStarInstance& phi, const std::vector<bool>& valuation,
                                                      std::int64_t p1, std::int64_t p2) {
    return detail::certify_sat_star(reduce_sat_star_eligibility(phi, p1, p2), phi, valuation, p1, p2);
}

// MAX 3SAT-6 -----------------------------------------------------------------
//
// Machines: m[v,i] = 6v + i - 1, then m[C,pos] = 6|V| + 3C + pos - 1.
// Jobs: j[v,1..6]; j^T[v,i], j^F[v,i]; j[C,1..3]. Cliques: V[v,1..6],
// V*[v,1..6], V[C,1].

namespace detail {

struct Max3Sat6Layout {
    int nv = 0;
    MachineId var_machine(int v, int i) const { return 6 * v + i - 1; }
    MachineId clause_machine(int c, int pos) const { return 6 * nv + 3 * c + pos; }
    std::size_t var_job(int v, int i) const { return static_cast<std::size_t>(6 * v + i - 1); }
    std::size_t true_job(int v, int i) const { return static_cast<std::size_t>(6 * nv + 12 * v + 2 * (i - 1)); }
    std::size_t false_job(int v, int i) const { return true_job(v, i) + 1; }
    std::size_t clause_job(int c, int q) const { return static_cast<std::size_t>(18 * nv + 3 * c + q - 1); }
    int var_clique(int v, int i) const { return 6 * v + i - 1; }
    int pair_clique(int v, int i) const { return 6 * nv + 6 * v + i - 1; }
    int clause_clique(int c) const { return 12 * nv + c; }
    int machines() const { return 12 * nv; }
    int jobs() const { return 24 * nv; }
};

inline void require_valid(const Max3Sat6Instance& psi) {
    auto problems = validate_max3sat6(psi);
    if (!problems.empty()) throw InvalidInstance("invalid MAX 3SAT-6 formula: " + problems.front());
}

} // namespace detail

/// Identical machines with clique eligibility and times p1 < p2 < 2p1:
/// 12|V| machines, 13|V| jobs of size p1 and 11|V| of size p2.
inline Instance reduce_max3sat6(const Max3Sat6Instance& psi, std::int64_t p1, std::int64_t p2) {
    detail::require_valid(psi);
    detail::check_increasing({p1, p2});
    if (p2 >= 2 * p1) throw InvalidTimes("p2 must be below 2·p1");
    const detail::Max3Sat6Layout L{psi.variable_count};
    const auto kappa = occurrence_map(psi.variable_count, psi.clauses, 6);
    Instance inst;
    inst.machine_count = L.machines();
    inst.identical = true;
    inst.clique_count = 14 * L.nv;
    detail::fill_jobs(inst, L.jobs());
    auto set = [&](std::size_t j, int k, std::int64_t p) {
        inst.jobs[j].clique = k;
        inst.jobs[j].times.assign(static_cast<std::size_t>(inst.machine_count), ProcTime(p));
    };
    auto allow = [&](int k, std::vector<MachineId> machines) {
        std::sort(machines.begin(), machines.end());
        inst.clique_eligible[k] = std::move(machines);
    };
    for (int v = 0; v < L.nv; ++v)
        for (int i = 1; i <= 6; ++i) {
            set(L.var_job(v, i), L.var_clique(v, i), i % 2 == 1 ? p1 : p2);
            allow(L.var_clique(v, i), {L.var_machine(v, i), L.var_machine(v, i % 6 + 1)});
            const auto [c, pos] = kappa[static_cast<std::size_t>(v)][static_cast<std::size_t>(i - 1)];
            set(L.true_job(v, i), L.pair_clique(v, i), p1);
            set(L.false_job(v, i), L.pair_clique(v, i), p2);
            allow(L.pair_clique(v, i), {L.var_machine(v, i), L.clause_machine(c, pos)});
        }
    for (int c = 0; c < 2 * L.nv; ++c) {
        for (int q = 1; q <= 3; ++q) set(L.clause_job(c, q), L.clause_clique(c), q == 3 ? p2 : p1);
        allow(L.clause_clique(c), {L.clause_machine(c, 0), L.clause_machine(c, 1), L.clause_machine(c, 2)});
    }
    check_instance(inst);
    const auto short_jobs = std::count_if(inst.jobs.begin(), inst.jobs.end(), [&](const Job& j) { return j.times[0].value() == p1; });
    if (short_jobs != 13 * L.nv || static_cast<int>(inst.jobs.size()) - short_jobs != 11 * L.nv)
        throw std::logic_error("MAX 3SAT-6 reduction produced the wrong job mix");
    return inst;
}

/// 25|V|p1 + 11|V|p2 + (2|V| − k)(p2 − p1)
inline Cost max3sat6_cost(int variable_count, int satisfied, std::int64_t p1, std::int64_t p2) {
    const std::int64_t v = variable_count;
    return 25 * v * p1 + 11 * v * p2 + (2 * v - satisfied) * (p2 - p1);
}

struct Max3Sat6Certificate {
    Schedule schedule;
    int satisfied = 0;
};

/// Schedule built from any total valuation; clause jobs are matched to clause
/// machines at minimum cost.
inline Max3Sat6Certificate certify_max3sat6_schedule(const Max3Sat6Instance& psi, const std::vector<bool>& valuation,
                                                     std::int64_t p1, std::int64_t p2) {
    if (static_cast<int>(valuation.size()) != psi.variable_count) throw PreconditionFailed("valuation has the wrong length");
    const Instance inst = reduce_max3sat6(psi, p1, p2);
    const detail::Max3Sat6Layout L{psi.variable_count};
    const auto kappa = occurrence_map(psi.variable_count, psi.clauses, 6);
    std::vector<MachineId> a(inst.jobs.size(), -1);
    std::vector<std::int64_t> load(static_cast<std::size_t>(inst.machine_count), 0);
    for (int v = 0; v < L.nv; ++v) {
        const bool value = valuation[static_cast<std::size_t>(v)];
        for (int i = 1; i <= 6; ++i) {
            // false shifts every variable job one machine to the right
            const int job = value ? i : (i + 4) % 6 + 1;
            a[L.var_job(v, job)] = L.var_machine(v, i);
            const bool long_job = job % 2 == 0;
            a[long_job ? L.true_job(v, i) : L.false_job(v, i)] = L.var_machine(v, i);
            const auto [c, pos] = kappa[static_cast<std::size_t>(v)][static_cast<std::size_t>(i - 1)];
            const MachineId cm = L.clause_machine(c, pos);
            a[long_job ? L.false_job(v, i) : L.true_job(v, i)] = cm;
            load[static_cast<std::size_t>(cm)] = long_job ? p2 : p1;
        }
    }
    for (int c = 0; c < 2 * L.nv; ++c) {
        std::vector<netopt::WeightedEdge> edges;
        for (int q = 1; q <= 3; ++q)
            for (int pos = 0; pos < 3; ++pos) {
                const std::int64_t held = load[static_cast<std::size_t>(L.clause_machine(c, pos))];
                const std::int64_t p = inst.jobs[L.clause_job(c, q)].times[0].value();
                edges.push_back({q - 1, pos, 2 * std::min(held, p) + std::max(held, p)});
            }
        const auto match = netopt::min_cost_perfect_matching(3, 3, edges);
        for (int q = 1; q <= 3; ++q) a[L.clause_job(c, q)] = L.clause_machine(c, match.left_to_right[static_cast<std::size_t>(q - 1)]);
    }
    Max3Sat6Certificate cert{make_schedule(inst, std::move(a)), satisfied_clauses(psi, valuation)};
    if (!validate(inst, cert.schedule).empty()) throw std::logic_error("certified MAX 3SAT-6 schedule is invalid");
    return cert;
}

} // namespace cliquesched::red
