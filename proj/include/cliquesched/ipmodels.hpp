#pragma once

// Integer programs for clique scheduling: the slot-configuration IP for
// P|cliques,M(k)|ΣC_j and two weighted-completion-time IPs for R|cliques|Σw_jC_j
// (bricks per clique and bricks per machine), with separable convex objectives
// in exact rationals, n-fold structure accounting and a small exact
// branch-and-bound solver.

#include <boost/rational.hpp>

#include <map>
#include <numeric>
#include <sstream>

#include "cliquesched/core.hpp"
#include "cliquesched/oracle.hpp"

namespace cliquesched::ip {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct Variable {
    std::string name;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    int brick = -1; // -1: not part of any brick
};

enum class Relation { Equal, LessEqual, GreaterEqual };

inline const char* to_string(Relation r) {
    switch (r) {
    case Relation::Equal: return "=";
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    }
    return "?";
}

struct Constraint {
    std::string name;
    std::vector<std::pair<int, std::int64_t>> terms; // (variable, coefficient)
    Relation relation = Relation::Equal;
    std::int64_t rhs = 0;
    int brick = -1; // -1: globally uniform row, otherwise local to that brick
};

/// f(x) = quadratic·x² + linear·x + table(x); table[q] is the value at integer q,
/// continued linearly with `tail_slope` past its end. Every piece must be convex.
struct VariableObjective {
    Rational quadratic{0};
    Rational linear{0};
    std::vector<Rational> table;
    Rational tail_slope{0};

    Rational operator()(std::int64_t x) const {
        Rational v = quadratic * x * x + linear * x;
        if (!table.empty()) {
            const auto last = static_cast<std::int64_t>(table.size()) - 1;
            if (x <= last) v += table[static_cast<std::size_t>(x)];
            else v += table.back() + tail_slope * (x - last);
        }
        return v;
    }

    /// Minimum over the integers of [lo, hi].
    Rational minimum(std::int64_t lo, std::int64_t hi) const {
        if (!table.empty()) {
            Rational best = (*this)(lo);
            for (std::int64_t x = lo + 1; x <= hi; ++x) {
                Rational v = (*this)(x);
                if (v < best) best = v;
                else break; // convex: values only grow from here
            }
            return best;
        }
        if (quadratic == Rational{0}) return linear >= Rational{0} ? (*this)(lo) : (*this)(hi);
        const Rational vertex = -linear / (Rational{2} * quadratic);
        auto floor_of = [](const Rational& r) {
            std::int64_t q = r.numerator() / r.denominator();
            if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
            return q;
        };
        std::int64_t a = std::clamp(floor_of(vertex), lo, hi);
        std::int64_t b = std::clamp(a + 1, lo, hi);
        return std::min((*this)(a), (*this)(b));
    }
};

class IpModel {
public:
    std::string name;
    std::vector<Variable> variables;
    std::vector<Constraint> constraints;
    std::map<int, VariableObjective> objective;
    int brick_count = 0;

    int add_variable(std::string var_name, std::int64_t lower, std::int64_t upper, int brick = -1) {
        variables.push_back({std::move(var_name), lower, upper, brick});
        return static_cast<int>(variables.size()) - 1;
    }

    void add_constraint(Constraint c) { constraints.push_back(std::move(c)); }

    Rational objective_value(const std::vector<std::int64_t>& x) const {
        Rational total{0};
        for (const auto& [v, f] : objective) total += f(x[static_cast<std::size_t>(v)]);
        return total;
    }

    bool satisfies(const std::vector<std::int64_t>& x) const {
        for (std::size_t v = 0; v < variables.size(); ++v)
            if (x[v] < variables[v].lower || x[v] > variables[v].upper) return false;
        for (const Constraint& c : constraints) {
            std::int64_t act = 0;
            for (auto [v, a] : c.terms) act += a * x[static_cast<std::size_t>(v)];
            if (c.relation == Relation::Equal && act != c.rhs) return false;
            if (c.relation == Relation::LessEqual && act > c.rhs) return false;
            if (c.relation == Relation::GreaterEqual && act < c.rhs) return false;
        }
        return true;
    }
};

/// Text export: variables, constraints and objective pieces in declaration order.
inline std::string dump(const IpModel& model) {
    std::ostringstream out;
    out << "model " << model.name << "\n";
    out << "variables " << model.variables.size() << "\n";
    for (const Variable& v : model.variables) {
        out << "  " << v.name << " [" << v.lower << ", " << v.upper << "]";
        if (v.brick >= 0) out << " brick " << v.brick + 1;
        out << "\n";
    }
    out << "constraints " << model.constraints.size() << "\n";
    for (const Constraint& c : model.constraints) {
        out << "  " << c.name << ":";
        for (auto [v, a] : c.terms) out << " " << (a < 0 ? "- " : "+ ") << (a < 0 ? -a : a) << " " << model.variables[static_cast<std::size_t>(v)].name;
        out << " " << to_string(c.relation) << " " << c.rhs;
        out << (c.brick >= 0 ? " local " + std::to_string(c.brick + 1) : std::string(" global")) << "\n";
    }
    out << "objective " << model.objective.size() << "\n";
    for (const auto& [v, f] : model.objective) {
        out << "  " << model.variables[static_cast<std::size_t>(v)].name << ":";
        if (f.quadratic != Rational{0}) out << " quadratic " << to_string(f.quadratic);
        if (f.linear != Rational{0}) out << " linear " << to_string(f.linear);
        if (!f.table.empty()) {
            out << " breakpoints";
            for (const Rational& r : f.table) out << " " << to_string(r);
            out << " tail " << to_string(f.tail_slope);
        }
        out << "\n";
    }
    return out.str();
}

// n-fold accounting ---------------------------------------------------------

struct NfoldStructure {
    int n = 0;            // bricks
    int r = 0;            // globally uniform rows
    int s = 0;            // locally uniform rows per brick (maximum)
    int t = 0;            // brick width (maximum)
    std::int64_t delta = 0; // largest absolute constraint entry
    int slack_variables = 0; // one per inequality row, not counted in t
    std::int64_t bound_range = 0; // ‖u − ℓ‖∞
};

inline NfoldStructure nfold_structure(const IpModel& model) {
    NfoldStructure ns;
    ns.n = model.brick_count;
    std::vector<int> width(static_cast<std::size_t>(model.brick_count), 0);
    std::vector<int> local(static_cast<std::size_t>(model.brick_count), 0);
    for (const Variable& v : model.variables) {
        if (v.brick >= 0) ++width[static_cast<std::size_t>(v.brick)];
        ns.bound_range = std::max(ns.bound_range, v.upper - v.lower);
    }
    for (const Constraint& c : model.constraints) {
        if (c.brick < 0) ++ns.r;
        else ++local[static_cast<std::size_t>(c.brick)];
        if (c.relation != Relation::Equal) ++ns.slack_variables;
        for (auto [v, a] : c.terms) ns.delta = std::max(ns.delta, a < 0 ? -a : a);
    }
    for (int w : width) ns.t = std::max(ns.t, w);
    for (int l : local) ns.s = std::max(ns.s, l);
    return ns;
}

/// Checks the n-fold shape: every variable sits in a brick and every local row
/// touches only its own brick. Returns the problems found (empty = valid).
inline std::vector<std::string> verify_nfold(const IpModel& model) {
    std::vector<std::string> problems;
    for (const Variable& v : model.variables)
        if (v.brick < 0 || v.brick >= model.brick_count) problems.push_back("variable " + v.name + " is outside every brick");
    for (const Constraint& c : model.constraints) {
        if (c.brick >= model.brick_count) problems.push_back("row " + c.name + " names a missing brick");
        if (c.brick < 0) continue;
        for (auto [v, a] : c.terms)
            if (model.variables[static_cast<std::size_t>(v)].brick != c.brick)
                problems.push_back("local row " + c.name + " touches " + model.variables[static_cast<std::size_t>(v)].name +
                                   " of another brick");
    }
    return problems;
}

// Exact solver ----------------------------------------------------------------

struct IpSolution {
    std::vector<std::int64_t> values;
    Rational objective{0};
    std::uint64_t nodes = 0;

    /// The objective as an integer; throws std::logic_error if it is fractional.
    std::int64_t integral_objective() const {
        if (objective.denominator() != 1) throw std::logic_error("IP optimum is not integral: " + to_string(objective));
        return objective.numerator();
    }
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Bound propagation to a fixpoint; false when some row cannot be satisfied.
// Activities go stale within a sweep, which only weakens that sweep's bounds.
inline bool propagate(const IpModel& model, std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Constraint& c : model.constraints) {
            std::int64_t min_act = 0;
            std::int64_t max_act = 0;
            for (auto [v, a] : c.terms) {
                auto uv = static_cast<std::size_t>(v);
                min_act += a > 0 ? a * lo[uv] : a * hi[uv];
                max_act += a > 0 ? a * hi[uv] : a * lo[uv];
            }
            const bool upper = c.relation != Relation::GreaterEqual; // activity ≤ rhs
            const bool lower = c.relation != Relation::LessEqual;    // activity ≥ rhs
            if (upper && min_act > c.rhs) return false;
            if (lower && max_act < c.rhs) return false;
            for (auto [v, a] : c.terms) {
                auto uv = static_cast<std::size_t>(v);
                if (upper) {
                    // a·x ≤ rhs − (min_act − own minimum)
                    const std::int64_t own = a > 0 ? a * lo[uv] : a * hi[uv];
                    const std::int64_t room = c.rhs - (min_act - own);
                    if (a > 0) {
                        std::int64_t nb = floor_div(room, a);
                        if (nb < hi[uv]) hi[uv] = nb, changed = true;
                    } else {
                        std::int64_t nb = ceil_div(room, a);
                        if (nb > lo[uv]) lo[uv] = nb, changed = true;
                    }
                }
                if (lower) {
                    const std::int64_t own = a > 0 ? a * hi[uv] : a * lo[uv];
                    const std::int64_t need = c.rhs - (max_act - own);
                    if (a > 0) {
                        std::int64_t nb = ceil_div(need, a);
                        if (nb > lo[uv]) lo[uv] = nb, changed = true;
                    } else {
                        std::int64_t nb = floor_div(need, a);
                        if (nb < hi[uv]) hi[uv] = nb, changed = true;
                    }
                }
                if (lo[uv] > hi[uv]) return false;
            }
        }
    }
    return true;
}

} // namespace detail

/// Depth-first branch and bound: variables in declaration order, lower value
/// first, bound propagation at each node, separable lower bound for pruning.
inline IpSolution solve_ip_exact(const IpModel& model, std::uint64_t budget = kDefaultBudget) {
    const std::size_t nv = model.variables.size();
    std::vector<std::int64_t> lo(nv), hi(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        lo[v] = model.variables[v].lower;
        hi[v] = model.variables[v].upper;
    }
    std::optional<IpSolution> best;
    std::uint64_t nodes = 0;

    auto dfs = [&](auto&& self, std::vector<std::int64_t> l, std::vector<std::int64_t> h, std::size_t from) -> void {
        if (++nodes > budget) throw BudgetExceeded("IP search exceeded its budget of " + std::to_string(budget) + " nodes");
        if (!detail::propagate(model, l, h)) return;
        if (best) {
            Rational bound{0};
            for (const auto& [v, f] : model.objective) bound += f.minimum(l[static_cast<std::size_t>(v)], h[static_cast<std::size_t>(v)]);
            if (bound >= best->objective) return;
        }
        std::size_t pick = from;
        while (pick < nv && l[pick] == h[pick]) ++pick;
        if (pick == nv) {
            if (!model.satisfies(l)) return;
            Rational value = model.objective_value(l);
            if (!best || value < best->objective) best = IpSolution{l, value, 0};
            return;
        }
        for (std::int64_t val = l[pick]; val <= h[pick]; ++val) {
            auto nl = l;
            auto nh = h;
            nl[pick] = nh[pick] = val;
            self(self, std::move(nl), std::move(nh), pick + 1);
        }
    };
    dfs(dfs, lo, hi, 0);
    if (!best) throw InfeasibleModel("model " + model.name + " has no integral solution");
    best->nodes = nodes;
    return *best;
}

// Slot configurations and the clique-restriction IP -------------------------

/// Vector over {0..b}^b (1-based cliques, 0 = empty slot) in chronological slot order.
using SlotConfiguration = std::vector<int>;

/// All configurations: distinct non-zero entries, zeros only as a prefix.
inline std::vector<SlotConfiguration> enumerate_slot_configurations(int b) {
    std::vector<SlotConfiguration> out;
    std::vector<int> cur;
    std::vector<char> used(static_cast<std::size_t>(std::max(b, 0)) + 1, 0);
    for (int len = 0; len <= b; ++len) {
        auto rec = [&](auto&& self) -> void {
            if (static_cast<int>(cur.size()) == len) {
                SlotConfiguration c(static_cast<std::size_t>(b - len), 0);
                c.insert(c.end(), cur.begin(), cur.end());
                out.push_back(std::move(c));
                return;
            }
            for (int k = 1; k <= b; ++k) {
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

inline bool is_slot_configuration(const SlotConfiguration& c, int b) {
    if (static_cast<int>(c.size()) != b) return false;
    std::vector<char> seen(static_cast<std::size_t>(b) + 1, 0);
    for (std::size_t l = 0; l < c.size(); ++l) {
        if (c[l] < 0 || c[l] > b) return false;
        if (c[l] > 0) {
            if (seen[static_cast<std::size_t>(c[l])]++) return false;
            if (l + 1 < c.size() && c[l + 1] == 0) return false;
        }
    }
    return true;
}

/// Convex piecewise-linear extension of the prefix sums of `sorted` (non-decreasing):
/// slope sorted[0] before 1, sorted[⌈x⌉−1] inside, sorted.back() past the end.
inline Rational g_tilde(const std::vector<std::int64_t>& sorted, const Rational& x) {
    if (sorted.empty() || x <= Rational{0}) return Rational{0};
    const auto nk = static_cast<std::int64_t>(sorted.size());
    std::int64_t whole = x.numerator() / x.denominator();
    Rational frac = x - whole;
    if (whole >= nk) {
        Rational total{0};
        for (std::int64_t p : sorted) total += p;
        return total + Rational(sorted.back()) * (x - nk);
    }
    Rational total{0};
    for (std::int64_t s = 0; s < whole; ++s) total += sorted[static_cast<std::size_t>(s)];
    return total + Rational(sorted[static_cast<std::size_t>(whole)]) * frac;
}

struct BagModel {
    IpModel model;
    std::vector<SlotConfiguration> configurations;
    std::vector<std::vector<int>> x; // [configuration][machine]
    std::vector<std::vector<int>> y; // [clique][layer]
};

namespace detail {

inline void check_bag_instance(const Instance& inst) {
    if (!inst.identical) throw PreconditionFailed("bag IP: machines are not identical");
    if (!inst.unit_weights()) throw PreconditionFailed("bag IP: weights must all be 1");
    if (inst.has_job_eligibility()) throw PreconditionFailed("bag IP: per-job eligibility is not supported");
}

inline bool configuration_eligible(const Instance& inst, const SlotConfiguration& c, MachineId i) {
    for (int k : c) {
        if (k == 0) continue;
        auto it = inst.clique_eligible.find(k - 1);
        if (it != inst.clique_eligible.end() && !std::binary_search(it->second.begin(), it->second.end(), i)) return false;
    }
    return true;
}

inline std::vector<std::vector<std::int64_t>> sorted_clique_sizes(const Instance& inst) {
    std::vector<std::vector<std::int64_t>> sizes(static_cast<std::size_t>(inst.clique_count));
    for (std::size_t j = 0; j < inst.jobs.size(); ++j)
        sizes[static_cast<std::size_t>(inst.jobs[j].clique)].push_back(inst.time(j, 0));
    for (auto& s : sizes) std::sort(s.begin(), s.end());
    return sizes;
}

inline VariableObjective prefix_sum_objective(const std::vector<std::int64_t>& sorted) {
    VariableObjective f;
    f.table.push_back(Rational{0});
    for (std::size_t q = 1; q <= sorted.size(); ++q) f.table.push_back(g_tilde(sorted, Rational(static_cast<std::int64_t>(q))));
    f.tail_slope = sorted.empty() ? Rational{0} : Rational(sorted.back());
    return f;
}

inline std::string idx(std::initializer_list<int> parts) {
    std::string s = "[";
    bool first = true;
    for (int p : parts) {
        if (!first) s += ",";
        s += std::to_string(p);
        first = false;
    }
    return s + "]";
}

} // namespace detail

/// Compact clique-restriction IP: x_{C,i} ∈ {0,1}, y_{k,l} ∈ {0..n}.
inline BagModel build_bag_restriction_ip(const Instance& inst) {
    detail::check_bag_instance(inst);
    const int m = inst.machine_count;
    const int b = inst.clique_count;
    const auto n = static_cast<std::int64_t>(inst.jobs.size());
    BagModel bm;
    bm.model.name = "bag";
    bm.model.brick_count = m;
    bm.configurations = enumerate_slot_configurations(b);
    const auto sizes = detail::sorted_clique_sizes(inst);
    bm.x.assign(bm.configurations.size(), std::vector<int>(static_cast<std::size_t>(m), -1));
    for (MachineId i = 0; i < m; ++i)
        for (std::size_t c = 0; c < bm.configurations.size(); ++c) {
            const bool ok = detail::configuration_eligible(inst, bm.configurations[c], i);
            bm.x[c][static_cast<std::size_t>(i)] =
                bm.model.add_variable("x" + detail::idx({static_cast<int>(c) + 1, i + 1}), 0, ok ? 1 : 0, i);
        }
    bm.y.assign(static_cast<std::size_t>(b), std::vector<int>(static_cast<std::size_t>(b), -1));
    for (int k = 0; k < b; ++k)
        for (int l = 0; l < b; ++l)
            bm.y[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = bm.model.add_variable("y" + detail::idx({k + 1, l + 1}), 0, n);

    for (MachineId i = 0; i < m; ++i) {
        Constraint c{"one_configuration" + detail::idx({i + 1}), {}, Relation::Equal, 1, i};
        for (std::size_t q = 0; q < bm.configurations.size(); ++q) c.terms.emplace_back(bm.x[q][static_cast<std::size_t>(i)], 1);
        bm.model.add_constraint(std::move(c));
    }
    for (int k = 0; k < b; ++k)
        for (int l = 0; l < b; ++l) {
            Constraint c{"count_slots" + detail::idx({k + 1, l + 1}), {}, Relation::Equal, 0, -1};
            for (std::size_t q = 0; q < bm.configurations.size(); ++q) {
                const auto& conf = bm.configurations[q];
                if (std::find(conf.begin(), conf.begin() + l + 1, k + 1) == conf.begin() + l + 1) continue;
                for (MachineId i = 0; i < m; ++i) c.terms.emplace_back(bm.x[q][static_cast<std::size_t>(i)], 1);
            }
            c.terms.emplace_back(bm.y[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)], -1);
            bm.model.add_constraint(std::move(c));
        }
    for (int k = 0; k < b; ++k)
        bm.model.add_constraint({"cover" + detail::idx({k + 1}), {{bm.y[static_cast<std::size_t>(k)][static_cast<std::size_t>(b - 1)], 1}},
                                 Relation::Equal, static_cast<std::int64_t>(sizes[static_cast<std::size_t>(k)].size()), -1});
    for (int k = 0; k < b; ++k) {
        const VariableObjective f = detail::prefix_sum_objective(sizes[static_cast<std::size_t>(k)]);
        for (int l = 0; l < b; ++l) bm.model.objective[bm.y[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]] = f;
    }
    return bm;
}

/// The same IP with y duplicated per machine (pinned to 0 off machine 1), which
/// exhibits the n-fold shape: one brick per machine.
inline IpModel build_bag_nfold_ip(const Instance& inst) {
    detail::check_bag_instance(inst);
    const int m = inst.machine_count;
    const int b = inst.clique_count;
    const auto n = static_cast<std::int64_t>(inst.jobs.size());
    const auto configs = enumerate_slot_configurations(b);
    const auto sizes = detail::sorted_clique_sizes(inst);
    IpModel model;
    model.name = "bag-nfold";
    model.brick_count = m;
    std::vector<std::vector<int>> x(configs.size(), std::vector<int>(static_cast<std::size_t>(m)));
    std::vector<std::vector<std::vector<int>>> y(static_cast<std::size_t>(b),
                                                 std::vector<std::vector<int>>(static_cast<std::size_t>(b), std::vector<int>(static_cast<std::size_t>(m))));
    for (MachineId i = 0; i < m; ++i) {
        for (std::size_t c = 0; c < configs.size(); ++c)
            x[c][static_cast<std::size_t>(i)] = model.add_variable("x" + detail::idx({static_cast<int>(c) + 1, i + 1}), 0,
                                                                  detail::configuration_eligible(inst, configs[c], i) ? 1 : 0, i);
        for (int k = 0; k < b; ++k)
            for (int l = 0; l < b; ++l)
                y[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] =
                    model.add_variable("y" + detail::idx({k + 1, l + 1, i + 1}), 0, i == 0 ? n : 0, i);
    }
    for (MachineId i = 0; i < m; ++i) {
        Constraint c{"one_configuration" + detail::idx({i + 1}), {}, Relation::Equal, 1, i};
        for (std::size_t q = 0; q < configs.size(); ++q) c.terms.emplace_back(x[q][static_cast<std::size_t>(i)], 1);
        model.add_constraint(std::move(c));
    }
    for (int k = 0; k < b; ++k)
        for (int l = 0; l < b; ++l) {
            Constraint c{"count_slots" + detail::idx({k + 1, l + 1}), {}, Relation::Equal, 0, -1};
            for (MachineId i = 0; i < m; ++i) {
                for (std::size_t q = 0; q < configs.size(); ++q)
                    if (std::find(configs[q].begin(), configs[q].begin() + l + 1, k + 1) != configs[q].begin() + l + 1)
                        c.terms.emplace_back(x[q][static_cast<std::size_t>(i)], 1);
                c.terms.emplace_back(y[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)][static_cast<std::size_t>(i)], -1);
            }
            model.add_constraint(std::move(c));
        }
    for (int k = 0; k < b; ++k) {
        Constraint c{"cover" + detail::idx({k + 1}), {}, Relation::Equal, static_cast<std::int64_t>(sizes[static_cast<std::size_t>(k)].size()), -1};
        for (MachineId i = 0; i < m; ++i) c.terms.emplace_back(y[static_cast<std::size_t>(k)][static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(i)], 1);
        model.add_constraint(std::move(c));
    }
    for (int k = 0; k < b; ++k) {
        const VariableObjective f = detail::prefix_sum_objective(sizes[static_cast<std::size_t>(k)]);
        for (int l = 0; l < b; ++l) model.objective[y[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)][0]] = f;
    }
    return model;
}

/// Greedy decode: for each clique, the smallest unscheduled job takes a
/// reserved slot in the lowest (earliest) layer, lowest machine first.
inline Schedule decode_bag_assignment(const Instance& inst, const BagModel& bm, const std::vector<std::int64_t>& values) {
    const int m = inst.machine_count;
    const int b = inst.clique_count;
    std::vector<const SlotConfiguration*> tau(static_cast<std::size_t>(m), nullptr);
    for (MachineId i = 0; i < m; ++i)
        for (std::size_t c = 0; c < bm.configurations.size(); ++c)
            if (values[static_cast<std::size_t>(bm.x[c][static_cast<std::size_t>(i)])] == 1) tau[static_cast<std::size_t>(i)] = &bm.configurations[c];
    std::vector<MachineId> a(inst.jobs.size(), -1);
    auto members = inst.clique_members();
    for (int k = 0; k < b; ++k) {
        auto& jobs = members[static_cast<std::size_t>(k)];
        std::stable_sort(jobs.begin(), jobs.end(), [&](std::size_t p, std::size_t q) { return inst.time(p, 0) < inst.time(q, 0); });
        std::size_t next = 0;
        for (int l = 0; l < b; ++l)
            for (MachineId i = 0; i < m; ++i) {
                const auto* conf = tau[static_cast<std::size_t>(i)];
                if (!conf || (*conf)[static_cast<std::size_t>(l)] != k + 1) continue;
                if (next >= jobs.size()) throw PreconditionFailed("bag decode: more slots than jobs in a clique");
                a[jobs[next++]] = i;
            }
        if (next != jobs.size()) throw PreconditionFailed("bag decode: a clique is not covered");
    }
    return make_schedule(inst, std::move(a));
}

// Weighted completion time IPs ------------------------------------------------

struct JobKind {
    std::int64_t weight = 1;
    std::vector<ProcTime> times; // effective times, INFINITY where forbidden
};

/// Kinds of an instance (numbered by first appearance) and the kind of each job.
inline std::pair<std::vector<JobKind>, std::vector<int>> job_kind_table(const Instance& inst) {
    std::vector<int> kind = inst.job_kinds();
    std::vector<JobKind> kinds;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        if (kind[j] < static_cast<int>(kinds.size())) continue;
        JobKind jk{inst.jobs[j].weight, {}};
        for (MachineId i = 0; i < inst.machine_count; ++i) jk.times.push_back(inst.effective_time(j, i));
        kinds.push_back(std::move(jk));
    }
    return {kinds, kind};
}

/// π_i: kinds by Smith ratio w/p on machine i (ties: smaller p, then index);
/// kinds that cannot run on i come last.
inline std::vector<int> smith_permutation(const std::vector<JobKind>& kinds, MachineId i) {
    std::vector<int> order(kinds.size());
    std::iota(order.begin(), order.end(), 0);
    auto ui = static_cast<std::size_t>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const JobKind& ka = kinds[static_cast<std::size_t>(a)];
        const JobKind& kb = kinds[static_cast<std::size_t>(b)];
        const bool fa = ka.times[ui].finite();
        const bool fb = kb.times[ui].finite();
        if (fa != fb) return fa;
        if (!fa) return false;
        return cliquesched::detail::smith_before(ka.weight, ka.times[ui].value(), a, kb.weight, kb.times[ui].value(), b);
    });
    return order;
}

/// ρ_i(kind): w/p on machine i, 0 when the kind cannot run there.
inline Rational smith_ratio(const JobKind& k, MachineId i) {
    const ProcTime p = k.times[static_cast<std::size_t>(i)];
    return p.finite() ? Rational(k.weight, p.value()) : Rational{0};
}

/// Weighted completion time of `counts[kind]` jobs on machine i in the separable
/// form Σ_j ½ z_j² (ρ_j − ρ_{j+1}) + ½ x_j p_j w_j, evaluated exactly.
inline Rational machine_contribution(const std::vector<JobKind>& kinds, MachineId i, const std::vector<std::int64_t>& counts) {
    const auto pi = smith_permutation(kinds, i);
    const auto ui = static_cast<std::size_t>(i);
    Rational total{0};
    std::int64_t z = 0;
    for (std::size_t pos = 0; pos < pi.size(); ++pos) {
        const JobKind& k = kinds[static_cast<std::size_t>(pi[pos])];
        const std::int64_t x = counts[static_cast<std::size_t>(pi[pos])];
        if (x == 0) {
            // contributes only through z, which is unchanged
        } else {
            z += k.times[ui].value() * x;
            total += Rational(x * k.times[ui].value() * k.weight, 2);
        }
        const Rational next = pos + 1 < pi.size() ? smith_ratio(kinds[static_cast<std::size_t>(pi[pos + 1])], i) : Rational{0};
        total += Rational(z * z, 2) * (smith_ratio(k, i) - next);
    }
    return total;
}

enum class WctLayout {
    CliqueBricks,  // one brick per clique plus one for z; cover and clique rows local
    MachineBricks, // one brick per machine; cover rows global
};

struct WctModel {
    IpModel model;
    std::vector<JobKind> kinds;
    std::vector<int> job_kind;
    std::vector<std::vector<std::vector<int>>> x; // [kind][clique][machine]
    std::vector<std::vector<int>> z;              // [machine][position in π_i]
};

inline WctModel build_wct_ip(const Instance& inst, WctLayout layout) {
    const int m = inst.machine_count;
    const int b = inst.clique_count;
    WctModel wm;
    std::tie(wm.kinds, wm.job_kind) = job_kind_table(inst);
    const auto theta = static_cast<int>(wm.kinds.size());
    std::int64_t p_max = 0;
    for (const JobKind& k : wm.kinds)
        for (ProcTime p : k.times)
            if (p.finite()) p_max = std::max(p_max, p.value());
    std::vector<std::vector<std::int64_t>> n_jk(static_cast<std::size_t>(theta), std::vector<std::int64_t>(static_cast<std::size_t>(b), 0));
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) ++n_jk[static_cast<std::size_t>(wm.job_kind[j])][static_cast<std::size_t>(inst.jobs[j].clique)];

    IpModel& model = wm.model;
    const bool by_clique = layout == WctLayout::CliqueBricks;
    model.name = by_clique ? "wct-machines" : "wct-cliques";
    model.brick_count = by_clique ? b + 1 : m;
    wm.x.assign(static_cast<std::size_t>(theta),
                std::vector<std::vector<int>>(static_cast<std::size_t>(b), std::vector<int>(static_cast<std::size_t>(m), -1)));
    wm.z.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(theta), -1));
    std::vector<std::vector<int>> pi(static_cast<std::size_t>(m));
    for (MachineId i = 0; i < m; ++i) pi[static_cast<std::size_t>(i)] = smith_permutation(wm.kinds, i);

    auto add_x = [&](int j, int k, MachineId i, int brick) {
        const bool can = wm.kinds[static_cast<std::size_t>(j)].times[static_cast<std::size_t>(i)].finite();
        wm.x[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
            model.add_variable("x" + detail::idx({j + 1, k + 1, i + 1}), 0, can ? 1 : 0, brick);
    };
    auto add_z = [&](MachineId i, int brick) {
        for (int pos = 0; pos < theta; ++pos)
            wm.z[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos)] =
                model.add_variable("z" + detail::idx({pos + 1, i + 1}), 0, static_cast<std::int64_t>(b) * p_max, brick);
    };
    if (by_clique) {
        for (int k = 0; k < b; ++k)
            for (MachineId i = 0; i < m; ++i)
                for (int j = 0; j < theta; ++j) add_x(j, k, i, k);
        for (MachineId i = 0; i < m; ++i) add_z(i, b);
    } else {
        for (MachineId i = 0; i < m; ++i) {
            for (int k = 0; k < b; ++k)
                for (int j = 0; j < theta; ++j) add_x(j, k, i, i);
            add_z(i, i);
        }
    }
    auto X = [&](int j, int k, MachineId i) {
        return wm.x[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    };

    // (1) every kind of every clique is fully placed
    for (int k = 0; k < b; ++k)
        for (int j = 0; j < theta; ++j) {
            Constraint c{"cover" + detail::idx({j + 1, k + 1}), {}, Relation::Equal,
                         n_jk[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)], by_clique ? k : -1};
            for (MachineId i = 0; i < m; ++i) c.terms.emplace_back(X(j, k, i), 1);
            model.add_constraint(std::move(c));
        }
    // (2) z_j^i is the processing volume of the first j kinds in Smith order
    for (MachineId i = 0; i < m; ++i)
        for (int pos = 0; pos < theta; ++pos) {
            Constraint c{"prefix" + detail::idx({pos + 1, i + 1}), {}, Relation::Equal, 0, by_clique ? -1 : i};
            for (int k = 0; k < b; ++k)
                for (int l = 0; l <= pos; ++l) {
                    const int j = pi[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
                    const ProcTime p = wm.kinds[static_cast<std::size_t>(j)].times[static_cast<std::size_t>(i)];
                    if (p.finite()) c.terms.emplace_back(X(j, k, i), p.value());
                }
            c.terms.emplace_back(wm.z[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos)], -1);
            model.add_constraint(std::move(c));
        }
    // (3) at most one job of each clique per machine
    for (MachineId i = 0; i < m; ++i)
        for (int k = 0; k < b; ++k) {
            Constraint c{"clique" + detail::idx({k + 1, i + 1}), {}, Relation::LessEqual, 1, by_clique ? k : i};
            for (int j = 0; j < theta; ++j) c.terms.emplace_back(X(j, k, i), 1);
            model.add_constraint(std::move(c));
        }
    // Objective: ½ z² (ρ_pos − ρ_pos+1) + ½ x p w
    for (MachineId i = 0; i < m; ++i) {
        const auto& order = pi[static_cast<std::size_t>(i)];
        for (int pos = 0; pos < theta; ++pos) {
            const JobKind& kind = wm.kinds[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])];
            const Rational next = pos + 1 < theta ? smith_ratio(wm.kinds[static_cast<std::size_t>(order[static_cast<std::size_t>(pos + 1)])], i) : Rational{0};
            VariableObjective fz;
            fz.quadratic = (smith_ratio(kind, i) - next) / Rational{2};
            model.objective[wm.z[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos)]] = fz;
        }
        for (int j = 0; j < theta; ++j) {
            const ProcTime p = wm.kinds[static_cast<std::size_t>(j)].times[static_cast<std::size_t>(i)];
            if (!p.finite()) continue;
            for (int k = 0; k < b; ++k) {
                VariableObjective fx;
                fx.linear = Rational(p.value() * wm.kinds[static_cast<std::size_t>(j)].weight, 2);
                model.objective[X(j, k, i)] = fx;
            }
        }
    }
    return wm;
}

/// Bricks per clique plus one brick for the z variables.
inline WctModel build_wct_machines_ip(const Instance& inst) { return build_wct_ip(inst, WctLayout::CliqueBricks); }

/// One brick per machine.
inline WctModel build_wct_cliques_ip(const Instance& inst) { return build_wct_ip(inst, WctLayout::MachineBricks); }

/// Places x_{j,k}^i jobs of kind j from clique k on machine i.
inline Schedule decode_wct_assignment(const Instance& inst, const WctModel& wm, const std::vector<std::int64_t>& values) {
    std::vector<MachineId> a(inst.jobs.size(), -1);
    const int m = inst.machine_count;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        const int kind = wm.job_kind[j];
        const int k = inst.jobs[j].clique;
        for (MachineId i = 0; i < m; ++i) {
            const int var = wm.x[static_cast<std::size_t>(kind)][static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
            bool taken = false;
            for (std::size_t q = 0; q < j; ++q)
                if (a[q] == i && wm.job_kind[q] == kind && inst.jobs[q].clique == k) taken = true;
            if (values[static_cast<std::size_t>(var)] == 1 && !taken) {
                a[j] = i;
                break;
            }
        }
        if (a[j] < 0) throw PreconditionFailed("wct decode: job " + std::to_string(inst.jobs[j].id) + " is not covered");
    }
    return make_schedule(inst, std::move(a));
}

/// Solves the instance through the matching IP and decodes the result.
inline Schedule solve_with_ip(const Instance& inst, std::uint64_t budget = kDefaultBudget) {
    if (inst.identical && inst.unit_weights() && !inst.has_job_eligibility()) {
        BagModel bm = build_bag_restriction_ip(inst);
        IpSolution sol;
        try {
            sol = solve_ip_exact(bm.model, budget);
        } catch (const InfeasibleModel&) {
            throw Infeasible("bag IP has no feasible solution");
        }
        Schedule s = decode_bag_assignment(inst, bm, sol.values);
        if (s.objective != sol.integral_objective()) throw std::logic_error("bag IP optimum differs from its decoded schedule");
        return s;
    }
    WctModel wm = build_wct_machines_ip(inst);
    IpSolution sol;
    try {
        sol = solve_ip_exact(wm.model, budget);
    } catch (const InfeasibleModel&) {
        throw Infeasible("weighted IP has no feasible solution");
    }
    Schedule s = decode_wct_assignment(inst, wm, sol.values);
    if (s.objective != sol.integral_objective()) throw std::logic_error("weighted IP optimum differs from its decoded schedule");
    return s;
}

} // namespace cliquesched::ip
