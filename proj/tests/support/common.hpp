#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "cliquesched/oracle.hpp"

namespace testsupport {

inline constexpr std::int64_t kInf = -1;

/// Time table from integer rows; kInf marks a forbidden machine.
inline std::vector<std::vector<cliquesched::ProcTime>> rows(std::initializer_list<std::initializer_list<std::int64_t>> table) {
    std::vector<std::vector<cliquesched::ProcTime>> out;
    for (auto row : table) {
        out.emplace_back();
        for (std::int64_t p : row) out.back().push_back(p == kInf ? cliquesched::ProcTime::infinity() : cliquesched::ProcTime(p));
    }
    return out;
}

/// Oracle objective, or nullopt when the instance has no feasible schedule.
inline std::optional<cliquesched::Cost> oracle_value(const cliquesched::Instance& inst) {
    try {
        return cliquesched::oracle_optimum(inst).objective;
    } catch (const cliquesched::Infeasible&) {
        return std::nullopt;
    }
}

/// Solver objective, or nullopt when it reports infeasibility.
template <class Solver>
std::optional<cliquesched::Cost> solver_value(const cliquesched::Instance& inst, Solver&& solver) {
    try {
        cliquesched::Schedule s = solver(inst);
        if (!cliquesched::validate(inst, s).empty()) return -1;
        return s.objective;
    } catch (const cliquesched::Infeasible&) {
        return std::nullopt;
    }
}

} // namespace testsupport
