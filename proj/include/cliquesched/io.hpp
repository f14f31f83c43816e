#pragma once

// JSON instance and schedule formats. Machines and cliques are 1-based on
// disk and 0-based in memory. Objects are written with sorted keys so equal
// values always serialize to identical bytes.

#include <set>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "cliquesched/core.hpp"

namespace cliquesched::io {

using json = nlohmann::json;

namespace detail {

inline void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* name : allowed)
            if (it.key() == name) known = true;
        if (!known) throw ParseError(where + ": unknown field '" + it.key() + "'");
    }
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
    return *it;
}

inline std::int64_t as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
    return v.get<std::int64_t>();
}

inline std::vector<MachineId> machine_set(const json& v, int machines, const std::string& where) {
    if (!v.is_array()) throw ParseError(where + ": expected an array of machines");
    std::vector<MachineId> out;
    for (const json& e : v) {
        auto i = as_int(e, where);
        if (i < 1 || i > machines) throw ParseError(where + ": machine " + std::to_string(i) + " out of range");
        out.push_back(static_cast<MachineId>(i - 1));
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw ParseError(where + ": repeated machine");
    return out;
}

inline json machine_set_json(const std::vector<MachineId>& set) {
    json arr = json::array();
    for (MachineId i : set) arr.push_back(i + 1);
    return arr;
}

} // namespace detail

inline Instance instance_from_json(const json& doc) {
    using namespace detail;
    reject_unknown(doc, {"machines", "kind", "cliques", "jobs", "clique_eligible"}, "instance");
    Instance inst;
    inst.machine_count = static_cast<int>(as_int(require(doc, "machines", "instance"), "machines"));
    if (inst.machine_count <= 0) throw ParseError("machines: must be positive");
    const json& kind = require(doc, "kind", "instance");
    if (kind == "identical") inst.identical = true;
    else if (kind == "unrelated") inst.identical = false;
    else throw ParseError("kind: expected \"identical\" or \"unrelated\"");
    inst.clique_count = static_cast<int>(as_int(require(doc, "cliques", "instance"), "cliques"));
    if (inst.clique_count <= 0) throw ParseError("cliques: must be positive");

    const json& jobs = require(doc, "jobs", "instance");
    if (!jobs.is_array()) throw ParseError("jobs: expected an array");
    for (std::size_t idx = 0; idx < jobs.size(); ++idx) {
        const json& jj = jobs[idx];
        const std::string where = "jobs[" + std::to_string(idx) + "]";
        reject_unknown(jj, {"id", "weight", "clique", "times", "eligible"}, where);
        Job job;
        job.id = as_int(require(jj, "id", where), where + ".id");
        job.weight = jj.contains("weight") ? as_int(jj["weight"], where + ".weight") : 1;
        auto k = as_int(require(jj, "clique", where), where + ".clique");
        if (k < 1 || k > inst.clique_count) throw ParseError(where + ".clique: out of range");
        job.clique = static_cast<int>(k - 1);
        const json& times = require(jj, "times", where);
        if (inst.identical) {
            if (!times.is_number_integer()) throw ParseError(where + ".times: identical machines take a scalar time");
            job.times.assign(static_cast<std::size_t>(inst.machine_count), ProcTime(as_int(times, where + ".times")));
        } else {
            if (!times.is_array() || times.size() != static_cast<std::size_t>(inst.machine_count))
                throw ParseError(where + ".times: expected an array with one entry per machine");
            for (const json& t : times)
                job.times.push_back(t.is_null() ? ProcTime::infinity() : ProcTime(as_int(t, where + ".times")));
        }
        for (ProcTime p : job.times)
            if (p.finite() && p.value() <= 0) throw ParseError(where + ".times: times must be positive");
        if (jj.contains("eligible")) job.eligible = machine_set(jj["eligible"], inst.machine_count, where + ".eligible");
        inst.jobs.push_back(std::move(job));
    }

    if (doc.contains("clique_eligible")) {
        const json& ce = doc["clique_eligible"];
        if (!ce.is_object()) throw ParseError("clique_eligible: expected an object");
        for (auto it = ce.begin(); it != ce.end(); ++it) {
            int k = 0;
            try {
                std::size_t used = 0;
                k = std::stoi(it.key(), &used);
                if (used != it.key().size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ParseError("clique_eligible: key '" + it.key() + "' is not a clique number");
            }
            if (k < 1 || k > inst.clique_count) throw ParseError("clique_eligible: clique " + it.key() + " out of range");
            inst.clique_eligible[k - 1] = machine_set(it.value(), inst.machine_count, "clique_eligible." + it.key());
        }
    }
    try {
        check_instance(inst);
    } catch (const InvalidInstance& e) {
        throw ParseError(e.what());
    }
    return inst;
}

inline json instance_to_json(const Instance& inst) {
    json doc;
    doc["machines"] = inst.machine_count;
    doc["kind"] = inst.identical ? "identical" : "unrelated";
    doc["cliques"] = inst.clique_count;
    json jobs = json::array();
    for (const Job& job : inst.jobs) {
        json jj;
        jj["id"] = job.id;
        jj["weight"] = job.weight;
        jj["clique"] = job.clique + 1;
        if (inst.identical) {
            jj["times"] = job.times.front().value();
        } else {
            json times = json::array();
            for (ProcTime p : job.times) times.push_back(p.finite() ? json(p.value()) : json(nullptr));
            jj["times"] = std::move(times);
        }
        if (job.eligible) jj["eligible"] = detail::machine_set_json(*job.eligible);
        jobs.push_back(std::move(jj));
    }
    doc["jobs"] = std::move(jobs);
    if (!inst.clique_eligible.empty()) {
        json ce = json::object();
        for (const auto& [k, set] : inst.clique_eligible) ce[std::to_string(k + 1)] = detail::machine_set_json(set);
        doc["clique_eligible"] = std::move(ce);
    }
    return doc;
}

inline Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return instance_from_json(doc);
}

inline std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

/// Jobs missing from the file get machine -1, which validation reports as malformed.
inline Schedule schedule_from_json(const Instance& inst, const json& doc) {
    detail::reject_unknown(doc, {"assignment", "objective"}, "schedule");
    const json& a = detail::require(doc, "assignment", "schedule");
    if (!a.is_object()) throw ParseError("assignment: expected an object mapping job id to machine");
    std::unordered_map<JobId, std::size_t> index;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) index[inst.jobs[j].id] = j;
    Schedule s;
    s.assignment.assign(inst.jobs.size(), -1);
    for (auto it = a.begin(); it != a.end(); ++it) {
        JobId id = 0;
        try {
            std::size_t used = 0;
            id = std::stoll(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("assignment: key '" + it.key() + "' is not a job id");
        }
        auto found = index.find(id);
        if (found == index.end()) throw ParseError("assignment: unknown job " + it.key());
        s.assignment[found->second] = static_cast<MachineId>(detail::as_int(it.value(), "assignment." + it.key()) - 1);
    }
    s.objective = detail::as_int(detail::require(doc, "objective", "schedule"), "objective");
    return s;
}

inline json schedule_to_json(const Instance& inst, const Schedule& s) {
    json a = json::object();
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) a[std::to_string(inst.jobs[j].id)] = s.assignment[j] + 1;
    json doc;
    doc["assignment"] = std::move(a);
    doc["objective"] = s.objective;
    return doc;
}

inline Schedule parse_schedule(const Instance& inst, const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return schedule_from_json(inst, doc);
}

inline std::string serialize_schedule(const Instance& inst, const Schedule& s) {
    return schedule_to_json(inst, s).dump(2) + "\n";
}

} // namespace cliquesched::io
