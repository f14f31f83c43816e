// cliquesched: solve, verify, generate and inspect clique scheduling instances.
//
// Exit status: 0 success, 1 usage or input error, 2 infeasible, 3 budget
// exceeded, 4 no applicable algorithm, 5 schedule fails verification.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cliquesched/cliquesched.hpp"

namespace fs = std::filesystem;
using namespace cliquesched;
using io::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kBudget = 3, kNoAlgorithm = 4, kInvalidSchedule = 5 };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

Instance load_instance(const std::string& path) { return io::parse_instance(read_file(path)); }

json valuation_json(const std::vector<bool>& valuation) {
    json a = json::array();
    for (bool b : valuation) a.push_back(b);
    return a;
}

struct GenerateOptions {
    std::string family = "random";
    std::string klass = "identical";
    std::uint64_t seed = 0;
    int size = 0;
    std::int64_t p1 = 0, p2 = 0, p3 = 0;
    std::string output, certificate, schedule;
};

int run_generate(const GenerateOptions& o) {
    Instance inst;
    json cert;
    std::optional<Schedule> witness;
    if (o.family == "random") {
        gen::Rng rng(o.seed);
        const int n = o.size > 0 ? o.size : 8;
        if (o.klass == "identical") inst = gen::random_identical(rng, n);
        else if (o.klass == "unit") inst = gen::random_unit(rng, n);
        else if (o.klass == "two-two") inst = gen::random_two_two(rng, n);
        else if (o.klass == "bags") inst = gen::random_bags(rng, n);
        else if (o.klass == "dp") inst = gen::random_dp(rng, n);
        else if (o.klass == "copies") inst = gen::random_copies(rng, n);
        else if (o.klass == "weighted") inst = gen::random_weighted(rng, n);
        else throw PreconditionFailed("unknown random class " + o.klass);
    } else if (o.family == "sat-star-2clique" || o.family == "sat-star-eligibility") {
        const auto phi = red::gen_sat_star(o.size > 0 ? o.size : 3, o.seed);
        const std::int64_t p1 = o.p1 > 0 ? o.p1 : 1;
        const std::int64_t p2 = o.p2 > 0 ? o.p2 : 2;
        if (o.family == "sat-star-2clique") {
            inst = red::reduce_sat_star_two_cliques(phi, p1, p2, o.p3);
            witness = red::certify_sat_star_schedule(phi, phi.witness, p1, p2, o.p3);
        } else {
            inst = red::reduce_sat_star_eligibility(phi, p1, p2);
            witness = red::certify_sat_star_eligibility_schedule(phi, phi.witness, p1, p2);
        }
        cert["valuation"] = valuation_json(phi.witness);
        cert["expected_objective"] = red::sat_star_target(phi, p1, p2);
    } else if (o.family == "max3sat6") {
        const auto psi = red::gen_max3sat6(o.size > 0 ? o.size : 3, o.seed);
        const std::int64_t p1 = o.p1 > 0 ? o.p1 : 2;
        const std::int64_t p2 = o.p2 > 0 ? o.p2 : 3;
        inst = red::reduce_max3sat6(psi, p1, p2);
        const std::vector<bool> all_true(static_cast<std::size_t>(psi.variable_count), true);
        auto c = red::certify_max3sat6_schedule(psi, all_true, p1, p2);
        witness = c.schedule;
        cert["valuation"] = valuation_json(all_true);
        cert["satisfied_clauses"] = c.satisfied;
        cert["expected_objective"] = red::max3sat6_cost(psi.variable_count, c.satisfied, p1, p2);
    } else {
        throw PreconditionFailed("unknown family " + o.family);
    }
    emit(o.output, io::serialize_instance(inst));
    if (!o.certificate.empty()) {
        if (cert.is_null()) throw PreconditionFailed("the random family has no certificate");
        cert["family"] = o.family;
        cert["seed"] = o.seed;
        emit(o.certificate, cert.dump(2) + "\n");
    }
    if (!o.schedule.empty()) {
        if (!witness) throw PreconditionFailed("the random family has no certified schedule");
        emit(o.schedule, io::serialize_schedule(inst, *witness));
    }
    return kOk;
}

int run_ip_dump(const std::string& input, const std::string& model, bool solve, std::uint64_t budget, const std::string& output) {
    const Instance inst = load_instance(input);
    ip::IpModel m;
    ip::NfoldStructure ns;
    if (model == "bag") {
        m = ip::build_bag_restriction_ip(inst).model;
        ns = ip::nfold_structure(ip::build_bag_nfold_ip(inst));
    } else if (model == "wct-machines") {
        m = ip::build_wct_machines_ip(inst).model;
        ns = ip::nfold_structure(m);
    } else if (model == "wct-cliques") {
        m = ip::build_wct_cliques_ip(inst).model;
        ns = ip::nfold_structure(m);
    } else {
        throw PreconditionFailed("unknown model " + model);
    }
    std::ostringstream out;
    out << ip::dump(m);
    out << "nfold n=" << ns.n << " r=" << ns.r << " s=" << ns.s << " t=" << ns.t << " delta=" << ns.delta
        << " slack=" << ns.slack_variables << "\n";
    if (solve) {
        try {
            const auto sol = ip::solve_ip_exact(m, budget);
            out << "optimum " << ip::to_string(sol.objective) << "\n";
        } catch (const InfeasibleModel&) {
            emit(output, out.str() + "infeasible\n");
            return kInfeasible;
        }
    }
    emit(output, out.str());
    return kOk;
}

int run_bench(const std::string& dir, const std::vector<std::string>& algorithms, std::uint64_t budget) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::cout << "instance\talgorithm\tobjective\twall_ms\tstatus\n";
    for (const fs::path& file : files) {
        Instance inst;
        try {
            inst = load_instance(file.string());
        } catch (const Error&) {
            std::cout << file.filename().string() << "\t-\t-\t0\tparse-error\n";
            continue;
        }
        for (const std::string& name : algorithms) {
            const auto start = std::chrono::steady_clock::now();
            std::string status = "ok";
            std::string objective = "-";
            std::string used = name;
            try {
                if (name == "oracle") {
                    objective = std::to_string(oracle_optimum(inst, budget).objective);
                } else {
                    auto alg = parse_algorithm(name);
                    if (!alg) throw PreconditionFailed("unknown algorithm " + name);
                    auto outcome = solve(inst, *alg, budget);
                    objective = std::to_string(outcome.schedule.objective);
                    if (*alg == Algorithm::Auto) used = "auto:" + std::string(to_string(outcome.algorithm));
                }
            } catch (const Infeasible&) {
                status = "infeasible";
            } catch (const BudgetExceeded&) {
                status = "budget";
            } catch (const NoApplicableAlgorithm&) {
                status = "not-applicable";
            } catch (const Error&) {
                status = "error";
            }
            const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            std::ostringstream line;
            line << file.filename().string() << "\t" << used << "\t" << objective << "\t" << std::fixed << std::setprecision(3) << ms
                 << "\t" << status << "\n";
            std::cout << line.str();
        }
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solvers for parallel-machine scheduling with incompatibility cliques"};
    app.require_subcommand(1);
    std::uint64_t budget = kDefaultBudget;

    std::string input, output, schedule_path, algorithm = "auto";
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and write the schedule");
    solve_cmd->add_option("--input,-i", input, "Instance file")->required();
    solve_cmd->add_option("--algorithm,-a", algorithm, "auto|identical|unit-flow|two-two|fixed-bags|dp|copies|ip");
    solve_cmd->add_option("--output,-o", output, "Schedule file (stdout when omitted)");
    solve_cmd->add_option("--budget", budget, "State budget for enumerating solvers");

    auto* verify_cmd = app.add_subcommand("verify", "Check a schedule against an instance");
    verify_cmd->add_option("--input,-i", input, "Instance file")->required();
    verify_cmd->add_option("--schedule,-s", schedule_path, "Schedule file")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum");
    oracle_cmd->add_option("--input,-i", input, "Instance file")->required();
    oracle_cmd->add_option("--output,-o", output, "Schedule file (stdout when omitted)");
    oracle_cmd->add_option("--budget", budget, "State budget");

    GenerateOptions gen_opts;
    auto* gen_cmd = app.add_subcommand("generate", "Generate a seeded instance");
    gen_cmd->add_option("--family", gen_opts.family, "random|sat-star-2clique|sat-star-eligibility|max3sat6");
    gen_cmd->add_option("--class", gen_opts.klass, "Random class: identical|unit|two-two|bags|dp|copies|weighted");
    gen_cmd->add_option("--seed", gen_opts.seed, "Random seed")->required();
    gen_cmd->add_option("--size", gen_opts.size, "Variables for SAT families, maximum job count for random");
    gen_cmd->add_option("--p1", gen_opts.p1, "Shortest processing time");
    gen_cmd->add_option("--p2", gen_opts.p2, "Middle processing time");
    gen_cmd->add_option("--p3", gen_opts.p3, "Blocking processing time (two-clique family)");
    gen_cmd->add_option("--output,-o", gen_opts.output, "Instance file (stdout when omitted)");
    gen_cmd->add_option("--certificate", gen_opts.certificate, "Sidecar file with valuation and expected objective");
    gen_cmd->add_option("--schedule", gen_opts.schedule, "Write the certified schedule here");

    std::string model = "wct-machines";
    bool ip_solve = false;
    auto* ip_cmd = app.add_subcommand("ip-dump", "Export an integer program");
    ip_cmd->add_option("--input,-i", input, "Instance file")->required();
    ip_cmd->add_option("--model", model, "bag|wct-machines|wct-cliques");
    ip_cmd->add_flag("--solve", ip_solve, "Also solve the model exactly");
    ip_cmd->add_option("--output,-o", output, "Output file (stdout when omitted)");
    ip_cmd->add_option("--budget", budget, "Node budget for --solve");

    std::string dir;
    std::vector<std::string> bench_algorithms{"auto", "oracle"};
    auto* bench_cmd = app.add_subcommand("bench", "Time solvers over a directory of instances");
    bench_cmd->add_option("--dir,-d", dir, "Directory with *.json instances")->required();
    bench_cmd->add_option("--algorithms", bench_algorithms, "Algorithms to run (oracle included)")->delimiter(',');
    bench_cmd->add_option("--budget", budget, "State budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*solve_cmd) {
            const auto alg = parse_algorithm(algorithm);
            if (!alg) throw PreconditionFailed("unknown algorithm " + algorithm);
            const Instance inst = load_instance(input);
            const auto outcome = solve(inst, *alg, budget);
            std::cerr << "algorithm " << to_string(outcome.algorithm) << " objective " << outcome.schedule.objective << "\n";
            emit(output, io::serialize_schedule(inst, outcome.schedule));
            return kOk;
        }
        if (*verify_cmd) {
            const Instance inst = load_instance(input);
            const Schedule s = io::parse_schedule(inst, read_file(schedule_path));
            const auto report = validate(inst, s);
            for (const auto& v : report) std::cout << to_string(v.kind) << ": " << v.message << "\n";
            if (report.empty()) std::cout << "valid, objective " << s.objective << "\n";
            return report.empty() ? kOk : kInvalidSchedule;
        }
        if (*oracle_cmd) {
            const Instance inst = load_instance(input);
            const Schedule s = oracle_optimum(inst, budget);
            std::cerr << "objective " << s.objective << "\n";
            emit(output, io::serialize_schedule(inst, s));
            return kOk;
        }
        if (*gen_cmd) return run_generate(gen_opts);
        if (*ip_cmd) return run_ip_dump(input, model, ip_solve, budget, output);
        if (*bench_cmd) return run_bench(dir, bench_algorithms, budget);
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const NoApplicableAlgorithm& e) {
        std::cerr << "no applicable algorithm: " << e.what() << "\n";
        return kNoAlgorithm;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
