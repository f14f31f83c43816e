#include <gtest/gtest.h>

#include "cliquesched/enum_solvers.hpp"
#include "cliquesched/generators.hpp"
#include "cliquesched/ipmodels.hpp"
#include "support/common.hpp"

using namespace cliquesched;
using ip::Rational;

namespace {

// Σ w C of the jobs in ratio order, independent of the separable form.
std::int64_t smith_direct(const std::vector<ip::JobKind>& kinds, MachineId i, const std::vector<std::int64_t>& counts) {
    std::vector<std::pair<std::int64_t, std::int64_t>> jobs; // (p, w)
    for (std::size_t k = 0; k < kinds.size(); ++k)
        for (std::int64_t c = 0; c < counts[k]; ++c) jobs.emplace_back(kinds[k].times[static_cast<std::size_t>(i)].value(), kinds[k].weight);
    std::sort(jobs.begin(), jobs.end(), [](auto a, auto b) { return a.second * b.first > b.second * a.first; });
    std::int64_t t = 0, total = 0;
    for (auto [p, w] : jobs) total += w * (t += p);
    return total;
}

} // namespace

TEST(SeparableObjective, ContributionMatchesDirectEvaluation) {
    gen::Rng rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        const int kinds_n = gen::detail::uniform(rng, 1, 5);
        const int m = gen::detail::uniform(rng, 1, 3);
        std::vector<ip::JobKind> kinds;
        for (int k = 0; k < kinds_n; ++k) {
            ip::JobKind jk{gen::detail::uniform(rng, 1, 6), {}};
            for (int i = 0; i < m; ++i)
                jk.times.push_back(gen::detail::coin(rng, 0.15) ? ProcTime::infinity() : ProcTime(gen::detail::uniform(rng, 1, 9)));
            kinds.push_back(jk);
        }
        const MachineId i = gen::detail::uniform(rng, 0, m - 1);
        std::vector<std::int64_t> counts;
        for (const auto& k : kinds) counts.push_back(k.times[static_cast<std::size_t>(i)].finite() ? gen::detail::uniform(rng, 0, 4) : 0);
        Rational got = ip::machine_contribution(kinds, i, counts);
        ASSERT_EQ(got.denominator(), 1) << "trial " << trial;
        ASSERT_EQ(got, Rational(smith_direct(kinds, i, counts))) << "trial " << trial;
    }
}

TEST(VariableObjective, EvaluatesAndMinimizes) {
    ip::VariableObjective q;
    q.quadratic = Rational(1, 2);
    q.linear = Rational{-3};
    EXPECT_EQ(q(4), Rational{-4});
    EXPECT_EQ(q.minimum(0, 10), Rational(-9, 2));
    EXPECT_EQ(q.minimum(5, 10), q(5));
}

TEST(SlotConfigurations, CountsAndShape) {
    const std::size_t expected[] = {2, 5, 16, 65};
    for (int b = 1; b <= 4; ++b) {
        auto cs = ip::enumerate_slot_configurations(b);
        EXPECT_EQ(cs.size(), expected[b - 1]);
        EXPECT_EQ(cs.size(), enumerate_machine_configurations(b).size());
        std::uint64_t fact = 1;
        for (int f = 2; f <= b + 1; ++f) fact *= static_cast<std::uint64_t>(f);
        EXPECT_LE(cs.size(), fact);
        for (const auto& c : cs) EXPECT_TRUE(ip::is_slot_configuration(c, b));
    }
    EXPECT_FALSE(ip::is_slot_configuration({1, 0}, 2));
    EXPECT_FALSE(ip::is_slot_configuration({2, 2}, 2));
    EXPECT_TRUE(ip::is_slot_configuration({0, 2}, 2));
}

TEST(SlotConfigurations, PrefixSumExtension) {
    std::vector<std::int64_t> sorted{1, 3, 4};
    EXPECT_EQ(ip::g_tilde(sorted, Rational{0}), Rational{0});
    EXPECT_EQ(ip::g_tilde(sorted, Rational{2}), Rational{4});
    EXPECT_EQ(ip::g_tilde(sorted, Rational(5, 2)), Rational{6});
    EXPECT_EQ(ip::g_tilde(sorted, Rational{4}), Rational{12});
}

TEST(ExactSolver, SmallModel) {
    ip::IpModel model;
    model.name = "toy";
    model.brick_count = 1;
    int a = model.add_variable("a", 0, 5, 0);
    int b = model.add_variable("b", 0, 5, 0);
    model.add_constraint({"sum", {{a, 1}, {b, 1}}, ip::Relation::Equal, 5, 0});
    model.add_constraint({"cap", {{a, 1}}, ip::Relation::LessEqual, 3, 0});
    ip::VariableObjective fa, fb;
    fa.quadratic = Rational{1};
    fb.quadratic = Rational{2};
    model.objective[a] = fa;
    model.objective[b] = fb;
    ip::IpSolution sol = ip::solve_ip_exact(model);
    EXPECT_EQ(sol.values, (std::vector<std::int64_t>{3, 2}));
    EXPECT_EQ(sol.integral_objective(), 17);
    EXPECT_TRUE(model.satisfies(sol.values));
    model.add_constraint({"low", {{b, 1}}, ip::Relation::GreaterEqual, 6, 0});
    EXPECT_THROW(ip::solve_ip_exact(model), InfeasibleModel);
}

TEST(BagIp, MatchesOracle) {
    int solved = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        gen::Rng rng(seed);
        Instance inst = gen::random_bags(rng);
        auto expected = testsupport::oracle_value(inst);
        ip::BagModel bm = ip::build_bag_restriction_ip(inst);
        std::optional<Cost> got;
        try {
            ip::IpSolution sol = ip::solve_ip_exact(bm.model);
            Schedule s = ip::decode_bag_assignment(inst, bm, sol.values);
            ASSERT_TRUE(validate(inst, s).empty());
            ASSERT_EQ(s.objective, sol.integral_objective());
            got = s.objective;
            ++solved;
        } catch (const InfeasibleModel&) {
        }
        ASSERT_EQ(got, expected) << "seed " << seed;
    }
    EXPECT_GT(solved, 25);
}

TEST(BagIp, NfoldShape) {
    for (int b = 1; b <= 3; ++b) {
        std::vector<std::int64_t> times;
        std::vector<int> cliques;
        for (int k = 0; k < b; ++k) {
            times.push_back(k + 1);
            cliques.push_back(k);
        }
        Instance inst = make_identical_instance(2, times, cliques, b);
        ip::IpModel dup = ip::build_bag_nfold_ip(inst);
        ip::NfoldStructure ns = ip::nfold_structure(dup);
        EXPECT_EQ(ns.s, 1);
        EXPECT_EQ(ns.r, b * b + b);
        EXPECT_EQ(ns.delta, 1);
        EXPECT_EQ(ns.n, 2);
        EXPECT_TRUE(ip::verify_nfold(dup).empty());
        EXPECT_EQ(ip::solve_ip_exact(dup).integral_objective(), ip::solve_ip_exact(ip::build_bag_restriction_ip(inst).model).integral_objective());
    }
}

TEST(WctIp, BothLayoutsMatchOracle) {
    int solved = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        gen::Rng rng(seed);
        Instance inst = gen::random_weighted(rng);
        auto expected = testsupport::oracle_value(inst);
        for (ip::WctLayout layout : {ip::WctLayout::CliqueBricks, ip::WctLayout::MachineBricks}) {
            ip::WctModel wm = ip::build_wct_ip(inst, layout);
            EXPECT_TRUE(ip::verify_nfold(wm.model).empty());
            std::optional<Cost> got;
            try {
                ip::IpSolution sol = ip::solve_ip_exact(wm.model);
                Schedule s = ip::decode_wct_assignment(inst, wm, sol.values);
                ASSERT_TRUE(validate(inst, s).empty());
                ASSERT_EQ(s.objective, sol.integral_objective());
                got = s.objective;
                ++solved;
            } catch (const InfeasibleModel&) {
            }
            ASSERT_EQ(got, expected) << "seed " << seed;
        }
    }
    EXPECT_GT(solved, 50);
}

TEST(WctIp, NfoldParameters) {
    gen::Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        Instance inst = gen::random_weighted(rng);
        ip::WctModel machines = ip::build_wct_machines_ip(inst);
        ip::WctModel cliques = ip::build_wct_cliques_ip(inst);
        const auto theta = static_cast<int>(machines.kinds.size());
        std::int64_t p_max = 0;
        for (const auto& k : machines.kinds)
            for (ProcTime p : k.times)
                if (p.finite()) p_max = std::max(p_max, p.value());
        ip::NfoldStructure a = ip::nfold_structure(machines.model);
        EXPECT_EQ(a.t, theta * inst.machine_count);
        EXPECT_EQ(a.delta, p_max);
        EXPECT_EQ(a.n, inst.clique_count + 1);
        ip::NfoldStructure c = ip::nfold_structure(cliques.model);
        EXPECT_EQ(c.n, inst.machine_count);
        EXPECT_TRUE(ip::verify_nfold(machines.model).empty());
        EXPECT_TRUE(ip::verify_nfold(cliques.model).empty());
    }
}

TEST(WctIp, SolveWithIpReportsInfeasible) {
    Instance inst = make_identical_instance(1, std::vector<std::int64_t>{1, 1}, std::vector<int>{0, 0}, 1, std::vector<std::int64_t>{2, 1});
    EXPECT_THROW(ip::solve_with_ip(inst), Infeasible);
    Instance ok = make_identical_instance(2, std::vector<std::int64_t>{1, 2}, std::vector<int>{0, 0}, 1, std::vector<std::int64_t>{2, 1});
    EXPECT_EQ(ip::solve_with_ip(ok).objective, 4);
}

TEST(Dump, MentionsEveryPart) {
    Instance inst = make_identical_instance(2, std::vector<std::int64_t>{1, 2}, std::vector<int>{0, 1}, 2);
    std::string text = ip::dump(ip::build_bag_restriction_ip(inst).model);
    EXPECT_NE(text.find("variables"), std::string::npos);
    EXPECT_NE(text.find("constraints"), std::string::npos);
    EXPECT_NE(text.find("objective"), std::string::npos);
}
