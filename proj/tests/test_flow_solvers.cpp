#include <gtest/gtest.h>

#include "cliquesched/flow_solvers.hpp"
#include "cliquesched/generators.hpp"
#include "support/common.hpp"

using namespace cliquesched;

using testsupport::kInf;

TEST(UnitFlow, MatchesOracleIncludingFeasibility) {
    int infeasible = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        gen::Rng rng(seed);
        Instance inst = gen::random_unit(rng);
        auto expected = testsupport::oracle_value(inst);
        if (!expected) ++infeasible;
        ASSERT_EQ(testsupport::solver_value(inst, solve_unit_unrelated), expected) << "seed " << seed;
    }
    EXPECT_GT(infeasible, 0);
}

TEST(UnitFlow, SpreadsPositions) {
    // three unit jobs of different cliques, two machines: positions 1,1,2
    Instance inst = make_unrelated_instance(2, testsupport::rows({{1, 1}, {1, 1}, {1, kInf}}), std::vector<int>{0, 1, 2}, 3);
    Schedule s = solve_unit_unrelated(inst);
    EXPECT_EQ(s.objective, 4);
    Instance stuck = make_unrelated_instance(2, testsupport::rows({{1, kInf}, {1, kInf}}), std::vector<int>{0, 0}, 1);
    EXPECT_THROW(solve_unit_unrelated(stuck), Infeasible);
    Instance slow = make_unrelated_instance(1, testsupport::rows({{2}}), std::vector<int>{0}, 1);
    EXPECT_THROW(solve_unit_unrelated(slow), PreconditionFailed);
}

TEST(TwoTwo, MatchesOracle) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        gen::Rng rng(seed);
        Instance inst = gen::random_two_two(rng);
        ASSERT_EQ(testsupport::solver_value(inst, solve_two_cliques_two_times), testsupport::oracle_value(inst))
            << "seed " << seed;
    }
}

TEST(TwoTwo, GreedyCompletionCounterexample) {
    // job 1 (clique 2) runs at 4 only on machine 1; jobs 2 and 3 take 6 everywhere.
    // Putting the clique-1 job next to job 1 gives 4 + 10 + 6 = 20.
    Instance inst = make_unrelated_instance(2, testsupport::rows({{4, 6}, {6, 6}, {6, 6}}), std::vector<int>{1, 0, 1}, 2);
    EXPECT_EQ(solve_two_cliques_two_times(inst).objective, 20);
    EXPECT_EQ(oracle_optimum(inst).objective, 20);
}

TEST(TwoTwo, Preconditions) {
    Instance three = make_unrelated_instance(1, testsupport::rows({{1}, {2}, {3}}), std::vector<int>{0, 1, 1}, 2);
    EXPECT_THROW(solve_two_cliques_two_times(three), PreconditionFailed);
    Instance forbidden = make_unrelated_instance(2, testsupport::rows({{1, kInf}}), std::vector<int>{0}, 2);
    EXPECT_THROW(solve_two_cliques_two_times(forbidden), PreconditionFailed);
    Instance one_clique = make_unrelated_instance(1, testsupport::rows({{1}}), std::vector<int>{0}, 1);
    EXPECT_THROW(solve_two_cliques_two_times(one_clique), PreconditionFailed);
    EXPECT_EQ(two_time_values(three), std::nullopt);
}

TEST(Copies, MatchesOracle) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        gen::Rng rng(seed);
        Instance inst = gen::random_copies(rng);
        ASSERT_TRUE(clique_uniform_times(inst));
        ASSERT_EQ(testsupport::solver_value(inst, solve_clique_copies), testsupport::oracle_value(inst)) << "seed " << seed;
    }
}

TEST(Copies, RejectsMixedCliques) {
    Instance inst = make_unrelated_instance(2, testsupport::rows({{1, 2}, {2, 1}}), std::vector<int>{0, 0}, 1);
    EXPECT_FALSE(clique_uniform_times(inst));
    EXPECT_THROW(solve_clique_copies(inst), PreconditionFailed);
}
