#include <gtest/gtest.h>

#include "cliquesched/enum_solvers.hpp"
#include "cliquesched/generators.hpp"
#include "support/common.hpp"

using namespace cliquesched;

TEST(Configurations, CountsOrderedSubsets) {
    // Σ_i C(b,i) i!
    const std::size_t expected[] = {1, 2, 5, 16, 65, 326};
    for (int b = 0; b <= 5; ++b) EXPECT_EQ(enumerate_machine_configurations(b).size(), expected[b]);
    auto c2 = enumerate_machine_configurations(2);
    EXPECT_EQ(c2[0], MachineConfiguration{});
    EXPECT_EQ(c2[1], MachineConfiguration{0});
    EXPECT_EQ(c2.back(), (MachineConfiguration{1, 0}));
}

TEST(Configurations, BinomialSaturates) {
    EXPECT_EQ(binomial_capped(5, 2, 100), 10u);
    EXPECT_EQ(binomial_capped(2, 3, 100), 0u);
    EXPECT_EQ(binomial_capped(100, 50, 1000), 1001u);
}

TEST(FixedBags, MatchesOracle) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        gen::Rng rng(seed);
        Instance inst = gen::random_bags(rng);
        ASSERT_LE(inst.clique_count, 3);
        ASSERT_EQ(testsupport::solver_value(inst, [](const Instance& x) { return solve_fixed_bags(x); }),
                  testsupport::oracle_value(inst))
            << "seed " << seed;
    }
}

TEST(FixedBags, RespectsBudget) {
    Instance inst = make_identical_instance(5, std::vector<std::int64_t>{1, 2, 3}, std::vector<int>{0, 1, 2}, 3);
    FixedBagsStats stats;
    EXPECT_NO_THROW(solve_fixed_bags(inst, kDefaultBudget, &stats));
    EXPECT_EQ(stats.multiset_bound, binomial_capped(5 + 16 - 1, 15, kDefaultBudget));
    EXPECT_LE(stats.multisets_visited, stats.multiset_bound);
    EXPECT_THROW(solve_fixed_bags(inst, 10), BudgetExceeded);
}

TEST(Dp, DivisionCost) {
    // machine 0 runs 1 and 2, machine 1 runs 2: (2·1 + 1·2) + 2
    EXPECT_EQ(division_cost({1, 1, 0, 1}, {1, 2}, 2), 6);
}

TEST(Dp, MatchesOracle) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        gen::Rng rng(seed);
        Instance inst = gen::random_dp(rng);
        ASSERT_LE(inst.machine_count, 3);
        ASSERT_LE(distinct_times(inst).size(), 2u);
        ASSERT_EQ(testsupport::solver_value(inst, [](const Instance& x) { return solve_dp_unrelated(x); }),
                  testsupport::oracle_value(inst))
            << "seed " << seed;
    }
}

TEST(Dp, BudgetAndWeights) {
    gen::Rng rng(4);
    Instance inst = gen::random_dp(rng);
    while (inst.jobs.size() < 5) inst = gen::random_dp(rng);
    EXPECT_THROW(solve_dp_unrelated(inst, 1), BudgetExceeded);
    Instance weighted = make_identical_instance(1, std::vector<std::int64_t>{1}, std::vector<int>{0}, 1, std::vector<std::int64_t>{2});
    EXPECT_THROW(solve_dp_unrelated(weighted), PreconditionFailed);
}
