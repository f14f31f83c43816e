#include <gtest/gtest.h>

#include "cliquesched/generators.hpp"
#include "cliquesched/oracle.hpp"
#include "support/brute.hpp"
#include "support/common.hpp"

using namespace cliquesched;

TEST(Oracle, AgreesWithExhaustiveAssignment) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        gen::Rng rng(seed);
        Instance inst = seed % 3 == 0 ? gen::random_weighted(rng, 6) : seed % 3 == 1 ? gen::random_unit(rng, 6) : gen::random_bags(rng, 6);
        auto brute = testsupport::brute_force_optimum(inst);
        ASSERT_EQ(testsupport::oracle_value(inst), brute) << "seed " << seed;
    }
}

TEST(Oracle, ScheduleIsValidAndEvaluated) {
    gen::Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        Instance inst = gen::random_identical(rng);
        try {
            Schedule s = oracle_optimum(inst);
            EXPECT_TRUE(validate(inst, s).empty());
        } catch (const Infeasible&) {
        }
    }
}

TEST(Oracle, ReportsInfeasibleAndBudget) {
    Instance two_in_one = make_identical_instance(1, std::vector<std::int64_t>{1, 2}, std::vector<int>{0, 0}, 1);
    EXPECT_THROW(oracle_optimum(two_in_one), Infeasible);
    Instance big = make_identical_instance(3, std::vector<std::int64_t>{1, 2, 3, 4, 5, 6}, std::vector<int>{0, 1, 2, 3, 4, 5}, 6);
    EXPECT_THROW(oracle_optimum(big, 3), BudgetExceeded);
    EXPECT_EQ(oracle_optimum(big).objective, 1 + 2 + 3 + 5 + 7 + 9);
}

TEST(Oracle, EmptyInstance) {
    Instance inst = make_identical_instance(2, std::vector<std::int64_t>{}, std::vector<int>{}, 0);
    EXPECT_EQ(oracle_optimum(inst).objective, 0);
}
