#include <gtest/gtest.h>

#include "cliquesched/dispatch.hpp"
#include "cliquesched/generators.hpp"
#include "support/common.hpp"

using namespace cliquesched;

TEST(Dispatch, NamesRoundTrip) {
    for (auto [a, name] : kAlgorithmNames) {
        EXPECT_EQ(to_string(a), name);
        EXPECT_EQ(parse_algorithm(name), a);
    }
    EXPECT_EQ(parse_algorithm("simplex"), std::nullopt);
}

TEST(Dispatch, PicksTheSpecialisedSolver) {
    gen::Rng rng(2);
    EXPECT_EQ(choose_algorithm(gen::random_identical(rng)), Algorithm::Identical);
    Instance unit = make_unrelated_instance(2, testsupport::rows({{1, testsupport::kInf}, {1, 1}}), std::vector<int>{0, 0}, 1);
    EXPECT_EQ(choose_algorithm(unit), Algorithm::UnitFlow);
    Instance two = make_unrelated_instance(2, testsupport::rows({{1, 3}, {3, 3}}), std::vector<int>{0, 1}, 2);
    EXPECT_EQ(choose_algorithm(two), Algorithm::TwoTwo);
    Instance weighted = make_identical_instance(2, std::vector<std::int64_t>{1, 2}, std::vector<int>{0, 1}, 2, std::vector<std::int64_t>{3, 1});
    EXPECT_EQ(choose_algorithm(weighted), Algorithm::Ip);
}

TEST(Dispatch, AutoMatchesOracleOnEveryFamily) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        gen::Rng rng(seed);
        for (const Instance& inst : {gen::random_identical(rng), gen::random_unit(rng), gen::random_two_two(rng),
                                     gen::random_bags(rng), gen::random_dp(rng), gen::random_copies(rng),
                                     gen::random_weighted(rng, 6)}) {
            auto got = testsupport::solver_value(inst, [](const Instance& x) { return solve(x).schedule; });
            ASSERT_EQ(got, testsupport::oracle_value(inst)) << "seed " << seed;
        }
    }
}

TEST(Dispatch, ExplicitChoiceIsChecked) {
    Instance weighted = make_identical_instance(2, std::vector<std::int64_t>{1, 2}, std::vector<int>{0, 1}, 2, std::vector<std::int64_t>{3, 1});
    EXPECT_THROW(solve(weighted, Algorithm::Identical), NoApplicableAlgorithm);
    EXPECT_FALSE(applicable(Algorithm::Dp, weighted));
    EXPECT_EQ(solve(weighted, Algorithm::Ip).schedule.objective, oracle_optimum(weighted).objective);
    Instance crowded = make_identical_instance(1, std::vector<std::int64_t>{1, 1}, std::vector<int>{0, 0}, 1);
    EXPECT_THROW(solve(crowded, Algorithm::Identical), Infeasible);
}
