#include <gtest/gtest.h>

#include "cliquesched/reductions.hpp"

using namespace cliquesched;
using namespace cliquesched::red;

namespace {

std::vector<bool> random_valuation(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<bool> v(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng() & 1U;
    return v;
}

} // namespace

TEST(SatStar, GeneratorPlantsAWitness) {
    for (int nv : {3, 6, 9}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            SatStarInstance phi = gen_sat_star(nv, seed);
            EXPECT_TRUE(validate_sat_star(phi).empty());
            EXPECT_EQ(phi.one_in_three.size(), phi.two_in_three.size());
            EXPECT_EQ(phi.clauses().size(), static_cast<std::size_t>(4 * nv / 3));
            EXPECT_TRUE(satisfies(phi, phi.witness));
        }
    }
    EXPECT_THROW(gen_sat_star(4, 0), InvalidSize);
    EXPECT_THROW(gen_sat_star(0, 0), InvalidSize);
}

TEST(SatStar, TwoCliqueCertificateHitsTarget) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int nv = seed % 2 ? 6 : 3;
        SatStarInstance phi = gen_sat_star(nv, seed);
        Instance inst = reduce_sat_star_two_cliques(phi, 1, 2);
        EXPECT_EQ(inst.clique_count, 2);
        const std::int64_t m = inst.machine_count;
        EXPECT_EQ(m, 4 * nv + 3 * static_cast<std::int64_t>(phi.clauses().size()));
        Schedule s = certify_sat_star_schedule(phi, phi.witness, 1, 2);
        EXPECT_EQ(s.objective, m * (2 * 1 + 2));
        EXPECT_TRUE(validate(inst, s).empty());
        EXPECT_EQ(evaluate(inst, s.assignment), s.objective);
    }
}

TEST(SatStar, OtherTimesAndLongJobs) {
    SatStarInstance phi = gen_sat_star(3, 42);
    Schedule s = certify_sat_star_schedule(phi, phi.witness, 2, 5, 1000);
    Instance inst = reduce_sat_star_two_cliques(phi, 2, 5, 1000);
    EXPECT_EQ(s.objective, static_cast<Cost>(inst.machine_count) * (2 * 2 + 5));
    EXPECT_THROW(reduce_sat_star_two_cliques(phi, 2, 2), InvalidTimes);
    std::vector<bool> flipped = phi.witness;
    flipped[0] = !flipped[0];
    if (!satisfies(phi, flipped)) {
        EXPECT_THROW(certify_sat_star_schedule(phi, flipped, 1, 2), ValuationNotSatisfying);
    }
}

TEST(SatStar, EligibilityVariant) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int nv = seed % 2 ? 6 : 3;
        SatStarInstance phi = gen_sat_star(nv, seed);
        Instance inst = reduce_sat_star_eligibility(phi, 1, 2);
        EXPECT_TRUE(inst.identical);
        for (const auto& members : inst.clique_members()) EXPECT_LE(members.size(), 2u);
        Schedule s = certify_sat_star_eligibility_schedule(phi, phi.witness, 1, 2);
        EXPECT_EQ(s.objective, sat_star_target(phi, 1, 2));
        EXPECT_TRUE(validate(inst, s).empty());
    }
}

TEST(Max3Sat6, GeneratorShape) {
    for (int nv : {3, 4, 7}) {
        Max3Sat6Instance psi = gen_max3sat6(nv, 5);
        EXPECT_TRUE(validate_max3sat6(psi).empty());
        EXPECT_EQ(psi.clauses.size(), static_cast<std::size_t>(2 * nv));
    }
    EXPECT_THROW(gen_max3sat6(2, 0), InvalidSize);
}

TEST(Max3Sat6, JobCounts) {
    for (int nv : {3, 5}) {
        Max3Sat6Instance psi = gen_max3sat6(nv, 1);
        Instance inst = reduce_max3sat6(psi, 2, 3);
        EXPECT_EQ(inst.machine_count, 12 * nv);
        int short_jobs = 0, long_jobs = 0;
        for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
            const std::int64_t p = inst.time(j, 0);
            short_jobs += p == 2;
            long_jobs += p == 3;
        }
        EXPECT_EQ(short_jobs, 13 * nv);
        EXPECT_EQ(long_jobs, 11 * nv);
        EXPECT_EQ(inst.jobs.size(), static_cast<std::size_t>(24 * nv));
    }
    Max3Sat6Instance psi = gen_max3sat6(3, 1);
    EXPECT_THROW(reduce_max3sat6(psi, 2, 4), InvalidTimes);
}

TEST(Max3Sat6, CertificateMatchesClosedForm) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int nv = 3 + static_cast<int>(seed % 4);
        Max3Sat6Instance psi = gen_max3sat6(nv, seed);
        std::vector<bool> val = random_valuation(nv, seed + 100);
        Max3Sat6Certificate cert = certify_max3sat6_schedule(psi, val, 4, 7);
        EXPECT_EQ(cert.satisfied, satisfied_clauses(psi, val));
        const Cost k = cert.satisfied;
        EXPECT_EQ(cert.schedule.objective, 25 * nv * 4 + 11 * nv * 7 + (2 * nv - k) * (7 - 4));
        Instance inst = reduce_max3sat6(psi, 4, 7);
        EXPECT_EQ(evaluate(inst, cert.schedule.assignment), cert.schedule.objective);
    }
}
