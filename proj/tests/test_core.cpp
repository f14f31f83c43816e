#include <gtest/gtest.h>

#include "cliquesched/core.hpp"

using namespace cliquesched;

namespace {

Instance two_machine_example() {
    const std::int64_t times[] = {3, 1, 2};
    const int cliques[] = {0, 0, 1};
    return make_identical_instance(2, times, cliques, 2);
}

} // namespace

TEST(ProcTime, InfinityHasNoValue) {
    EXPECT_FALSE(ProcTime::infinity().finite());
    EXPECT_THROW(static_cast<void>(ProcTime::infinity().value()), InfiniteTime);
    EXPECT_EQ(ProcTime(4).value(), 4);
}

TEST(Instance, CheckRejectsBrokenData) {
    Instance inst = two_machine_example();
    EXPECT_NO_THROW(check_instance(inst));

    Instance bad = inst;
    bad.jobs[1].clique = 5;
    EXPECT_THROW(check_instance(bad), InvalidInstance);

    bad = inst;
    bad.jobs[0].times.pop_back();
    EXPECT_THROW(check_instance(bad), InvalidInstance);

    bad = inst;
    bad.jobs[2].id = bad.jobs[0].id;
    EXPECT_THROW(check_instance(bad), InvalidInstance);

    bad = inst;
    bad.jobs[0].times = {ProcTime(0), ProcTime(0)};
    EXPECT_THROW(check_instance(bad), InvalidInstance);
    EXPECT_NO_THROW(check_instance(bad, true));

    bad = inst;
    bad.jobs[0].times = {ProcTime(3), ProcTime(4)};
    EXPECT_THROW(check_instance(bad), InvalidInstance);

    bad = inst;
    bad.clique_eligible[0] = {1, 0};
    EXPECT_THROW(check_instance(bad), InvalidInstance);
}

TEST(Evaluate, SmithOrderPerMachine) {
    Instance inst = two_machine_example();
    // machine 0: job 3 (p=3) ... jobs 1 and 2 share a clique
    const std::vector<MachineId> a{0, 1, 0};
    // machine 0 runs p=2 then p=3: 2 + 5; machine 1 runs p=1
    EXPECT_EQ(evaluate(inst, a), 8);
}

TEST(Evaluate, WeightedRatioOrder) {
    const std::int64_t times[] = {4, 1};
    const int cliques[] = {0, 1};
    const std::int64_t weights[] = {8, 1};
    Instance inst = make_identical_instance(1, times, cliques, 2, weights);
    // ratios 2 and 1: job 1 first, 8*4 + 1*5
    EXPECT_EQ(evaluate(inst, std::vector<MachineId>{0, 0}), 37);
}

TEST(Evaluate, TiesBreakBySmallerTimeThenId) {
    const std::int64_t times[] = {2, 1, 1};
    const int cliques[] = {0, 1, 2};
    const std::int64_t weights[] = {2, 1, 1};
    Instance inst = make_identical_instance(1, times, cliques, 3, weights);
    auto order = smith_order(inst, {0, 1, 2}, 0);
    EXPECT_EQ(order, (std::vector<std::size_t>{1, 2, 0}));
}

TEST(Validate, ReportsEachViolationKind) {
    Instance inst = two_machine_example();
    inst.jobs[2].eligible = std::vector<MachineId>{1};
    inst.clique_eligible[0] = {0, 1};
    inst.jobs[1].times[1] = ProcTime::infinity();

    Schedule s = make_schedule(inst, {0, 0, 0});
    auto report = validate(inst, s);
    auto has = [&](ViolationKind k) {
        return std::any_of(report.begin(), report.end(), [&](const Violation& v) { return v.kind == k; });
    };
    EXPECT_TRUE(has(ViolationKind::SameCliqueOnMachine));
    EXPECT_TRUE(has(ViolationKind::JobIneligible));

    report = validate(inst, Schedule{{1, 1, 1}, 0});
    EXPECT_TRUE(has(ViolationKind::InfinitePlacement));

    Schedule wrong = make_schedule(inst, {0, 0, 1});
    wrong.objective += 1;
    report = validate(inst, wrong);
    EXPECT_TRUE(has(ViolationKind::ObjectiveMismatch));

    Instance restricted = two_machine_example();
    restricted.clique_eligible[1] = {0};
    report = validate(restricted, make_schedule(restricted, {0, 1, 1}));
    EXPECT_TRUE(has(ViolationKind::CliqueIneligible));

    report = validate(restricted, Schedule{{0, 7}, 0});
    EXPECT_TRUE(has(ViolationKind::Malformed));
}

TEST(Validate, AcceptsFeasibleSchedule) {
    Instance inst = two_machine_example();
    Schedule s = make_schedule(inst, {0, 1, 1});
    EXPECT_TRUE(validate(inst, s).empty());
    EXPECT_EQ(s.objective, 3 + 1 + 3);
}

TEST(Instance, KindsGroupEqualColumnsAndRows) {
    std::vector<std::vector<ProcTime>> times{{ProcTime(1), ProcTime(1)}, {ProcTime(2), ProcTime(2)}, {ProcTime(1), ProcTime(1)}};
    const int cliques[] = {0, 1, 1};
    Instance inst = make_unrelated_instance(2, times, cliques, 2);
    EXPECT_EQ(inst.machine_kinds(), (std::vector<int>{0, 0}));
    EXPECT_EQ(inst.job_kinds(), (std::vector<int>{0, 1, 0}));
    inst.jobs[2].weight = 3;
    EXPECT_EQ(inst.job_kinds(), (std::vector<int>{0, 1, 2}));
}
