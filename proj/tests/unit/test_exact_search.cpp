#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace hhcr;
using namespace fixtures;

TEST(ExactSearch, ToyOptima) {
    for (const auto &[lambda, expected] : {std::pair{1.0, 33.0}, std::pair{0.5, 26.0}}) {
        const auto p = t1_problem(lambda);
        const auto r = exact_optimum(p.inst, p.baseline, p.limits);
        ASSERT_TRUE(r.feasible);
        EXPECT_TRUE(r.proven);
        EXPECT_NEAR(r.best.objective, expected, 1e-9);
        EXPECT_TRUE(is_feasible(r.best, p.baseline, p.limits, p.inst));
    }
}

TEST(ExactSearch, MatchesBruteForceWithAndWithoutBound) {
    std::mt19937_64 gen(404);
    int checked = 0;
    while (checked < 40) {
        const auto inst = oracle::random_instance(gen, 1 + static_cast<int>(gen() % 4), static_cast<int>(gen() % 4));
        SolverConfig c;
        c.mu = 1.0;
        c.lambda = 0.2 + 0.1 * static_cast<double>(gen() % 9);
        std::optional<Problem> p;
        try {
            p = prepare_problem(inst, c);
        } catch (const Error &) {
            continue;
        }
        std::map<NodeId, double> promised;
        for (NodeId e = 1; e <= inst.n_existing(); ++e) promised[e] = p->baseline.promised_at(e);
        const auto brute = oracle::brute_force_optimum(inst, promised, p->limits.t_max, p->limits.disruption_cap);
        ExactOptions plain;
        plain.bound_pruning = false;
        const auto a = exact_optimum(p->inst, p->baseline, p->limits);
        const auto b = exact_optimum(p->inst, p->baseline, p->limits, plain);
        ASSERT_EQ(a.feasible, brute.feasible);
        if (brute.feasible) {
            EXPECT_NEAR(a.best.objective, brute.objective, 1e-9);
            EXPECT_NEAR(b.best.objective, brute.objective, 1e-9);
            EXPECT_LE(a.nodes, b.nodes);
        }
        ++checked;
    }
}

TEST(ExactSearch, SizeGuard) {
    std::mt19937_64 gen(1);
    const auto inst = oracle::random_instance(gen, 7, 6);
    const auto base = build_original_schedule(inst);
    const auto lim = compute_limits(inst, 1.0, 1.0, tsp_baseline_length(inst));
    try {
        exact_optimum(inst, base, lim);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Capacity);
    }
}
