#include <gtest/gtest.h>

#include <limits>

#include "support/fixtures.hpp"
#include "support/invariants.hpp"
#include "support/oracle.hpp"

using namespace hhcr;
using namespace fixtures;

TEST(Penalty, PhiWindowRules) {
    const PenaltyState s{1.0, 0.01, 100.0};
    EXPECT_EQ(update_phi(s, 10, 0).phi, 0.5);
    EXPECT_EQ(update_phi(s, 4, 6).phi, 1.0);
    EXPECT_EQ(update_phi(s, 0, 10).phi, 2.0);
    EXPECT_EQ(update_phi({100.0, 0.01, 100.0}, 0, 10).phi, 100.0);
    EXPECT_EQ(update_phi({0.01, 0.01, 100.0}, 10, 0).phi, 0.01);
}

TEST(Penalty, PenalizedObjective) {
    const auto p = t1_problem(0.5);
    const auto all = evaluate({0, E1, N2, E2, N1, 0}, p.inst);
    const auto v = measure_violation(all, p.baseline, p.limits, p.inst);
    EXPECT_NEAR(phi_eval(all, v, Relax::DisruptionCap, 1.0), 23.0, 1e-9);
    EXPECT_NEAR(phi_eval(30.0, {2.0, 0.0}, Relax::TravelBudget, 1.0), 28.0, 1e-9);
    const auto ok = evaluate({0, E1, E2, N1, 0}, p.inst);
    const auto none = measure_violation(ok, p.baseline, p.limits, p.inst);
    for (const auto mode : {Relax::TravelBudget, Relax::DisruptionCap}) EXPECT_EQ(phi_eval(ok, none, mode, 1.0), 26.0);
}

TEST(Penalty, InfinitePhiCollapsesToStrictFeasibility) {
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_EQ(phi_eval(26.0, {0.0, 0.0}, Relax::TravelBudget, inf), 26.0);
    EXPECT_EQ(phi_eval(33.0, {0.0, 10.0}, Relax::DisruptionCap, inf), -inf);
    EXPECT_EQ(phi_eval(33.0, {1.0, 0.0}, Relax::TravelBudget, inf), -inf);
}

TEST(TabuNodes, TenureWithinBounds) {
    TabuNodeList list(0.25, 8);  // floor(0.25 * 8) = 2
    EXPECT_EQ(list.min_tenure(), 3);
    EXPECT_EQ(list.max_tenure(), 12);
    Rng rng(4);
    std::set<int> seen;
    for (int i = 0; i < 500; ++i) {
        const int t = list.add(5, 100, rng);
        EXPECT_GE(t, 3);
        EXPECT_LE(t, 12);
        seen.insert(t);
        EXPECT_TRUE(list.is_tabu(5, 100 + t - 1));
        EXPECT_FALSE(list.is_tabu(5, 100 + t));
    }
    EXPECT_EQ(seen.size(), 10u);
    EXPECT_FALSE(list.is_tabu(6, 100));
}

TEST(TabuSolutions, RingAndOrientation) {
    const auto inst = t1();
    TabuSolutionList list(2);
    const auto a = evaluate({0, E1, E2, N1, 0}, inst);
    const auto a_rev = evaluate({0, N1, E2, E1, 0}, inst);
    const auto b = evaluate({0, E1, N2, E2, 0}, inst);
    const auto c = evaluate({0, E2, E1, 0}, inst);
    EXPECT_EQ(fingerprint(a), fingerprint(a_rev));
    EXPECT_NE(fingerprint(a), fingerprint(b));
    list.add(fingerprint(a));
    list.add(fingerprint(b));
    EXPECT_TRUE(list.contains(fingerprint(a_rev)));
    list.add(fingerprint(c));
    EXPECT_FALSE(list.contains(fingerprint(a)));
    EXPECT_TRUE(list.contains(fingerprint(b)));
    EXPECT_EQ(list.size(), 2u);
}

TEST(TabuSearch, ToyTightCapKeepsOptimum) {
    const auto p = t1_problem(0.5);
    const auto start = evaluate({0, E1, E2, N1, 0}, p.inst);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto bank = OperatorBank::standard();
        Rng rng(seed);
        const auto r = ts_run(start, p.inst, p.baseline, p.limits, bank, t1_config(0.5), rng, true);
        EXPECT_NEAR(r.best.objective, 26.0, 1e-9);
        EXPECT_TRUE(is_feasible(r.best, p.baseline, p.limits, p.inst));
    }
}

TEST(TabuSearch, ToyLooseCapReachesOptimum) {
    const auto p = t1_problem(1.0);
    const auto start = evaluate({0, E1, E2, N1, 0}, p.inst);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto bank = OperatorBank::standard();
        Rng rng(seed);
        const auto r = ts_run(start, p.inst, p.baseline, p.limits, bank, t1_config(1.0), rng);
        EXPECT_NEAR(r.best.objective, 33.0, 1e-9) << seed;
    }
}

TEST(TabuSearch, ZeroIterationsReturnsStart) {
    const auto p = t1_problem(1.0);
    auto c = t1_config(1.0);
    c.ts_iterations = 0;
    auto bank = OperatorBank::standard();
    Rng rng(1);
    const auto start = evaluate({0, E1, E2, N1, 0}, p.inst);
    EXPECT_EQ(ts_run(start, p.inst, p.baseline, p.limits, bank, c, rng).best, start);
    EXPECT_THROW(ts_run(evaluate({0, E1, N2, E2, N1, 0}, t1_problem(0.5).inst), p.inst, t1_problem(0.5).baseline,
                        t1_problem(0.5).limits, bank, c, rng),
                 Error);
}

TEST(TabuSearch, IncumbentFeasibleAndMonotone) {
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 8; ++trial) {
        const auto inst = oracle::random_instance(gen, 5, 6);
        SolverConfig c;
        c.lambda = 0.4 + 0.1 * trial;
        const auto p = prepare_problem(inst, c);
        const auto start = initial_solution(p.baseline, p.inst);
        auto bank = OperatorBank::standard();
        Rng rng(trial);
        const auto r = ts_run(start, p.inst, p.baseline, p.limits, bank, c, rng, true);
        EXPECT_TRUE(is_feasible(r.best, p.baseline, p.limits, p.inst));
        EXPECT_TRUE(invariants::check(r.best, p.inst).empty());
        EXPECT_TRUE(invariants::check(r.best_conditional, p.inst).empty());
        EXPECT_GE(r.best.objective, start.objective);
        for (std::size_t i = 1; i < r.best_trace.size(); ++i) EXPECT_GE(r.best_trace[i], r.best_trace[i - 1]);
        for (const auto &row : r.trace) {
            EXPECT_GE(row.phi, c.phi_min);
            EXPECT_LE(row.phi, c.phi_max);
        }
        const auto csv = trace_csv(r.trace);
        EXPECT_EQ(csv.substr(0, csv.find('\n')), "iter,mode,phi,obj,Phi,verdict,tabu_hits");
    }
}
