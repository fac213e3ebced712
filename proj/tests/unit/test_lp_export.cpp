#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "support/fixtures.hpp"
#include "support/lp_eval.hpp"
#include "support/oracle.hpp"

using namespace hhcr;
using namespace fixtures;

namespace {

std::map<std::string, double> assignment(const Solution &s, const OriginalSchedule &base, const Instance &inst) {
    std::map<std::string, double> x;
    for (std::size_t k = 0; k + 1 < s.route.size(); ++k) {
        x["x_" + std::to_string(s.route[k]) + "_" + std::to_string(s.route[k + 1])] = 1.0;
    }
    double z = 0.0;
    for (NodeId i = 1; i < inst.end_new(); ++i) {
        const bool on = s.visits(i);
        x["y_" + std::to_string(i)] = on ? 1.0 : 0.0;
        if (inst.is_new(i)) x["v_" + std::to_string(i)] = on ? 0.0 : 1.0;
        x["s_" + std::to_string(i)] = on ? s.arrival[i] : 0.0;
        x["u_" + std::to_string(i)] = 1.0;
        if (inst.is_existing(i)) z = std::max(z, std::abs(s.arrival[i] - base.promised_at(i)));
    }
    for (std::size_t k = 1; k + 1 < s.route.size(); ++k) x["u_" + std::to_string(s.route[k])] = static_cast<double>(k);
    x["z"] = z;
    return x;
}

std::string run_milp(const std::string &lp_text) {
    const auto path = std::filesystem::temp_directory_path() / ("hhcr_lp_" + std::to_string(std::hash<std::string>{}(lp_text)) + ".lp");
    std::ofstream(path) << lp_text;
    const std::string cmd = std::string(HHCR_PYTHON) + " " + HHCR_MILP_CHECK + " " + path.string();
    std::string out;
    if (FILE *p = popen(cmd.c_str(), "r")) {
        char buf[256];
        while (fgets(buf, sizeof buf, p)) out += buf;
        pclose(p);
    }
    std::filesystem::remove(path);
    return out;
}

double optimal_value(const std::string &out) {
    if (out.rfind("optimal ", 0) != 0) return std::nan("");
    return std::stod(out.substr(8));
}

}  // namespace

TEST(ExportOriginal, ToyVariableCounts) {
    const auto m = lp_eval::parse(export_original(t1()));
    EXPECT_FALSE(m.maximize);
    EXPECT_EQ(m.binaries.size(), 6u);
    EXPECT_EQ(m.generals.size(), 2u);
    int s_vars = 0;
    for (const auto &v : m.variables) s_vars += v.rfind("s_", 0) == 0;
    for (const auto &[v, b] : m.bounds) s_vars += v.rfind("s_", 0) == 0 && !m.variables.count(v);
    EXPECT_EQ(s_vars, 3);
}

TEST(ExportOriginal, TourSatisfiesModel) {
    const auto inst = t1();
    const auto m = lp_eval::parse(export_original(inst));
    const std::map<std::string, double> x{{"x_0_1", 1}, {"x_1_2", 1}, {"x_2_0", 1}, {"s_0", 0}, {"s_1", 3},
                                          {"s_2", 7},   {"u_1", 1},   {"u_2", 2}};
    const auto c = lp_eval::evaluate(m, x);
    EXPECT_TRUE(c.violated.empty());
    EXPECT_NEAR(c.objective, 12.0, 1e-9);
}

TEST(ExportOriginal, ExternalOptimumIsTwelve) {
    EXPECT_NEAR(optimal_value(run_milp(export_original(t1()))), 12.0, 1e-6);
}

TEST(ExportOriginal, NeedsTwoExisting) {
    try {
        export_original(make_instance({0, 0, 0}, {{1, 0, 1}}, {}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateModel);
    }
}

TEST(ExportRescheduling, ExternalOptimaOnToy) {
    for (const auto &[lambda, expected] : {std::pair{1.0, 33.0}, std::pair{0.5, 26.0}}) {
        const auto p = t1_problem(lambda);
        EXPECT_NEAR(optimal_value(run_milp(export_rescheduling(p.inst, p.baseline, p.limits))), expected, 1e-6) << lambda;
    }
}

TEST(ExportRescheduling, UnconstrainedServesEveryone) {
    auto inst = make_instance({0, 0, 0}, {{3, 0, 10}, {3, 4, 10}}, {{0, 4, 8}, {6, 0, 5}}, 0.0);
    const auto base = build_original_schedule(inst);
    DerivedLimits lim = compute_limits(inst, 100.0, 100.0, 18.0);
    EXPECT_NEAR(optimal_value(run_milp(export_rescheduling(inst, base, lim))), inst.total_payment(), 1e-6);
}

TEST(ExportRescheduling, FeasibleRoutesSatisfyModelWithMatchingObjective) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        const auto inst = oracle::random_instance(rng, 4, 4);
        SolverConfig c;
        c.lambda = 0.6;
        std::optional<Problem> maybe;
        try {
            maybe = prepare_problem(inst, c);
        } catch (const Error &) {
            continue;
        }
        const auto &p = *maybe;
        const auto m = lp_eval::parse(export_rescheduling(p.inst, p.baseline, p.limits));
        EXPECT_TRUE(m.maximize);
        const auto opt = exact_optimum(p.inst, p.baseline, p.limits);
        for (const auto &s : {initial_solution(p.baseline, p.inst), opt.best}) {
            ASSERT_TRUE(is_feasible(s, p.baseline, p.limits, p.inst));
            const auto check = lp_eval::evaluate(m, assignment(s, p.baseline, p.inst));
            EXPECT_TRUE(check.violated.empty()) << check.violated.front();
            EXPECT_NEAR(check.objective, s.objective, 1e-9);
        }
        // an infeasible route breaks a row
        const auto all = evaluate(solve_tsp(p.inst.customer_ids(), p.inst).route, p.inst);
        if (!is_feasible(all, p.baseline, p.limits, p.inst)) {
            EXPECT_FALSE(lp_eval::evaluate(m, assignment(all, p.baseline, p.inst)).violated.empty());
        }
    }
}

TEST(ExportRescheduling, ByteStable) {
    const auto p = t1_problem(0.5);
    EXPECT_EQ(export_rescheduling(p.inst, p.baseline, p.limits), export_rescheduling(p.inst, p.baseline, p.limits));
    EXPECT_EQ(export_original(p.inst), export_original(t1()));
}

TEST(ExportRescheduling, NeedsExisting) {
    const auto inst = make_instance({0, 0, 0}, {}, {{1, 0, 1}});
    OriginalSchedule base;
    base.promised.assign(inst.size(), 0.0);
    EXPECT_THROW(export_rescheduling(inst, base, {}), Error);
}

TEST(Gap, Values) {
    EXPECT_NEAR(gap(100, 95), 5.0, 1e-9);
    EXPECT_EQ(gap(42, 42), 0.0);
    EXPECT_NEAR(gap(100, 105), -5.0, 1e-9);
    try {
        gap(0, 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Division);
    }
}
