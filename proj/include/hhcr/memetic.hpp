#ifndef HHCR_MEMETIC_HPP
#define HHCR_MEMETIC_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hhcr/alns.hpp"
#include "hhcr/baseline_tsp.hpp"
#include "hhcr/config.hpp"
#include "hhcr/tabu_search.hpp"

namespace hhcr {

/// Mean distance from `sol` to the population members, divided by the population size.
/// Member `skip` (if any) is left out of the sum but still counted in the divisor.
inline double mean_distance(const Solution &sol, const std::vector<Solution> &population, std::size_t skip = SIZE_MAX) {
    if (population.empty()) throw Error(ErrorKind::Domain, "empty population");
    double total = 0.0;
    for (std::size_t j = 0; j < population.size(); ++j) {
        if (j != skip) total += solution_distance(sol, population[j]);
    }
    return total / static_cast<double>(population.size());
}

/// Fitness-distance ratio f / (D + epsilon).
inline double fdr(double objective, double mean_dist, double epsilon) { return objective / (mean_dist + epsilon); }

inline double fdr(const Solution &sol, const std::vector<Solution> &population, double epsilon, std::size_t skip = SIZE_MAX) {
    return fdr(sol.objective, mean_distance(sol, population, skip), epsilon);
}

/*
 * Ranking used when replacing average-tier members. It grows with both the
 * objective and the distance to the rest of the population:
 *   f * (D + eps)   for f >= 0
 *   f / (D + eps)   for f < 0
 */
inline double replacement_score(double objective, double mean_dist, double epsilon) {
    return objective >= 0.0 ? objective * (mean_dist + epsilon) : objective / (mean_dist + epsilon);
}

inline std::size_t elite_count(std::size_t population_size) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.2 * static_cast<double>(population_size))));
}

/// Member indices by objective, best first; ties keep the lower index first.
inline std::vector<std::size_t> rank_by_objective(const std::vector<Solution> &population) {
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return population[a].objective > population[b].objective; });
    return order;
}

enum class UpdateOutcome { Elite, Average, Duplicate, Rejected };

/*
 * Elitist tier: the top max(1, ceil(0.2 N)) members by objective. A candidate
 * beating the worst elitist joins the population and the weakest average
 * member (lowest replacement score) leaves, or the worst elitist when there is
 * no average tier. Otherwise the candidate replaces the weakest average member
 * only if its own score is strictly higher. Exact duplicates are refused.
 */
inline UpdateOutcome population_update(std::vector<Solution> &population, const Solution &candidate, double epsilon) {
    if (population.empty()) throw Error(ErrorKind::Domain, "empty population");
    for (const auto &member : population) {
        if (solution_distance(member, candidate) == 0.0) return UpdateOutcome::Duplicate;
    }
    const auto order = rank_by_objective(population);
    const std::size_t k = elite_count(population.size());
    const std::size_t worst_elite = order[k - 1];

    std::size_t weakest = SIZE_MAX;
    double weakest_score = 0.0;
    for (std::size_t r = k; r < order.size(); ++r) {
        const std::size_t i = order[r];
        const double s = replacement_score(population[i].objective, mean_distance(population[i], population, i), epsilon);
        if (weakest == SIZE_MAX || s < weakest_score) {
            weakest = i;
            weakest_score = s;
        }
    }

    if (candidate.objective > population[worst_elite].objective + kTolerance) {
        population[weakest == SIZE_MAX ? worst_elite : weakest] = candidate;
        return UpdateOutcome::Elite;
    }
    if (weakest == SIZE_MAX) return UpdateOutcome::Rejected;
    const double cand_score = replacement_score(candidate.objective, mean_distance(candidate, population), epsilon);
    if (cand_score > weakest_score) {
        population[weakest] = candidate;
        return UpdateOutcome::Average;
    }
    return UpdateOutcome::Rejected;
}

enum class Algorithm { Ma2, AlnsOnly, TsOnly, Ma1 };

inline const char *to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Ma2: return "ma2";
        case Algorithm::AlnsOnly: return "alns";
        case Algorithm::TsOnly: return "ts";
        case Algorithm::Ma1: return "ma1";
    }
    return "ma2";
}

inline Algorithm parse_algorithm(std::string_view text) {
    if (text == "ma2") return Algorithm::Ma2;
    if (text == "alns") return Algorithm::AlnsOnly;
    if (text == "ts") return Algorithm::TsOnly;
    if (text == "ma1") return Algorithm::Ma1;
    throw Error(ErrorKind::Domain, "unknown algorithm '" + std::string(text) + "'");
}

/// Operator bank of the best-position ablation: the insertion group holds best_position_insertion only.
inline OperatorBank best_position_bank() {
    return OperatorBank({InsertionOp::BestPosition}, {InternalOp::TwoOpt, InternalOp::OrOpt}, {RemovalOp::Ratio, RemovalOp::Longest},
                        {ViolationOp::TravelBudget, ViolationOp::DisruptionCap});
}

/// Instance plus everything derived from it for one (mu, lambda) setting.
struct Problem {
    Instance inst;
    OriginalSchedule baseline;
    DerivedLimits limits;
};

/// Builds the original schedule and the limits. Fails with Infeasible when the baseline route alone exceeds T_max.
inline Problem prepare_problem(Instance inst, const SolverConfig &config) {
    auto baseline = build_original_schedule(inst, config.tsp_mode);
    const double tsp = tsp_baseline_length(inst, config.tsp_mode);
    const auto limits = compute_limits(inst, config.mu, config.lambda, tsp);
    if (baseline.length > limits.t_max + kTolerance) {
        throw Error(ErrorKind::Infeasible, "original schedule length " + format_real(baseline.length) + " exceeds T_max " +
                                               format_real(limits.t_max));
    }
    return {std::move(inst), std::move(baseline), limits};
}

struct RunReport {
    std::string instance;
    std::uint64_t seed = 0;
    std::string algorithm = "ma2";
    double best_objective = 0.0;
    std::vector<double> best_trace;  // S* after population build and after each generation
    std::vector<double> avg_trace;   // population mean objective, same points
    double time_s = 0.0;
    int generations = 0;
    bool time_capped = false;
    OperatorBank ts_bank;

    static std::string csv_header() { return "instance,seed,best_obj,avg_obj_trace,time_s,generations"; }

    std::string csv_row() const {
        std::string trace;
        for (std::size_t i = 0; i < avg_trace.size(); ++i) {
            if (i) trace += ";";
            trace += format_real(avg_trace[i]);
        }
        return instance + "," + std::to_string(seed) + "," + format_real(best_objective) + "," + trace + "," + format_real(time_s) +
               "," + std::to_string(generations);
    }
};

struct SolveResult {
    Solution best;
    std::vector<Solution> population;
    RunReport report;
};

namespace detail {

inline Rng stream(std::uint64_t seed, std::uint32_t tag, std::uint32_t a, std::uint32_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tag, a, b};
    return Rng(seq);
}

inline double population_mean(const std::vector<Solution> &population) {
    double total = 0.0;
    for (const auto &s : population) total += s.objective;
    return total / static_cast<double>(population.size());
}

}  // namespace detail

/// Iteration budget of the single-engine baselines: N * L_ALNS + G * N * L_TS.
inline int equal_budget(const SolverConfig &config) {
    const long n = config.population_size;
    const long budget = n * config.alns_iterations + static_cast<long>(config.generations) * n * config.ts_iterations;
    return static_cast<int>(std::min<long>(budget, INT32_MAX));
}

/*
 * Memetic loop: ALNS builds the population from the original schedule with all
 * new customers rejected, then each generation refines every member with tabu
 * search and feeds the result back through population_update. Stops after
 * config.generations or once config.time_cap_s has elapsed between member
 * refinements. The other algorithms are the comparison baselines.
 */
inline SolveResult solve(const Problem &problem, const SolverConfig &config, std::uint64_t seed, Algorithm algorithm = Algorithm::Ma2) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count(); };
    const auto &inst = problem.inst;
    const auto &baseline = problem.baseline;
    const auto &limits = problem.limits;
    const Solution s0 = initial_solution(baseline, inst);

    SolveResult out;
    out.report.seed = seed;
    out.report.algorithm = to_string(algorithm);

    if (algorithm == Algorithm::AlnsOnly || algorithm == Algorithm::TsOnly) {
        SolverConfig single = config;
        Rng rng = detail::stream(seed, 0x5106u, 0, 0);
        if (algorithm == Algorithm::AlnsOnly) {
            single.alns_iterations = equal_budget(config);
            out.best = alns_run(s0, inst, baseline, limits, single, rng).best;
        } else {
            single.ts_iterations = equal_budget(config);
            OperatorBank bank = OperatorBank::standard();
            auto ts = ts_run(s0, inst, baseline, limits, bank, single, rng);
            out.best = std::move(ts.best);
            out.report.ts_bank = std::move(bank);
        }
        out.population = {out.best};
        out.report.best_trace = {out.best.objective};
        out.report.avg_trace = {out.best.objective};
        out.report.best_objective = out.best.objective;
        out.report.time_s = elapsed();
        return out;
    }

    const OperatorBank prototype = algorithm == Algorithm::Ma1 ? best_position_bank() : OperatorBank::standard();
    auto population = build_population(s0, config.population_size, inst, baseline, limits, config, seed, prototype);
    Solution best = population[rank_by_objective(population).front()];
    out.report.best_trace.push_back(best.objective);
    out.report.avg_trace.push_back(detail::population_mean(population));

    OperatorBank ts_bank = prototype;
    for (int g = 1; g <= config.generations && !out.report.time_capped; ++g) {
        for (std::size_t i = 0; i < population.size(); ++i) {
            if (elapsed() > config.time_cap_s) {
                out.report.time_capped = true;
                break;
            }
            Rng rng = detail::stream(seed, 0x7AB0u, static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(i));
            const Solution start = population[i];
            auto ts = ts_run(start, inst, baseline, limits, ts_bank, config, rng);
            if (ts.best.objective > best.objective + kTolerance) best = ts.best;
            population_update(population, ts.best, config.fdr_epsilon);
        }
        if (!out.report.time_capped) out.report.generations = g;
        out.report.best_trace.push_back(best.objective);
        out.report.avg_trace.push_back(detail::population_mean(population));
    }

    out.best = std::move(best);
    out.population = std::move(population);
    out.report.best_objective = out.best.objective;
    out.report.ts_bank = std::move(ts_bank);
    out.report.time_s = elapsed();
    return out;
}

/// Prepares the problem from `inst` and runs the memetic algorithm.
inline SolveResult memetic_solve(const Instance &inst, const SolverConfig &config, std::uint64_t seed) {
    config.validate();
    return solve(prepare_problem(inst, config), config, seed, Algorithm::Ma2);
}

}  // namespace hhcr

#endif  // HHCR_MEMETIC_HPP
