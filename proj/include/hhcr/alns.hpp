#ifndef HHCR_ALNS_HPP
#define HHCR_ALNS_HPP

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hhcr/config.hpp"
#include "hhcr/neighborhood.hpp"

namespace hhcr {

/// Simulated-annealing schedule with reheating.
struct SaState {
    double temperature = 1.0;
    double t_init = 1.0;
    double t_min = 1e-3;
    double cooling = 0.999;

    /// One geometric cooling step; falls back to t_init once below t_min.
    void step() noexcept {
        temperature *= cooling;
        if (temperature < t_min) temperature = t_init;
    }
};

inline SaState make_sa_state(double seed_objective, const SolverConfig &config) {
    SaState sa;
    sa.t_init = config.sa_t_init.value_or(0.05 * std::abs(seed_objective) + 1.0);
    sa.t_min = config.sa_t_min.value_or(sa.t_init / 1000.0);
    if (!(sa.t_min < sa.t_init)) throw Error(ErrorKind::Domain, "annealing needs t_min < t_init");
    sa.cooling = config.sa_cooling;
    sa.temperature = sa.t_init;
    return sa;
}

/// exp(-delta_f / T) for a worsening move, 1 otherwise (delta_f = f(current) - f(candidate)).
inline double acceptance_probability(double delta_f, double temperature) {
    if (delta_f <= 0.0) return 1.0;
    return std::exp(-delta_f / temperature);
}

struct SaDecision {
    bool accepted = false;
    SaState next;
};

/// Non-worsening moves are accepted without consuming a random draw.
inline SaDecision sa_accept(double delta_f, const SaState &sa, Rng &rng) {
    SaDecision d;
    d.accepted = delta_f <= 0.0 || uniform01(rng) < acceptance_probability(delta_f, sa.temperature);
    d.next = sa;
    d.next.step();
    return d;
}

struct AlnsTraceRow {
    int iter = 0;
    std::string operators;
    double objective = 0.0;
    bool accepted = false;
    double temperature = 0.0;
};

struct AlnsResult {
    Solution best;
    OperatorBank bank;
    std::vector<double> best_trace;  // incumbent objective after each iteration
    std::vector<AlnsTraceRow> trace;
};

inline InsertionParams insertion_params(const SolverConfig &config) { return {config.p_random, config.perturbation}; }

/*
 * Runs config.alns_iterations composite moves from `seed`. Only strictly
 * feasible candidates are considered; those are accepted when they improve
 * the current solution or pass the annealing test. Applied operators share
 * the iteration's score and the three move groups are refreshed every
 * weight_period iterations.
 */
inline AlnsResult alns_run(const Solution &seed, const Instance &inst, const OriginalSchedule &baseline,
                           const DerivedLimits &limits, const SolverConfig &config, Rng &rng,
                           OperatorBank bank = OperatorBank::standard(), bool record_trace = false) {
    if (!is_feasible(seed, baseline, limits, inst)) {
        throw Error(ErrorKind::Structural, "ALNS seed solution is infeasible");
    }
    const auto params = insertion_params(config);
    AlnsResult out;
    out.best = seed;
    Solution current = seed;
    SaState sa = make_sa_state(seed.objective, config);

    for (int iter = 1; iter <= config.alns_iterations; ++iter) {
        const auto move = apply_composite(current, bank, rng, inst, baseline, limits, params);
        count_move(bank, move);

        bool accepted = false;
        double score = 0.0;
        if (move.changed() && move.feasible()) {
            const double f = move.result.objective;
            if (f > out.best.objective + kTolerance) {
                accepted = true;
                score = config.score_best;
                sa.step();
            } else if (f > current.objective + kTolerance) {
                accepted = true;
                score = config.score_better;
                sa.step();
            } else {
                const auto decision = sa_accept(current.objective - f, sa, rng);
                accepted = decision.accepted;
                if (accepted) score = config.score_worse;
                sa = decision.next;
            }
        } else {
            sa.step();
        }

        if (accepted) {
            current = move.result;
            if (current.objective > out.best.objective + kTolerance) out.best = current;
        }
        reward_move(bank, move, score);

        if (iter % config.weight_period == 0) {
            bank.refresh(Group::Insertion, config.rho);
            bank.refresh(Group::Internal, config.rho);
            bank.refresh(Group::Removal, config.rho);
        }

        out.best_trace.push_back(out.best.objective);
        if (record_trace) {
            out.trace.push_back({iter, operator_triple(bank, move), move.result.objective, accepted, sa.temperature});
        }
    }
    out.bank = std::move(bank);
    return out;
}

inline std::string trace_csv(const std::vector<AlnsTraceRow> &rows) {
    std::string out = "iter,operator_triple,obj,accepted,temperature\n";
    for (const auto &r : rows) {
        out += std::to_string(r.iter) + "," + r.operators + "," + format_real(r.objective) + "," + (r.accepted ? "1" : "0") +
               "," + format_real(r.temperature) + "\n";
    }
    return out;
}

inline constexpr int kDuplicateRetries = 3;

/*
 * `size` independent ALNS runs, member i seeded from (master_seed, i, attempt).
 * A member at distance 0 from an earlier one is rerun up to three times and
 * kept as is after that.
 */
inline std::vector<Solution> build_population(const Solution &seed, int size, const Instance &inst,
                                              const OriginalSchedule &baseline, const DerivedLimits &limits,
                                              const SolverConfig &config, std::uint64_t master_seed,
                                              const OperatorBank &bank = OperatorBank::standard()) {
    if (size < 1) throw Error(ErrorKind::Domain, "population size must be at least 1");
    std::vector<Solution> population;
    population.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        Solution member;
        for (int attempt = 0; attempt <= kDuplicateRetries; ++attempt) {
            std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32), 0xA125u,
                              static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(attempt)};
            Rng rng(seq);
            member = alns_run(seed, inst, baseline, limits, config, rng, bank).best;
            bool duplicate = false;
            for (const auto &other : population) {
                if (solution_distance(member, other) == 0.0) {
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) break;
        }
        population.push_back(std::move(member));
    }
    return population;
}

}  // namespace hhcr

#endif  // HHCR_ALNS_HPP
