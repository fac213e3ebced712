#ifndef HHCR_TABU_SEARCH_HPP
#define HHCR_TABU_SEARCH_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "hhcr/alns.hpp"
#include "hhcr/config.hpp"
#include "hhcr/neighborhood.hpp"

namespace hhcr {

struct PenaltyState {
    double phi = 1.0;
    double phi_min = 0.01;
    double phi_max = 100.0;
};

/// Halves phi after an all-feasible window, doubles it after an all-infeasible one, clamped to the bounds.
inline PenaltyState update_phi(PenaltyState state, int feasible, int infeasible) {
    if (feasible > 0 && infeasible == 0) {
        state.phi = std::max(state.phi / 2.0, state.phi_min);
    } else if (infeasible > 0 && feasible == 0) {
        state.phi = std::min(state.phi * 2.0, state.phi_max);
    }
    return state;
}

/// f - phi * ex for the relaxed constraint; a zero excess contributes nothing even for an infinite phi.
inline double phi_eval(double objective, const ViolationMeasure &v, Relax mode, double phi) {
    const double ex = mode == Relax::TravelBudget ? v.ex1 : mode == Relax::DisruptionCap ? v.ex2 : 0.0;
    return ex == 0.0 ? objective : objective - phi * ex;
}

inline double phi_eval(const Solution &sol, const ViolationMeasure &v, Relax mode, double phi) {
    return phi_eval(sol.objective, v, mode, phi);
}

inline const char *to_string(Relax mode) {
    switch (mode) {
        case Relax::None: return "none";
        case Relax::TravelBudget: return "travel";
        case Relax::DisruptionCap: return "disruption";
    }
    return "none";
}

inline const char *to_string(Verdict v) {
    switch (v) {
        case Verdict::Feasible: return "feasible";
        case Verdict::ConditionallyFeasible: return "conditional";
        case Verdict::Infeasible: return "infeasible";
    }
    return "infeasible";
}

/// New customers recently inserted or removed, each blocked until its expiry iteration.
class TabuNodeList {
public:
    TabuNodeList(double alpha, int n_new) : base_(static_cast<int>(std::floor(alpha * n_new))) {}

    int min_tenure() const noexcept { return base_ + 1; }
    int max_tenure() const noexcept { return base_ + 10; }

    /// Tenure floor(alpha * n_new) + U{1..10}.
    int add(NodeId id, int iter, Rng &rng) {
        const int tenure = base_ + 1 + static_cast<int>(uniform_index(rng, 10));
        expiry_[id] = iter + tenure;
        return tenure;
    }

    bool is_tabu(NodeId id, int iter) const {
        const auto it = expiry_.find(id);
        return it != expiry_.end() && iter < it->second;
    }

    std::size_t size() const noexcept { return expiry_.size(); }

private:
    int base_;
    std::map<NodeId, int> expiry_;
};

/// FNV-1a over the route in canonical orientation; reversed routes share a fingerprint.
inline std::uint64_t fingerprint(const Solution &sol) {
    auto route = sol.route;
    canonical_orientation(route);
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto id : route) {
        auto v = static_cast<std::uint32_t>(id);
        for (int b = 0; b < 4; ++b) {
            h ^= (v & 0xFFu);
            h *= 1099511628211ULL;
            v >>= 8;
        }
    }
    return h;
}

/// Ring of the last `capacity` rejected solutions.
class TabuSolutionList {
public:
    explicit TabuSolutionList(std::size_t capacity) : capacity_(capacity) {}

    void add(std::uint64_t fp) {
        if (capacity_ == 0) return;
        if (ring_.size() == capacity_) ring_.pop_front();
        ring_.push_back(fp);
    }

    bool contains(std::uint64_t fp) const { return std::find(ring_.begin(), ring_.end(), fp) != ring_.end(); }
    std::size_t size() const noexcept { return ring_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }

private:
    std::size_t capacity_;
    std::deque<std::uint64_t> ring_;
};

/// New customers whose served/rejected status differs between two solutions.
inline std::vector<NodeId> moved_new_nodes(const Solution &from, const Solution &to, const Instance &inst) {
    std::vector<NodeId> moved;
    for (NodeId id = inst.first_new(); id < inst.end_new(); ++id) {
        if (from.visits(id) != to.visits(id)) moved.push_back(id);
    }
    return moved;
}

enum class TsOutcome { Aspiration, Conditional, Rejected, Tabu };

struct TsTraceRow {
    int iter = 0;
    Relax mode = Relax::None;
    double phi = 0.0;
    double objective = 0.0;
    double penalized = 0.0;
    Verdict verdict = Verdict::Infeasible;
    int tabu_hits = 0;
};

struct TsResult {
    Solution best;              // S*, strictly feasible
    Solution best_conditional;  // S'
    PenaltyState penalty;
    std::vector<double> best_trace;
    std::vector<TsTraceRow> trace;
    std::vector<TsOutcome> outcomes;
};

/*
 * Local improvement of a feasible start over config.ts_iterations iterations.
 * Each iteration starts from the better of S* and S' by raw objective, picks
 * a violation mode from the Violation group and applies one composite move.
 * The candidate is judged under that mode:
 *   - a feasible improvement of S* is always taken (aspiration);
 *   - else, unless the candidate is a recorded tabu solution or moves a tabu
 *     node, a conditionally feasible candidate improving Phi(S') replaces S';
 *   - else the candidate scores s_3, and is recorded as a tabu solution when
 *     it violates both constraints.
 * Move groups refresh every weight_period iterations; the Violation group and
 * phi refresh every penalty_period iterations.
 */
inline TsResult ts_run(const Solution &start, const Instance &inst, const OriginalSchedule &baseline, const DerivedLimits &limits,
                       OperatorBank &bank, const SolverConfig &config, Rng &rng, bool record_trace = false) {
    if (!is_feasible(start, baseline, limits, inst)) {
        throw Error(ErrorKind::Structural, "tabu search start solution is infeasible");
    }
    const auto params = insertion_params(config);
    TsResult out;
    out.best = start;
    out.best_conditional = start;
    out.penalty = {config.phi_initial, config.phi_min, config.phi_max};
    ViolationMeasure cond_violation = measure_violation(start, baseline, limits, inst);

    TabuNodeList tabu_nodes(config.tabu_alpha, inst.n_new());
    TabuSolutionList tabu_solutions(static_cast<std::size_t>(config.population_size));
    int window_feasible = 0;
    int window_infeasible = 0;

    for (int iter = 1; iter <= config.ts_iterations; ++iter) {
        const Solution &from = out.best_conditional.objective > out.best.objective + kTolerance ? out.best_conditional : out.best;
        const std::size_t v_slot = bank.select(Group::Violation, rng);
        const Relax mode = relax_of(static_cast<ViolationOp>(bank.slots(Group::Violation)[v_slot].code));
        bank.count_use(Group::Violation, v_slot);

        const auto move = apply_composite(from, bank, rng, inst, baseline, limits, params);
        count_move(bank, move);
        const Solution &cand = move.result;
        const Verdict verdict = verdict_for(move.violation, mode);
        const double penalized = phi_eval(cand, move.violation, mode, out.penalty.phi);
        const auto moved = moved_new_nodes(from, cand, inst);
        int tabu_hits = 0;
        for (const auto id : moved) tabu_hits += tabu_nodes.is_tabu(id, iter) ? 1 : 0;

        if (move.feasible()) {
            ++window_feasible;
        } else {
            ++window_infeasible;
        }

        TsOutcome outcome = TsOutcome::Tabu;
        double score = 0.0;
        if (move.feasible() && cand.objective > out.best.objective + kTolerance) {
            outcome = TsOutcome::Aspiration;
            score = config.score_feasible;
            out.best = cand;
            if (penalized > phi_eval(out.best_conditional, cond_violation, mode, out.penalty.phi) + kTolerance) {
                out.best_conditional = cand;
                cond_violation = move.violation;
            }
            for (const auto id : moved) tabu_nodes.add(id, iter, rng);
        } else if (move.changed() && tabu_hits == 0 && !tabu_solutions.contains(fingerprint(cand))) {
            if (verdict != Verdict::Infeasible &&
                penalized > phi_eval(out.best_conditional, cond_violation, mode, out.penalty.phi) + kTolerance) {
                outcome = TsOutcome::Conditional;
                score = config.score_conditional;
                out.best_conditional = cand;
                cond_violation = move.violation;
                for (const auto id : moved) tabu_nodes.add(id, iter, rng);
            } else {
                outcome = TsOutcome::Rejected;
                score = config.score_infeasible;
                if (!move.violation.travel_ok() && !move.violation.disruption_ok()) tabu_solutions.add(fingerprint(cand));
            }
        }
        reward_move(bank, move, score);
        bank.reward(Group::Violation, v_slot, score);

        if (iter % config.weight_period == 0) {
            bank.refresh(Group::Insertion, config.rho);
            bank.refresh(Group::Internal, config.rho);
            bank.refresh(Group::Removal, config.rho);
        }
        if (iter % config.penalty_period == 0) {
            bank.refresh(Group::Violation, config.rho);
            out.penalty = update_phi(out.penalty, window_feasible, window_infeasible);
            window_feasible = 0;
            window_infeasible = 0;
        }

        out.best_trace.push_back(out.best.objective);
        out.outcomes.push_back(outcome);
        if (record_trace) {
            out.trace.push_back({iter, mode, out.penalty.phi, cand.objective, penalized, verdict, tabu_hits});
        }
    }
    return out;
}

inline std::string trace_csv(const std::vector<TsTraceRow> &rows) {
    std::string out = "iter,mode,phi,obj,Phi,verdict,tabu_hits\n";
    for (const auto &r : rows) {
        out += std::to_string(r.iter) + "," + to_string(r.mode) + "," + format_real(r.phi) + "," + format_real(r.objective) + "," +
               format_real(r.penalized) + "," + to_string(r.verdict) + "," + std::to_string(r.tabu_hits) + "\n";
    }
    return out;
}

}  // namespace hhcr

#endif  // HHCR_TABU_SEARCH_HPP
