#ifndef HHCR_NEIGHBORHOOD_HPP
#define HHCR_NEIGHBORHOOD_HPP

#include "hhcr/operators.hpp"
#include "hhcr/solution.hpp"

namespace hhcr {

/// One insertion / internal / removal step chosen from a bank, as used by both search engines.
struct CompositeMove {
    std::size_t insertion = 0;
    std::size_t internal = 0;
    std::size_t removal = 0;
    bool insertion_applied = false;
    bool internal_applied = false;
    bool removal_applied = false;
    Solution result;
    ViolationMeasure violation;

    bool feasible() const noexcept { return violation.travel_ok() && violation.disruption_ok(); }
    bool changed() const noexcept { return insertion_applied || internal_applied || removal_applied; }
};

/*
 * Draws one operator per group, then:
 *   1. inserts a new customer;
 *   2. applies the internal move, unless it would turn a feasible route
 *      into an infeasible one;
 *   3. removes a new customer only if the route is still infeasible.
 * A feasible insertion always raises the objective, so the removal step acts
 * as the repair half of the move. A candidate that one removal cannot repair
 * comes back infeasible; the tabu search classifies it by violation mode.
 */
inline CompositeMove apply_composite(const Solution &start, const OperatorBank &bank, Rng &rng, const Instance &inst,
                                     const OriginalSchedule &baseline, const DerivedLimits &limits, const InsertionParams &params) {
    CompositeMove move;
    move.insertion = bank.select(Group::Insertion, rng);
    move.internal = bank.select(Group::Internal, rng);
    move.removal = bank.select(Group::Removal, rng);

    const auto ins_op = static_cast<InsertionOp>(bank.slots(Group::Insertion)[move.insertion].code);
    const auto int_op = static_cast<InternalOp>(bank.slots(Group::Internal)[move.internal].code);
    const auto rem_op = static_cast<RemovalOp>(bank.slots(Group::Removal)[move.removal].code);

    auto inserted = apply_insertion(ins_op, start, inst, rng, params);
    move.insertion_applied = inserted.applied();
    Solution current = move.insertion_applied ? std::move(inserted.solution) : start;
    auto violation = measure_violation(current, baseline, limits, inst);

    auto reordered = apply_internal(int_op, current, inst);
    if (reordered.applied()) {
        const auto after = measure_violation(reordered.solution, baseline, limits, inst);
        const bool was_feasible = violation.travel_ok() && violation.disruption_ok();
        const bool still_feasible = after.travel_ok() && after.disruption_ok();
        if (!was_feasible || still_feasible) {
            current = std::move(reordered.solution);
            violation = after;
            move.internal_applied = true;
        }
    }

    if (!(violation.travel_ok() && violation.disruption_ok())) {
        auto removed = apply_removal(rem_op, current, inst);
        if (removed.applied()) {
            current = std::move(removed.solution);
            violation = measure_violation(current, baseline, limits, inst);
            move.removal_applied = true;
        }
    }

    move.result = std::move(current);
    move.violation = violation;
    return move;
}

/// Adds `score` to every operator the move actually applied.
inline void reward_move(OperatorBank &bank, const CompositeMove &move, double score) {
    if (move.insertion_applied) bank.reward(Group::Insertion, move.insertion, score);
    if (move.internal_applied) bank.reward(Group::Internal, move.internal, score);
    if (move.removal_applied) bank.reward(Group::Removal, move.removal, score);
}

inline void count_move(OperatorBank &bank, const CompositeMove &move) {
    if (move.insertion_applied) bank.count_use(Group::Insertion, move.insertion);
    if (move.internal_applied) bank.count_use(Group::Internal, move.internal);
    if (move.removal_applied) bank.count_use(Group::Removal, move.removal);
}

inline std::string operator_triple(const OperatorBank &bank, const CompositeMove &move) {
    std::string s = move.insertion_applied ? name_of(static_cast<InsertionOp>(bank.slots(Group::Insertion)[move.insertion].code)) : "-";
    s += "|";
    s += move.internal_applied ? name_of(static_cast<InternalOp>(bank.slots(Group::Internal)[move.internal].code)) : "-";
    s += "|";
    s += move.removal_applied ? name_of(static_cast<RemovalOp>(bank.slots(Group::Removal)[move.removal].code)) : "-";
    return s;
}

}  // namespace hhcr

#endif  // HHCR_NEIGHBORHOOD_HPP
