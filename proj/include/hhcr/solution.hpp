#ifndef HHCR_SOLUTION_HPP
#define HHCR_SOLUTION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hhcr/error.hpp"
#include "hhcr/format.hpp"
#include "hhcr/instance.hpp"

namespace hhcr {

/// Comparison tolerance for constraint boundaries (budget, disruption cap).
inline constexpr double kTolerance = 1e-9;

inline constexpr double kUnvisited = -1.0;

/// Baseline tour over existing customers with the promised arrival time of each.
struct OriginalSchedule {
    std::vector<NodeId> route;     // depot-anchored
    std::vector<double> promised;  // indexed by node id, NaN for non-existing nodes
    double length = 0.0;

    double promised_at(NodeId id) const {
        if (id < 0 || static_cast<std::size_t>(id) >= promised.size() || std::isnan(promised[static_cast<std::size_t>(id)])) {
            throw Error(ErrorKind::Structural, "baseline has no promised time for node " + std::to_string(id));
        }
        return promised[static_cast<std::size_t>(id)];
    }
};

/*
 * A rescheduled route. `route` starts and ends at the depot, `rejected` lists
 * the new customers that are off the route in ascending id order, and
 * `arrival[i]` is the arrival time at node i (kUnvisited when i is not on the
 * route; the depot departs at 0).
 */
struct Solution {
    std::vector<NodeId> route;
    std::vector<NodeId> rejected;
    std::vector<double> arrival;
    double length = 0.0;
    double objective = 0.0;

    bool visits(NodeId id) const noexcept {
        return id >= 0 && static_cast<std::size_t>(id) < arrival.size() && arrival[static_cast<std::size_t>(id)] >= 0.0;
    }
    std::size_t interior_size() const noexcept { return route.size() >= 2 ? route.size() - 2 : 0; }

    friend bool operator==(const Solution &a, const Solution &b) {
        return a.route == b.route && a.rejected == b.rejected && a.arrival == b.arrival && a.length == b.length &&
               a.objective == b.objective;
    }
};

namespace detail {

inline void check_route_shape(const std::vector<NodeId> &route, const Instance &inst, std::vector<char> &seen) {
    if (route.size() < 2 || route.front() != kDepot || route.back() != kDepot) {
        throw Error(ErrorKind::Structural, "route must start and end at the depot");
    }
    seen.assign(inst.size(), 0);
    for (std::size_t k = 1; k + 1 < route.size(); ++k) {
        const NodeId id = route[k];
        if (id == kDepot || !inst.contains(id)) {
            throw Error(ErrorKind::Structural, "invalid node " + std::to_string(id) + " inside the route");
        }
        if (seen[static_cast<std::size_t>(id)]) {
            throw Error(ErrorKind::Structural, "duplicate node " + std::to_string(id));
        }
        seen[static_cast<std::size_t>(id)] = 1;
    }
    for (NodeId id = inst.first_existing(); id < inst.end_existing(); ++id) {
        if (!seen[static_cast<std::size_t>(id)]) {
            throw Error(ErrorKind::Structural, "existing customer " + std::to_string(id) + " is missing from the route");
        }
    }
}

}  // namespace detail

/// Validates the route and populates rejected set, arrivals, length and objective by forward propagation.
inline Solution evaluate(std::vector<NodeId> route, const Instance &inst) {
    std::vector<char> seen;
    detail::check_route_shape(route, inst, seen);

    Solution sol;
    sol.arrival.assign(inst.size(), kUnvisited);
    sol.arrival[0] = 0.0;
    double t = 0.0;
    double served = 0.0;
    for (std::size_t k = 1; k < route.size(); ++k) {
        t += inst.distance(route[k - 1], route[k]);
        if (k + 1 < route.size()) {
            sol.arrival[static_cast<std::size_t>(route[k])] = t;
            served += inst.payment(route[k]);
        }
    }
    for (NodeId id = inst.first_new(); id < inst.end_new(); ++id) {
        if (!seen[static_cast<std::size_t>(id)]) sol.rejected.push_back(id);
    }
    sol.length = t;
    sol.objective = served - inst.rejection_cost() * static_cast<double>(sol.rejected.size());
    sol.route = std::move(route);
    return sol;
}

/// As above, additionally checking that `rejected` is exactly the set of off-route new customers.
inline Solution evaluate(std::vector<NodeId> route, std::vector<NodeId> rejected, const Instance &inst) {
    auto sol = evaluate(std::move(route), inst);
    std::sort(rejected.begin(), rejected.end());
    if (rejected != sol.rejected) {
        throw Error(ErrorKind::Structural, "rejected set does not match the new customers absent from the route");
    }
    return sol;
}

/// Per-existing-customer absolute deviation from the promised arrival time.
inline std::map<NodeId, double> disruption(const Solution &sol, const OriginalSchedule &baseline, const Instance &inst) {
    std::map<NodeId, double> out;
    for (NodeId id = inst.first_existing(); id < inst.end_existing(); ++id) {
        const double promised = baseline.promised_at(id);
        if (!sol.visits(id)) {
            throw Error(ErrorKind::Structural, "solution does not visit existing customer " + std::to_string(id));
        }
        out.emplace(id, std::abs(sol.arrival[static_cast<std::size_t>(id)] - promised));
    }
    return out;
}

struct ViolationMeasure {
    double ex1 = 0.0;  // travel-budget excess
    double ex2 = 0.0;  // payments of existing customers past the disruption cap

    bool travel_ok() const noexcept { return ex1 == 0.0; }
    bool disruption_ok() const noexcept { return ex2 == 0.0; }
};

enum class Relax { None, TravelBudget, DisruptionCap };

enum class Verdict { Feasible, ConditionallyFeasible, Infeasible };

struct FeasibilityReport {
    ViolationMeasure violation;
    Verdict verdict = Verdict::Infeasible;

    bool feasible() const noexcept { return verdict == Verdict::Feasible; }
    bool conditionally_feasible() const noexcept { return verdict != Verdict::Infeasible; }
};

inline ViolationMeasure measure_violation(const Solution &sol, const OriginalSchedule &baseline,
                                          const DerivedLimits &limits, const Instance &inst) {
    ViolationMeasure v;
    if (sol.length > limits.t_max + kTolerance) v.ex1 = sol.length - limits.t_max;
    for (NodeId id = inst.first_existing(); id < inst.end_existing(); ++id) {
        const double delta = std::abs(sol.arrival[static_cast<std::size_t>(id)] - baseline.promised[static_cast<std::size_t>(id)]);
        if (delta > limits.disruption_cap + kTolerance) v.ex2 += inst.payment(id);
    }
    return v;
}

inline Verdict verdict_for(const ViolationMeasure &v, Relax relax) noexcept {
    if (v.travel_ok() && v.disruption_ok()) return Verdict::Feasible;
    switch (relax) {
        case Relax::None: return Verdict::Infeasible;
        case Relax::TravelBudget: return v.disruption_ok() ? Verdict::ConditionallyFeasible : Verdict::Infeasible;
        case Relax::DisruptionCap: return v.travel_ok() ? Verdict::ConditionallyFeasible : Verdict::Infeasible;
    }
    return Verdict::Infeasible;
}

inline FeasibilityReport check_feasible(const Solution &sol, const OriginalSchedule &baseline, const DerivedLimits &limits,
                                        const Instance &inst, Relax relax = Relax::None) {
    FeasibilityReport report;
    report.violation = measure_violation(sol, baseline, limits, inst);
    report.verdict = verdict_for(report.violation, relax);
    return report;
}

inline bool is_feasible(const Solution &sol, const OriginalSchedule &baseline, const DerivedLimits &limits, const Instance &inst) {
    return check_feasible(sol, baseline, limits, inst).feasible();
}

namespace detail {

inline std::vector<std::pair<NodeId, NodeId>> undirected_arcs(const Solution &s) {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    if (s.route.size() <= 2) return arcs;  // empty route has no real arc
    arcs.reserve(s.route.size() - 1);
    for (std::size_t k = 0; k + 1 < s.route.size(); ++k) {
        arcs.emplace_back(std::min(s.route[k], s.route[k + 1]), std::max(s.route[k], s.route[k + 1]));
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    return arcs;
}

}  // namespace detail

/*
 * Distance between two solutions of the same instance:
 *   (|visited(a) xor visited(b)| + |arcs(a) xor arcs(b)|) / 2
 * with arcs taken as unordered node pairs. Inserting or removing a single
 * customer scores 2 (one node, three arcs), a route and its reversal score 0.
 * Being half a sum of two symmetric differences it is a pseudometric.
 */
inline double solution_distance(const Solution &a, const Solution &b) {
    if (a.arrival.size() != b.arrival.size()) {
        throw Error(ErrorKind::Structural, "solutions belong to different instances");
    }
    std::size_t visited_diff = 0;
    for (std::size_t i = 1; i < a.arrival.size(); ++i) {
        if ((a.arrival[i] >= 0.0) != (b.arrival[i] >= 0.0)) ++visited_diff;
    }
    const auto arcs_a = detail::undirected_arcs(a);
    const auto arcs_b = detail::undirected_arcs(b);
    std::size_t common = 0;
    for (auto ia = arcs_a.begin(), ib = arcs_b.begin(); ia != arcs_a.end() && ib != arcs_b.end();) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++common;
            ++ia;
            ++ib;
        }
    }
    const std::size_t arc_diff = arcs_a.size() + arcs_b.size() - 2 * common;
    return 0.5 * static_cast<double>(visited_diff + arc_diff);
}

/// `route=0,5,3,0; rejected=7,9; obj=<real>; len=<real>`
inline std::string to_string(const Solution &sol) {
    return "route=" + join_ints(sol.route) + "; rejected=" + join_ints(sol.rejected) + "; obj=" + format_real(sol.objective) +
           "; len=" + format_real(sol.length);
}

/// Reads the route and rejected fields of the one-line form and re-evaluates; obj/len are recomputed.
inline Solution parse_solution(std::string_view text, const Instance &inst) {
    std::vector<NodeId> route;
    std::vector<NodeId> rejected;
    bool have_route = false;
    for (auto field : split(text, ';')) {
        const auto tokens = split_whitespace(field);
        if (tokens.empty()) continue;
        const auto eq = field.find('=');
        if (eq == std::string_view::npos) throw ParseError(1, "field without '='");
        auto key = field.substr(0, eq);
        const auto value = field.substr(eq + 1);
        while (!key.empty() && key.front() == ' ') key.remove_prefix(1);
        std::vector<NodeId> *target = nullptr;
        if (key == "route") {
            target = &route;
            have_route = true;
        } else if (key == "rejected") {
            target = &rejected;
        } else {
            continue;
        }
        if (split_whitespace(value).empty()) continue;
        for (auto part : split(value, ',')) {
            const auto v = parse_real(part);
            if (!v || *v != std::floor(*v)) throw ParseError(1, "bad node id in " + std::string(key));
            target->push_back(static_cast<NodeId>(*v));
        }
    }
    if (!have_route) throw ParseError(1, "missing route field");
    return evaluate(std::move(route), std::move(rejected), inst);
}

/// Route of the baseline with every new customer rejected.
inline Solution initial_solution(const OriginalSchedule &baseline, const Instance &inst) {
    return evaluate(baseline.route, inst);
}

}  // namespace hhcr

#endif  // HHCR_SOLUTION_HPP
