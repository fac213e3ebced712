#ifndef HHCR_OPERATORS_HPP
#define HHCR_OPERATORS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "hhcr/error.hpp"
#include "hhcr/instance.hpp"
#include "hhcr/solution.hpp"

namespace hhcr {

using Rng = std::mt19937_64;

inline double uniform01(Rng &rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline std::size_t uniform_index(Rng &rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

enum class MoveStatus { Applied, NoOp, NoImprovement };

struct MoveResult {
    Solution solution;
    MoveStatus status = MoveStatus::NoOp;

    bool applied() const noexcept { return status == MoveStatus::Applied; }
};

enum class InsertionOp : int { PaymentPrioritized = 0, RestrictedShortest = 1, DisturbedShortest = 2, BestPosition = 3 };
enum class InternalOp : int { TwoOpt = 0, OrOpt = 1 };
enum class RemovalOp : int { Ratio = 0, Longest = 1 };
enum class ViolationOp : int { TravelBudget = 0, DisruptionCap = 1 };

inline const char *name_of(InsertionOp op) {
    switch (op) {
        case InsertionOp::PaymentPrioritized: return "payment_prioritized";
        case InsertionOp::RestrictedShortest: return "restricted_shortest";
        case InsertionOp::DisturbedShortest: return "disturbed_shortest";
        case InsertionOp::BestPosition: return "best_position";
    }
    return "?";
}
inline const char *name_of(InternalOp op) { return op == InternalOp::TwoOpt ? "two_opt" : "or_opt"; }
inline const char *name_of(RemovalOp op) { return op == RemovalOp::Ratio ? "ratio_removal" : "longest_removal"; }
inline const char *name_of(ViolationOp op) { return op == ViolationOp::TravelBudget ? "relax_travel" : "relax_disruption"; }

inline Relax relax_of(ViolationOp op) { return op == ViolationOp::TravelBudget ? Relax::TravelBudget : Relax::DisruptionCap; }

// ---------------------------------------------------------------------------
// Insertion

struct InsertionPoint {
    std::size_t arc = 0;  // insert between route[arc] and route[arc + 1]
    double increment = std::numeric_limits<double>::infinity();
};

/// Cheapest arc for `node` in `route`; ties keep the earliest arc.
inline InsertionPoint cheapest_insertion(const std::vector<NodeId> &route, NodeId node, const Instance &inst) {
    InsertionPoint best;
    for (std::size_t k = 0; k + 1 < route.size(); ++k) {
        const double inc = inst.distance(route[k], node) + inst.distance(node, route[k + 1]) - inst.distance(route[k], route[k + 1]);
        if (inc < best.increment) {
            best.increment = inc;
            best.arc = k;
        }
    }
    return best;
}

inline Solution insert_at(const Solution &sol, NodeId node, std::size_t arc, const Instance &inst) {
    std::vector<NodeId> route = sol.route;
    route.insert(route.begin() + static_cast<std::ptrdiff_t>(arc) + 1, node);
    return evaluate(std::move(route), inst);
}

/*
 * With probability 1-P the highest-paying unvisited customer (ties: lower id)
 * goes to its cheapest arc; with probability P a uniformly drawn unvisited
 * customer does.
 */
inline MoveResult payment_prioritized_insertion(const Solution &sol, const Instance &inst, Rng &rng, double p_random) {
    if (sol.rejected.empty()) return {sol, MoveStatus::NoOp};
    NodeId node = sol.rejected.front();
    if (uniform01(rng) < p_random) {
        node = sol.rejected[uniform_index(rng, sol.rejected.size())];
    } else {
        for (const auto k : sol.rejected) {
            if (inst.payment(k) > inst.payment(node)) node = k;
        }
    }
    const auto at = cheapest_insertion(sol.route, node, inst);
    return {insert_at(sol, node, at.arc, inst), MoveStatus::Applied};
}

/// Globally cheapest (customer, arc) pair with probability 1-P, otherwise a random customer at its cheapest arc.
inline MoveResult restricted_shortest_insertion(const Solution &sol, const Instance &inst, Rng &rng, double p_random) {
    if (sol.rejected.empty()) return {sol, MoveStatus::NoOp};
    if (uniform01(rng) < p_random) {
        const NodeId node = sol.rejected[uniform_index(rng, sol.rejected.size())];
        const auto at = cheapest_insertion(sol.route, node, inst);
        return {insert_at(sol, node, at.arc, inst), MoveStatus::Applied};
    }
    NodeId best_node = sol.rejected.front();
    InsertionPoint best;
    for (const auto k : sol.rejected) {
        const auto at = cheapest_insertion(sol.route, k, inst);
        if (at.increment < best.increment) {
            best = at;
            best_node = k;
        }
    }
    return {insert_at(sol, best_node, best.arc, inst), MoveStatus::Applied};
}

/// Perturbation added to an arc length: shortest arc length x factor x r, with r in (-1, 1).
inline double perturbation(double shortest_arc, double factor, double r) { return shortest_arc * factor * r; }

/*
 * A random unvisited customer is placed on the arc that is shortest after
 * every arc length is perturbed independently (probability 1-P), or on a
 * uniformly drawn arc (probability P).
 */
inline MoveResult disturbed_shortest_insertion(const Solution &sol, const Instance &inst, Rng &rng, double p_random,
                                               double factor) {
    if (sol.rejected.empty()) return {sol, MoveStatus::NoOp};
    const bool random_arc = uniform01(rng) < p_random;
    const NodeId node = sol.rejected[uniform_index(rng, sol.rejected.size())];
    const std::size_t arcs = sol.route.size() - 1;
    if (random_arc) {
        return {insert_at(sol, node, uniform_index(rng, arcs), inst), MoveStatus::Applied};
    }
    double shortest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < arcs; ++k) shortest = std::min(shortest, inst.distance(sol.route[k], sol.route[k + 1]));
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    std::size_t chosen = 0;
    double chosen_len = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < arcs; ++k) {
        const double len = inst.distance(sol.route[k], sol.route[k + 1]) + perturbation(shortest, factor, noise(rng));
        if (len < chosen_len) {
            chosen_len = len;
            chosen = k;
        }
    }
    return {insert_at(sol, node, chosen, inst), MoveStatus::Applied};
}

/*
 * With probability 1-P the customer with the best (payment + rejection cost)
 * per unit of added travel goes to its cheapest arc; with probability P a
 * uniformly drawn customer does.
 */
inline MoveResult best_position_insertion(const Solution &sol, const Instance &inst, Rng &rng, double p_random) {
    if (sol.rejected.empty()) return {sol, MoveStatus::NoOp};
    if (uniform01(rng) < p_random) {
        const NodeId node = sol.rejected[uniform_index(rng, sol.rejected.size())];
        const auto at = cheapest_insertion(sol.route, node, inst);
        return {insert_at(sol, node, at.arc, inst), MoveStatus::Applied};
    }
    NodeId best_node = sol.rejected.front();
    InsertionPoint best_at;
    double best_ratio = -1.0;
    for (const auto k : sol.rejected) {
        const auto at = cheapest_insertion(sol.route, k, inst);
        const double gain = inst.payment(k) + inst.rejection_cost();
        const double ratio = at.increment > kTolerance ? gain / at.increment : std::numeric_limits<double>::infinity();
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_node = k;
            best_at = at;
        }
    }
    return {insert_at(sol, best_node, best_at.arc, inst), MoveStatus::Applied};
}

// ---------------------------------------------------------------------------
// Internal moves. Both apply the single best improving move; equal-gain moves
// resolve to the lexicographically smaller resulting route.

namespace detail {

struct BestRoute {
    double delta = -kTolerance;
    std::vector<NodeId> route;

    void offer(double d, std::vector<NodeId> &&candidate) {
        if (route.empty()) {
            if (d < delta) {
                delta = d;
                route = std::move(candidate);
            }
        } else if (d < delta - kTolerance || (d <= delta + kTolerance && candidate < route)) {
            delta = std::min(d, delta);
            route = std::move(candidate);
        }
    }
};

}  // namespace detail

/// Replaces arcs (i,i+1),(j,j+1) by (i,j),(i+1,j+1), reversing the segment between them.
inline MoveResult two_opt(const Solution &sol, const Instance &inst) {
    const auto &r = sol.route;
    const std::size_t n = r.size();
    detail::BestRoute best;
    for (std::size_t i = 0; i + 3 < n; ++i) {
        for (std::size_t j = i + 2; j + 1 < n; ++j) {
            const double delta = inst.distance(r[i], r[j]) + inst.distance(r[i + 1], r[j + 1]) - inst.distance(r[i], r[i + 1]) -
                                 inst.distance(r[j], r[j + 1]);
            if (delta > best.delta + kTolerance) continue;
            std::vector<NodeId> cand = r;
            std::reverse(cand.begin() + static_cast<std::ptrdiff_t>(i) + 1, cand.begin() + static_cast<std::ptrdiff_t>(j) + 1);
            best.offer(delta, std::move(cand));
        }
    }
    if (best.route.empty()) return {sol, MoveStatus::NoImprovement};
    return {evaluate(std::move(best.route), inst), MoveStatus::Applied};
}

inline constexpr std::size_t kMaxOrOptChain = 3;

/// Relocates a chain of one to three consecutive customers, keeping its order.
inline MoveResult or_opt(const Solution &sol, const Instance &inst) {
    const auto &r = sol.route;
    const std::size_t last = r.size() - 2;  // last interior position
    detail::BestRoute best;
    for (std::size_t len = 1; len <= kMaxOrOptChain; ++len) {
        for (std::size_t a = 1; a + len - 1 <= last && last >= 1; ++a) {
            const std::size_t b = a + len - 1;
            const NodeId head = r[a];
            const NodeId tail = r[b];
            const double gain = inst.distance(r[a - 1], head) + inst.distance(tail, r[b + 1]) - inst.distance(r[a - 1], r[b + 1]);
            for (std::size_t p = 0; p + 1 < r.size(); ++p) {
                if (p + 1 >= a && p <= b) continue;  // arc touches the chain
                const double delta = inst.distance(r[p], head) + inst.distance(tail, r[p + 1]) - inst.distance(r[p], r[p + 1]) - gain;
                if (delta > best.delta + kTolerance) continue;
                std::vector<NodeId> cand;
                cand.reserve(r.size());
                for (std::size_t k = 0; k < r.size(); ++k) {
                    if (k >= a && k <= b) continue;
                    cand.push_back(r[k]);
                    if (k == p) cand.insert(cand.end(), r.begin() + static_cast<std::ptrdiff_t>(a), r.begin() + static_cast<std::ptrdiff_t>(b) + 1);
                }
                best.offer(delta, std::move(cand));
            }
        }
    }
    if (best.route.empty()) return {sol, MoveStatus::NoImprovement};
    return {evaluate(std::move(best.route), inst), MoveStatus::Applied};
}

// ---------------------------------------------------------------------------
// Removal

/// Travel saved by dropping the customer at route position `pos`.
inline double removal_saving(const std::vector<NodeId> &route, std::size_t pos, const Instance &inst) {
    return inst.distance(route[pos - 1], route[pos]) + inst.distance(route[pos], route[pos + 1]) -
           inst.distance(route[pos - 1], route[pos + 1]);
}

inline Solution remove_at(const Solution &sol, std::size_t pos, const Instance &inst) {
    std::vector<NodeId> route = sol.route;
    route.erase(route.begin() + static_cast<std::ptrdiff_t>(pos));
    return evaluate(std::move(route), inst);
}

inline double payment_ratio(double payment, double saving) {
    if (saving > 0.0) return payment / saving;
    return payment > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

/// Drops the visited new customer with the smallest payment per unit of travel it causes (ties: lower id).
inline MoveResult ratio_removal(const Solution &sol, const Instance &inst) {
    std::size_t chosen = 0;
    NodeId chosen_id = 0;
    double chosen_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t pos = 1; pos + 1 < sol.route.size(); ++pos) {
        const NodeId id = sol.route[pos];
        if (!inst.is_new(id)) continue;
        const double ratio = payment_ratio(inst.payment(id), removal_saving(sol.route, pos, inst));
        if (chosen == 0 || ratio < chosen_ratio || (ratio == chosen_ratio && id < chosen_id)) {
            chosen = pos;
            chosen_id = id;
            chosen_ratio = ratio;
        }
    }
    if (chosen == 0) return {sol, MoveStatus::NoOp};
    return {remove_at(sol, chosen, inst), MoveStatus::Applied};
}

/// Drops the visited new customer whose removal saves the most travel (ties: lower id).
inline MoveResult longest_removal(const Solution &sol, const Instance &inst) {
    std::size_t chosen = 0;
    NodeId chosen_id = 0;
    double chosen_saving = -std::numeric_limits<double>::infinity();
    for (std::size_t pos = 1; pos + 1 < sol.route.size(); ++pos) {
        const NodeId id = sol.route[pos];
        if (!inst.is_new(id)) continue;
        const double saving = removal_saving(sol.route, pos, inst);
        if (chosen == 0 || saving > chosen_saving || (saving == chosen_saving && id < chosen_id)) {
            chosen = pos;
            chosen_id = id;
            chosen_saving = saving;
        }
    }
    if (chosen == 0) return {sol, MoveStatus::NoOp};
    return {remove_at(sol, chosen, inst), MoveStatus::Applied};
}

// ---------------------------------------------------------------------------
// Adaptive operator bank

enum class Group : int { Insertion = 0, Internal = 1, Removal = 2, Violation = 3 };

struct OperatorSlot {
    int code = 0;
    double weight = 1.0;
    double score = 0.0;
    int times = 0;
    long total_uses = 0;
};

/// Weight after a refresh period: W*rho when unused, else W*(1-rho) + score*rho/times.
inline double update_weight(double weight, double rho, double score, int times) {
    if (times == 0) return weight * rho;
    return weight * (1.0 - rho) + (score * rho) / static_cast<double>(times);
}

/// Keeps a long-idle operator selectable instead of letting its weight underflow to zero.
inline constexpr double kMinWeight = 1e-3;

class OperatorBank {
public:
    OperatorBank() = default;

    OperatorBank(std::vector<InsertionOp> insertion, std::vector<InternalOp> internal, std::vector<RemovalOp> removal,
                 std::vector<ViolationOp> violation) {
        for (auto op : insertion) groups_[0].push_back({static_cast<int>(op)});
        for (auto op : internal) groups_[1].push_back({static_cast<int>(op)});
        for (auto op : removal) groups_[2].push_back({static_cast<int>(op)});
        for (auto op : violation) groups_[3].push_back({static_cast<int>(op)});
    }

    /// Three insertion, two internal, two removal and two violation operators, unit weights.
    static OperatorBank standard() {
        return OperatorBank({InsertionOp::PaymentPrioritized, InsertionOp::RestrictedShortest, InsertionOp::DisturbedShortest},
                            {InternalOp::TwoOpt, InternalOp::OrOpt}, {RemovalOp::Ratio, RemovalOp::Longest},
                            {ViolationOp::TravelBudget, ViolationOp::DisruptionCap});
    }

    std::vector<OperatorSlot> &slots(Group g) { return groups_[static_cast<std::size_t>(g)]; }
    const std::vector<OperatorSlot> &slots(Group g) const { return groups_[static_cast<std::size_t>(g)]; }

    std::vector<double> probabilities(Group g) const {
        const auto &s = slots(g);
        double total = 0.0;
        for (const auto &slot : s) total += slot.weight;
        std::vector<double> p;
        p.reserve(s.size());
        for (const auto &slot : s) p.push_back(slot.weight / total);
        return p;
    }

    /// Roulette-wheel draw: slot i with probability W_i / sum W.
    std::size_t select(Group g, Rng &rng) const {
        const auto &s = slots(g);
        if (s.empty()) throw Error(ErrorKind::DegenerateBank, "empty operator group");
        double total = 0.0;
        for (const auto &slot : s) {
            if (!(slot.weight > 0.0)) throw Error(ErrorKind::DegenerateBank, "operator weights must be positive");
            total += slot.weight;
        }
        if (s.size() == 1) return 0;
        const double pick = std::uniform_real_distribution<double>(0.0, total)(rng);
        double acc = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            acc += s[i].weight;
            if (pick < acc) return i;
        }
        return s.size() - 1;
    }

    void count_use(Group g, std::size_t i) {
        auto &slot = slots(g)[i];
        ++slot.times;
        ++slot.total_uses;
    }

    void reward(Group g, std::size_t i, double score) { slots(g)[i].score += score; }

    /// Applies update_weight to every slot of the group, floored at kMinWeight, then zeroes scores and usage counts.
    void refresh(Group g, double rho) {
        for (auto &slot : slots(g)) {
            slot.weight = std::max(update_weight(slot.weight, rho, slot.score, slot.times), kMinWeight);
            slot.score = 0.0;
            slot.times = 0;
        }
    }

    long total_uses(Group g, std::size_t i) const { return slots(g)[i].total_uses; }

private:
    std::array<std::vector<OperatorSlot>, 4> groups_;
};

// ---------------------------------------------------------------------------
// Dispatch

struct InsertionParams {
    double p_random = 0.1;
    double perturbation = 0.1;
};

inline MoveResult apply_insertion(InsertionOp op, const Solution &sol, const Instance &inst, Rng &rng, const InsertionParams &params) {
    switch (op) {
        case InsertionOp::PaymentPrioritized: return payment_prioritized_insertion(sol, inst, rng, params.p_random);
        case InsertionOp::RestrictedShortest: return restricted_shortest_insertion(sol, inst, rng, params.p_random);
        case InsertionOp::DisturbedShortest:
            return disturbed_shortest_insertion(sol, inst, rng, params.p_random, params.perturbation);
        case InsertionOp::BestPosition: return best_position_insertion(sol, inst, rng, params.p_random);
    }
    return {sol, MoveStatus::NoOp};
}

inline MoveResult apply_internal(InternalOp op, const Solution &sol, const Instance &inst) {
    return op == InternalOp::TwoOpt ? two_opt(sol, inst) : or_opt(sol, inst);
}

inline MoveResult apply_removal(RemovalOp op, const Solution &sol, const Instance &inst) {
    return op == RemovalOp::Ratio ? ratio_removal(sol, inst) : longest_removal(sol, inst);
}

}  // namespace hhcr

#endif  // HHCR_OPERATORS_HPP
