#ifndef HHCR_BASELINE_TSP_HPP
#define HHCR_BASELINE_TSP_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "hhcr/error.hpp"
#include "hhcr/instance.hpp"
#include "hhcr/solution.hpp"

namespace hhcr {

enum class TspMode { Exact, Heuristic, Auto };

inline constexpr std::size_t kAutoExactLimit = 15;
inline constexpr std::size_t kExactCapacity = 20;

struct TspTour {
    std::vector<NodeId> route;  // depot-anchored
    double length = 0.0;
};

inline double route_length(const std::vector<NodeId> &route, const Instance &inst) {
    double len = 0.0;
    for (std::size_t k = 0; k + 1 < route.size(); ++k) len += inst.distance(route[k], route[k + 1]);
    return len;
}

/// Between a tour and its reversal keep the one whose first customer has the smaller id.
inline void canonical_orientation(std::vector<NodeId> &route) {
    if (route.size() > 3 && route[1] > route[route.size() - 2]) {
        std::reverse(route.begin() + 1, route.end() - 1);
    }
}

namespace detail {

// Held-Karp over subsets of `ids`; O(2^k k^2) time.
inline std::vector<NodeId> held_karp(const std::vector<NodeId> &ids, const Instance &inst) {
    const std::size_t k = ids.size();
    const std::size_t full = (std::size_t{1} << k);
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(full * k, inf);
    std::vector<std::int8_t> parent(full * k, -1);
    for (std::size_t j = 0; j < k; ++j) cost[(std::size_t{1} << j) * k + j] = inst.distance(kDepot, ids[j]);

    for (std::size_t mask = 1; mask < full; ++mask) {
        for (std::size_t j = 0; j < k; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            const double here = cost[mask * k + j];
            if (here == inf) continue;
            for (std::size_t next = 0; next < k; ++next) {
                if (mask & (std::size_t{1} << next)) continue;
                const std::size_t grown = mask | (std::size_t{1} << next);
                const double cand = here + inst.distance(ids[j], ids[next]);
                if (cand < cost[grown * k + next]) {
                    cost[grown * k + next] = cand;
                    parent[grown * k + next] = static_cast<std::int8_t>(j);
                }
            }
        }
    }

    const std::size_t all = full - 1;
    std::size_t last = 0;
    double best = inf;
    for (std::size_t j = 0; j < k; ++j) {
        const double cand = cost[all * k + j] + inst.distance(ids[j], kDepot);
        if (cand < best) {
            best = cand;
            last = j;
        }
    }

    std::vector<NodeId> reversed;
    std::size_t mask = all;
    auto cur = static_cast<std::int8_t>(last);
    while (cur >= 0) {
        reversed.push_back(ids[static_cast<std::size_t>(cur)]);
        const auto prev = parent[mask * k + static_cast<std::size_t>(cur)];
        mask &= ~(std::size_t{1} << static_cast<std::size_t>(cur));
        cur = prev;
    }
    std::vector<NodeId> route{kDepot};
    route.insert(route.end(), reversed.rbegin(), reversed.rend());
    route.push_back(kDepot);
    return route;
}

inline std::vector<NodeId> nearest_neighbor(const std::vector<NodeId> &ids, const Instance &inst) {
    std::vector<NodeId> remaining = ids;
    std::sort(remaining.begin(), remaining.end());
    std::vector<NodeId> route{kDepot};
    NodeId cur = kDepot;
    while (!remaining.empty()) {
        auto best = remaining.begin();
        for (auto it = remaining.begin(); it != remaining.end(); ++it) {
            if (inst.distance(cur, *it) < inst.distance(cur, *best)) best = it;
        }
        cur = *best;
        route.push_back(cur);
        remaining.erase(best);
    }
    route.push_back(kDepot);
    return route;
}

}  // namespace detail

/// Best-improvement 2-opt until no move shortens the tour by more than the tolerance.
inline void two_opt_descent(std::vector<NodeId> &route, const Instance &inst) {
    const std::size_t n = route.size();
    if (n < 5) return;
    while (true) {
        double best_delta = -kTolerance;
        std::size_t bi = 0;
        std::size_t bj = 0;
        for (std::size_t i = 0; i + 3 < n; ++i) {
            for (std::size_t j = i + 2; j + 1 < n; ++j) {
                const double delta = inst.distance(route[i], route[j]) + inst.distance(route[i + 1], route[j + 1]) -
                                     inst.distance(route[i], route[i + 1]) - inst.distance(route[j], route[j + 1]);
                if (delta < best_delta) {
                    best_delta = delta;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bj == 0) return;
        std::reverse(route.begin() + static_cast<std::ptrdiff_t>(bi) + 1, route.begin() + static_cast<std::ptrdiff_t>(bj) + 1);
    }
}

/*
 * Depot-anchored tour through `node_ids`.
 *   Exact     - Held-Karp, provably optimal; refuses more than 20 nodes.
 *   Heuristic - nearest neighbour followed by 2-opt to local optimality.
 *   Auto      - Exact up to 15 nodes, Heuristic beyond.
 * Deterministic; orientation follows canonical_orientation().
 */
inline TspTour solve_tsp(const std::vector<NodeId> &node_ids, const Instance &inst, TspMode mode = TspMode::Auto) {
    if (node_ids.empty()) {
        throw Error(ErrorKind::Domain, "TSP over an empty node set");
    }
    std::vector<NodeId> ids = node_ids;
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw Error(ErrorKind::Domain, "duplicate node in TSP set");
    }
    for (const auto id : ids) {
        if (id == kDepot || !inst.contains(id)) throw Error(ErrorKind::Domain, "TSP set must contain customers only");
    }
    if (mode == TspMode::Auto) mode = ids.size() <= kAutoExactLimit ? TspMode::Exact : TspMode::Heuristic;
    if (mode == TspMode::Exact && ids.size() > kExactCapacity) {
        throw Error(ErrorKind::Capacity, "exact TSP limited to " + std::to_string(kExactCapacity) + " nodes, got " +
                                             std::to_string(ids.size()));
    }

    TspTour tour;
    if (mode == TspMode::Exact) {
        tour.route = detail::held_karp(ids, inst);
    } else {
        tour.route = detail::nearest_neighbor(ids, inst);
        two_opt_descent(tour.route, inst);
    }
    canonical_orientation(tour.route);
    tour.length = route_length(tour.route, inst);
    return tour;
}

/// Optimal (or near-optimal) tour over the existing customers and their promised arrival times.
inline OriginalSchedule build_original_schedule(const Instance &inst, TspMode mode = TspMode::Auto) {
    if (inst.n_existing() < 1) {
        throw Error(ErrorKind::Domain, "the original schedule needs at least one existing customer");
    }
    const auto tour = solve_tsp(inst.existing_ids(), inst, mode);
    OriginalSchedule schedule;
    schedule.route = tour.route;
    schedule.length = tour.length;
    schedule.promised.assign(inst.size(), std::numeric_limits<double>::quiet_NaN());
    double t = 0.0;
    for (std::size_t k = 1; k + 1 < tour.route.size(); ++k) {
        t += inst.distance(tour.route[k - 1], tour.route[k]);
        schedule.promised[static_cast<std::size_t>(tour.route[k])] = t;
    }
    return schedule;
}

/// Tour length over every customer, the reference for the travel budget.
inline double tsp_baseline_length(const Instance &inst, TspMode mode = TspMode::Auto) {
    return solve_tsp(inst.customer_ids(), inst, mode).length;
}

}  // namespace hhcr

#endif  // HHCR_BASELINE_TSP_HPP
