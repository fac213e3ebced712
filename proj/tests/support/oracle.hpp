// Test-only reference computations. They use the raw coordinates and share
// no code with the library beyond the Instance accessors.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hhcr/instance.hpp"

namespace oracle {

using hhcr::Instance;
using hhcr::NodeId;

inline double dist(const Instance &inst, NodeId a, NodeId b) {
    const auto &p = inst.node(a);
    const auto &q = inst.node(b);
    return std::hypot(p.x - q.x, p.y - q.y);
}

inline double tour_length(const Instance &inst, const std::vector<NodeId> &interior) {
    double len = 0.0;
    NodeId prev = 0;
    for (const auto id : interior) {
        len += dist(inst, prev, id);
        prev = id;
    }
    return len + dist(inst, prev, 0);
}

struct Tour {
    std::vector<NodeId> interior;
    double length = std::numeric_limits<double>::infinity();
};

/// Every permutation; between a tour and its reversal the one with the smaller first id wins.
inline Tour brute_force_tsp(std::vector<NodeId> ids, const Instance &inst) {
    std::sort(ids.begin(), ids.end());
    Tour best;
    do {
        const double len = tour_length(inst, ids);
        const bool canonical = ids.size() < 2 || ids.front() < ids.back();
        if (len < best.length - 1e-9 || (std::abs(len - best.length) <= 1e-9 && canonical && ids < best.interior)) {
            best.length = len;
            best.interior = ids;
        }
    } while (std::next_permutation(ids.begin(), ids.end()));
    if (best.interior.size() >= 2 && best.interior.front() > best.interior.back()) {
        std::reverse(best.interior.begin(), best.interior.end());
    }
    return best;
}

/// Average all-pairs shortest path through Floyd-Warshall on the complete graph.
inline double floyd_warshall_average(const Instance &inst) {
    const std::size_t n = inst.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = dist(inst, static_cast<NodeId>(i), static_cast<NodeId>(j));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) total += d[i][j];
    return total / static_cast<double>(n * (n - 1));
}

struct Optimum {
    bool feasible = false;
    double objective = -std::numeric_limits<double>::infinity();
    std::vector<NodeId> interior;
};

/// Every subset of new customers times every order of the visited set.
inline Optimum brute_force_optimum(const Instance &inst, const std::map<NodeId, double> &promised, double t_max, double cap) {
    Optimum best;
    const int ne = inst.n_existing();
    const int nn = inst.n_new();
    double existing_pay = 0.0;
    for (int e = 1; e <= ne; ++e) existing_pay += inst.payment(e);
    for (unsigned mask = 0; mask < (1u << nn); ++mask) {
        std::vector<NodeId> ids;
        for (int e = 1; e <= ne; ++e) ids.push_back(e);
        double value = existing_pay;
        for (int k = 0; k < nn; ++k) {
            const NodeId id = ne + 1 + k;
            if (mask & (1u << k)) {
                ids.push_back(id);
                value += inst.payment(id);
            } else {
                value -= inst.rejection_cost();
            }
        }
        if (value <= best.objective) continue;
        std::sort(ids.begin(), ids.end());
        do {
            double t = 0.0;
            NodeId prev = 0;
            bool ok = true;
            for (const auto id : ids) {
                t += dist(inst, prev, id);
                prev = id;
                if (id <= ne && std::abs(t - promised.at(id)) > cap + 1e-9) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            if (t + dist(inst, prev, 0) > t_max + 1e-9) continue;
            best.feasible = true;
            best.objective = value;
            best.interior = ids;
            break;
        } while (std::next_permutation(ids.begin(), ids.end()));
    }
    return best;
}

/// Uniform points on a 0..20 square, payments 1..20, rejection cost = mean new payment.
inline Instance random_instance(std::mt19937_64 &rng, int ne, int nn) {
    std::uniform_real_distribution<double> coord(0.0, 20.0);
    std::uniform_int_distribution<int> pay(1, 20);
    std::vector<hhcr::Point> existing;
    std::vector<hhcr::Point> fresh;
    const hhcr::Point depot{coord(rng), coord(rng), 0.0};
    for (int i = 0; i < ne; ++i) existing.push_back({coord(rng), coord(rng), static_cast<double>(pay(rng))});
    for (int i = 0; i < nn; ++i) fresh.push_back({coord(rng), coord(rng), static_cast<double>(pay(rng))});
    return hhcr::make_instance(depot, existing, fresh);
}

/// Chao-format text for an instance (header, depot, customers).
inline std::string to_chao_text(const Instance &inst) {
    std::ostringstream out;
    out.precision(17);
    out << "n " << inst.size() << "\nm 1\ntmax 100\n";
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const auto &p = inst.node(static_cast<NodeId>(i));
        out << p.x << " " << p.y << " " << p.payment << "\n";
    }
    return out.str();
}

}  // namespace oracle
