#ifndef HHCR_EXACT_SEARCH_HPP
#define HHCR_EXACT_SEARCH_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "hhcr/error.hpp"
#include "hhcr/instance.hpp"
#include "hhcr/solution.hpp"

namespace hhcr {

struct ExactOptions {
    bool bound_pruning = true;
    std::optional<double> incumbent;  // known feasible objective, tightens pruning
    std::size_t max_customers = 12;   // 0 disables the size guard
    double time_limit_s = 0.0;        // 0 means no limit
};

struct ExactResult {
    bool feasible = false;
    Solution best;
    long nodes = 0;
    bool proven = true;  // false when the time limit cut the search short
};

namespace detail {

class ExactSearch {
public:
    ExactSearch(const Instance &inst, const OriginalSchedule &baseline, const DerivedLimits &limits, const ExactOptions &opts)
        : inst_(inst), baseline_(baseline), limits_(limits), opts_(opts), used_(inst.size(), 0) {
        existing_payment_ = 0.0;
        for (NodeId e = inst.first_existing(); e < inst.end_existing(); ++e) existing_payment_ += inst.payment(e);
        best_value_ = opts.incumbent ? *opts.incumbent : -std::numeric_limits<double>::infinity();
        started_ = std::chrono::steady_clock::now();
    }

    ExactResult run() {
        route_.push_back(kDepot);
        extend(kDepot, 0.0, 0, 0.0);
        ExactResult out;
        out.nodes = nodes_;
        out.proven = !timed_out_;
        if (!best_route_.empty()) {
            std::vector<NodeId> rejected;
            for (NodeId j = inst_.first_new(); j < inst_.end_new(); ++j) {
                if (std::find(best_route_.begin(), best_route_.end(), j) == best_route_.end()) rejected.push_back(j);
            }
            out.best = evaluate(best_route_, rejected, inst_);
            out.feasible = true;
        }
        return out;
    }

private:
    bool window_ok(NodeId e, double arrival) const {
        return std::abs(arrival - baseline_.promised[static_cast<std::size_t>(e)]) <= limits_.disruption_cap + kTolerance;
    }

    bool budget_ok(double length) const { return length <= limits_.t_max + kTolerance; }

    // Every unvisited existing customer must still be reachable inside its window and before the budget runs out.
    bool existing_reachable(NodeId last, double time) const {
        for (NodeId e = inst_.first_existing(); e < inst_.end_existing(); ++e) {
            if (used_[static_cast<std::size_t>(e)]) continue;
            const double t = time + inst_.distance(last, e);
            if (t > baseline_.promised[static_cast<std::size_t>(e)] + limits_.disruption_cap + kTolerance) return false;
            if (!budget_ok(t + inst_.distance(e, kDepot))) return false;
        }
        return true;
    }

    double upper_bound(NodeId last, double time, double served_new) const {
        double bound = served_new;
        for (NodeId j = inst_.first_new(); j < inst_.end_new(); ++j) {
            if (used_[static_cast<std::size_t>(j)]) continue;
            if (budget_ok(time + inst_.distance(last, j) + inst_.distance(j, kDepot))) bound += inst_.payment(j) + inst_.rejection_cost();
        }
        return existing_payment_ - inst_.rejection_cost() * inst_.n_new() + bound;
    }

    void extend(NodeId last, double time, int existing_done, double served_new) {
        ++nodes_;
        if (opts_.time_limit_s > 0.0 && (nodes_ & 0x3FF) == 0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count() > opts_.time_limit_s) {
            timed_out_ = true;
        }
        if (timed_out_) return;

        if (existing_done == inst_.n_existing()) {
            const double total = time + inst_.distance(last, kDepot);
            const double value = existing_payment_ + served_new - inst_.rejection_cost() * inst_.n_new() +
                                 inst_.rejection_cost() * static_cast<double>(served_count_);
            if (budget_ok(total) && (value > best_value_ + kTolerance || (best_route_.empty() && value >= best_value_ - kTolerance))) {
                best_value_ = value;
                best_route_ = route_;
                best_route_.push_back(kDepot);
            }
        }
        if (opts_.bound_pruning) {
            const double bound = upper_bound(last, time, served_new) + inst_.rejection_cost() * static_cast<double>(served_count_);
            if (best_route_.empty() ? bound < best_value_ - kTolerance : bound <= best_value_ + kTolerance) return;
        }

        for (NodeId j = 1; j < static_cast<NodeId>(inst_.size()); ++j) {
            if (used_[static_cast<std::size_t>(j)]) continue;
            const double t = time + inst_.distance(last, j);
            if (!budget_ok(t + inst_.distance(j, kDepot))) continue;
            const bool existing = inst_.is_existing(j);
            if (existing && !window_ok(j, t)) continue;
            used_[static_cast<std::size_t>(j)] = 1;
            if (existing_reachable(j, t)) {
                route_.push_back(j);
                if (existing) {
                    extend(j, t, existing_done + 1, served_new);
                } else {
                    ++served_count_;
                    extend(j, t, existing_done, served_new + inst_.payment(j));
                    --served_count_;
                }
                route_.pop_back();
            }
            used_[static_cast<std::size_t>(j)] = 0;
        }
    }

    const Instance &inst_;
    const OriginalSchedule &baseline_;
    const DerivedLimits &limits_;
    ExactOptions opts_;
    std::vector<char> used_;
    std::vector<NodeId> route_;
    std::vector<NodeId> best_route_;
    double existing_payment_ = 0.0;
    double best_value_;
    int served_count_ = 0;
    long nodes_ = 0;
    bool timed_out_ = false;
    std::chrono::steady_clock::time_point started_;
};

}  // namespace detail

/*
 * Exhaustive depth-first enumeration of depot-anchored routes that visit
 * every existing customer and any subset of new ones. Branches are cut when
 * a window or the travel budget is already broken or an unvisited existing
 * customer can no longer be reached in time. With bound_pruning, a branch is
 * also dropped when even serving every still-reachable new customer cannot
 * beat the incumbent. The optimum value is exact either way; the returned
 * route is one optimal route.
 */
inline ExactResult exact_optimum(const Instance &inst, const OriginalSchedule &baseline, const DerivedLimits &limits,
                                 const ExactOptions &opts = {}) {
    if (opts.max_customers != 0 && static_cast<std::size_t>(inst.n_customers()) > opts.max_customers) {
        throw Error(ErrorKind::Capacity, "exhaustive search limited to " + std::to_string(opts.max_customers) + " customers, got " +
                                             std::to_string(inst.n_customers()));
    }
    return detail::ExactSearch(inst, baseline, limits, opts).run();
}

}  // namespace hhcr

#endif  // HHCR_EXACT_SEARCH_HPP
