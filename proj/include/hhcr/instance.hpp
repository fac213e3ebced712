#ifndef HHCR_INSTANCE_HPP
#define HHCR_INSTANCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hhcr/error.hpp"
#include "hhcr/format.hpp"

namespace hhcr {

using NodeId = int;

inline constexpr NodeId kDepot = 0;

enum class NodeKind { Depot, Existing, New };

struct Node {
    NodeId id = 0;
    double x = 0.0;
    double y = 0.0;
    double payment = 0.0;
    NodeKind kind = NodeKind::Depot;
};

/*
 * A single-caregiver rescheduling instance.
 *
 * Node ids are positional: 0 is the depot, 1..n_existing are the pre-scheduled
 * (mandatory) customers and n_existing+1..n_existing+n_new are the same-day
 * requests. Distances are Euclidean and precomputed into a dense matrix, so the
 * shortest path between two nodes is always the direct edge.
 *
 * Immutable after construction.
 */
class Instance {
public:
    Instance(std::vector<Node> nodes, double rejection_cost) : nodes_(std::move(nodes)), rejection_cost_(rejection_cost) {
        if (nodes_.empty() || nodes_.front().kind != NodeKind::Depot) {
            throw Error(ErrorKind::Structural, "the first node must be the depot");
        }
        if (!(rejection_cost_ >= 0.0) || !std::isfinite(rejection_cost_)) {
            throw Error(ErrorKind::Domain, "rejection cost must be a finite non-negative value");
        }
        nodes_.front().payment = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const auto &node = nodes_[i];
            if (node.id != static_cast<NodeId>(i)) {
                throw Error(ErrorKind::Structural, "node ids must be positional, got id " + std::to_string(node.id) + " at index " + std::to_string(i));
            }
            if (!(node.payment >= 0.0)) {
                throw Error(ErrorKind::Domain, "negative payment on node " + std::to_string(node.id));
            }
            switch (node.kind) {
                case NodeKind::Depot:
                    if (i != 0) throw Error(ErrorKind::Structural, "more than one depot");
                    break;
                case NodeKind::Existing:
                    if (n_new_ > 0) throw Error(ErrorKind::Structural, "existing customers must precede new customers");
                    ++n_existing_;
                    break;
                case NodeKind::New:
                    ++n_new_;
                    break;
            }
        }
        const auto n = nodes_.size();
        distance_.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d = std::hypot(nodes_[i].x - nodes_[j].x, nodes_[i].y - nodes_[j].y);
                distance_[i * n + j] = d;
                distance_[j * n + i] = d;
                max_distance_ = std::max(max_distance_, d);
            }
        }
    }

    std::size_t size() const noexcept { return nodes_.size(); }
    int n_existing() const noexcept { return n_existing_; }
    int n_new() const noexcept { return n_new_; }
    int n_customers() const noexcept { return n_existing_ + n_new_; }
    double rejection_cost() const noexcept { return rejection_cost_; }

    const std::vector<Node> &nodes() const noexcept { return nodes_; }
    const Node &node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    double payment(NodeId id) const { return nodes_[static_cast<std::size_t>(id)].payment; }

    double distance(NodeId i, NodeId j) const noexcept {
        return distance_[static_cast<std::size_t>(i) * nodes_.size() + static_cast<std::size_t>(j)];
    }
    double max_distance() const noexcept { return max_distance_; }

    bool contains(NodeId id) const noexcept { return id >= 0 && static_cast<std::size_t>(id) < nodes_.size(); }
    bool is_existing(NodeId id) const noexcept { return id >= 1 && id <= n_existing_; }
    bool is_new(NodeId id) const noexcept { return id > n_existing_ && id <= n_existing_ + n_new_; }

    NodeId first_existing() const noexcept { return 1; }
    NodeId end_existing() const noexcept { return 1 + n_existing_; }
    NodeId first_new() const noexcept { return 1 + n_existing_; }
    NodeId end_new() const noexcept { return 1 + n_existing_ + n_new_; }

    std::vector<NodeId> existing_ids() const {
        std::vector<NodeId> ids(static_cast<std::size_t>(n_existing_));
        std::iota(ids.begin(), ids.end(), first_existing());
        return ids;
    }
    std::vector<NodeId> new_ids() const {
        std::vector<NodeId> ids(static_cast<std::size_t>(n_new_));
        std::iota(ids.begin(), ids.end(), first_new());
        return ids;
    }
    std::vector<NodeId> customer_ids() const {
        std::vector<NodeId> ids(static_cast<std::size_t>(n_customers()));
        std::iota(ids.begin(), ids.end(), 1);
        return ids;
    }

    double total_payment() const {
        double sum = 0.0;
        for (const auto &node : nodes_) sum += node.payment;
        return sum;
    }

    bool same_shape(const Instance &other) const noexcept {
        return n_existing_ == other.n_existing_ && n_new_ == other.n_new_;
    }

private:
    std::vector<Node> nodes_;
    std::vector<double> distance_;
    double rejection_cost_ = 0.0;
    double max_distance_ = 0.0;
    int n_existing_ = 0;
    int n_new_ = 0;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    double payment = 0.0;
};

/// Builds an instance from a depot position and the two customer groups, in that order.
inline Instance make_instance(Point depot, const std::vector<Point> &existing, const std::vector<Point> &fresh,
                              std::optional<double> rejection_cost = std::nullopt) {
    std::vector<Node> nodes;
    nodes.reserve(1 + existing.size() + fresh.size());
    nodes.push_back({0, depot.x, depot.y, 0.0, NodeKind::Depot});
    for (const auto &p : existing) {
        nodes.push_back({static_cast<NodeId>(nodes.size()), p.x, p.y, p.payment, NodeKind::Existing});
    }
    double new_sum = 0.0;
    for (const auto &p : fresh) {
        nodes.push_back({static_cast<NodeId>(nodes.size()), p.x, p.y, p.payment, NodeKind::New});
        new_sum += p.payment;
    }
    const double r = rejection_cost ? *rejection_cost : (fresh.empty() ? 0.0 : new_sum / static_cast<double>(fresh.size()));
    return Instance(std::move(nodes), r);
}

/*
 * Parses a Chao OP/TOP style file: header lines starting with a letter are
 * skipped, every other non-blank line is "x y score". The first data line is
 * the depot; the next n_existing lines become existing customers and the
 * following n_new lines new customers, in file order. Remaining lines are
 * ignored. Without an explicit rejection cost the mean new-customer payment is
 * used.
 */
inline Instance parse_instance(std::string_view content, int n_existing, int n_new,
                               std::optional<double> rejection_cost = std::nullopt) {
    if (n_existing < 0 || n_new < 0) {
        throw Error(ErrorKind::Domain, "customer counts must be non-negative");
    }
    std::vector<Point> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        auto end = content.find('\n', pos);
        if (end == std::string_view::npos) end = content.size();
        const auto line = content.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const auto tokens = split_whitespace(line);
        if (tokens.empty()) continue;
        const char first = tokens.front().front();
        if ((first >= 'a' && first <= 'z') || (first >= 'A' && first <= 'Z')) continue;
        if (tokens.size() != 3) {
            throw ParseError(line_no, "expected 'x y score', found " + std::to_string(tokens.size()) + " fields");
        }
        const auto x = parse_real(tokens[0]);
        const auto y = parse_real(tokens[1]);
        const auto score = parse_real(tokens[2]);
        if (!x || !y || !score) {
            throw ParseError(line_no, "non-numeric field");
        }
        if (*score < 0.0) {
            throw Error(ErrorKind::Domain, "line " + std::to_string(line_no) + ": negative score");
        }
        rows.push_back({*x, *y, *score});
    }
    if (rows.empty()) {
        throw Error(ErrorKind::Cardinality, "no data lines (a depot is required)");
    }
    const auto available = rows.size() - 1;
    const auto requested = static_cast<std::size_t>(n_existing) + static_cast<std::size_t>(n_new);
    if (requested > available) {
        throw Error(ErrorKind::Cardinality, "requested " + std::to_string(requested) + " customers but the file has " +
                                                std::to_string(available));
    }
    const Point depot{rows[0].x, rows[0].y, 0.0};
    const std::vector<Point> existing(rows.begin() + 1, rows.begin() + 1 + n_existing);
    const std::vector<Point> fresh(rows.begin() + 1 + n_existing, rows.begin() + 1 + n_existing + n_new);
    return make_instance(depot, existing, fresh, rejection_cost);
}

struct DerivedLimits {
    double t_max = 0.0;           // travel-time budget
    double disruption_cap = 0.0;  // max allowed arrival deviation per existing customer
    double tsp_baseline = 0.0;    // tour length over all nodes
    double avg_path = 0.0;        // mean shortest-path length over ordered node pairs
};

/// Mean of d(i,j) over all ordered pairs i != j. On a complete Euclidean graph d is the direct edge.
inline double average_shortest_path(const Instance &inst) {
    const auto n = inst.size();
    if (n < 2) {
        throw Error(ErrorKind::Domain, "average path length needs at least two nodes");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) sum += inst.distance(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }
    }
    return sum / static_cast<double>(n * (n - 1));
}

inline DerivedLimits compute_limits(const Instance &inst, double mu, double lambda, double tsp_baseline) {
    if (!(mu > 0.0) || !(lambda > 0.0) || !(tsp_baseline > 0.0)) {
        throw Error(ErrorKind::Domain, "mu, lambda and the TSP baseline must all be positive");
    }
    DerivedLimits limits;
    limits.tsp_baseline = tsp_baseline;
    limits.avg_path = average_shortest_path(inst);
    limits.t_max = mu * tsp_baseline;
    limits.disruption_cap = lambda * limits.avg_path;
    return limits;
}

}  // namespace hhcr

#endif  // HHCR_INSTANCE_HPP
