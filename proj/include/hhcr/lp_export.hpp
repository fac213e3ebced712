#ifndef HHCR_LP_EXPORT_HPP
#define HHCR_LP_EXPORT_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hhcr/error.hpp"
#include "hhcr/format.hpp"
#include "hhcr/instance.hpp"
#include "hhcr/solution.hpp"

namespace hhcr {

namespace lp {

inline std::string x(NodeId i, NodeId j) { return "x_" + std::to_string(i) + "_" + std::to_string(j); }
inline std::string s(NodeId i) { return "s_" + std::to_string(i); }
inline std::string u(NodeId i) { return "u_" + std::to_string(i); }
inline std::string y(NodeId i) { return "y_" + std::to_string(i); }
inline std::string v(NodeId i) { return "v_" + std::to_string(i); }

struct Term {
    double coef;
    std::string var;
};

/// Writes CPLEX-LP text. Rows are wrapped so no line grows past a few hundred characters.
class Writer {
public:
    void comment(const std::string &text) { out_ += "\\ " + text + "\n"; }
    void section(const char *name) { out_ += std::string(name) + "\n"; }

    void row(const std::string &name, const std::vector<Term> &terms, const char *sense, double rhs) {
        out_ += " " + name + ":";
        emit_terms(terms);
        out_ += " " + std::string(sense) + " " + format_real(rhs) + "\n";
    }

    void objective(const std::vector<Term> &terms) {
        out_ += " obj:";
        emit_terms(terms);
        out_ += "\n";
    }

    void line(const std::string &text) { out_ += " " + text + "\n"; }

    void names(const std::vector<std::string> &vars) {
        std::size_t width = 0;
        for (const auto &name : vars) {
            if (width > 0 && width + name.size() > 200) {
                out_ += "\n";
                width = 0;
            }
            out_ += " " + name;
            width += name.size() + 1;
        }
        if (!vars.empty()) out_ += "\n";
    }

    std::string str() && { return std::move(out_); }

private:
    void emit_terms(const std::vector<Term> &terms) {
        std::size_t on_line = 0;
        bool first = true;
        for (const auto &t : terms) {
            if (t.coef == 0.0) continue;
            if (on_line == 8) {
                out_ += "\n  ";
                on_line = 0;
            }
            const double mag = std::abs(t.coef);
            out_ += (t.coef < 0.0) ? " - " : (first ? " " : " + ");
            if (mag != 1.0) out_ += format_real(mag) + " ";
            out_ += t.var;
            first = false;
            ++on_line;
        }
        if (first) out_ += " 0 " + (terms.empty() ? std::string("x_0_0") : terms.front().var);
    }

    std::string out_;
};

inline double max_distance_among(const std::vector<NodeId> &nodes, const Instance &inst) {
    double m = 0.0;
    for (const auto i : nodes) {
        for (const auto j : nodes) m = std::max(m, inst.distance(i, j));
    }
    return m;
}

}  // namespace lp

/*
 * Original routing model over the depot and the existing customers: minimise
 * travel, one arc in and out of each customer, time propagation with big-M,
 * MTZ subtour elimination. Variable order is lexicographic by index so the
 * text is byte-stable.
 */
inline std::string export_original(const Instance &inst) {
    const int n = inst.n_existing();
    if (n < 2) {
        throw Error(ErrorKind::DegenerateModel, "the original model needs at least two existing customers");
    }
    std::vector<NodeId> nodes{kDepot};
    for (NodeId i = inst.first_existing(); i < inst.end_existing(); ++i) nodes.push_back(i);
    const double big_m = static_cast<double>(n) * lp::max_distance_among(nodes, inst);

    lp::Writer w;
    w.comment("Original schedule: travel-minimising tour over the depot and " + std::to_string(n) + " existing customers");
    w.comment("big-M = " + format_real(big_m));
    w.section("Minimize");
    std::vector<lp::Term> obj;
    for (const auto i : nodes) {
        for (const auto j : nodes) {
            if (i != j) obj.push_back({inst.distance(i, j), lp::x(i, j)});
        }
    }
    w.objective(obj);

    w.section("Subject To");
    for (NodeId j = inst.first_existing(); j < inst.end_existing(); ++j) {
        std::vector<lp::Term> t;
        for (const auto i : nodes) {
            if (i != j) t.push_back({1.0, lp::x(i, j)});
        }
        w.row("in_" + std::to_string(j), t, "=", 1.0);
    }
    for (NodeId i = inst.first_existing(); i < inst.end_existing(); ++i) {
        std::vector<lp::Term> t;
        for (const auto j : nodes) {
            if (i != j) t.push_back({1.0, lp::x(i, j)});
        }
        w.row("out_" + std::to_string(i), t, "=", 1.0);
    }
    {
        std::vector<lp::Term> leave;
        std::vector<lp::Term> enter;
        for (NodeId i = inst.first_existing(); i < inst.end_existing(); ++i) {
            leave.push_back({1.0, lp::x(kDepot, i)});
            enter.push_back({1.0, lp::x(i, kDepot)});
        }
        w.row("depot_out", leave, "=", 1.0);
        w.row("depot_in", enter, "=", 1.0);
    }
    for (NodeId i = inst.first_existing(); i < inst.end_existing(); ++i) {
        for (NodeId j = inst.first_existing(); j < inst.end_existing(); ++j) {
            if (i == j) continue;
            w.row("time_" + std::to_string(i) + "_" + std::to_string(j),
                  {{1.0, lp::s(i)}, {-1.0, lp::s(j)}, {inst.distance(i, j) + big_m, lp::x(i, j)}}, "<=", big_m);
        }
    }
    for (NodeId i = inst.first_existing(); i < inst.end_existing(); ++i) {
        for (NodeId j = inst.first_existing(); j < inst.end_existing(); ++j) {
            if (i == j) continue;
            w.row("mtz_" + std::to_string(i) + "_" + std::to_string(j),
                  {{1.0, lp::u(i)}, {-1.0, lp::u(j)}, {static_cast<double>(n), lp::x(i, j)}}, "<=", n - 1.0);
        }
    }

    w.section("Bounds");
    for (NodeId i = inst.first_existing(); i < inst.end_existing(); ++i) {
        w.line("1 <= " + lp::u(i) + " <= " + std::to_string(n));
    }
    for (const auto i : nodes) w.line(lp::s(i) + " >= 0");

    w.section("Binaries");
    std::vector<std::string> bins;
    for (const auto i : nodes) {
        for (const auto j : nodes) {
            if (i != j) bins.push_back(lp::x(i, j));
        }
    }
    w.names(bins);
    w.section("Generals");
    std::vector<std::string> gens;
    for (NodeId i = inst.first_existing(); i < inst.end_existing(); ++i) gens.push_back(lp::u(i));
    w.names(gens);
    w.section("End");
    return std::move(w).str();
}

/*
 * Rescheduling model: maximise collected payments minus rejection penalties
 * subject to routing, exactly-once service of existing customers, optional
 * service of new customers, a shared disruption variable z <= cap against the
 * promised times, the travel budget, big-M time propagation (two-sided, so
 * arrival equals departure plus travel) and MTZ.
 */
inline std::string export_rescheduling(const Instance &inst, const OriginalSchedule &baseline, const DerivedLimits &limits) {
    const int n = inst.n_customers();
    if (inst.n_existing() < 1) {
        throw Error(ErrorKind::DegenerateModel, "the rescheduling model needs at least one existing customer");
    }
    if (baseline.promised.size() != inst.size()) {
        throw Error(ErrorKind::Structural, "baseline does not match the instance");
    }
    for (NodeId i = inst.first_existing(); i < inst.end_existing(); ++i) (void)baseline.promised_at(i);

    std::vector<NodeId> nodes(inst.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = static_cast<NodeId>(i);
    const double big_m = static_cast<double>(n) * lp::max_distance_among(nodes, inst);

    lp::Writer w;
    w.comment("Rescheduling with rejection: " + std::to_string(inst.n_existing()) + " existing, " + std::to_string(inst.n_new()) +
              " new customers");
    w.comment("Sense: Maximize net profit (payments served minus rejection cost); v_j = 1 marks a rejected new customer");
    w.comment("T_max = " + format_real(limits.t_max) + ", disruption cap = " + format_real(limits.disruption_cap) +
              ", rejection cost = " + format_real(inst.rejection_cost()) + ", big-M = " + format_real(big_m));
    w.section("Maximize");
    std::vector<lp::Term> obj;
    for (NodeId i = 1; i < inst.end_new(); ++i) obj.push_back({inst.payment(i), lp::y(i)});
    for (NodeId j = inst.first_new(); j < inst.end_new(); ++j) obj.push_back({-inst.rejection_cost(), lp::v(j)});
    w.objective(obj);

    w.section("Subject To");
    {
        std::vector<lp::Term> leave;
        std::vector<lp::Term> enter;
        for (NodeId i = 1; i < inst.end_new(); ++i) {
            leave.push_back({1.0, lp::x(kDepot, i)});
            enter.push_back({1.0, lp::x(i, kDepot)});
        }
        w.row("depot_out", leave, "=", 1.0);
        w.row("depot_in", enter, "=", 1.0);
    }
    for (NodeId i = inst.first_existing(); i < inst.end_existing(); ++i) {
        w.row("serve_" + std::to_string(i), {{1.0, lp::y(i)}}, "=", 1.0);
    }
    for (NodeId j = 1; j < inst.end_new(); ++j) {
        std::vector<lp::Term> t;
        for (const auto i : nodes) {
            if (i != j) t.push_back({1.0, lp::x(i, j)});
        }
        t.push_back({-1.0, lp::y(j)});
        w.row("in_" + std::to_string(j), t, "=", 0.0);
    }
    for (NodeId i = 1; i < inst.end_new(); ++i) {
        std::vector<lp::Term> t;
        for (const auto j : nodes) {
            if (i != j) t.push_back({1.0, lp::x(i, j)});
        }
        t.push_back({-1.0, lp::y(i)});
        w.row("out_" + std::to_string(i), t, "=", 0.0);
    }
    for (NodeId j = inst.first_new(); j < inst.end_new(); ++j) {
        std::vector<lp::Term> t;
        for (const auto i : nodes) {
            if (i != j) t.push_back({1.0, lp::x(i, j)});
        }
        t.push_back({1.0, lp::v(j)});
        w.row("reject_" + std::to_string(j), t, "=", 1.0);
    }
    for (NodeId i = inst.first_existing(); i < inst.end_existing(); ++i) {
        const double promised = baseline.promised_at(i);
        w.row("late_" + std::to_string(i), {{1.0, lp::s(i)}, {-1.0, "z"}}, "<=", promised);
        w.row("early_" + std::to_string(i), {{-1.0, lp::s(i)}, {-1.0, "z"}}, "<=", -promised);
    }
    w.row("disruption_cap", {{1.0, "z"}}, "<=", limits.disruption_cap);
    {
        std::vector<lp::Term> t;
        for (const auto i : nodes) {
            for (const auto j : nodes) {
                if (i != j) t.push_back({inst.distance(i, j), lp::x(i, j)});
            }
        }
        w.row("travel_budget", t, "<=", limits.t_max);
    }
    for (const auto i : nodes) {
        for (NodeId j = 1; j < inst.end_new(); ++j) {
            if (i == j) continue;
            const double t = inst.distance(i, j);
            const auto tag = std::to_string(i) + "_" + std::to_string(j);
            w.row("time_" + tag, {{1.0, lp::s(i)}, {-1.0, lp::s(j)}, {t + big_m, lp::x(i, j)}}, "<=", big_m);
            w.row("nowait_" + tag, {{1.0, lp::s(j)}, {-1.0, lp::s(i)}, {big_m - t, lp::x(i, j)}}, "<=", big_m);
        }
    }
    for (NodeId i = 1; i < inst.end_new(); ++i) {
        for (NodeId j = 1; j < inst.end_new(); ++j) {
            if (i == j) continue;
            w.row("mtz_" + std::to_string(i) + "_" + std::to_string(j),
                  {{1.0, lp::u(i)}, {-1.0, lp::u(j)}, {static_cast<double>(n), lp::x(i, j)}}, "<=", n - 1.0);
        }
    }

    w.section("Bounds");
    w.line(lp::s(kDepot) + " = 0");
    for (NodeId i = 1; i < inst.end_new(); ++i) w.line(lp::s(i) + " >= 0");
    for (NodeId i = 1; i < inst.end_new(); ++i) w.line("1 <= " + lp::u(i) + " <= " + std::to_string(n));
    w.line("z >= 0");

    w.section("Binaries");
    std::vector<std::string> bins;
    for (const auto i : nodes) {
        for (const auto j : nodes) {
            if (i != j) bins.push_back(lp::x(i, j));
        }
    }
    for (NodeId i = 1; i < inst.end_new(); ++i) bins.push_back(lp::y(i));
    for (NodeId j = inst.first_new(); j < inst.end_new(); ++j) bins.push_back(lp::v(j));
    w.names(bins);
    w.section("Generals");
    std::vector<std::string> gens;
    for (NodeId i = 1; i < inst.end_new(); ++i) gens.push_back(lp::u(i));
    w.names(gens);
    w.section("End");
    return std::move(w).str();
}

/// Relative gap in percent between an exact objective and a heuristic one. Negative when the heuristic is better.
inline double gap(double exact_obj, double heuristic_obj) {
    if (exact_obj == 0.0) {
        throw Error(ErrorKind::Division, "gap is undefined for a zero exact objective");
    }
    return (exact_obj - heuristic_obj) / exact_obj * 100.0;
}

}  // namespace hhcr

#endif  // HHCR_LP_EXPORT_HPP
