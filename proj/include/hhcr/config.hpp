#ifndef HHCR_CONFIG_HPP
#define HHCR_CONFIG_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "hhcr/baseline_tsp.hpp"
#include "hhcr/error.hpp"
#include "hhcr/format.hpp"

namespace hhcr {

/*
 * Every tunable of the solver. Defaults for population size, generations,
 * search depths, refresh periods, evaporation and perturbation factors are the
 * tuned values; the remaining values (random-insertion probability, scores,
 * annealing schedule, tabu coefficient, penalty bounds) are chosen defaults.
 */
struct SolverConfig {
    // problem
    double mu = 1.0;
    double lambda = 0.5;
    std::optional<double> rejection_cost;  // default: mean new-customer payment
    TspMode tsp_mode = TspMode::Auto;

    // memetic loop
    int population_size = 5;
    int generations = 5;
    double time_cap_s = 60.0;
    double fdr_epsilon = 1e-9;

    // ALNS
    int alns_iterations = 1000;
    int weight_period = 50;
    double rho = 0.95;
    double perturbation = 0.1;
    double p_random = 0.1;
    double score_best = 10.0;
    double score_better = 5.0;
    double score_worse = 2.0;
    std::optional<double> sa_t_init;  // default: 0.05 * |f(seed)| + 1
    std::optional<double> sa_t_min;   // default: t_init / 1000
    double sa_cooling = 0.999;

    // dual tabu search
    int ts_iterations = 200;
    int penalty_period = 10;
    double tabu_alpha = 0.25;
    double score_feasible = 10.0;
    double score_conditional = 5.0;
    double score_infeasible = 1.0;
    double phi_initial = 1.0;
    double phi_min = 0.01;
    double phi_max = 100.0;

    void validate() const {
        auto require = [](bool ok, const char *what) {
            if (!ok) throw Error(ErrorKind::Domain, what);
        };
        require(mu > 0.0, "mu must be positive");
        require(lambda > 0.0, "lambda must be positive");
        require(!rejection_cost || *rejection_cost >= 0.0, "rejection cost must be non-negative");
        require(population_size >= 1, "population size must be at least 1");
        require(generations >= 0, "generations must be non-negative");
        require(time_cap_s > 0.0, "time cap must be positive");
        require(fdr_epsilon > 0.0, "fdr epsilon must be positive");
        require(alns_iterations >= 0 && ts_iterations >= 0, "search depths must be non-negative");
        require(weight_period >= 1 && penalty_period >= 1, "refresh periods must be at least 1");
        require(rho > 0.0 && rho < 1.0, "rho must lie in (0,1)");
        require(p_random >= 0.0 && p_random <= 1.0, "random insertion probability must lie in [0,1]");
        require(perturbation >= 0.0, "perturbation factor must be non-negative");
        require(sa_cooling > 0.0 && sa_cooling < 1.0, "cooling must lie in (0,1)");
        require(!sa_t_init || *sa_t_init > 0.0, "initial temperature must be positive");
        require(!sa_t_min || *sa_t_min > 0.0, "minimum temperature must be positive");
        require(tabu_alpha >= 0.0, "tabu alpha must be non-negative");
        require(phi_min > 0.0 && phi_min <= phi_initial && phi_initial <= phi_max, "need 0 < phi_min <= phi_initial <= phi_max");
    }
};

inline const char *to_string(TspMode mode) {
    switch (mode) {
        case TspMode::Exact: return "exact";
        case TspMode::Heuristic: return "heuristic";
        case TspMode::Auto: return "auto";
    }
    return "auto";
}

inline TspMode parse_tsp_mode(std::string_view text) {
    if (text == "exact") return TspMode::Exact;
    if (text == "heuristic") return TspMode::Heuristic;
    if (text == "auto") return TspMode::Auto;
    throw Error(ErrorKind::Domain, "unknown TSP mode '" + std::string(text) + "'");
}

namespace detail {

inline std::map<std::string, std::function<void(SolverConfig &, std::string_view)>> config_setters() {
    using Setter = std::function<void(SolverConfig &, std::string_view)>;
    auto real = [](double SolverConfig::*field) -> Setter {
        return [field](SolverConfig &c, std::string_view v) {
            const auto value = parse_real(v);
            if (!value) throw Error(ErrorKind::Domain, "expected a number, got '" + std::string(v) + "'");
            c.*field = *value;
        };
    };
    auto integer = [](int SolverConfig::*field) -> Setter {
        return [field](SolverConfig &c, std::string_view v) {
            const auto value = parse_real(v);
            if (!value || *value != static_cast<double>(static_cast<int>(*value))) {
                throw Error(ErrorKind::Domain, "expected an integer, got '" + std::string(v) + "'");
            }
            c.*field = static_cast<int>(*value);
        };
    };
    auto optional_real = [](std::optional<double> SolverConfig::*field) -> Setter {
        return [field](SolverConfig &c, std::string_view v) {
            const auto value = parse_real(v);
            if (!value) throw Error(ErrorKind::Domain, "expected a number, got '" + std::string(v) + "'");
            c.*field = *value;
        };
    };
    return {
        {"mu", real(&SolverConfig::mu)},
        {"lambda", real(&SolverConfig::lambda)},
        {"rejection_cost", optional_real(&SolverConfig::rejection_cost)},
        {"tsp_mode", [](SolverConfig &c, std::string_view v) { c.tsp_mode = parse_tsp_mode(v); }},
        {"population_size", integer(&SolverConfig::population_size)},
        {"generations", integer(&SolverConfig::generations)},
        {"time_cap_s", real(&SolverConfig::time_cap_s)},
        {"fdr_epsilon", real(&SolverConfig::fdr_epsilon)},
        {"alns_iterations", integer(&SolverConfig::alns_iterations)},
        {"weight_period", integer(&SolverConfig::weight_period)},
        {"rho", real(&SolverConfig::rho)},
        {"perturbation", real(&SolverConfig::perturbation)},
        {"p_random", real(&SolverConfig::p_random)},
        {"score_best", real(&SolverConfig::score_best)},
        {"score_better", real(&SolverConfig::score_better)},
        {"score_worse", real(&SolverConfig::score_worse)},
        {"sa_t_init", optional_real(&SolverConfig::sa_t_init)},
        {"sa_t_min", optional_real(&SolverConfig::sa_t_min)},
        {"sa_cooling", real(&SolverConfig::sa_cooling)},
        {"ts_iterations", integer(&SolverConfig::ts_iterations)},
        {"penalty_period", integer(&SolverConfig::penalty_period)},
        {"tabu_alpha", real(&SolverConfig::tabu_alpha)},
        {"score_feasible", real(&SolverConfig::score_feasible)},
        {"score_conditional", real(&SolverConfig::score_conditional)},
        {"score_infeasible", real(&SolverConfig::score_infeasible)},
        {"phi_initial", real(&SolverConfig::phi_initial)},
        {"phi_min", real(&SolverConfig::phi_min)},
        {"phi_max", real(&SolverConfig::phi_max)},
    };
}

}  // namespace detail

/// Sets one field by name. Unknown keys are rejected.
inline void set_config_value(SolverConfig &config, std::string_view key, std::string_view value) {
    static const auto setters = detail::config_setters();
    const auto it = setters.find(std::string(key));
    if (it == setters.end()) throw Error(ErrorKind::Domain, "unknown config key '" + std::string(key) + "'");
    it->second(config, value);
}

/// Applies flat `key = value` lines; `#` starts a comment.
inline void apply_config_text(SolverConfig &config, std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (split_whitespace(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
        const auto key_tokens = split_whitespace(line.substr(0, eq));
        const auto value_tokens = split_whitespace(line.substr(eq + 1));
        if (key_tokens.size() != 1 || value_tokens.size() != 1) throw ParseError(line_no, "expected 'key = value'");
        try {
            set_config_value(config, key_tokens[0], value_tokens[0]);
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            throw ParseError(line_no, e.what());
        }
    }
}

}  // namespace hhcr

#endif  // HHCR_CONFIG_HPP
