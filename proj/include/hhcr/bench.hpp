#ifndef HHCR_BENCH_HPP
#define HHCR_BENCH_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hhcr/config.hpp"
#include "hhcr/exact_search.hpp"
#include "hhcr/lp_export.hpp"
#include "hhcr/memetic.hpp"

namespace hhcr::bench {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const fs::path &path, const std::string &content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

struct InstanceSpec {
    fs::path path;
    int n_existing = 0;
    int n_new = 0;

    /// File stem plus the partition, e.g. `c33_01-10x10`.
    std::string name() const {
        return path.stem().string() + "-" + std::to_string(n_existing) + "x" + std::to_string(n_new);
    }
};

inline Instance load_instance(const InstanceSpec &spec, const SolverConfig &config) {
    return parse_instance(read_file(spec.path), spec.n_existing, spec.n_new, config.rejection_cost);
}

/*
 * One instance per line: `path [n_existing n_new]`. Relative paths resolve
 * against `base`; missing sizes fall back to the defaults. `#` starts a comment.
 */
inline std::vector<InstanceSpec> parse_instance_list(std::string_view text, const fs::path &base, int default_ne, int default_nn) {
    std::vector<InstanceSpec> specs;
    std::size_t line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tokens = split_whitespace(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 1 && tokens.size() != 3) throw ParseError(line_no, "expected 'path [n_existing n_new]'");
        InstanceSpec spec;
        spec.path = fs::path(std::string(tokens[0]));
        if (spec.path.is_relative()) spec.path = base / spec.path;
        spec.n_existing = default_ne;
        spec.n_new = default_nn;
        if (tokens.size() == 3) {
            const auto ne = parse_real(tokens[1]);
            const auto nn = parse_real(tokens[2]);
            if (!ne || !nn || *ne < 0 || *nn < 0) throw ParseError(line_no, "bad node counts");
            spec.n_existing = static_cast<int>(*ne);
            spec.n_new = static_cast<int>(*nn);
        }
        specs.push_back(spec);
    }
    return specs;
}

/// Rows of a comma-separated file keyed by header name. No quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string &name) const {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::runtime_error("missing CSV column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    }
};

inline CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    bool first = true;
    for (auto line : split(text, '\n')) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        for (auto cell : split(line, ',')) cells.emplace_back(trim(cell));
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOutcome {
    std::string instance;
    std::vector<RunReport> runs;
    Solution best;
};

/// `repeats` runs with seeds seed .. seed+repeats-1.
inline SolveOutcome run_solve(const InstanceSpec &spec, const SolverConfig &config, std::uint64_t seed, int repeats,
                              Algorithm algorithm = Algorithm::Ma2) {
    if (repeats < 1) throw Error(ErrorKind::Domain, "repeats must be at least 1");
    const auto problem = prepare_problem(load_instance(spec, config), config);
    SolveOutcome out;
    out.instance = spec.name();
    for (int k = 0; k < repeats; ++k) {
        auto result = solve(problem, config, seed + static_cast<std::uint64_t>(k), algorithm);
        result.report.instance = out.instance;
        if (k == 0 || result.best.objective > out.best.objective + kTolerance) out.best = result.best;
        out.runs.push_back(std::move(result.report));
    }
    return out;
}

inline std::string runs_csv(const SolveOutcome &outcome) {
    std::string out = RunReport::csv_header() + "\n";
    for (const auto &r : outcome.runs) out += r.csv_row() + "\n";
    return out;
}

struct Aggregate {
    double best = 0.0;
    double avg = 0.0;
    double worst = 0.0;
    double best_time = 0.0;
};

inline Aggregate aggregate(const std::vector<RunReport> &runs) {
    Aggregate a;
    if (runs.empty()) return a;
    a.best = a.worst = runs.front().best_objective;
    a.best_time = runs.front().time_s;
    double total = 0.0;
    for (const auto &r : runs) {
        a.best = std::max(a.best, r.best_objective);
        a.worst = std::min(a.worst, r.best_objective);
        a.best_time = std::min(a.best_time, r.time_s);
        total += r.best_objective;
    }
    a.avg = total / static_cast<double>(runs.size());
    // the mean of equal values can round past them
    a.avg = std::clamp(a.avg, a.worst, a.best);
    return a;
}

/// One row per run, then an `aggregate` row: best, average and worst objective and the best time.
inline std::string summary_csv(const SolveOutcome &outcome) {
    std::string out = "instance,seed,best_obj,avg_obj,worst_obj,best_time_s\n";
    for (const auto &r : outcome.runs) {
        const auto obj = format_real(r.best_objective);
        out += r.instance + "," + std::to_string(r.seed) + "," + obj + "," + obj + "," + obj + "," + format_real(r.time_s) + "\n";
    }
    const auto a = aggregate(outcome.runs);
    out += outcome.instance + ",aggregate," + format_real(a.best) + "," + format_real(a.avg) + "," + format_real(a.worst) + "," +
           format_real(a.best_time) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// grid

struct GridOptions {
    std::vector<InstanceSpec> instances;
    std::vector<double> mus{0.8, 0.9, 1.0};
    std::vector<double> lambdas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<Algorithm> algorithms{Algorithm::Ma2};
    int repeats = 10;
    std::uint64_t seed = 1;
    SolverConfig config;
};

struct GridRun {
    std::string instance;
    double mu = 0.0;
    double lambda = 0.0;
    std::size_t algo_index = 0;
    std::uint64_t seed = 0;
    double objective = 0.0;
    int generations = 0;
    double time_s = 0.0;
};

struct GridSkip {
    std::string instance;
    double mu = 0.0;
    double lambda = 0.0;
    std::string reason;
};

struct GridResult {
    std::vector<GridRun> runs;  // sorted by (instance, mu, lambda, algorithm, seed)
    std::vector<GridSkip> skipped;
};

inline std::string cell_file_name(double mu, double lambda) {
    return "cell_mu" + format_real(mu) + "_lambda" + format_real(lambda) + ".csv";
}

/// Full factorial over instances x mu x lambda x algorithms x seeds, run in that order.
inline GridResult run_grid(const GridOptions &opts) {
    if (opts.instances.empty()) throw Error(ErrorKind::Domain, "grid needs at least one instance");
    if (opts.mus.empty() || opts.lambdas.empty() || opts.algorithms.empty()) throw Error(ErrorKind::Domain, "empty grid axis");
    if (opts.repeats < 1) throw Error(ErrorKind::Domain, "repeats must be at least 1");
    GridResult out;
    for (const auto &spec : opts.instances) {
        for (const double mu : opts.mus) {
            for (const double lambda : opts.lambdas) {
                SolverConfig config = opts.config;
                config.mu = mu;
                config.lambda = lambda;
                config.validate();
                std::optional<Problem> problem;
                try {
                    problem = prepare_problem(load_instance(spec, config), config);
                } catch (const Error &e) {
                    if (e.kind() != ErrorKind::Infeasible) throw;
                    out.skipped.push_back({spec.name(), mu, lambda, e.what()});
                    continue;
                }
                for (std::size_t a = 0; a < opts.algorithms.size(); ++a) {
                    for (int k = 0; k < opts.repeats; ++k) {
                        const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(k);
                        const auto result = solve(*problem, config, seed, opts.algorithms[a]);
                        out.runs.push_back({spec.name(), mu, lambda, a, seed, result.best.objective, result.report.generations,
                                            result.report.time_s});
                    }
                }
            }
        }
    }
    std::stable_sort(out.runs.begin(), out.runs.end(), [](const GridRun &x, const GridRun &y) {
        return std::tie(x.instance, x.mu, x.lambda, x.algo_index, x.seed) < std::tie(y.instance, y.mu, y.lambda, y.algo_index, y.seed);
    });
    return out;
}

/*
 * Writes into `dir`:
 *   cell_mu<mu>_lambda<lambda>.csv  every run of that cell
 *   pivot.csv       average objective of the first algorithm, mu rows x lambda columns
 *   comparison.csv  best/avg/worst per (instance, mu, lambda, algorithm)
 *   skipped.csv     cells without a feasible schedule
 *   timing.csv      wall-clock seconds per run (the only non-deterministic file)
 */
inline void write_grid(const GridOptions &opts, const GridResult &result, const fs::path &dir) {
    fs::create_directories(dir);
    auto algo = [&](std::size_t i) { return std::string(to_string(opts.algorithms[i])); };

    for (const double mu : opts.mus) {
        for (const double lambda : opts.lambdas) {
            std::string csv = "instance,mu,lambda,algorithm,seed,best_obj,generations\n";
            for (const auto &r : result.runs) {
                if (r.mu != mu || r.lambda != lambda) continue;
                csv += r.instance + "," + format_real(mu) + "," + format_real(lambda) + "," + algo(r.algo_index) + "," +
                       std::to_string(r.seed) + "," + format_real(r.objective) + "," + std::to_string(r.generations) + "\n";
            }
            write_file(dir / cell_file_name(mu, lambda), csv);
        }
    }

    std::string pivot = "mu";
    for (const double lambda : opts.lambdas) pivot += ",lambda=" + format_real(lambda);
    pivot += "\n";
    for (const double mu : opts.mus) {
        pivot += format_real(mu);
        for (const double lambda : opts.lambdas) {
            double total = 0.0;
            int n = 0;
            for (const auto &r : result.runs) {
                if (r.mu == mu && r.lambda == lambda && r.algo_index == 0) {
                    total += r.objective;
                    ++n;
                }
            }
            pivot += "," + (n ? format_real(total / n) : std::string("NA"));
        }
        pivot += "\n";
    }
    write_file(dir / "pivot.csv", pivot);

    std::string comparison = "instance,mu,lambda,algorithm,runs,best_obj,avg_obj,worst_obj\n";
    for (std::size_t i = 0; i < result.runs.size();) {
        std::size_t j = i;
        std::vector<RunReport> group;
        while (j < result.runs.size() && result.runs[j].instance == result.runs[i].instance && result.runs[j].mu == result.runs[i].mu &&
               result.runs[j].lambda == result.runs[i].lambda && result.runs[j].algo_index == result.runs[i].algo_index) {
            RunReport rep;
            rep.best_objective = result.runs[j].objective;
            group.push_back(rep);
            ++j;
        }
        const auto a = aggregate(group);
        const auto &r = result.runs[i];
        comparison += r.instance + "," + format_real(r.mu) + "," + format_real(r.lambda) + "," + algo(r.algo_index) + "," +
                      std::to_string(group.size()) + "," + format_real(a.best) + "," + format_real(a.avg) + "," + format_real(a.worst) +
                      "\n";
        i = j;
    }
    write_file(dir / "comparison.csv", comparison);

    std::string skipped = "instance,mu,lambda,reason\n";
    for (const auto &s : result.skipped) skipped += s.instance + "," + format_real(s.mu) + "," + format_real(s.lambda) + "," + s.reason + "\n";
    write_file(dir / "skipped.csv", skipped);

    std::string timing = "instance,mu,lambda,algorithm,seed,time_s\n";
    for (const auto &r : result.runs) {
        timing += r.instance + "," + format_real(r.mu) + "," + format_real(r.lambda) + "," + algo(r.algo_index) + "," +
                  std::to_string(r.seed) + "," + format_real(r.time_s) + "\n";
    }
    write_file(dir / "timing.csv", timing);
}

// ---------------------------------------------------------------------------
// export / gap / oracle

struct ExportedModel {
    std::string file;
    std::string instance;
    std::string model;
};

/// Writes `<name>-original.lp` and `<name>-resched.lp` and returns their manifest rows.
inline std::vector<ExportedModel> export_models(const InstanceSpec &spec, const SolverConfig &config, const fs::path &dir) {
    const auto problem = prepare_problem(load_instance(spec, config), config);
    const std::string name = spec.name();
    const std::string original = name + "-original.lp";
    const std::string resched = name + "-resched.lp";
    write_file(dir / original, export_original(problem.inst));
    write_file(dir / resched, export_rescheduling(problem.inst, problem.baseline, problem.limits));
    return {{original, name, "original"}, {resched, name, "rescheduling"}};
}

inline std::string manifest_csv(const std::vector<ExportedModel> &models, const SolverConfig &config) {
    std::string out = "file,instance,model,mu,lambda\n";
    for (const auto &m : models) {
        out += m.file + "," + m.instance + "," + m.model + "," + format_real(config.mu) + "," + format_real(config.lambda) + "\n";
    }
    return out;
}

/*
 * Joins `instance,exact_obj` against a summary (instance, best_obj; the best
 * value per instance is used). Rows with exact_obj = 0 are flagged and carry
 * no gap; instances missing from the summary are flagged too.
 */
inline std::string gap_csv(std::string_view exact_text, std::string_view summary_text) {
    const auto exact = parse_csv(exact_text);
    const auto summary = parse_csv(summary_text);
    const auto e_inst = exact.column("instance");
    const auto e_obj = exact.column("exact_obj");
    const auto s_inst = summary.column("instance");
    const auto s_obj = summary.column("best_obj");

    std::map<std::string, double> heuristic;
    for (const auto &row : summary.rows) {
        if (row.size() <= std::max(s_inst, s_obj)) throw std::runtime_error("short summary row");
        const auto v = parse_real(row[s_obj]);
        if (!v) throw std::runtime_error("bad best_obj '" + row[s_obj] + "'");
        auto [it, inserted] = heuristic.emplace(row[s_inst], *v);
        if (!inserted) it->second = std::max(it->second, *v);
    }

    std::vector<std::vector<std::string>> rows;
    for (const auto &row : exact.rows) {
        if (row.size() <= std::max(e_inst, e_obj)) throw std::runtime_error("short results row");
        const auto ex = parse_real(row[e_obj]);
        if (!ex) throw std::runtime_error("bad exact_obj '" + row[e_obj] + "'");
        const auto it = heuristic.find(row[e_inst]);
        std::vector<std::string> out{row[e_inst], format_real(*ex), "", "", ""};
        if (it == heuristic.end()) {
            out[4] = "missing_heuristic";
        } else {
            out[2] = format_real(it->second);
            if (*ex == 0.0) {
                out[4] = "exact_zero";
            } else {
                out[3] = format_real(gap(*ex, it->second));
            }
        }
        rows.push_back(std::move(out));
    }
    std::sort(rows.begin(), rows.end());
    std::string text = "instance,exact_obj,heuristic_obj,gap_pct,flag\n";
    for (const auto &r : rows) text += r[0] + "," + r[1] + "," + r[2] + "," + r[3] + "," + r[4] + "\n";
    return text;
}

inline constexpr std::size_t kOracleLimit = 12;

struct OracleOutcome {
    std::string instance;
    ExactResult result;
};

/// Exhaustive optimum for instances of at most 12 customers.
inline OracleOutcome run_oracle(const InstanceSpec &spec, const SolverConfig &config, bool bound_pruning = true) {
    const auto problem = prepare_problem(load_instance(spec, config), config);
    ExactOptions opts;
    opts.bound_pruning = bound_pruning;
    opts.max_customers = kOracleLimit;
    return {spec.name(), exact_optimum(problem.inst, problem.baseline, problem.limits, opts)};
}

}  // namespace hhcr::bench

#endif  // HHCR_BENCH_HPP
