// hhcr_bench: solve, grid, export, gap and oracle runs over Chao-format instance files.
//
// Exit codes: 0 ok, 1 runtime failure, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hhcr/hhcr.hpp"

namespace {

using namespace hhcr;
namespace fs = std::filesystem;

constexpr const char *kConfigEnv = "HHCR_CONFIG";

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<double> mu;
    std::optional<double> lambda;
    std::optional<double> rejection_cost;
};

void add_common(CLI::App *cmd, CommonFlags &flags) {
    cmd->add_option("--config", flags.config_path, std::string("key = value config file (default: $") + kConfigEnv + ")");
    cmd->add_option("--set", flags.overrides, "override one config key, key=value (repeatable)");
    cmd->add_option("--mu", flags.mu, "travel budget factor");
    cmd->add_option("--lambda", flags.lambda, "disruption cap factor");
    cmd->add_option("--rejection-cost", flags.rejection_cost, "cost r per rejected new customer");
}

// File values first, then --set, then the dedicated flags.
SolverConfig build_config(const CommonFlags &flags) {
    SolverConfig config;
    std::string path = flags.config_path;
    if (path.empty()) {
        if (const char *env = std::getenv(kConfigEnv)) path = env;
    }
    if (!path.empty()) apply_config_text(config, bench::read_file(path));
    for (const auto &kv : flags.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
        try {
            set_config_value(config, trim(std::string_view(kv).substr(0, eq)), trim(std::string_view(kv).substr(eq + 1)));
        } catch (const Error &e) {
            throw CLI::ValidationError("--set", e.what());
        }
    }
    if (flags.mu) config.mu = *flags.mu;
    if (flags.lambda) config.lambda = *flags.lambda;
    if (flags.rejection_cost) config.rejection_cost = *flags.rejection_cost;
    config.validate();
    return config;
}

std::vector<Algorithm> parse_algorithms(const std::vector<std::string> &names) {
    std::vector<Algorithm> out;
    for (const auto &n : names) out.push_back(parse_algorithm(n));
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Home-care rescheduling benchmark harness"};
    app.require_subcommand(1);

    // solve
    CommonFlags solve_flags;
    bench::InstanceSpec solve_spec;
    std::string solve_instance;
    int repeats = 10;
    std::uint64_t seed = 1;
    std::string algo = "ma2";
    std::string out_dir = ".";
    auto *solve_cmd = app.add_subcommand("solve", "repeated runs on one instance, writes runs.csv and summary.csv");
    add_common(solve_cmd, solve_flags);
    solve_cmd->add_option("--instance", solve_instance, "instance file")->required();
    solve_cmd->add_option("--ne", solve_spec.n_existing, "existing customers")->required();
    solve_cmd->add_option("--nn", solve_spec.n_new, "new customers")->required();
    solve_cmd->add_option("--repeats", repeats, "runs with seeds seed..seed+repeats-1")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--seed", seed, "first seed");
    solve_cmd->add_option("--algo", algo, "ma2, alns, ts or ma1")->check(CLI::IsMember({"ma2", "alns", "ts", "ma1"}));
    solve_cmd->add_option("--out", out_dir, "output directory");

    // grid
    CommonFlags grid_flags;
    std::string grid_list;
    int grid_ne = 0;
    int grid_nn = 0;
    bench::GridOptions grid;
    std::vector<std::string> grid_algos{"ma2"};
    std::string grid_out = "grid_out";
    auto *grid_cmd = app.add_subcommand("grid", "full factorial mu x lambda x algorithm x seed over an instance list");
    add_common(grid_cmd, grid_flags);
    grid_cmd->add_option("--instances", grid_list, "list file, one 'path [ne nn]' per line")->required();
    grid_cmd->add_option("--ne", grid_ne, "default existing customers");
    grid_cmd->add_option("--nn", grid_nn, "default new customers");
    grid_cmd->add_option("--mus", grid.mus, "mu values")->delimiter(',');
    grid_cmd->add_option("--lambdas", grid.lambdas, "lambda values")->delimiter(',');
    grid_cmd->add_option("--algos", grid_algos, "algorithms")->delimiter(',')->check(CLI::IsMember({"ma2", "alns", "ts", "ma1"}));
    grid_cmd->add_option("--repeats", grid.repeats, "runs per cell")->check(CLI::PositiveNumber);
    grid_cmd->add_option("--seed", grid.seed, "master seed");
    grid_cmd->add_option("--out", grid_out, "output directory");

    // export
    CommonFlags export_flags;
    bench::InstanceSpec export_spec;
    std::string export_instance;
    std::string export_out = "lp_out";
    auto *export_cmd = app.add_subcommand("export", "write original and rescheduling LP models plus manifest.csv");
    add_common(export_cmd, export_flags);
    export_cmd->add_option("--instance", export_instance, "instance file")->required();
    export_cmd->add_option("--ne", export_spec.n_existing, "existing customers")->required();
    export_cmd->add_option("--nn", export_spec.n_new, "new customers")->required();
    export_cmd->add_option("--out", export_out, "output directory");

    // gap
    std::string gap_exact;
    std::string gap_summary;
    std::string gap_out = "gap.csv";
    auto *gap_cmd = app.add_subcommand("gap", "join instance,exact_obj against a summary and compute gaps");
    gap_cmd->add_option("--exact", gap_exact, "CSV with instance,exact_obj")->required();
    gap_cmd->add_option("--summary", gap_summary, "CSV with instance,best_obj")->required();
    gap_cmd->add_option("--out", gap_out, "output CSV");

    // oracle
    CommonFlags oracle_flags;
    bench::InstanceSpec oracle_spec;
    std::string oracle_instance;
    bool no_bound = false;
    auto *oracle_cmd = app.add_subcommand("oracle", "exhaustive optimum for at most 12 customers");
    add_common(oracle_cmd, oracle_flags);
    oracle_cmd->add_option("--instance", oracle_instance, "instance file")->required();
    oracle_cmd->add_option("--ne", oracle_spec.n_existing, "existing customers")->required();
    oracle_cmd->add_option("--nn", oracle_spec.n_new, "new customers")->required();
    oracle_cmd->add_flag("--no-bound", no_bound, "disable the payment bound, keep only feasibility pruning");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        if (code == 0) return 0;
        std::cerr << app.help();
        return 2;
    }

    try {
        if (*solve_cmd) {
            const auto config = build_config(solve_flags);
            solve_spec.path = solve_instance;
            const auto outcome = bench::run_solve(solve_spec, config, seed, repeats, parse_algorithm(algo));
            bench::write_file(fs::path(out_dir) / "runs.csv", bench::runs_csv(outcome));
            bench::write_file(fs::path(out_dir) / "summary.csv", bench::summary_csv(outcome));
            std::cout << to_string(outcome.best) << "\n";
        } else if (*grid_cmd) {
            grid.config = build_config(grid_flags);
            grid.algorithms = parse_algorithms(grid_algos);
            const fs::path list(grid_list);
            grid.instances = bench::parse_instance_list(bench::read_file(list), list.parent_path(), grid_ne, grid_nn);
            const auto result = bench::run_grid(grid);
            bench::write_grid(grid, result, grid_out);
            std::cout << result.runs.size() << " runs, " << result.skipped.size() << " skipped cells\n";
        } else if (*export_cmd) {
            const auto config = build_config(export_flags);
            export_spec.path = export_instance;
            const auto models = bench::export_models(export_spec, config, export_out);
            bench::write_file(fs::path(export_out) / "manifest.csv", bench::manifest_csv(models, config));
            for (const auto &m : models) std::cout << m.file << "\n";
        } else if (*gap_cmd) {
            const auto table = bench::gap_csv(bench::read_file(gap_exact), bench::read_file(gap_summary));
            bench::write_file(gap_out, table);
            std::cout << table;
        } else if (*oracle_cmd) {
            const auto config = build_config(oracle_flags);
            oracle_spec.path = oracle_instance;
            const auto outcome = bench::run_oracle(oracle_spec, config, !no_bound);
            if (!outcome.result.feasible) {
                std::cerr << "no feasible route\n";
                return 1;
            }
            std::cout << to_string(outcome.result.best) << "\n";
        }
    } catch (const CLI::Error &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
