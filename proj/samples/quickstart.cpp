// Five-node example: two existing customers, two same-day requests.
#include <iostream>

#include "hhcr/hhcr.hpp"

int main() {
    using namespace hhcr;
    const auto inst = make_instance({0, 0, 0}, {{3, 0, 10}, {3, 4, 10}}, {{0, 4, 8}, {6, 0, 5}}, 2.0);

    for (const double lambda : {1.0, 0.5}) {
        SolverConfig config;
        config.lambda = lambda;
        const auto problem = prepare_problem(inst, config);
        const auto result = solve(problem, config, 42);
        std::cout << "lambda=" << format_real(lambda) << "  baseline " << to_string(initial_solution(problem.baseline, inst)) << "\n"
                  << "           best     " << to_string(result.best) << "\n";
    }
}
