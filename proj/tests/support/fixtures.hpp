// Shared small instances for the test suites.
#pragma once

#include "hhcr/hhcr.hpp"

namespace fixtures {

using namespace hhcr;

// Depot (0,0); existing E1 (3,0) p=10, E2 (3,4) p=10; new N1 (0,4) p=8, N2 (6,0) p=5; r = 2.
inline constexpr NodeId E1 = 1, E2 = 2, N1 = 3, N2 = 4;

inline Instance t1() { return make_instance({0, 0, 0}, {{3, 0, 10}, {3, 4, 10}}, {{0, 4, 8}, {6, 0, 5}}, 2.0); }

inline SolverConfig t1_config(double lambda, double mu = 1.0) {
    SolverConfig c;
    c.lambda = lambda;
    c.mu = mu;
    return c;
}

inline Problem t1_problem(double lambda, double mu = 1.0) { return prepare_problem(t1(), t1_config(lambda, mu)); }

}  // namespace fixtures
