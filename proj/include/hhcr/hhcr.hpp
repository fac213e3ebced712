#ifndef HHCR_HHCR_HPP
#define HHCR_HHCR_HPP

#include "hhcr/alns.hpp"
#include "hhcr/baseline_tsp.hpp"
#include "hhcr/bench.hpp"
#include "hhcr/config.hpp"
#include "hhcr/error.hpp"
#include "hhcr/exact_search.hpp"
#include "hhcr/format.hpp"
#include "hhcr/instance.hpp"
#include "hhcr/lp_export.hpp"
#include "hhcr/memetic.hpp"
#include "hhcr/neighborhood.hpp"
#include "hhcr/operators.hpp"
#include "hhcr/solution.hpp"
#include "hhcr/tabu_search.hpp"

#endif  // HHCR_HHCR_HPP
