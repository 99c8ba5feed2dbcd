#pragma once

// Umbrella header for the teamcut library: capacity-constrained team
// formation over a weighted conflict graph, solved by concave LP relaxations
// plus dependent (pipage) rounding, with exact and greedy baselines,
// speedups, dataset generators and evaluation metrics.

#include "teamcut/baselines.hpp"
#include "teamcut/cli.hpp"
#include "teamcut/eval.hpp"
#include "teamcut/exact.hpp"
#include "teamcut/instance.hpp"
#include "teamcut/io.hpp"
#include "teamcut/relaxation.hpp"
#include "teamcut/rng.hpp"
#include "teamcut/rounding.hpp"
#include "teamcut/simplex.hpp"
#include "teamcut/speedups.hpp"
