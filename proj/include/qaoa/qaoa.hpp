#pragma once
// Everything in one include.

#include "qaoa/bench.hpp"
#include "qaoa/circuits.hpp"
#include "qaoa/evaluator.hpp"
#include "qaoa/ising.hpp"
#include "qaoa/market_data.hpp"
#include "qaoa/market_io.hpp"
#include "qaoa/mixer_kind.hpp"
#include "qaoa/optim/gradient.hpp"
#include "qaoa/optim/nelder_mead.hpp"
#include "qaoa/problem.hpp"
#include "qaoa/problem_io.hpp"
#include "qaoa/reference_data.hpp"
#include "qaoa/rng.hpp"
#include "qaoa/schedule.hpp"
#include "qaoa/sim/circuit_io.hpp"
#include "qaoa/sim/density_matrix.hpp"
#include "qaoa/sim/dicke.hpp"
#include "qaoa/sim/gates.hpp"
#include "qaoa/sim/measure.hpp"
#include "qaoa/sim/noise.hpp"
#include "qaoa/sim/statevector.hpp"
#include "qaoa/stats.hpp"
#include "qaoa/synthetic_market.hpp"
