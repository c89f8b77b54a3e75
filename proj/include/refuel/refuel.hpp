#ifndef REFUEL_REFUEL_HPP
#define REFUEL_REFUEL_HPP

#include "refuel/baselines.hpp"
#include "refuel/bench.hpp"
#include "refuel/core.hpp"
#include "refuel/dominance.hpp"
#include "refuel/errors.hpp"
#include "refuel/gen.hpp"
#include "refuel/io.hpp"
#include "refuel/numeric.hpp"
#include "refuel/run.hpp"
#include "refuel/solver.hpp"

#endif
