#pragma once

#include "lsc/benchgen.hpp"
#include "lsc/circuit.hpp"
#include "lsc/dag.hpp"
#include "lsc/errors.hpp"
#include "lsc/layout.hpp"
#include "lsc/metrics.hpp"
#include "lsc/occupancy.hpp"
#include "lsc/optimize.hpp"
#include "lsc/pipeline.hpp"
#include "lsc/qasm.hpp"
#include "lsc/router.hpp"
#include "lsc/schedule.hpp"
#include "lsc/scheduler.hpp"
#include "lsc/svg.hpp"
#include "lsc/sweep.hpp"
#include "lsc/trace.hpp"
#include "lsc/validate.hpp"
