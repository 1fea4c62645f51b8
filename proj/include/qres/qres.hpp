#pragma once

// Umbrella header for the fidelity-based purity, coherence, and
// quantum-correlation toolkit.

#include "qres/channels.hpp"
#include "qres/coherence.hpp"
#include "qres/fidelity.hpp"
#include "qres/harness.hpp"
#include "qres/json_io.hpp"
#include "qres/linalg.hpp"
#include "qres/measurement.hpp"
#include "qres/optimize.hpp"
#include "qres/parallel.hpp"
#include "qres/purity.hpp"
#include "qres/rng.hpp"
#include "qres/states.hpp"
#include "qres/sweep.hpp"
