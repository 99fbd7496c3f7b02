#pragma once

// Umbrella header for the kicked-Ising mean-field toolkit.

#include "kising/angles.hpp"
#include "kising/bloch.hpp"
#include "kising/errors.hpp"
#include "kising/lattice.hpp"
#include "kising/meanfield.hpp"
#include "kising/plot.hpp"
#include "kising/rng.hpp"
#include "kising/stabilizer.hpp"
#include "kising/statevector.hpp"
#include "kising/stochastic.hpp"
#include "kising/sweep.hpp"
#include "kising/topology.hpp"
