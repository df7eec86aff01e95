#pragma once

#include "approximation.hpp"
#include "dft.hpp"
#include "eig.hpp"
#include "experiment.hpp"
#include "frequency_set.hpp"
#include "korobov.hpp"
#include "lattice.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "quality.hpp"
#include "rng.hpp"
#include "sampling.hpp"
#include "solvers.hpp"
#include "targets.hpp"
#include "weights.hpp"
#include "zeta.hpp"
