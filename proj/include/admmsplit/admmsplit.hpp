#pragma once

// Umbrella header for the admmsplit toolkit: distributed sparse-recovery
// solvers for g = H u + w with norm-1 regularization, built on row-, column-,
// and grid-wise splittings of the sensing matrix, with metered simulated node
// communication and closed-form exchange accounting.

#include "admmsplit/admm_core.hpp"
#include "admmsplit/cholesky.hpp"
#include "admmsplit/cmat_io.hpp"
#include "admmsplit/comm.hpp"
#include "admmsplit/errors.hpp"
#include "admmsplit/generate.hpp"
#include "admmsplit/gram.hpp"
#include "admmsplit/linalg.hpp"
#include "admmsplit/metrics.hpp"
#include "admmsplit/parallel.hpp"
#include "admmsplit/partition.hpp"
#include "admmsplit/problem.hpp"
#include "admmsplit/prox.hpp"
#include "admmsplit/reference.hpp"
#include "admmsplit/report.hpp"
#include "admmsplit/rng.hpp"
#include "admmsplit/solvers.hpp"
