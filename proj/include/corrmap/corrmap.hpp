#pragma once

// Dynamical-map positivity analysis for open quantum systems with initial
// system-environment correlation: assignment maps, Choi-matrix CP tests, the
// correlation-revealing unitary construction, hiding conditions, and
// Markovian collision models.

#include "corrmap/types.hpp"
#include "corrmap/tensor.hpp"
#include "corrmap/eig.hpp"
#include "corrmap/random.hpp"
#include "corrmap/basis.hpp"
#include "corrmap/assignment.hpp"
#include "corrmap/dynamics.hpp"
#include "corrmap/reveal.hpp"
#include "corrmap/hide.hpp"
#include "corrmap/collision.hpp"
