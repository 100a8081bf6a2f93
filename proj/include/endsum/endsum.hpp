#pragma once

// Umbrella header.

#include "endsum/catalog.hpp"
#include "endsum/coefficient_ring.hpp"
#include "endsum/end_algebra.hpp"
#include "endsum/fin_module.hpp"
#include "endsum/fp_linalg.hpp"
#include "endsum/graded_ring.hpp"
#include "endsum/integers.hpp"
#include "endsum/invariants.hpp"
#include "endsum/manifold.hpp"
#include "endsum/matrix.hpp"
#include "endsum/oracle.hpp"
#include "endsum/run.hpp"
#include "endsum/scenario.hpp"
#include "endsum/smith.hpp"
#include "endsum/space.hpp"
