#pragma once

#include "coulomb_momentum/error.hpp"
#include "coulomb_momentum/linalg.hpp"
#include "coulomb_momentum/nystrom.hpp"
#include "coulomb_momentum/parallel.hpp"
#include "coulomb_momentum/potential_ft.hpp"
#include "coulomb_momentum/quadrature.hpp"
#include "coulomb_momentum/radial.hpp"
#include "coulomb_momentum/report.hpp"
#include "coulomb_momentum/specfun.hpp"
#include "coulomb_momentum/spectrum.hpp"
#include "coulomb_momentum/verification.hpp"
