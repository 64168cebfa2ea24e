#pragma once

#include "cylinders/combinatorics.hpp"
#include "cylinders/critical_solver.hpp"
#include "cylinders/enclosing.hpp"
#include "cylinders/error.hpp"
#include "cylinders/formulation.hpp"
#include "cylinders/geometry.hpp"
#include "cylinders/linalg.hpp"
#include "cylinders/min_ball.hpp"
#include "cylinders/polynomial.hpp"
#include "cylinders/regular_simplex.hpp"
#include "cylinders/special_e3.hpp"
#include "cylinders/weissbach.hpp"
