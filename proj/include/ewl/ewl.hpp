#pragma once

#include "ewl/angle.hpp"
#include "ewl/classes.hpp"
#include "ewl/cyclotomic.hpp"
#include "ewl/equivalence.hpp"
#include "ewl/errors.hpp"
#include "ewl/invariance.hpp"
#include "ewl/nash.hpp"
#include "ewl/payoff.hpp"
#include "ewl/scalar.hpp"
#include "ewl/solver.hpp"
#include "ewl/su2.hpp"
