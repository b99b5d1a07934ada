#pragma once

#include "negabeta/error.hpp"
#include "negabeta/rational.hpp"
#include "negabeta/polynomial.hpp"
#include "negabeta/numerics.hpp"
#include "negabeta/sequence.hpp"
#include "negabeta/order.hpp"
#include "negabeta/expansion.hpp"
#include "negabeta/shiftspace.hpp"
#include "negabeta/measure.hpp"
#include "negabeta/matching.hpp"
#include "negabeta/solver.hpp"
