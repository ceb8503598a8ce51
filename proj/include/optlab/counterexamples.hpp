#pragma once

#include "optlab/instance.hpp"

namespace optlab {

// 2-D spiral on the closed unit disk: satisfies an error bound but the
// secant inequality degenerates along the curve r = 1, theta = r - 5*pi/4.
FunctionInstance counterexample_eb_not_rsi();

// 1-D piecewise quadratic: 1-RSI everywhere, but star strong convexity
// fails at x = 3/2 for every positive modulus.
FunctionInstance counterexample_rsi_not_starsc();

}  // namespace optlab
