#pragma once

#include "slinv/lab/config.hpp"

namespace slinv::lab {

/// zero; sine(a, k) = a sin(k x); step(a, x0) = a [x >= x0]; sawtooth(a) = a (x/pi - 1/2).
PotentialGrid generate_potential(const PotentialSpec& spec, int M);

}  // namespace slinv::lab
