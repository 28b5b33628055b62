#pragma once

#include "lyapcert/core/interval.hpp"

namespace lyapcert {

// Certified enclosure of the moment Lyapunov exponent Lambda over p.
struct MomentLyapunovEnclosure {
  Interval p;
  Interval lambda;
};

}  // namespace lyapcert
