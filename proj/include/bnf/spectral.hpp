#pragma once

#include <utility>
#include <vector>

#include "bnf/simulate.hpp"

namespace bnf {

// Dominant angular frequency of a uniformly sampled real signal. The
// estimate combines a windowed FFT peak with local refinement and is
// cross-checked on the first half of the record; disagreement, a missing
// or non-isolated peak, or too short a record throws SpectralAmbiguity.
double dominant_frequency(const std::vector<double>& samples, double dt);

// Dominant angular frequencies of the two modal displacement columns of a
// trajectory. Throws ConfigError when the time grid is not uniform.
std::pair<double, double> measure_frequencies(const Trajectory& traj);

}  // namespace bnf
