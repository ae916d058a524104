#pragma once

#include <tuple>
#include <utility>
#include <vector>

#include "bnf/parallel.hpp"
#include "bnf/types.hpp"

namespace bnf {

// Closed interval of boundary parameters s (may extend past [0,1); membership
// is tested circularly).
struct SRange {
  double lo = 0.0;
  double hi = 0.0;
};

// One evaluated point of the boundary dispersion relation.
struct BoundarySample {
  double s = 0.0;
  WaveNumbers k{};
  double omega_minus = 0.0;
  double omega_plus = 0.0;
  double omega_minus_nl = 0.0;
  double omega_plus_nl = 0.0;
  // Admissible-amplitude threshold 2/(3*sqrt(3*S_star)) used for the
  // resonant-exclusion rule; +inf where the quartic form vanishes or at the
  // zone center, 0 on an exact 3:1 crossing.
  double threshold = 0.0;
  double sigma = 0.0;  // omega_plus - 3*omega_minus (set to omega_plus at Gamma)
  bool excluded = false;
};

struct BandgapReport {
  double w_linear = 0.0;
  double w_nonlinear = 0.0;
  double b_per = 0.0;  // percent: 100*(w_nonlinear/w_linear - 1)
  // Extremizers of the effective dispersion curves (linear branch inside
  // exclusions, nonlinear outside); these drive the good/bad classification.
  WaveNumbers argmax_acoustic{};
  WaveNumbers argmin_optical{};
  bool good = false;
  std::vector<SRange> resonant_exclusions;
  // Boundary parameters of the extremizers above and of the linear ones.
  double s_argmax_acoustic = 0.0;
  double s_argmin_optical = 0.0;
  double s_linear_max = 0.0;
  double s_linear_min = 0.0;
  Amplitudes amplitudes{};  // the amplitudes the nonlinear curves were built with
};

// Wave-amplitude policy for the nonlinear dispersion correction: either the
// per-wavenumber admissible amplitudes, or amplitudes held fixed along the
// boundary (the figure convention pins them at their X-point values).
struct AmplitudePolicy {
  bool fixed = false;
  Amplitudes amplitudes{};

  static AmplitudePolicy per_k() { return {}; }
  static AmplitudePolicy fixed_at(const Amplitudes& a) { return {true, a}; }
};

// Admissible amplitudes of the nonresonant normal form built at the X point.
Amplitudes admissible_amplitudes_at_x(const HoneycombParams& p);

struct BoundaryAnalysis {
  BandgapReport report;
  std::vector<BoundarySample> samples;
};

// Full boundary pipeline: dispersion curves, resonant exclusions, bandgap
// extremes and classification. exclusion_scale multiplies the half-widths of
// the exclusion intervals (1 = the threshold rule as stated).
// Throws AllExcluded when the exclusions cover the whole boundary.
BoundaryAnalysis analyze_boundary(const HoneycombParams& p,
                                  const AmplitudePolicy& policy,
                                  int per_edge = 2048,
                                  double exclusion_scale = 1.0,
                                  Execution ex = Execution::parallel);

// Linear bandgap width and its extremizers over the triangle boundary,
// located by dense sampling plus golden-section refinement of the bracketing
// segment. n_samples is per edge (minimum 3).
std::tuple<double, WaveNumbers, WaveNumbers> linear_bandgap(
    const HoneycombParams& p, int n_samples);

BandgapReport nonlinear_bandgap(const HoneycombParams& p,
                                const AmplitudePolicy& policy,
                                int per_edge = 2048,
                                double exclusion_scale = 1.0);

// True iff the effective nonlinear extremizers sit at X and Gamma with X
// outside every resonant exclusion. Uses amplitudes fixed at their X-point
// admissible values (the convention under which good/bad regions are drawn).
bool classify_parameters(const HoneycombParams& p);

struct SweepCell {
  double m_tilde = 0.0;
  double k_tilde = 0.0;
  BandgapReport report;
  bool failed = false;  // analysis threw (e.g. AllExcluded); report is empty
};

// Percentage-gain field over a uniform (m_tilde, k_tilde) grid (nodes
// inclusive of the rectangle edges). Bad cells keep their formula value but
// carry good=false; cells whose analysis throws are flagged failed.
std::vector<SweepCell> bandgap_sweep(const Rect& rect,
                                     std::pair<int, int> grid, double n3,
                                     int per_edge = 512,
                                     Execution ex = Execution::parallel);

}  // namespace bnf
