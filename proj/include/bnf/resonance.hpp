#pragma once

#include <vector>

#include "bnf/types.hpp"

namespace bnf {

// Polyline in a two-dimensional plane (parameter plane or wave-number
// plane); closed when the last point joins the first.
struct PlanarCurve {
  std::vector<std::array<double, 2>> points;
  bool closed = false;
};

struct Crossing {
  double s = 0.0;  // boundary parameter
  WaveNumbers k{};
  double sigma_residual = 0.0;
};

struct BoundaryCrossings {
  std::vector<Crossing> crossings;
};

// Detuning sigma = omega_plus - 3 * omega_minus.
double detuning(const ModalData& modal);

// Detuning of the honeycomb cell at wave numbers k, with the degenerate
// zone-center guard: where omega_minus < 1e-8 the value is +omega_plus
// (no 3:1 root can occur there and the sign is stable).
double detuning_at(const HoneycombParams& p, const WaveNumbers& k);

// Traces the locus of exact 3:1 resonance at the X vertex in the
// (m_tilde, k_tilde) plane inside `rect`, by continuation over m_tilde with
// per-column bisection to |sigma| <= 1e-10. `step` is the approximate
// Euclidean spacing of consecutive points. Throws NoRootInRectangle.
PlanarCurve trace_x_resonant_curve(const Rect& rect, double step = 0.02);

// Traces the zero sets of sigma(k1, k2) near the wave-number triangle by
// marching squares (400x400 cells over the 5%-inflated triangle bounding
// box) with per-edge bisection; one PlanarCurve per connected component.
std::vector<PlanarCurve> trace_k_resonant_curves(const HoneycombParams& p);

// All 3:1 crossings of the triangle boundary: dense sampling (16384 points)
// with bisection to |sigma| <= 1e-11, tangency detection (a local minimum of
// |sigma| below 1e-9 without sign change counts once), and clustering of
// roots closer than 1e-3 in s (representative: smallest |sigma|, then
// smallest s). Sorted by s.
BoundaryCrossings boundary_crossings(const HoneycombParams& p);

}  // namespace bnf
