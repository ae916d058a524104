#pragma once

#include <utility>

#include "bnf/types.hpp"

namespace bnf {

// Effective plate mass coefficient of the honeycomb cell at wave numbers k;
// the removable singularities of the underlying sinc factors are evaluated
// by series for small arguments.
double honeycomb_mass(const WaveNumbers& k);

// Effective plate stiffness coefficient at wave numbers k.
double honeycomb_stiffness(const WaveNumbers& k, const HoneycombParams& p);

// Assembles the two-degree-of-freedom cell system
//   mass = [[MH + m_tilde, m_tilde], [m_tilde, m_tilde]],
//   stiffness = diag(KH, k_tilde).
OscillatorSystem build_honeycomb(const WaveNumbers& k,
                                 const HoneycombParams& p);

// Solves the generalized symmetric eigenproblem K phi = lambda M phi for a
// 2x2 system, returning mass-normalized eigenvectors (Phi^T M Phi = I) with
// deterministic sign conventions: phi_minus[0] >= 0 and phi_plus[1] >= 0
// (ties resolved by the other component).
// Throws ZeroFrequency if the lower eigenvalue is nonpositive and
// RepeatedEigenvalue if the two frequencies coincide to 1e-10 relative.
ModalData modal_decomposition(const OscillatorSystem& sys);

// Frequencies only (no eigenvectors, no positivity guard on omega_minus):
// the fast path for boundary scans, where the acoustic branch legitimately
// vanishes at the zone center.
std::pair<double, double> modal_frequencies(const OscillatorSystem& sys);

// Convenience: frequencies of the honeycomb cell at wave numbers k.
std::pair<double, double> honeycomb_frequencies(const HoneycombParams& p,
                                                const WaveNumbers& k);

// Convenience: full modal data of the honeycomb cell at wave numbers k.
ModalData honeycomb_modal(const HoneycombParams& p, const WaveNumbers& k);

}  // namespace bnf
