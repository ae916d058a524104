#pragma once

#include <map>
#include <utility>

#include "bnf/quartic_form.hpp"
#include "bnf/types.hpp"

namespace bnf {

// Fourth-order normal form of a two-oscillator cubic system.
struct NormalForm {
  // Coefficients of |z1|^4, |z1|^2|z2|^2, |z2|^4 in the normalized quartic.
  double h4_20_20 = 0.0;
  double h4_11_11 = 0.0;
  double h4_02_02 = 0.0;
  // Coefficient of the resonant monomial kept in the normalized quartic when
  // the resonant equation is solved; zero in the nonresonant normal form
  // (the monomial is removed into s).
  double f31_res = 0.0;
  // Real generating-function table: s[key] = g[key] / (omega . (alpha-beta))
  // over the removed keys.
  QuarticForm s;
  double s_star = 0.0;
  double r_dagger = 0.0;
  double sigma = 0.0;  // detuning omega_plus - 3*omega_minus
  double gamma = 0.0;  // small-divisor floor
  bool resonant = false;

  double omega_minus = 0.0;
  double omega_plus = 0.0;
};

using QuarticCoefficients = std::map<std::pair<int, int>, double>;

// Coefficients f_{i,j} (i+j=4) of the quartic potential
// (m3/4) v^4 + (n3/4) y^4 expanded in modal coordinates:
// f_{i,j} = (6/(i! j!)) * (phi1m^i phi1p^j m3 + phi2m^i phi2p^j n3).
QuarticCoefficients quartic_coefficients(const ModalData& modal, double m3,
                                         double n3);

// Coefficient table of the quartic Hamiltonian in complex coordinates:
// G[{alpha,beta}] = f_{a1+b1, a2+b2} * C(a1+b1,a1) * C(a2+b2,a2)
//                   / (4 wm^((a1+b1)/2) wp^((a2+b2)/2)).
QuarticForm g_coefficients(const QuarticCoefficients& f, double omega_minus,
                           double omega_plus);

// Signed small divisor omega . (alpha - beta) of a key.
double small_divisor(std::pair<double, double> omega,
                     const MultiIndexPair& key);

// Lower bound gamma on |omega . (alpha-beta)| over the removed keys:
// min(wm, wp-wm, |3wm-wp|) nonresonant; min(wm, wp-wm) resonant.
double gamma_floor(std::pair<double, double> omega, bool resonant);

// Solves the homological equation: s[key] = g[key] / divisor for every
// off-diagonal key (and, in resonant mode, excluding the two resonant keys,
// which stay in the normal form). Throws ExactResonance when the nonresonant
// equation is requested with |3wm - wp| < 1e-12 * wp.
QuarticForm solve_homological(const QuarticForm& g,
                              std::pair<double, double> omega, bool resonant);

// Remainder constant R-dagger = sum_j S^(j) (2 H4^(j) + Ghat^(j)) where
// Ghat = g minus the keys kept in h4.
double remainder_constant(const QuarticForm& s, const QuarticForm& g,
                          const QuarticForm& h4);

// Largest zero-velocity modal amplitudes for which the normal-form bounds
// are guaranteed: a_j = sqrt(2 / (27 w_j s_star)). Returns zeros when
// s_star is zero (no quartic part: no constraint, reported as zero to keep
// downstream quantities finite) or infinite.
Amplitudes admissible_amplitudes(const ModalData& modal, double s_star);

// Amplitude-dependent frequencies to quartic order:
//   wm_nl = wm + 2 G2020 I1 + G1111 I2,
//   wp_nl = wp + G1111 I1 + 2 G0202 I2.
std::pair<double, double> nonlinear_frequencies(const ModalData& modal,
                                                double m3, double n3,
                                                double i1, double i2);

// Coefficient of the resonant monomial z1^3 conj(z2):
// f_{3,1} / (4 wm^(3/2) wp^(1/2)).
double resonant_coefficient(const QuarticCoefficients& f,
                            std::pair<double, double> omega);

// Full pipeline: quartic coefficients -> G table -> homological solve ->
// norms -> remainder constant; records sigma and gamma.
NormalForm build_normal_form(const ModalData& modal, double m3, double n3,
                             bool resonant);

// The quartic keys kept by the normal form (diagonal ones, plus the two
// resonant keys in resonant mode) with their G coefficients.
QuarticForm normal_form_kept_part(const QuarticForm& g, bool resonant);

}  // namespace bnf
