#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "bnf/normal_form.hpp"
#include "bnf/types.hpp"

namespace bnf {

using ComplexPair = std::array<std::complex<double>, 2>;

// Time series of a Hamiltonian trajectory in modal coordinates
// (q1, q2, p1, p2) with the conserved energy recorded per stored state.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::array<double, 4>> states;
  std::vector<double> energy;
};

// First-order approximate solution of the normalized system with its
// validity data: scaled initial actions (sup-norm 1), initial angles, the
// amplitude parameter epsilon, the frequency-shift Hessian A, and the
// quantities controlling the remainder bound.
struct AsymptoticSolution {
  std::array<double, 2> i0{};    // scaled actions, max component = 1
  std::array<double, 2> phi0{};  // initial angles
  double epsilon = 0.0;
  Mat2 a_matrix{};  // [[2 G2020, G1111], [G1111, 2 G0202]]
  double xi = 0.0;         // 2 xi eps = min_j |z_j(0)|
  double t_star = 0.0;     // 3 xi^2 / (2 R*)
  double r_star = 0.0;     // (9/2)^6 R-dagger
  double omega_minus = 0.0;
  double omega_plus = 0.0;
  ComplexPair z0{};  // normalized initial point, sup-norm epsilon
};

struct RemainderReport {
  AsymptoticSolution asymptotic;
  double horizon = 0.0;      // min(t_end, t_star * eps^-4)
  double norm_bound = 0.0;   // 7/(2 sqrt 2)
  double max_norm_ratio = 0.0;        // max_t ||z(t)|| / eps
  double max_residual = 0.0;          // max_t ||z(t) - eps z1(t)||
  double max_residual_over_bound = 0.0;
  bool norm_ok = false;
  bool residual_ok = false;
  std::size_t checks = 0;
};

// Modal-coordinate Hamiltonian
// H = |p|^2/2 + (wm^2 q1^2 + wp^2 q2^2)/2 + m3 v^4/4 + n3 y^4/4.
double modal_energy(const ModalData& modal, double m3, double n3,
                    const std::array<double, 4>& state);

// Integrates the cubic system with a fixed-step sixth-order symmetric
// composition of velocity-Verlet substeps; initial data and output are in
// modal coordinates. dt <= 0 selects the default (2 pi / omega_plus) / 256;
// the step is snapped so an integer number of strides lands exactly on
// t_end and output times stay uniform. Throws Blowup past 1e6 and
// EnergyDrift past 1e-9 relative drift at stored states.
Trajectory integrate_full(const OscillatorSystem& sys,
                          std::array<double, 2> q0, std::array<double, 2> p0,
                          double t_end, double dt = 0.0,
                          int output_stride = 1);

// Closed-form flow of the truncated (nonresonant) normal form: actions
// constant, angles advancing at the amplitude-shifted frequencies. The
// energy column stores the truncated invariant sum(w I) + H4bar(I), which
// is exactly conserved.
Trajectory integrate_truncated(const ModalData& modal, const NormalForm& nf,
                               std::array<double, 2> i0,
                               std::array<double, 2> phi0, double t_end,
                               int n_steps = 512);

// Complex modal coordinates z_j = (sqrt(w_j) q_j + i p_j / sqrt(w_j)) / sqrt 2
// and back.
ComplexPair to_complex_coords(const ModalData& modal,
                              std::array<double, 2> q,
                              std::array<double, 2> p);
std::pair<std::array<double, 2>, std::array<double, 2>> from_complex_coords(
    const ModalData& modal, const ComplexPair& z);

// Action-angle variables z_j = sqrt(I_j) exp(-i phi_j). The transformation
// is singular where a component vanishes; components below 1e-18 in modulus
// throw SingularTransform.
std::pair<std::array<double, 2>, std::array<double, 2>> action_angle(
    const ComplexPair& z);
ComplexPair from_action_angle(std::array<double, 2> actions,
                              std::array<double, 2> angles);
ComplexPair action_angle_roundtrip(const ComplexPair& z);

// Time-t flow of the generating vector field of the normalizing
// transformation (fourth-order Runge-Kutta, fixed substeps). time = +1 maps
// normalized to original coordinates, time = -1 inverts it.
ComplexPair flow_generating(const NormalForm& nf, ComplexPair z, double time,
                            int substeps = 16);

// Asymptotic-solution data for a normalized initial point z0.
AsymptoticSolution build_asymptotic(const ModalData& modal,
                                    const NormalForm& nf,
                                    const ComplexPair& z0);

// eps * z1(t): the first-order approximation at time t.
ComplexPair asymptotic_state(const AsymptoticSolution& a, double t);

// Integrates the full system, transforms each stored state to normalized
// coordinates, and checks the trajectory-norm and residual bounds of the
// asymptotic solution up to min(t_end, t_star eps^-4).
// Throws PreconditionFail if eps exceeds 2/(9 sqrt(3 S*)) or a component of
// the normalized initial point vanishes.
RemainderReport verify_remainder(const OscillatorSystem& sys,
                                 const ModalData& modal, const NormalForm& nf,
                                 std::array<double, 2> q0,
                                 std::array<double, 2> p0, double t_end);

}  // namespace bnf
