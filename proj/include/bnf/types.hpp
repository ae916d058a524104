#pragma once

#include <array>

namespace bnf {

struct WaveNumbers {
  double k1 = 0.0;
  double k2 = 0.0;
};

// Parameters of the honeycomb cell: resonator mass/stiffness ratios plus the
// orthotropic plate constants and the cubic spring coefficients.
struct HoneycombParams {
  double m_tilde = 0.0;
  double k_tilde = 0.0;
  double d12 = 0.0815599;
  double d22 = 12.48;
  double d66 = 2.47357e-5;
  double m3 = 0.0;  // cubic coefficient on the plate coordinate
  double n3 = 0.0;  // cubic coefficient on the resonator coordinate
};

using Mat2 = std::array<std::array<double, 2>, 2>;

// General two-degree-of-freedom oscillator with cubic forces:
//   M x'' + K x = -(m3 v^3, n3 y^3 in modal directions).
struct OscillatorSystem {
  Mat2 mass{};
  Mat2 stiffness{};
  double m3 = 0.0;
  double n3 = 0.0;
};

// Modal decomposition of an OscillatorSystem: frequencies and the columns of
// the mass-normalized eigenvector matrix Phi = [phi_minus | phi_plus], so the
// physical displacement components are v = phi_minus[0] q1 + phi_plus[0] q2
// and y = phi_minus[1] q1 + phi_plus[1] q2 in modal coordinates (q1, q2).
struct ModalData {
  double omega_minus = 0.0;
  double omega_plus = 0.0;
  std::array<double, 2> phi_minus{};
  std::array<double, 2> phi_plus{};
};

// Axis-aligned rectangle in a two-parameter plane (x = m_tilde, y = k_tilde
// for parameter-plane operations).
struct Rect {
  double x0 = 0.0, x1 = 0.0;
  double y0 = 0.0, y1 = 0.0;
};

struct Amplitudes {
  double a_minus = 0.0;
  double a_plus = 0.0;
};

}  // namespace bnf
