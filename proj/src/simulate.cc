#include "bnf/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

#include "bnf/errors.hpp"
#include "bnf/system.hpp"

namespace bnf {

namespace {

constexpr double kBlowupLimit = 1e6;
constexpr double kDriftLimit = 1e-9;
constexpr double kSingular = 1e-18;

// Weights of the sixth-order symmetric composition of velocity-Verlet
// substeps (Yoshida, solution A).
constexpr double kW1 = -1.17767998417887;
constexpr double kW2 = 0.235573213359357;
constexpr double kW3 = 0.784513610477560;
constexpr double kW0 = 1.0 - 2.0 * (kW1 + kW2 + kW3);
constexpr std::array<double, 7> kComposition{kW3, kW2, kW1, kW0,
                                             kW1, kW2, kW3};

struct ModalForces {
  double wm2, wp2;
  double phi1m, phi1p, phi2m, phi2p;
  double m3, n3;

  std::array<double, 2> acceleration(const std::array<double, 2>& q) const {
    const double v = phi1m * q[0] + phi1p * q[1];
    const double y = phi2m * q[0] + phi2p * q[1];
    const double fv = m3 * v * v * v;
    const double fy = n3 * y * y * y;
    return {-(wm2 * q[0] + phi1m * fv + phi2m * fy),
            -(wp2 * q[1] + phi1p * fv + phi2p * fy)};
  }
};

ModalForces make_forces(const ModalData& modal, double m3, double n3) {
  return {modal.omega_minus * modal.omega_minus,
          modal.omega_plus * modal.omega_plus,
          modal.phi_minus[0],
          modal.phi_plus[0],
          modal.phi_minus[1],
          modal.phi_plus[1],
          m3,
          n3};
}

void verlet_step(const ModalForces& f, std::array<double, 2>& q,
                 std::array<double, 2>& p, double h) {
  auto a = f.acceleration(q);
  p[0] += 0.5 * h * a[0];
  p[1] += 0.5 * h * a[1];
  q[0] += h * p[0];
  q[1] += h * p[1];
  a = f.acceleration(q);
  p[0] += 0.5 * h * a[0];
  p[1] += 0.5 * h * a[1];
}

double matrix_inf_norm(const Mat2& a) {
  return std::max(std::abs(a[0][0]) + std::abs(a[0][1]),
                  std::abs(a[1][0]) + std::abs(a[1][1]));
}

}  // namespace

double modal_energy(const ModalData& modal, double m3, double n3,
                    const std::array<double, 4>& state) {
  const double q1 = state[0], q2 = state[1], p1 = state[2], p2 = state[3];
  const double v = modal.phi_minus[0] * q1 + modal.phi_plus[0] * q2;
  const double y = modal.phi_minus[1] * q1 + modal.phi_plus[1] * q2;
  const double wm = modal.omega_minus, wp = modal.omega_plus;
  return 0.5 * (p1 * p1 + p2 * p2) +
         0.5 * (wm * wm * q1 * q1 + wp * wp * q2 * q2) +
         0.25 * m3 * v * v * v * v + 0.25 * n3 * y * y * y * y;
}

Trajectory integrate_full(const OscillatorSystem& sys,
                          std::array<double, 2> q0, std::array<double, 2> p0,
                          double t_end, double dt, int output_stride) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ConfigError("t_end must be positive and finite");
  }
  if (output_stride < 1) {
    throw ConfigError("output_stride must be at least 1");
  }
  const ModalData modal = modal_decomposition(sys);
  if (dt <= 0.0) {
    dt = (2.0 * std::numbers::pi / modal.omega_plus) / 256.0;
  }

  std::int64_t n = std::llround(t_end / dt);
  n = std::max<std::int64_t>(n, 1);
  const std::int64_t stride = output_stride;
  n = ((n + stride - 1) / stride) * stride;
  const double dt_eff = t_end / static_cast<double>(n);

  const ModalForces forces = make_forces(modal, sys.m3, sys.n3);

  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(n / stride) + 1);
  traj.states.reserve(static_cast<std::size_t>(n / stride) + 1);
  traj.energy.reserve(static_cast<std::size_t>(n / stride) + 1);

  std::array<double, 2> q = q0, p = p0;
  const double e0 = modal_energy(modal, sys.m3, sys.n3, {q[0], q[1], p[0], p[1]});
  const double e_scale = std::max(std::abs(e0), 1e-30);

  auto record = [&](std::int64_t step) {
    const std::array<double, 4> state{q[0], q[1], p[0], p[1]};
    const double e = modal_energy(modal, sys.m3, sys.n3, state);
    if (std::abs(e - e0) / e_scale > kDriftLimit) {
      throw EnergyDrift("relative energy drift exceeded 1e-9 at t = " +
                        std::to_string(static_cast<double>(step) * dt_eff));
    }
    traj.times.push_back(static_cast<double>(step) * dt_eff);
    traj.states.push_back(state);
    traj.energy.push_back(e);
  };

  record(0);
  for (std::int64_t i = 1; i <= n; ++i) {
    for (const double w : kComposition) {
      verlet_step(forces, q, p, w * dt_eff);
    }
    if (!(std::abs(q[0]) < kBlowupLimit && std::abs(q[1]) < kBlowupLimit &&
          std::abs(p[0]) < kBlowupLimit && std::abs(p[1]) < kBlowupLimit)) {
      throw Blowup("trajectory exceeded 1e6 at t = " +
                   std::to_string(static_cast<double>(i) * dt_eff));
    }
    if (i % stride == 0) {
      record(i);
    }
  }
  return traj;
}

Trajectory integrate_truncated(const ModalData& modal, const NormalForm& nf,
                               std::array<double, 2> i0,
                               std::array<double, 2> phi0, double t_end,
                               int n_steps) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ConfigError("t_end must be positive and finite");
  }
  if (n_steps < 1) {
    throw ConfigError("n_steps must be at least 1");
  }
  if (i0[0] < 0.0 || i0[1] < 0.0) {
    throw ConfigError("actions must be nonnegative");
  }
  const double wm_nl =
      modal.omega_minus + 2.0 * nf.h4_20_20 * i0[0] + nf.h4_11_11 * i0[1];
  const double wp_nl =
      modal.omega_plus + 2.0 * nf.h4_02_02 * i0[1] + nf.h4_11_11 * i0[0];
  const double energy = modal.omega_minus * i0[0] + modal.omega_plus * i0[1] +
                        nf.h4_20_20 * i0[0] * i0[0] +
                        nf.h4_11_11 * i0[0] * i0[1] +
                        nf.h4_02_02 * i0[1] * i0[1];

  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.energy.reserve(static_cast<std::size_t>(n_steps) + 1);
  for (int i = 0; i <= n_steps; ++i) {
    const double t = t_end * static_cast<double>(i) / n_steps;
    const ComplexPair z = from_action_angle(
        i0, {phi0[0] + wm_nl * t, phi0[1] + wp_nl * t});
    const auto [q, p] = from_complex_coords(modal, z);
    traj.times.push_back(t);
    traj.states.push_back({q[0], q[1], p[0], p[1]});
    traj.energy.push_back(energy);
  }
  return traj;
}

ComplexPair to_complex_coords(const ModalData& modal,
                              std::array<double, 2> q,
                              std::array<double, 2> p) {
  const double sm = std::sqrt(modal.omega_minus);
  const double sp = std::sqrt(modal.omega_plus);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  return {std::complex<double>(sm * q[0], p[0] / sm) * inv_sqrt2,
          std::complex<double>(sp * q[1], p[1] / sp) * inv_sqrt2};
}

std::pair<std::array<double, 2>, std::array<double, 2>> from_complex_coords(
    const ModalData& modal, const ComplexPair& z) {
  const double sm = std::sqrt(modal.omega_minus);
  const double sp = std::sqrt(modal.omega_plus);
  const double s2 = std::numbers::sqrt2;
  return {{s2 * z[0].real() / sm, s2 * z[1].real() / sp},
          {s2 * z[0].imag() * sm, s2 * z[1].imag() * sp}};
}

std::pair<std::array<double, 2>, std::array<double, 2>> action_angle(
    const ComplexPair& z) {
  std::array<double, 2> actions{};
  std::array<double, 2> angles{};
  for (int j = 0; j < 2; ++j) {
    const double m = std::abs(z[j]);
    if (m < kSingular) {
      throw SingularTransform("action-angle chart is singular: |z_" +
                              std::to_string(j + 1) + "| < 1e-18");
    }
    actions[j] = std::norm(z[j]);
    angles[j] = -std::arg(z[j]);
  }
  return {actions, angles};
}

ComplexPair from_action_angle(std::array<double, 2> actions,
                              std::array<double, 2> angles) {
  ComplexPair z;
  for (int j = 0; j < 2; ++j) {
    z[j] = std::polar(std::sqrt(actions[j]), -angles[j]);
  }
  return z;
}

ComplexPair action_angle_roundtrip(const ComplexPair& z) {
  const auto [actions, angles] = action_angle(z);
  return from_action_angle(actions, angles);
}

namespace {

// Right-hand side zdot_j = sum_{alpha beta} s_{alpha beta} beta_j
// z^alpha zbar^(beta - e_j) of the generating vector field.
ComplexPair generating_field(const QuarticForm& s, const ComplexPair& z) {
  ComplexPair out{};
  const std::array<std::complex<double>, 2> zb{std::conj(z[0]),
                                               std::conj(z[1])};
  for (const auto& [key, c] : s) {
    if (c == 0.0) continue;
    const std::complex<double> za =
        std::pow(z[0], key.alpha[0]) * std::pow(z[1], key.alpha[1]);
    for (int j = 0; j < 2; ++j) {
      if (key.beta[j] == 0) continue;
      std::complex<double> zbpart =
          std::pow(zb[0], key.beta[0] - (j == 0 ? 1 : 0)) *
          std::pow(zb[1], key.beta[1] - (j == 1 ? 1 : 0));
      out[j] += c * static_cast<double>(key.beta[j]) * za * zbpart;
    }
  }
  return out;
}

}  // namespace

ComplexPair flow_generating(const NormalForm& nf, ComplexPair z, double time,
                            int substeps) {
  if (substeps < 1) {
    throw ConfigError("substeps must be at least 1");
  }
  const double h = time / substeps;
  for (int step = 0; step < substeps; ++step) {
    const ComplexPair k1 = generating_field(nf.s, z);
    ComplexPair z2{z[0] + 0.5 * h * k1[0], z[1] + 0.5 * h * k1[1]};
    const ComplexPair k2 = generating_field(nf.s, z2);
    ComplexPair z3{z[0] + 0.5 * h * k2[0], z[1] + 0.5 * h * k2[1]};
    const ComplexPair k3 = generating_field(nf.s, z3);
    ComplexPair z4{z[0] + h * k3[0], z[1] + h * k3[1]};
    const ComplexPair k4 = generating_field(nf.s, z4);
    for (int j = 0; j < 2; ++j) {
      z[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
  }
  return z;
}

AsymptoticSolution build_asymptotic(const ModalData& modal,
                                    const NormalForm& nf,
                                    const ComplexPair& z0) {
  const double m0 = std::abs(z0[0]);
  const double m1 = std::abs(z0[1]);
  const double eps = std::max(m0, m1);
  const double mn = std::min(m0, m1);
  if (eps <= 0.0 || mn <= 0.0) {
    throw PreconditionFail(
        "asymptotic solution needs both components nonzero");
  }

  AsymptoticSolution a;
  a.epsilon = eps;
  a.xi = mn / (2.0 * eps);
  a.i0 = {(m0 / eps) * (m0 / eps), (m1 / eps) * (m1 / eps)};
  a.phi0 = {-std::arg(z0[0]), -std::arg(z0[1])};
  a.a_matrix = {{{2.0 * nf.h4_20_20, nf.h4_11_11},
                 {nf.h4_11_11, 2.0 * nf.h4_02_02}}};
  a.r_star = std::pow(4.5, 6) * nf.r_dagger;
  a.t_star = a.r_star > 0.0
                 ? 3.0 * a.xi * a.xi / (2.0 * a.r_star)
                 : std::numeric_limits<double>::infinity();
  a.omega_minus = modal.omega_minus;
  a.omega_plus = modal.omega_plus;
  a.z0 = z0;
  return a;
}

ComplexPair asymptotic_state(const AsymptoticSolution& a, double t) {
  const double e2 = a.epsilon * a.epsilon;
  const double i1 = e2 * a.i0[0];
  const double i2 = e2 * a.i0[1];
  const double shift1 = a.a_matrix[0][0] * i1 + a.a_matrix[0][1] * i2;
  const double shift2 = a.a_matrix[1][0] * i1 + a.a_matrix[1][1] * i2;
  const std::complex<double> rot1 =
      std::polar(1.0, -(a.omega_minus + shift1) * t);
  const std::complex<double> rot2 =
      std::polar(1.0, -(a.omega_plus + shift2) * t);
  return {a.z0[0] * rot1, a.z0[1] * rot2};
}

RemainderReport verify_remainder(const OscillatorSystem& sys,
                                 const ModalData& modal, const NormalForm& nf,
                                 std::array<double, 2> q0,
                                 std::array<double, 2> p0, double t_end) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ConfigError("t_end must be positive and finite");
  }
  // The smallness precondition and the asymptotic data are phrased in terms
  // of the complex initial datum itself; only the trajectory is expressed in
  // the normal-form coordinates below.
  const ComplexPair z0 = to_complex_coords(modal, q0, p0);

  const double m0 = std::abs(z0[0]);
  const double m1 = std::abs(z0[1]);
  const double eps = std::max(m0, m1);
  if (std::min(m0, m1) == 0.0) {
    throw PreconditionFail("initial point has a vanishing component");
  }
  const double eps_max =
      nf.s_star > 0.0 ? 2.0 / (9.0 * std::sqrt(3.0 * nf.s_star))
                      : std::numeric_limits<double>::infinity();
  if (eps > eps_max) {
    throw PreconditionFail("amplitude " + std::to_string(eps) +
                           " exceeds the bound threshold " +
                           std::to_string(eps_max));
  }

  RemainderReport rep;
  rep.asymptotic = build_asymptotic(modal, nf, z0);
  const AsymptoticSolution& a = rep.asymptotic;

  rep.horizon = std::min(t_end, a.t_star / (eps * eps * eps * eps));
  rep.norm_bound = 7.0 / (2.0 * std::numbers::sqrt2);

  const double dt_wave = (2.0 * std::numbers::pi / modal.omega_plus) / 256.0;
  const double dt = std::min(rep.horizon / 256.0, dt_wave);
  const std::int64_t n_internal =
      std::max<std::int64_t>(std::llround(rep.horizon / dt), 32);
  const int stride = static_cast<int>(std::max<std::int64_t>(n_internal / 32, 1));

  const Trajectory traj =
      integrate_full(sys, q0, p0, rep.horizon, dt, stride);

  const double a_norm = matrix_inf_norm(a.a_matrix);
  const double e5 = std::pow(eps, 5);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& st = traj.states[i];
    const double t = traj.times[i];
    const ComplexPair z_orig =
        to_complex_coords(modal, {st[0], st[1]}, {st[2], st[3]});
    const ComplexPair z = flow_generating(nf, z_orig, -1.0);
    const double norm_z = std::max(std::abs(z[0]), std::abs(z[1]));
    rep.max_norm_ratio = std::max(rep.max_norm_ratio, norm_z / eps);

    const ComplexPair approx = asymptotic_state(a, t);
    const double residual = std::max(std::abs(z[0] - approx[0]),
                                     std::abs(z[1] - approx[1]));
    rep.max_residual = std::max(rep.max_residual, residual);
    const double bound =
        e5 * (eps * eps * a_norm * t + 1.0 / a.xi) * a.r_star * t;
    if (bound > 0.0) {
      rep.max_residual_over_bound =
          std::max(rep.max_residual_over_bound, residual / bound);
    }
    ++rep.checks;
  }
  rep.norm_ok = rep.max_norm_ratio <= rep.norm_bound;
  rep.residual_ok = rep.max_residual_over_bound <= 1.0;
  return rep;
}

}  // namespace bnf
