#include "bnf/normal_form.hpp"

#include <cmath>
#include <limits>

#include "bnf/errors.hpp"

namespace bnf {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

bool is_resonant_key(const MultiIndexPair& key) {
  const auto& rk = resonant_keys();
  return key == rk[0] || key == rk[1];
}

}  // namespace

QuarticCoefficients quartic_coefficients(const ModalData& modal, double m3,
                                         double n3) {
  QuarticCoefficients f;
  for (int i = 0; i <= 4; ++i) {
    const int j = 4 - i;
    const double c = 6.0 / (factorial(i) * factorial(j));
    const double plate =
        std::pow(modal.phi_minus[0], i) * std::pow(modal.phi_plus[0], j) * m3;
    const double resonator =
        std::pow(modal.phi_minus[1], i) * std::pow(modal.phi_plus[1], j) * n3;
    f[{i, j}] = c * (plate + resonator);
  }
  return f;
}

QuarticForm g_coefficients(const QuarticCoefficients& f, double omega_minus,
                           double omega_plus) {
  QuarticForm g;
  for (const auto& key : degree4_keys()) {
    const int m = key.alpha[0] + key.beta[0];
    const int n = key.alpha[1] + key.beta[1];
    const double denom = 4.0 * std::pow(omega_minus, m / 2.0) *
                         std::pow(omega_plus, n / 2.0);
    g[key] = f.at({m, n}) * binomial(m, key.alpha[0]) *
             binomial(n, key.alpha[1]) / denom;
  }
  return g;
}

double small_divisor(std::pair<double, double> omega,
                     const MultiIndexPair& key) {
  return omega.first * (key.alpha[0] - key.beta[0]) +
         omega.second * (key.alpha[1] - key.beta[1]);
}

double gamma_floor(std::pair<double, double> omega, bool resonant) {
  const double wm = omega.first;
  const double wp = omega.second;
  const double base = std::min(wm, wp - wm);
  if (resonant) return base;
  return std::min(base, std::fabs(3.0 * wm - wp));
}

QuarticForm solve_homological(const QuarticForm& g,
                              std::pair<double, double> omega, bool resonant) {
  if (!resonant &&
      std::fabs(3.0 * omega.first - omega.second) < 1e-12 * omega.second) {
    throw ExactResonance("3:1 divisor vanishes; use the resonant equation");
  }
  QuarticForm s;
  for (const auto& [key, c] : g) {
    if (key.diagonal()) continue;
    if (resonant && is_resonant_key(key)) continue;
    s[key] = c / small_divisor(omega, key);
  }
  return s;
}

QuarticForm normal_form_kept_part(const QuarticForm& g, bool resonant) {
  QuarticForm h4;
  for (const auto& [key, c] : g) {
    if (key.diagonal() || (resonant && is_resonant_key(key))) h4[key] = c;
  }
  return h4;
}

double remainder_constant(const QuarticForm& s, const QuarticForm& g,
                          const QuarticForm& h4) {
  const PolyNorms sn = polynomial_norms(s);
  const PolyNorms hn = polynomial_norms(h4);
  QuarticForm ghat;
  for (const auto& [key, c] : g) {
    if (!h4.contains(key)) ghat[key] = c;
  }
  const PolyNorms gn = polynomial_norms(ghat);
  return sn.p1 * (2.0 * hn.p1 + gn.p1) + sn.p2 * (2.0 * hn.p2 + gn.p2);
}

Amplitudes admissible_amplitudes(const ModalData& modal, double s_star) {
  if (s_star <= 0.0 || !std::isfinite(s_star)) return {0.0, 0.0};
  return {std::sqrt(2.0 / (27.0 * modal.omega_minus * s_star)),
          std::sqrt(2.0 / (27.0 * modal.omega_plus * s_star))};
}

std::pair<double, double> nonlinear_frequencies(const ModalData& modal,
                                                double m3, double n3,
                                                double i1, double i2) {
  const QuarticCoefficients f = quartic_coefficients(modal, m3, n3);
  const QuarticForm g =
      g_coefficients(f, modal.omega_minus, modal.omega_plus);
  const double g2020 = g.at({{2, 0}, {2, 0}});
  const double g1111 = g.at({{1, 1}, {1, 1}});
  const double g0202 = g.at({{0, 2}, {0, 2}});
  return {modal.omega_minus + 2.0 * g2020 * i1 + g1111 * i2,
          modal.omega_plus + 2.0 * g0202 * i2 + g1111 * i1};
}

double resonant_coefficient(const QuarticCoefficients& f,
                            std::pair<double, double> omega) {
  return f.at({3, 1}) /
         (4.0 * std::pow(omega.first, 1.5) * std::sqrt(omega.second));
}

NormalForm build_normal_form(const ModalData& modal, double m3, double n3,
                             bool resonant) {
  NormalForm nf;
  nf.omega_minus = modal.omega_minus;
  nf.omega_plus = modal.omega_plus;
  nf.sigma = modal.omega_plus - 3.0 * modal.omega_minus;
  nf.resonant = resonant;
  nf.gamma = gamma_floor({modal.omega_minus, modal.omega_plus}, resonant);

  const QuarticCoefficients f = quartic_coefficients(modal, m3, n3);
  const QuarticForm g =
      g_coefficients(f, modal.omega_minus, modal.omega_plus);
  nf.h4_20_20 = g.at({{2, 0}, {2, 0}});
  nf.h4_11_11 = g.at({{1, 1}, {1, 1}});
  nf.h4_02_02 = g.at({{0, 2}, {0, 2}});
  nf.f31_res =
      resonant ? resonant_coefficient(f, {modal.omega_minus, modal.omega_plus})
               : 0.0;

  nf.s = solve_homological(g, {modal.omega_minus, modal.omega_plus}, resonant);
  nf.s_star = polynomial_norms(nf.s).p_star;

  const QuarticForm h4 = normal_form_kept_part(g, resonant);
  nf.r_dagger = remainder_constant(nf.s, g, h4);
  return nf;
}

}  // namespace bnf
