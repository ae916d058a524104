#include "bnf/system.hpp"

#include <cmath>

#include "bnf/errors.hpp"

namespace bnf {

namespace {

// sin(x)/x with a series branch across the removable singularity.
double sinc(double x) {
  if (std::fabs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

const double kSqrt3 = std::sqrt(3.0);

struct CharPoly {
  double a;  // det M
  double b;  // mixed coefficient
  double c;  // det K
};

CharPoly char_poly(const OscillatorSystem& sys) {
  const Mat2& m = sys.mass;
  const Mat2& k = sys.stiffness;
  const double a = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double b = k[0][0] * m[1][1] + k[1][1] * m[0][0] -
                   k[0][1] * m[1][0] - k[1][0] * m[0][1];
  const double c = k[0][0] * k[1][1] - k[0][1] * k[1][0];
  return {a, b, c};
}

// Roots of a*l^2 - b*l + c = 0 with the numerically robust small-root form.
std::pair<double, double> eigenvalues(const CharPoly& cp) {
  const double disc = std::max(cp.b * cp.b - 4.0 * cp.a * cp.c, 0.0);
  const double lp = (cp.b + std::sqrt(disc)) / (2.0 * cp.a);
  const double lm = lp > 0.0 ? cp.c / (cp.a * lp) : 0.0;
  return {lm, lp};
}

}  // namespace

double honeycomb_mass(const WaveNumbers& k) {
  return (kSqrt3 / 2.0) * sinc(k.k1 / 2.0) * sinc((k.k1 + kSqrt3 * k.k2) / 4.0);
}

double honeycomb_stiffness(const WaveNumbers& k, const HoneycombParams& p) {
  const double k1 = k.k1, k2 = k.k2;
  const double poly = k1 * k1 * k1 * k1 +
                      2.0 * k1 * k1 * k2 * k2 * (p.d12 + 2.0 * p.d66) +
                      k2 * k2 * k2 * k2 * p.d22;
  return honeycomb_mass(k) * poly;
}

OscillatorSystem build_honeycomb(const WaveNumbers& k,
                                 const HoneycombParams& p) {
  OscillatorSystem sys;
  const double mh = honeycomb_mass(k);
  sys.mass = {{{mh + p.m_tilde, p.m_tilde}, {p.m_tilde, p.m_tilde}}};
  sys.stiffness = {{{honeycomb_stiffness(k, p), 0.0}, {0.0, p.k_tilde}}};
  sys.m3 = p.m3;
  sys.n3 = p.n3;
  return sys;
}

ModalData modal_decomposition(const OscillatorSystem& sys) {
  const CharPoly cp = char_poly(sys);
  const auto [lm, lp] = eigenvalues(cp);
  if (lm <= 0.0) throw ZeroFrequency("acoustic eigenvalue is nonpositive");
  const double wp = std::sqrt(lp);
  const double wm = std::sqrt(lm);
  if (wp - wm < 1e-10 * wp) {
    throw RepeatedEigenvalue("modal frequencies coincide");
  }

  const Mat2& m = sys.mass;
  const Mat2& k = sys.stiffness;
  auto eigenvector = [&](double lam, int fix_idx) {
    const double a00 = k[0][0] - lam * m[0][0];
    const double a01 = k[0][1] - lam * m[0][1];
    const double a10 = k[1][0] - lam * m[1][0];
    const double a11 = k[1][1] - lam * m[1][1];
    std::array<double, 2> v{};
    // Null vector from the better-conditioned row of K - lam*M.
    if (std::fabs(a00) + std::fabs(a01) >= std::fabs(a10) + std::fabs(a11)) {
      v = {-a01, a00};
    } else {
      v = {-a11, a10};
    }
    const double q = v[0] * (m[0][0] * v[0] + m[0][1] * v[1]) +
                     v[1] * (m[1][0] * v[0] + m[1][1] * v[1]);
    const double norm = std::sqrt(q);
    v[0] /= norm;
    v[1] /= norm;
    if (v[fix_idx] < 0.0 || (v[fix_idx] == 0.0 && v[1 - fix_idx] < 0.0)) {
      v[0] = -v[0];
      v[1] = -v[1];
    }
    return v;
  };

  ModalData md;
  md.omega_minus = wm;
  md.omega_plus = wp;
  md.phi_minus = eigenvector(lm, 0);
  md.phi_plus = eigenvector(lp, 1);
  return md;
}

std::pair<double, double> modal_frequencies(const OscillatorSystem& sys) {
  const auto [lm, lp] = eigenvalues(char_poly(sys));
  return {std::sqrt(std::max(lm, 0.0)), std::sqrt(std::max(lp, 0.0))};
}

std::pair<double, double> honeycomb_frequencies(const HoneycombParams& p,
                                                const WaveNumbers& k) {
  return modal_frequencies(build_honeycomb(k, p));
}

ModalData honeycomb_modal(const HoneycombParams& p, const WaveNumbers& k) {
  return modal_decomposition(build_honeycomb(k, p));
}

}  // namespace bnf
