#include "bnf/brillouin.hpp"

#include <cmath>

namespace bnf::brillouin {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kSqrt3 = std::sqrt(3.0);

const WaveNumbers kGamma{0.0, 0.0};
const WaveNumbers kX{4.0 * kPi / 3.0, 0.0};
const WaveNumbers kM{kPi, kPi / kSqrt3};

double edge_length(const WaveNumbers& a, const WaveNumbers& b) {
  return std::hypot(b.k1 - a.k1, b.k2 - a.k2);
}

const double kL1 = edge_length(kGamma, kX);
const double kL2 = edge_length(kX, kM);
const double kL3 = edge_length(kM, kGamma);
const double kLTotal = kL1 + kL2 + kL3;

WaveNumbers lerp(const WaveNumbers& a, const WaveNumbers& b, double t) {
  return {a.k1 + (b.k1 - a.k1) * t, a.k2 + (b.k2 - a.k2) * t};
}
}  // namespace

WaveNumbers gamma_point() { return kGamma; }
WaveNumbers x_point() { return kX; }
WaveNumbers m_point() { return kM; }

double s_of_x() { return kL1 / kLTotal; }
double s_of_m() { return (kL1 + kL2) / kLTotal; }
double boundary_length() { return kLTotal; }

WaveNumbers boundary_point(double s) {
  s -= std::floor(s);
  const double d = s * kLTotal;
  if (d <= kL1) return lerp(kGamma, kX, d / kL1);
  if (d <= kL1 + kL2) return lerp(kX, kM, (d - kL1) / kL2);
  return lerp(kM, kGamma, (d - kL1 - kL2) / kL3);
}

double circular_distance(double a, double b) {
  double d = std::fabs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

std::vector<double> boundary_samples(int per_edge) {
  const double s_x = s_of_x();
  const double s_m = s_of_m();
  const double starts[3] = {0.0, s_x, s_m};
  const double ends[3] = {s_x, s_m, 1.0};
  std::vector<double> ss;
  ss.reserve(3 * static_cast<std::size_t>(per_edge));
  for (int e = 0; e < 3; ++e) {
    for (int j = 0; j < per_edge; ++j) {
      ss.push_back(starts[e] + (ends[e] - starts[e]) * j / per_edge);
    }
  }
  return ss;
}

}  // namespace bnf::brillouin
