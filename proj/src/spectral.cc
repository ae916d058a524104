#include "bnf/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <string>

#include "bnf/errors.hpp"

namespace bnf {

namespace {

// FFTW plan creation/destruction is not thread safe.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// Four-term Blackman-Harris window: sidelobes near -92 dB keep leakage from
// masquerading as a secondary line, while the main lobe stays sharply curved
// at its top so residual interference cannot displace the peak location.
// (A flat-top window would be amplitude-accurate but its flat summit lets
// even -90 dB interference shift the magnitude maximum by a third of a bin.)
std::vector<double> spectral_window(std::size_t n) {
  constexpr double a0 = 0.35875, a1 = 0.48829, a2 = 0.14128, a3 = 0.01168;
  std::vector<double> w(n);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = step * static_cast<double>(i);
    w[i] = a0 - a1 * std::cos(x) + a2 * std::cos(2.0 * x) -
           a3 * std::cos(3.0 * x);
  }
  return w;
}

// Windowed discrete-time Fourier magnitude at angular frequency omega.
double dtft_magnitude(const std::vector<double>& x,
                      const std::vector<double>& w, double dt, double omega) {
  std::complex<double> acc{0.0, 0.0};
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    acc += w[i] * x[i] *
           std::polar(1.0, -omega * dt * static_cast<double>(i));
  }
  return std::abs(acc);
}

// Single-record estimate: windowed FFT peak, then golden-section
// maximization of the windowed transform magnitude over the peak's main
// lobe.
double refine_record(const std::vector<double>& x, double dt) {
  std::size_t n2 = 1;
  while (n2 * 2 <= x.size()) n2 *= 2;
  if (n2 < 64) {
    throw SpectralAmbiguity("record too short for a frequency estimate");
  }

  const std::vector<double> w = spectral_window(n2);
  std::vector<double> in(n2);
  for (std::size_t i = 0; i < n2; ++i) in[i] = w[i] * x[i];

  std::vector<std::complex<double>> out(n2 / 2 + 1);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_plan plan = fftw_plan_dft_r2c_1d(
        static_cast<int>(n2), in.data(),
        reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }

  std::vector<double> mag(out.size());
  for (std::size_t k = 0; k < out.size(); ++k) mag[k] = std::abs(out[k]);

  // Ignore the DC skirt and the Nyquist bin when hunting for the line.
  constexpr std::size_t kGuard = 8;
  std::size_t peak = kGuard;
  for (std::size_t k = kGuard; k + 1 < mag.size(); ++k) {
    if (mag[k] > mag[peak]) peak = k;
  }
  if (mag[peak] <= 0.0) {
    throw SpectralAmbiguity("spectrum has no peak above zero");
  }

  // The peak must dominate everything outside its own main lobe.
  double side = 0.0;
  for (std::size_t k = kGuard; k + 1 < mag.size(); ++k) {
    if (k + kGuard >= peak && k <= peak + kGuard) continue;
    side = std::max(side, mag[k]);
  }
  if (side > 0.0 && mag[peak] / side < 10.0) {
    throw SpectralAmbiguity(
        "no isolated dominant line: peak-to-sidelobe ratio below 10");
  }

  const double bin = 2.0 * std::numbers::pi / (static_cast<double>(n2) * dt);
  const double omega0 = bin * static_cast<double>(peak);

  // Golden-section maximization of the continuous windowed transform over
  // the same n2-sample prefix.  With a curved summit the argmax bin sits
  // within one bin of the line; +-2 bins brackets it while staying inside
  // the (unimodal) main lobe, which spans +-4 bins.
  double lo = omega0 - 2.0 * bin, hi = omega0 + 2.0 * bin;
  constexpr double kInvPhi = 0.61803398874989484820;
  double m1 = hi - kInvPhi * (hi - lo);
  double m2 = lo + kInvPhi * (hi - lo);
  double f1 = dtft_magnitude(x, w, dt, m1);
  double f2 = dtft_magnitude(x, w, dt, m2);
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, omega0);
       ++it) {
    if (f1 < f2) {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + kInvPhi * (hi - lo);
      f2 = dtft_magnitude(x, w, dt, m2);
    } else {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - kInvPhi * (hi - lo);
      f1 = dtft_magnitude(x, w, dt, m1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double dominant_frequency(const std::vector<double>& samples, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("sample spacing must be positive and finite");
  }
  const double full = refine_record(samples, dt);
  const std::vector<double> head(samples.begin(),
                                 samples.begin() + samples.size() / 2);
  const double half = refine_record(head, dt);
  if (std::abs(full - half) > 1e-3 * std::max(std::abs(full), 1e-30)) {
    throw SpectralAmbiguity(
        "frequency estimate unstable between full and half record: " +
        std::to_string(full) + " vs " + std::to_string(half));
  }
  return full;
}

std::pair<double, double> measure_frequencies(const Trajectory& traj) {
  if (traj.times.size() < 3 || traj.times.size() != traj.states.size()) {
    throw ConfigError("trajectory too short or inconsistent");
  }
  const double dt = traj.times[1] - traj.times[0];
  if (!(dt > 0.0)) {
    throw ConfigError("trajectory time grid must be increasing");
  }
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    const double step = traj.times[i] - traj.times[i - 1];
    if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
      throw ConfigError("trajectory time grid is not uniform");
    }
  }
  std::vector<double> q1(traj.states.size()), q2(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    q1[i] = traj.states[i][0];
    q2[i] = traj.states[i][1];
  }
  return {dominant_frequency(q1, dt), dominant_frequency(q2, dt)};
}

}  // namespace bnf
