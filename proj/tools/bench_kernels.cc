// Benchmarks the data-parallel kernels against their serial reference and
// checks that both produce bitwise-identical results.

#include <algorithm>
#include <chrono>
#include <iostream>

#include "bnf/bandgap.hpp"
#include "bnf/parallel.hpp"

namespace {

template <class F>
double time_ms(F&& fn, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

bool samples_identical(const std::vector<bnf::BoundarySample>& a,
                       const std::vector<bnf::BoundarySample>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    // Exact equality on purpose: the kernels must agree bit for bit.
    if (x.s != y.s || x.k.k1 != y.k.k1 || x.k.k2 != y.k.k2 ||
        x.omega_minus != y.omega_minus || x.omega_plus != y.omega_plus ||
        x.omega_minus_nl != y.omega_minus_nl ||
        x.omega_plus_nl != y.omega_plus_nl || x.threshold != y.threshold ||
        x.sigma != y.sigma || x.excluded != y.excluded) {
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  bnf::HoneycombParams p;
  p.m_tilde = 0.09;
  p.k_tilde = 8.0;
  p.n3 = -1e4;
  const auto policy =
      bnf::AmplitudePolicy::fixed_at(bnf::admissible_amplitudes_at_x(p));

  std::cout << "threads available: " << bnf::max_threads() << "\n\n";

  constexpr int kPerEdge = 4096;
  bnf::BoundaryAnalysis serial, parallel;
  const double t_serial = time_ms(
      [&] {
        serial = bnf::analyze_boundary(p, policy, kPerEdge, 1.0,
                                       bnf::Execution::serial);
      },
      3);
  const double t_parallel = time_ms(
      [&] {
        parallel = bnf::analyze_boundary(p, policy, kPerEdge, 1.0,
                                         bnf::Execution::parallel);
      },
      3);
  const bool same = samples_identical(serial.samples, parallel.samples) &&
                    serial.report.w_nonlinear == parallel.report.w_nonlinear &&
                    serial.report.w_linear == parallel.report.w_linear;
  std::cout << "boundary analysis (" << 3 * kPerEdge << " samples)\n"
            << "  serial:   " << t_serial << " ms\n"
            << "  parallel: " << t_parallel << " ms  (speedup "
            << t_serial / t_parallel << "x)\n"
            << "  bitwise identical: " << (same ? "yes" : "NO") << "\n\n";

  const bnf::Rect rect{0.05, 0.3, 1.0, 20.0};
  std::vector<bnf::SweepCell> sweep_serial, sweep_parallel;
  const double s_serial = time_ms(
      [&] {
        sweep_serial = bnf::bandgap_sweep(rect, {8, 8}, -1e4, 256,
                                          bnf::Execution::serial);
      },
      1);
  const double s_parallel = time_ms(
      [&] {
        sweep_parallel = bnf::bandgap_sweep(rect, {8, 8}, -1e4, 256,
                                            bnf::Execution::parallel);
      },
      1);
  bool sweep_same = sweep_serial.size() == sweep_parallel.size();
  for (std::size_t i = 0; sweep_same && i < sweep_serial.size(); ++i) {
    sweep_same = sweep_serial[i].failed == sweep_parallel[i].failed &&
                 sweep_serial[i].report.b_per == sweep_parallel[i].report.b_per;
  }
  std::cout << "bandgap sweep (8x8 cells, 256 per edge)\n"
            << "  serial:   " << s_serial << " ms\n"
            << "  parallel: " << s_parallel << " ms  (speedup "
            << s_serial / s_parallel << "x)\n"
            << "  bitwise identical: " << (sweep_same ? "yes" : "NO") << "\n";

  return same && sweep_same ? 0 : 1;
}
