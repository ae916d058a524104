#include "bnf/bandgap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bnf/brillouin.hpp"
#include "bnf/errors.hpp"
#include "bnf/normal_form.hpp"
#include "bnf/resonance.hpp"
#include "bnf/system.hpp"

namespace bnf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Admissible-amplitude threshold 2/(3 sqrt(3 S*)).
double eps_threshold(double s_star) {
  if (s_star <= 0.0) return kInf;
  return 2.0 / (3.0 * std::sqrt(3.0 * s_star));
}

// Optical frequency and mass-normalized optical eigenvector, usable where
// the acoustic eigenvalue vanishes (zone center) and modal_decomposition
// would refuse.
std::pair<double, std::array<double, 2>> optical_mode(
    const OscillatorSystem& sys) {
  const Mat2& m = sys.mass;
  const Mat2& k = sys.stiffness;
  const double a = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double b = k[0][0] * m[1][1] + k[1][1] * m[0][0] -
                   k[0][1] * m[1][0] - k[1][0] * m[0][1];
  const double c = k[0][0] * k[1][1] - k[0][1] * k[1][0];
  const double lp =
      (b + std::sqrt(std::max(b * b - 4.0 * a * c, 0.0))) / (2.0 * a);
  const double a00 = k[0][0] - lp * m[0][0];
  const double a01 = k[0][1] - lp * m[0][1];
  const double a10 = k[1][0] - lp * m[1][0];
  const double a11 = k[1][1] - lp * m[1][1];
  std::array<double, 2> v{};
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
  if (v[1] < 0.0) {
    v[0] = -v[0];
    v[1] = -v[1];
  }
  return {std::sqrt(lp), v};
}

BoundarySample evaluate_sample(const HoneycombParams& p,
                               const AmplitudePolicy& policy, double s) {
  BoundarySample r;
  r.s = s;
  r.k = brillouin::boundary_point(s);
  const OscillatorSystem sys = build_honeycomb(r.k, p);
  const auto [wm, wp] = modal_frequencies(sys);

  if (wm < 1e-8) {
    // Zone center: the acoustic branch vanishes, no 3:1 root can occur, and
    // only the optical self-interaction survives in the frequency shift.
    const auto [wpg, vp] = optical_mode(sys);
    const double f04 =
        0.25 * (std::pow(vp[1], 4.0) * p.n3 + std::pow(vp[0], 4.0) * p.m3);
    const double g0202 = 3.0 * f04 / (2.0 * wpg * wpg);
    double i2 = 0.0;
    if (policy.fixed) {
      const double ap = policy.amplitudes.a_plus;
      i2 = 0.5 * wpg * (ap * ap);
    } else {
      // Per-k admissible action from the optical-only coefficient norm.
      const double s2 = 2.25 * std::fabs(f04) / (wpg * wpg * wpg);
      if (s2 > 0.0) i2 = 1.0 / (27.0 * s2);
    }
    r.omega_minus = wm;
    r.omega_plus = wpg;
    r.omega_minus_nl = wm;
    r.omega_plus_nl = wpg + 2.0 * g0202 * i2;
    r.threshold = kInf;
    r.sigma = wpg;
    return r;
  }

  const ModalData md = modal_decomposition(sys);
  const QuarticCoefficients f = quartic_coefficients(md, p.m3, p.n3);
  const QuarticForm g = g_coefficients(f, md.omega_minus, md.omega_plus);
  double s1 = 0.0, s2 = 0.0;
  for (const auto& [key, c] : g) {
    if (key.diagonal()) continue;
    const double w =
        std::fabs(c) /
        std::fabs(small_divisor({md.omega_minus, md.omega_plus}, key));
    s1 += key.alpha[0] * w;
    s2 += key.alpha[1] * w;
  }
  const double s_star = std::max(s1, s2);
  const double sigma = md.omega_plus - 3.0 * md.omega_minus;
  r.threshold = std::fabs(sigma) < 1e-12 * md.omega_plus
                    ? 0.0
                    : eps_threshold(s_star);

  const double g2020 = g.at({{2, 0}, {2, 0}});
  const double g1111 = g.at({{1, 1}, {1, 1}});
  const double g0202 = g.at({{0, 2}, {0, 2}});
  double i1 = 0.0, i2 = 0.0;
  if (policy.fixed) {
    const double am = policy.amplitudes.a_minus;
    const double ap = policy.amplitudes.a_plus;
    i1 = 0.5 * md.omega_minus * (am * am);
    i2 = 0.5 * md.omega_plus * (ap * ap);
  } else {
    const Amplitudes a = admissible_amplitudes(md, s_star);
    i1 = 0.5 * md.omega_minus * (a.a_minus * a.a_minus);
    i2 = 0.5 * md.omega_plus * (a.a_plus * a.a_plus);
  }
  r.omega_minus = md.omega_minus;
  r.omega_plus = md.omega_plus;
  r.omega_minus_nl = md.omega_minus + 2.0 * g2020 * i1 + g1111 * i2;
  r.omega_plus_nl = md.omega_plus + 2.0 * g0202 * i2 + g1111 * i1;
  r.sigma = sigma;
  return r;
}

struct LinearExtreme {
  double s = 0.0;
  double value = 0.0;
};

// Golden-section refinement of a sampled extreme over the circular bracket
// formed by the neighboring samples. The result never loses to the seed
// sample, so vertex extremizers keep their sampled values exactly.
template <class F>
LinearExtreme refine_extreme(F&& eval, const std::vector<double>& ss,
                             std::size_t idx, double seed_value,
                             bool maximize) {
  const std::size_t n = ss.size();
  const double s0 = ss[idx];
  double a = ss[(idx + n - 1) % n];
  double b = ss[(idx + 1) % n];
  if (a > s0) a -= 1.0;
  if (b < s0) b += 1.0;

  LinearExtreme best{s0, seed_value};
  auto consider = [&](double s, double v) {
    if (maximize ? v > best.value : v < best.value) best = {s, v};
  };
  constexpr double kInvPhi = 0.61803398874989484820;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  consider(x1, f1);
  consider(x2, f2);
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (maximize ? f1 > f2 : f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = eval(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = eval(x2);
      consider(x2, f2);
    }
  }
  best.s -= std::floor(best.s);
  return best;
}

}  // namespace

Amplitudes admissible_amplitudes_at_x(const HoneycombParams& p) {
  const ModalData md = honeycomb_modal(p, brillouin::x_point());
  const NormalForm nf = build_normal_form(md, p.m3, p.n3, false);
  return admissible_amplitudes(md, nf.s_star);
}

BoundaryAnalysis analyze_boundary(const HoneycombParams& p,
                                  const AmplitudePolicy& policy, int per_edge,
                                  double exclusion_scale, Execution ex) {
  if (per_edge < 3) {
    throw ConfigError("boundary analysis needs at least 3 samples per edge");
  }
  const BoundaryCrossings crossings = boundary_crossings(p);
  const std::vector<double> ss = brillouin::boundary_samples(per_edge);
  const std::size_t n = ss.size();

  std::vector<BoundarySample> rows(n);
  parallel_for(n, ex,
               [&](std::size_t i) { rows[i] = evaluate_sample(p, policy, ss[i]); });

  const auto sdist = brillouin::circular_distance;

  // Off-resonance median of the amplitude threshold.
  std::vector<double> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool far = true;
    for (const auto& cr : crossings.crossings) {
      if (sdist(rows[i].s, cr.s) <= 0.01) {
        far = false;
        break;
      }
    }
    if (far && std::isfinite(rows[i].threshold)) {
      pool.push_back(rows[i].threshold);
    }
  }
  std::sort(pool.begin(), pool.end());
  const double med = pool.empty() ? kInf : pool[pool.size() / 2];

  // Exclusion interval around each crossing: at least the bracket of its
  // neighboring samples, widened over every contiguous run of samples whose
  // threshold falls below 10% of the off-resonance median.
  const long long nn = static_cast<long long>(n);
  auto mod = [nn](long long i) {
    return static_cast<std::size_t>(((i % nn) + nn) % nn);
  };
  std::vector<SRange> intervals;
  for (const auto& cr : crossings.crossings) {
    const double c = cr.s;
    long long i0 = static_cast<long long>(
        mod(std::lower_bound(ss.begin(), ss.end(), c) - ss.begin()));
    if (sdist(ss[mod(i0 - 1)], c) < sdist(ss[mod(i0)], c)) {
      i0 = static_cast<long long>(mod(i0 - 1));
    }
    double lo = c - sdist(ss[mod(i0 - 1)], c);
    double hi = c + sdist(ss[mod(i0 + 1)], c);
    for (long long i = i0; rows[mod(i)].threshold < 0.1 * med;) {
      lo = std::min(lo, c - sdist(ss[mod(i)], c) - 1e-12);
      if (--i < i0 - nn) break;
    }
    for (long long i = i0; rows[mod(i)].threshold < 0.1 * med;) {
      hi = std::max(hi, c + sdist(ss[mod(i)], c) + 1e-12);
      if (++i > i0 + nn) break;
    }
    lo = c - exclusion_scale * (c - lo);
    hi = c + exclusion_scale * (hi - c);
    intervals.push_back({lo, hi});
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const SRange& a, const SRange& b) {
              return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
            });
  std::vector<SRange> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  auto excluded = [&merged](double s) {
    for (const auto& r : merged) {
      if ((r.lo <= s && s <= r.hi) || (r.lo <= s - 1.0 && s - 1.0 <= r.hi) ||
          (r.lo <= s + 1.0 && s + 1.0 <= r.hi)) {
        return true;
      }
    }
    return false;
  };

  bool all_excluded = true;
  for (auto& row : rows) {
    row.excluded = excluded(row.s);
    all_excluded = all_excluded && row.excluded;
  }
  if (all_excluded) {
    throw AllExcluded("resonant exclusions cover the whole boundary");
  }

  // Linear extremes over all samples, refined within the bracketing segment.
  std::size_t i_lmax = 0, i_lmin = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (rows[i].omega_minus > rows[i_lmax].omega_minus) i_lmax = i;
    if (rows[i].omega_plus < rows[i_lmin].omega_plus) i_lmin = i;
  }
  auto eval_wm = [&p](double s) {
    return honeycomb_frequencies(p, brillouin::boundary_point(s)).first;
  };
  auto eval_wp = [&p](double s) {
    return honeycomb_frequencies(p, brillouin::boundary_point(s)).second;
  };
  const LinearExtreme lin_max =
      refine_extreme(eval_wm, ss, i_lmax, rows[i_lmax].omega_minus, true);
  const LinearExtreme lin_min =
      refine_extreme(eval_wp, ss, i_lmin, rows[i_lmin].omega_plus, false);

  // Nonlinear extremes over the non-excluded samples.
  std::size_t i_nmax = n, i_nmin = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].excluded) continue;
    if (i_nmax == n || rows[i].omega_minus_nl > rows[i_nmax].omega_minus_nl) {
      i_nmax = i;
    }
    if (i_nmin == n || rows[i].omega_plus_nl < rows[i_nmin].omega_plus_nl) {
      i_nmin = i;
    }
  }

  // Effective curves: linear branch inside exclusions, nonlinear outside.
  auto eff_max_val = [&rows](std::size_t i) {
    return rows[i].excluded ? rows[i].omega_minus : rows[i].omega_minus_nl;
  };
  auto eff_min_val = [&rows](std::size_t i) {
    return rows[i].excluded ? rows[i].omega_plus : rows[i].omega_plus_nl;
  };
  std::size_t i_emax = 0, i_emin = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (eff_max_val(i) > eff_max_val(i_emax)) i_emax = i;
    if (eff_min_val(i) < eff_min_val(i_emin)) i_emin = i;
  }

  BandgapReport rep;
  rep.w_linear = lin_min.value - lin_max.value;
  rep.w_nonlinear =
      rows[i_nmin].omega_plus_nl - rows[i_nmax].omega_minus_nl;
  rep.b_per = 100.0 * (rep.w_nonlinear / rep.w_linear - 1.0);
  rep.argmax_acoustic = rows[i_emax].k;
  rep.argmin_optical = rows[i_emin].k;
  rep.resonant_exclusions = merged;
  rep.s_argmax_acoustic = rows[i_emax].s;
  rep.s_argmin_optical = rows[i_emin].s;
  rep.s_linear_max = lin_max.s;
  rep.s_linear_min = lin_min.s;
  const double sx = brillouin::s_of_x();
  rep.good = sdist(rows[i_emax].s, sx) <= 5e-3 &&
             sdist(rows[i_emin].s, 0.0) <= 5e-3 && !excluded(sx);
  if (policy.fixed) rep.amplitudes = policy.amplitudes;

  BoundaryAnalysis out;
  out.report = std::move(rep);
  out.samples = std::move(rows);
  return out;
}

std::tuple<double, WaveNumbers, WaveNumbers> linear_bandgap(
    const HoneycombParams& p, int n_samples) {
  if (n_samples < 3) {
    throw ConfigError("linear_bandgap needs at least 3 samples per edge");
  }
  const std::vector<double> ss = brillouin::boundary_samples(n_samples);
  const std::size_t n = ss.size();
  std::vector<double> wm(n), wp(n);
  parallel_for(n, Execution::parallel, [&](std::size_t i) {
    const auto [a, b] = honeycomb_frequencies(p, brillouin::boundary_point(ss[i]));
    wm[i] = a;
    wp[i] = b;
  });
  std::size_t imax = 0, imin = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (wm[i] > wm[imax]) imax = i;
    if (wp[i] < wp[imin]) imin = i;
  }
  auto eval_wm = [&p](double s) {
    return honeycomb_frequencies(p, brillouin::boundary_point(s)).first;
  };
  auto eval_wp = [&p](double s) {
    return honeycomb_frequencies(p, brillouin::boundary_point(s)).second;
  };
  const LinearExtreme mx = refine_extreme(eval_wm, ss, imax, wm[imax], true);
  const LinearExtreme mn = refine_extreme(eval_wp, ss, imin, wp[imin], false);
  return {mn.value - mx.value, brillouin::boundary_point(mx.s),
          brillouin::boundary_point(mn.s)};
}

BandgapReport nonlinear_bandgap(const HoneycombParams& p,
                                const AmplitudePolicy& policy, int per_edge,
                                double exclusion_scale) {
  return analyze_boundary(p, policy, per_edge, exclusion_scale).report;
}

bool classify_parameters(const HoneycombParams& p) {
  const auto policy = AmplitudePolicy::fixed_at(admissible_amplitudes_at_x(p));
  return nonlinear_bandgap(p, policy).good;
}

std::vector<SweepCell> bandgap_sweep(const Rect& rect,
                                     std::pair<int, int> grid, double n3,
                                     int per_edge, Execution ex) {
  const int nx = grid.first;
  const int ny = grid.second;
  if (nx < 8 || ny < 8) {
    throw ConfigError("sweep grid must be at least 8x8");
  }
  std::vector<SweepCell> cells(static_cast<std::size_t>(nx) * ny);
  parallel_for(cells.size(), ex, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / ny;
    const int j = static_cast<int>(idx) % ny;
    SweepCell& cell = cells[idx];
    cell.m_tilde = rect.x0 + (rect.x1 - rect.x0) * i / (nx - 1);
    cell.k_tilde = rect.y0 + (rect.y1 - rect.y0) * j / (ny - 1);
    HoneycombParams cp;
    cp.m_tilde = cell.m_tilde;
    cp.k_tilde = cell.k_tilde;
    cp.n3 = n3;
    try {
      const auto policy =
          AmplitudePolicy::fixed_at(admissible_amplitudes_at_x(cp));
      cell.report = nonlinear_bandgap(cp, policy, per_edge);
    } catch (const Error&) {
      cell.failed = true;
    }
  });
  return cells;
}

}  // namespace bnf
