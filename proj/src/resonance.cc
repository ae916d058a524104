#include "bnf/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "bnf/brillouin.hpp"
#include "bnf/errors.hpp"
#include "bnf/system.hpp"

namespace bnf {

namespace {

constexpr int kBoundarySamples = 16384;
constexpr double kRootTol = 1e-11;      // |sigma| at reported boundary roots
constexpr double kClusterWidth = 1e-3;  // s-distance merged into one crossing
constexpr double kTangencyTol = 1e-9;

double sigma_on_boundary(const HoneycombParams& p, double s) {
  return detuning_at(p, brillouin::boundary_point(s));
}

// Bisection for sigma(s) = 0 on [lo, hi] with sigma(lo) = flo of known sign.
double bisect_boundary(const HoneycombParams& p, double lo, double hi,
                       double flo) {
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = sigma_on_boundary(p, mid);
    if (std::fabs(fm) <= kRootTol * 1e-3 || hi - lo < 1e-16) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct RawRoot {
  double s;
  double abs_sigma;
};

}  // namespace

double detuning(const ModalData& modal) {
  return modal.omega_plus - 3.0 * modal.omega_minus;
}

double detuning_at(const HoneycombParams& p, const WaveNumbers& k) {
  const auto [wm, wp] = honeycomb_frequencies(p, k);
  if (wm < 1e-8) return wp;  // acoustic branch vanishes at the zone center
  return wp - 3.0 * wm;
}

BoundaryCrossings boundary_crossings(const HoneycombParams& p) {
  const int n = kBoundarySamples;
  std::vector<double> sig(n);
  for (int i = 0; i < n; ++i) {
    sig[i] = sigma_on_boundary(p, static_cast<double>(i) / n);
  }

  std::vector<RawRoot> roots;
  auto add_root = [&](double s) {
    roots.push_back({s, std::fabs(sigma_on_boundary(p, s))});
  };

  for (int i = 0; i < n; ++i) {
    const double s0 = static_cast<double>(i) / n;
    const double s1 = static_cast<double>(i + 1) / n;
    const double f0 = sig[i];
    const double f1 = sig[(i + 1) % n];
    if (f0 == 0.0) {
      add_root(s0);
      continue;
    }
    if ((f0 < 0.0) != (f1 < 0.0)) {
      add_root(bisect_boundary(p, s0, s1, f0));
    }
  }

  // Tangency handling: a strict local minimum of |sigma| without an adjacent
  // sign change may hide a double root (or a sub-sample root pair). Refine
  // such minima by ternary search; a discovered sign flip yields a bracketed
  // pair, a minimum below the tolerance counts as one crossing.
  for (int i = 0; i < n; ++i) {
    const double am = std::fabs(sig[(i + n - 1) % n]);
    const double a0 = std::fabs(sig[i]);
    const double ap = std::fabs(sig[(i + 1) % n]);
    if (!(a0 < am && a0 < ap) || a0 >= 0.05) continue;
    const double sgn = sig[i];
    if ((sig[(i + n - 1) % n] < 0.0) != (sgn < 0.0)) continue;
    if ((sig[(i + 1) % n] < 0.0) != (sgn < 0.0)) continue;

    double lo = (static_cast<double>(i) - 1.0) / n;
    double hi = (static_cast<double>(i) + 1.0) / n;
    bool flipped = false;
    for (int it = 0; it < 200 && !flipped; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      const double f1 = sigma_on_boundary(p, m1);
      const double f2 = sigma_on_boundary(p, m2);
      if ((f1 < 0.0) != (sgn < 0.0) || (f2 < 0.0) != (sgn < 0.0)) {
        // Sub-sample sign dip: bracket both roots of the pair.
        const double fl = sigma_on_boundary(p, lo);
        const double probe = (f1 < 0.0) != (sgn < 0.0) ? m1 : m2;
        add_root(bisect_boundary(p, lo, probe, fl));
        add_root(
            bisect_boundary(p, probe, hi, sigma_on_boundary(p, probe)));
        flipped = true;
        break;
      }
      if (std::fabs(f1) < std::fabs(f2)) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    if (!flipped) {
      const double smin = 0.5 * (lo + hi);
      if (std::fabs(sigma_on_boundary(p, smin)) < kTangencyTol) {
        add_root(smin);
      }
    }
  }

  // Cluster roots closer than kClusterWidth (circularly); representative has
  // the smallest |sigma|, ties broken by smaller s.
  std::sort(roots.begin(), roots.end(),
            [](const RawRoot& a, const RawRoot& b) { return a.s < b.s; });
  std::vector<std::vector<RawRoot>> groups;
  for (const auto& r : roots) {
    if (!groups.empty() &&
        brillouin::circular_distance(groups.back().back().s, r.s) <
            kClusterWidth) {
      groups.back().push_back(r);
    } else {
      groups.push_back({r});
    }
  }
  if (groups.size() > 1 &&
      brillouin::circular_distance(groups.back().back().s,
                                   groups.front().front().s) < kClusterWidth) {
    auto& first = groups.front();
    first.insert(first.end(), groups.back().begin(), groups.back().end());
    groups.pop_back();
  }

  BoundaryCrossings out;
  for (const auto& g : groups) {
    const RawRoot& best = *std::min_element(
        g.begin(), g.end(), [](const RawRoot& a, const RawRoot& b) {
          if (a.abs_sigma != b.abs_sigma) return a.abs_sigma < b.abs_sigma;
          return a.s < b.s;
        });
    Crossing c;
    c.s = best.s;
    c.k = brillouin::boundary_point(best.s);
    c.sigma_residual = sigma_on_boundary(p, best.s);
    out.crossings.push_back(c);
  }
  std::sort(out.crossings.begin(), out.crossings.end(),
            [](const Crossing& a, const Crossing& b) { return a.s < b.s; });
  return out;
}

namespace {

double sigma_at_x(const HoneycombParams& base, double m_tilde,
                  double k_tilde) {
  HoneycombParams p = base;
  p.m_tilde = m_tilde;
  p.k_tilde = k_tilde;
  return detuning_at(p, brillouin::x_point());
}

// Root of sigma_X in k over [klo, khi] for fixed m, if a sign change exists.
std::optional<double> column_root(const HoneycombParams& base, double m,
                                  double klo, double khi, int scan) {
  double prev_k = klo;
  double prev_f = sigma_at_x(base, m, klo);
  for (int i = 1; i <= scan; ++i) {
    const double k = klo + (khi - klo) * i / scan;
    const double f = sigma_at_x(base, m, k);
    if (prev_f == 0.0) return prev_k;
    if ((prev_f < 0.0) != (f < 0.0)) {
      double lo = prev_k, hi = k, flo = prev_f;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = sigma_at_x(base, m, mid);
        if (std::fabs(fm) <= 1e-10 || hi - lo < 1e-15) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev_k = k;
    prev_f = f;
  }
  return std::nullopt;
}

}  // namespace

PlanarCurve trace_x_resonant_curve(const Rect& rect, double step) {
  HoneycombParams base;
  PlanarCurve curve;
  curve.closed = false;

  // Find the first column (smallest m_tilde) containing a root.
  const int init_cols = 64;
  double m = rect.x0;
  std::optional<double> k0;
  int col = 0;
  for (; col <= init_cols; ++col) {
    m = rect.x0 + (rect.x1 - rect.x0) * col / init_cols;
    k0 = column_root(base, m, rect.y0, rect.y1, 512);
    if (k0) break;
  }
  if (!k0) throw NoRootInRectangle("no 3:1 locus at X inside the rectangle");
  curve.points.push_back({m, *k0});

  double slope = 0.0;
  while (m < rect.x1) {
    const double dm = step / std::sqrt(1.0 + slope * slope);
    const double m_next = std::min(m + std::max(dm, 1e-9), rect.x1);
    const double k_pred = curve.points.back()[1] + slope * (m_next - m);
    const double half = std::max(0.5, 4.0 * std::fabs(slope) * (m_next - m));
    auto k_next =
        column_root(base, m_next, std::max(rect.y0, k_pred - half),
                    std::min(rect.y1, k_pred + half), 32);
    if (!k_next) {
      k_next = column_root(base, m_next, rect.y0, rect.y1, 512);
    }
    if (!k_next) break;  // curve leaves the rectangle
    slope = (*k_next - curve.points.back()[1]) / (m_next - m);
    curve.points.push_back({m_next, *k_next});
    m = m_next;
  }
  return curve;
}

namespace {

struct GridSpec {
  double x0, y0, dx, dy;
  int nx, ny;  // cell counts
  double x(int i) const { return x0 + dx * i; }
  double y(int j) const { return y0 + dy * j; }
};

// Edge of the marching-squares grid, identified by its lower-left node and
// orientation (0 = horizontal, 1 = vertical).
struct EdgeId {
  int i, j, dir;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

}  // namespace

std::vector<PlanarCurve> trace_k_resonant_curves(const HoneycombParams& p) {
  const WaveNumbers vx = brillouin::x_point();
  const WaveNumbers vm = brillouin::m_point();
  const double pad = 0.05;
  GridSpec gs;
  gs.nx = 400;
  gs.ny = 400;
  const double x_lo = 0.0, x_hi = vx.k1;
  const double y_lo = 0.0, y_hi = vm.k2;
  gs.x0 = x_lo - pad * (x_hi - x_lo);
  gs.y0 = y_lo - pad * (y_hi - y_lo);
  gs.dx = (x_hi - x_lo) * (1.0 + 2.0 * pad) / gs.nx;
  gs.dy = (y_hi - y_lo) * (1.0 + 2.0 * pad) / gs.ny;

  const int nxn = gs.nx + 1, nyn = gs.ny + 1;
  std::vector<double> sig(static_cast<std::size_t>(nxn) * nyn);
  std::vector<char> valid(sig.size());
  for (int j = 0; j < nyn; ++j) {
    for (int i = 0; i < nxn; ++i) {
      const WaveNumbers k{gs.x(i), gs.y(j)};
      const bool ok = honeycomb_mass(k) > 0.0;
      valid[static_cast<std::size_t>(j) * nxn + i] = ok;
      sig[static_cast<std::size_t>(j) * nxn + i] =
          ok ? detuning_at(p, k) : 0.0;
    }
  }
  auto sigma_node = [&](int i, int j) {
    return sig[static_cast<std::size_t>(j) * nxn + i];
  };
  auto node_valid = [&](int i, int j) {
    return valid[static_cast<std::size_t>(j) * nxn + i] != 0;
  };

  auto sigma_xy = [&](double x, double y) {
    return detuning_at(p, {x, y});
  };

  // Root position on a grid edge with a sign change.
  std::map<EdgeId, std::array<double, 2>> edge_points;
  auto edge_point = [&](const EdgeId& e) {
    auto it = edge_points.find(e);
    if (it != edge_points.end()) return it->second;
    double xa = gs.x(e.i), ya = gs.y(e.j);
    double xb = e.dir == 0 ? gs.x(e.i + 1) : xa;
    double yb = e.dir == 0 ? ya : gs.y(e.j + 1);
    double fa = sigma_node(e.i, e.j);
    for (int it2 = 0; it2 < 60; ++it2) {
      const double xm = 0.5 * (xa + xb), ym = 0.5 * (ya + yb);
      const double fm = sigma_xy(xm, ym);
      if (std::fabs(fm) <= 1e-10) {
        xa = xb = xm;
        ya = yb = ym;
        break;
      }
      if ((fa < 0.0) == (fm < 0.0)) {
        xa = xm;
        ya = ym;
        fa = fm;
      } else {
        xb = xm;
        yb = ym;
      }
    }
    const std::array<double, 2> pt{0.5 * (xa + xb), 0.5 * (ya + yb)};
    edge_points.emplace(e, pt);
    return pt;
  };

  // Per-cell segments as pairs of crossed edges.
  std::map<EdgeId, std::vector<EdgeId>> links;
  auto link = [&](const EdgeId& a, const EdgeId& b) {
    links[a].push_back(b);
    links[b].push_back(a);
  };
  for (int j = 0; j < gs.ny; ++j) {
    for (int i = 0; i < gs.nx; ++i) {
      if (!node_valid(i, j) || !node_valid(i + 1, j) ||
          !node_valid(i, j + 1) || !node_valid(i + 1, j + 1)) {
        continue;
      }
      const double f00 = sigma_node(i, j), f10 = sigma_node(i + 1, j);
      const double f01 = sigma_node(i, j + 1),
                   f11 = sigma_node(i + 1, j + 1);
      std::vector<EdgeId> crossed;
      if ((f00 < 0.0) != (f10 < 0.0)) crossed.push_back({i, j, 0});
      if ((f01 < 0.0) != (f11 < 0.0)) crossed.push_back({i, j + 1, 0});
      if ((f00 < 0.0) != (f01 < 0.0)) crossed.push_back({i, j, 1});
      if ((f10 < 0.0) != (f11 < 0.0)) crossed.push_back({i + 1, j, 1});
      if (crossed.size() == 2) {
        link(crossed[0], crossed[1]);
      } else if (crossed.size() == 4) {
        // Saddle cell: pair edges by the sign at the cell center.
        const double fc =
            sigma_xy(gs.x(i) + 0.5 * gs.dx, gs.y(j) + 0.5 * gs.dy);
        // Edges: 0 bottom, 1 top, 2 left, 3 right.
        if ((fc < 0.0) == (f00 < 0.0)) {
          link(crossed[0], crossed[3]);
          link(crossed[1], crossed[2]);
        } else {
          link(crossed[0], crossed[2]);
          link(crossed[1], crossed[3]);
        }
      }
    }
  }

  // Stitch linked edges into polylines: open paths first (starting at
  // degree-1 edges), then any remaining components are loops.
  std::map<EdgeId, bool> used;
  std::vector<PlanarCurve> curves;
  auto walk = [&](const EdgeId& start) {
    PlanarCurve c;
    EdgeId cur = start;
    used[cur] = true;
    c.points.push_back(edge_point(cur));
    while (true) {
      const EdgeId* next = nullptr;
      for (const auto& e : links[cur]) {
        if (!used[e]) {
          next = &e;
          break;
        }
        if (e == start && c.points.size() > 2) c.closed = true;
      }
      if (!next) break;
      cur = *next;
      used[cur] = true;
      c.points.push_back(edge_point(cur));
    }
    if (c.closed) c.points.push_back(edge_point(start));
    return c;
  };
  for (const auto& [e, nbrs] : links) {
    if (nbrs.size() == 1 && !used[e]) curves.push_back(walk(e));
  }
  for (const auto& [e, nbrs] : links) {
    if (!used[e]) curves.push_back(walk(e));
  }
  return curves;
}

}  // namespace bnf
