// Command-line front end: dispersion curves, parameter sweeps, resonance
// geometry, admissible-amplitude fields, and the simulator verification
// suite, emitted as deterministic CSV/JSON artifacts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bnf/bandgap.hpp"
#include "bnf/brillouin.hpp"
#include "bnf/csv.hpp"
#include "bnf/errors.hpp"
#include "bnf/normal_form.hpp"
#include "bnf/parallel.hpp"
#include "bnf/resonance.hpp"
#include "bnf/simulate.hpp"
#include "bnf/spectral.hpp"
#include "bnf/system.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
  double m_tilde = 0.09;
  double k_tilde = 8.0;
  double n3 = -1e4;
  double m3 = 0.0;
  int grid_nx = 16;
  int grid_ny = 16;
  bnf::Rect rect{0.05, 0.3, 1.0, 20.0};
  std::string mode = "nonresonant";
  std::string out_dir = "out";
  int threads = 0;  // 0 = library/environment default
  std::uint64_t seed = 12345;
  double t_end = 2000.0;
  double amplitude_fraction = 0.5;  // of the admissible amplitude (verify)
  int per_edge = 2048;
  int sweep_per_edge = 512;
  double step = 0.02;
};

[[noreturn]] void reject(const std::string& field, const std::string& range) {
  throw bnf::ConfigError("config field '" + field + "' out of range: " +
                         range);
}

void validate(const RunConfig& c) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(finite(c.m_tilde) && c.m_tilde > 0.0 && c.m_tilde <= 10.0)) {
    reject("m_tilde", "(0, 10]");
  }
  if (!(finite(c.k_tilde) && c.k_tilde > 0.0 && c.k_tilde <= 1e3)) {
    reject("k_tilde", "(0, 1e3]");
  }
  if (!(finite(c.n3) && std::abs(c.n3) <= 1e8)) reject("n3", "[-1e8, 1e8]");
  if (!(finite(c.m3) && std::abs(c.m3) <= 1e8)) reject("m3", "[-1e8, 1e8]");
  if (c.grid_nx < 2 || c.grid_nx > 4096) reject("grid nx", "[2, 4096]");
  if (c.grid_ny < 2 || c.grid_ny > 4096) reject("grid ny", "[2, 4096]");
  if (!(finite(c.rect.x0) && finite(c.rect.x1) && c.rect.x0 > 0.0 &&
        c.rect.x0 < c.rect.x1 && c.rect.x1 <= 10.0)) {
    reject("rect m_tilde interval", "0 < x0 < x1 <= 10");
  }
  if (!(finite(c.rect.y0) && finite(c.rect.y1) && c.rect.y0 > 0.0 &&
        c.rect.y0 < c.rect.y1 && c.rect.y1 <= 1e3)) {
    reject("rect k_tilde interval", "0 < y0 < y1 <= 1e3");
  }
  if (c.mode != "nonresonant" && c.mode != "resonant") {
    reject("mode", "{nonresonant, resonant}");
  }
  if (c.out_dir.empty()) reject("out", "non-empty path");
  if (c.threads < 0 || c.threads > 4096) reject("threads", "[0, 4096]");
  if (!(finite(c.t_end) && c.t_end > 0.0 && c.t_end <= 1e7)) {
    reject("t_end", "(0, 1e7]");
  }
  if (!(finite(c.amplitude_fraction) && c.amplitude_fraction > 0.0 &&
        c.amplitude_fraction <= 10.0)) {
    reject("amplitude_fraction", "(0, 10]");
  }
  if (c.per_edge < 3 || c.per_edge > (1 << 20)) {
    reject("per_edge", "[3, 1048576]");
  }
  if (c.sweep_per_edge < 3 || c.sweep_per_edge > (1 << 20)) {
    reject("sweep_per_edge", "[3, 1048576]");
  }
  if (!(finite(c.step) && c.step > 0.0 && c.step <= 1.0)) {
    reject("step", "(0, 1]");
  }
}

void apply_preset(RunConfig& c, const std::string& name) {
  if (name == "fig3") {  // sweep contour of B_per over the reference rectangle
    c.n3 = -1e4;
    c.grid_nx = c.grid_ny = 16;
  } else if (name == "fig5") {  // admissible-amplitude fields, nonresonant
    c.n3 = -1e4;
    c.mode = "nonresonant";
    c.grid_nx = c.grid_ny = 16;
  } else if (name == "fig9") {  // dispersion at the on-resonance parameters
    c.m_tilde = 0.146;
    c.k_tilde = 5.73;
    c.n3 = -1e4;
  } else if (name == "fig10") {  // dispersion, softening spring
    c.m_tilde = 0.09;
    c.k_tilde = 8.0;
    c.n3 = -1e4;
  } else if (name == "fig11") {  // dispersion, hardening spring
    c.m_tilde = 0.09;
    c.k_tilde = 8.0;
    c.n3 = 1e4;
  } else if (name == "fig13") {  // admissible-amplitude fields, resonant
    c.n3 = -1e4;
    c.mode = "resonant";
    c.grid_nx = c.grid_ny = 16;
  } else {
    throw bnf::ConfigError(
        "unknown preset '" + name +
        "' (valid: fig3, fig5, fig9, fig10, fig11, fig13)");
  }
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) {
    throw bnf::ConfigError("grid must be WIDTHxHEIGHT, got '" + text + "'");
  }
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw bnf::ConfigError("grid must be WIDTHxHEIGHT, got '" + text + "'");
  }
}

std::vector<double> parse_doubles(const std::string& text,
                                  std::size_t expected,
                                  const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw bnf::ConfigError("field '" + field + "': bad number '" + item +
                             "'");
    }
  }
  if (out.size() != expected) {
    throw bnf::ConfigError("field '" + field + "' needs " +
                           std::to_string(expected) + " comma-separated " +
                           "values, got " + std::to_string(out.size()));
  }
  return out;
}

void apply_key(RunConfig& c, const std::string& key, const std::string& val) {
  auto to_double = [&](const std::string& v) {
    try {
      return std::stod(v);
    } catch (const std::exception&) {
      throw bnf::ConfigError("field '" + key + "': bad number '" + v + "'");
    }
  };
  auto to_int = [&](const std::string& v) {
    try {
      return std::stoi(v);
    } catch (const std::exception&) {
      throw bnf::ConfigError("field '" + key + "': bad integer '" + v + "'");
    }
  };
  if (key == "m_tilde") {
    c.m_tilde = to_double(val);
  } else if (key == "k_tilde") {
    c.k_tilde = to_double(val);
  } else if (key == "n3") {
    c.n3 = to_double(val);
  } else if (key == "m3") {
    c.m3 = to_double(val);
  } else if (key == "grid") {
    std::tie(c.grid_nx, c.grid_ny) = parse_grid(val);
  } else if (key == "rect") {
    const auto v = parse_doubles(val, 4, "rect");
    c.rect = {v[0], v[1], v[2], v[3]};
  } else if (key == "params") {
    const auto v = parse_doubles(val, 2, "params");
    c.m_tilde = v[0];
    c.k_tilde = v[1];
  } else if (key == "mode") {
    c.mode = val;
  } else if (key == "out") {
    c.out_dir = val;
  } else if (key == "threads") {
    c.threads = to_int(val);
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(std::stoull(val));
  } else if (key == "t_end") {
    c.t_end = to_double(val);
  } else if (key == "amplitude_fraction") {
    c.amplitude_fraction = to_double(val);
  } else if (key == "per_edge") {
    c.per_edge = to_int(val);
  } else if (key == "sweep_per_edge") {
    c.sweep_per_edge = to_int(val);
  } else if (key == "step") {
    c.step = to_double(val);
  } else {
    throw bnf::ConfigError("unknown config key '" + key + "'");
  }
}

void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw bnf::ConfigError("cannot read config file " + path);
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw bnf::ConfigError("config file " + path + ":" +
                             std::to_string(lineno) +
                             ": expected key = value");
    }
    apply_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

bnf::HoneycombParams honeycomb_of(const RunConfig& c) {
  bnf::HoneycombParams p;
  p.m_tilde = c.m_tilde;
  p.k_tilde = c.k_tilde;
  p.m3 = c.m3;
  p.n3 = c.n3;
  return p;
}

std::filesystem::path out_path(const RunConfig& c, const std::string& name) {
  return std::filesystem::path(c.out_dir) / name;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) {
    throw bnf::ConfigError("cannot open output file " + path.string());
  }
  out << j.dump(2) << '\n';
  if (!out.flush()) {
    throw bnf::ConfigError("failed writing " + path.string());
  }
}

json range_list(const std::vector<bnf::SRange>& ranges) {
  json arr = json::array();
  for (const auto& r : ranges) arr.push_back({{"lo", r.lo}, {"hi", r.hi}});
  return arr;
}

// --- commands -------------------------------------------------------------

int cmd_dispersion(const RunConfig& c) {
  const bnf::HoneycombParams p = honeycomb_of(c);
  const bnf::Amplitudes ax = bnf::admissible_amplitudes_at_x(p);
  const auto analysis =
      bnf::analyze_boundary(p, bnf::AmplitudePolicy::fixed_at(ax), c.per_edge);

  std::vector<std::vector<double>> rows;
  rows.reserve(analysis.samples.size());
  for (const auto& smp : analysis.samples) {
    rows.push_back({smp.s, smp.k.k1, smp.k.k2, smp.omega_minus,
                    smp.omega_plus, smp.omega_minus_nl, smp.omega_plus_nl,
                    smp.excluded ? 1.0 : 0.0});
  }
  bnf::write_csv(out_path(c, "dispersion.csv"),
                 {"s", "k1", "k2", "omega_minus", "omega_plus",
                  "omega_minus_nl", "omega_plus_nl", "excluded"},
                 rows);

  const auto& r = analysis.report;
  json summary{{"m_tilde", c.m_tilde},
               {"k_tilde", c.k_tilde},
               {"n3", c.n3},
               {"m3", c.m3},
               {"amplitudes", {{"a_minus", ax.a_minus}, {"a_plus", ax.a_plus}}},
               {"w_linear", r.w_linear},
               {"w_nonlinear", r.w_nonlinear},
               {"b_per", r.b_per},
               {"good", r.good},
               {"resonant_exclusions", range_list(r.resonant_exclusions)},
               {"s_argmax_acoustic", r.s_argmax_acoustic},
               {"s_argmin_optical", r.s_argmin_optical},
               {"s_linear_max", r.s_linear_max},
               {"s_linear_min", r.s_linear_min}};
  write_json(out_path(c, "dispersion_summary.json"), summary);
  return 0;
}

int cmd_sweep(const RunConfig& c) {
  const auto cells =
      bnf::bandgap_sweep(c.rect, {c.grid_nx, c.grid_ny}, c.n3,
                         c.sweep_per_edge);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> rows;
  rows.reserve(cells.size());
  int good_cells = 0, failed_cells = 0;
  const bnf::SweepCell* best_good = nullptr;
  const bnf::SweepCell* worst_good = nullptr;
  for (const auto& cell : cells) {
    if (cell.failed) {
      ++failed_cells;
      rows.push_back({cell.m_tilde, cell.k_tilde, nan, nan, nan, 0.0});
      continue;
    }
    const auto& r = cell.report;
    rows.push_back({cell.m_tilde, cell.k_tilde, r.w_linear, r.w_nonlinear,
                    r.b_per, r.good ? 1.0 : 0.0});
    if (r.good) {
      ++good_cells;
      if (!best_good || r.b_per > best_good->report.b_per) best_good = &cell;
      if (!worst_good || r.b_per < worst_good->report.b_per) {
        worst_good = &cell;
      }
    }
  }
  bnf::write_csv(
      out_path(c, "sweep.csv"),
      {"m_tilde", "k_tilde", "w_linear", "w_nonlinear", "b_per", "good"},
      rows);

  json summary{{"rect",
                {{"m_tilde", {c.rect.x0, c.rect.x1}},
                 {"k_tilde", {c.rect.y0, c.rect.y1}}}},
               {"grid", {c.grid_nx, c.grid_ny}},
               {"n3", c.n3},
               {"cells", cells.size()},
               {"good_cells", good_cells},
               {"bad_cells",
                static_cast<int>(cells.size()) - good_cells - failed_cells},
               {"failed_cells", failed_cells}};
  if (best_good) {
    summary["max_b_per_good"] = {{"m_tilde", best_good->m_tilde},
                                 {"k_tilde", best_good->k_tilde},
                                 {"value", best_good->report.b_per}};
    summary["min_b_per_good"] = {{"m_tilde", worst_good->m_tilde},
                                 {"k_tilde", worst_good->k_tilde},
                                 {"value", worst_good->report.b_per}};
  }
  write_json(out_path(c, "sweep_summary.json"), summary);
  return 0;
}

int cmd_resonance(const RunConfig& c) {
  const bnf::HoneycombParams p = honeycomb_of(c);

  const bnf::PlanarCurve xcurve = bnf::trace_x_resonant_curve(c.rect, c.step);
  std::vector<std::vector<double>> xrows;
  xrows.reserve(xcurve.points.size());
  for (const auto& pt : xcurve.points) xrows.push_back({pt[0], pt[1]});
  bnf::write_csv(out_path(c, "x_resonant_curve.csv"), {"m_tilde", "k_tilde"},
                 xrows);

  const auto kcurves = bnf::trace_k_resonant_curves(p);
  std::vector<std::vector<double>> krows;
  for (std::size_t ci = 0; ci < kcurves.size(); ++ci) {
    for (const auto& pt : kcurves[ci].points) {
      krows.push_back({pt[0], pt[1], static_cast<double>(ci),
                       kcurves[ci].closed ? 1.0 : 0.0});
    }
  }
  bnf::write_csv(out_path(c, "k_resonant_curves.csv"),
                 {"k1", "k2", "component", "closed"}, krows);

  const auto crossings = bnf::boundary_crossings(p);
  std::vector<std::vector<double>> crows;
  crows.reserve(crossings.crossings.size());
  for (const auto& cr : crossings.crossings) {
    crows.push_back({cr.s, cr.k.k1, cr.k.k2, cr.sigma_residual});
  }
  bnf::write_csv(out_path(c, "boundary_crossings.csv"),
                 {"s", "k1", "k2", "sigma_residual"}, crows);

  json summary{{"m_tilde", c.m_tilde},
               {"k_tilde", c.k_tilde},
               {"x_curve_points", xcurve.points.size()},
               {"k_plane_components", kcurves.size()},
               {"boundary_crossings", crossings.crossings.size()}};
  write_json(out_path(c, "resonance_summary.json"), summary);
  return 0;
}

int cmd_amplitudes(const RunConfig& c) {
  // Amplitude fields over the parameter rectangle, evaluated at the X point
  // for both normal-form variants. Cells where a variant is unavailable
  // (exact resonance, degenerate modal data) carry zeros.
  const int nx = c.grid_nx, ny = c.grid_ny;
  std::vector<std::vector<double>> rows(
      static_cast<std::size_t>(nx) * ny);
  bnf::parallel_for(rows.size(), bnf::Execution::parallel, [&](std::size_t t) {
    const int i = static_cast<int>(t) / ny;
    const int j = static_cast<int>(t) % ny;
    const double m =
        c.rect.x0 + (c.rect.x1 - c.rect.x0) * static_cast<double>(i) /
                        (nx - 1);
    const double k =
        c.rect.y0 + (c.rect.y1 - c.rect.y0) * static_cast<double>(j) /
                        (ny - 1);
    bnf::HoneycombParams p = honeycomb_of(c);
    p.m_tilde = m;
    p.k_tilde = k;
    bnf::Amplitudes nonres{}, res{};
    try {
      const bnf::ModalData modal =
          bnf::honeycomb_modal(p, bnf::brillouin::x_point());
      try {
        const auto nf = bnf::build_normal_form(modal, p.m3, p.n3, false);
        nonres = bnf::admissible_amplitudes(modal, nf.s_star);
      } catch (const bnf::ExactResonance&) {
      }
      const auto nf_res = bnf::build_normal_form(modal, p.m3, p.n3, true);
      res = bnf::admissible_amplitudes(modal, nf_res.s_star);
    } catch (const bnf::Error&) {
    }
    rows[t] = {m,           k,          nonres.a_minus, nonres.a_plus,
               res.a_minus, res.a_plus};
  });
  bnf::write_csv(out_path(c, "amplitude_field.csv"),
                 {"m_tilde", "k_tilde", "a_minus_nonresonant",
                  "a_plus_nonresonant", "a_minus_resonant",
                  "a_plus_resonant"},
                 rows);

  // Profile of the admissible amplitudes along the triangle boundary for the
  // configured parameters and normal-form mode.
  const bool resonant_mode = c.mode == "resonant";
  const std::vector<double> ss = bnf::brillouin::boundary_samples(c.per_edge);
  std::vector<std::vector<double>> prows(ss.size());
  bnf::parallel_for(ss.size(), bnf::Execution::parallel, [&](std::size_t t) {
    const bnf::WaveNumbers k = bnf::brillouin::boundary_point(ss[t]);
    bnf::Amplitudes a{};
    try {
      const bnf::HoneycombParams p = honeycomb_of(c);
      const bnf::ModalData modal = bnf::honeycomb_modal(p, k);
      const auto nf = bnf::build_normal_form(modal, p.m3, p.n3, resonant_mode);
      a = bnf::admissible_amplitudes(modal, nf.s_star);
    } catch (const bnf::Error&) {
    }
    prows[t] = {ss[t], a.a_minus, a.a_plus};
  });
  bnf::write_csv(out_path(c, "boundary_amplitudes.csv"),
                 {"s", "a_minus", "a_plus"}, prows);

  const bnf::Amplitudes ax =
      bnf::admissible_amplitudes_at_x(honeycomb_of(c));
  json summary{{"m_tilde", c.m_tilde},
               {"k_tilde", c.k_tilde},
               {"n3", c.n3},
               {"mode", c.mode},
               {"at_x", {{"a_minus", ax.a_minus}, {"a_plus", ax.a_plus}}}};
  write_json(out_path(c, "amplitudes_summary.json"), summary);
  return 0;
}

int cmd_verify(const RunConfig& c) {
  const bnf::HoneycombParams p = honeycomb_of(c);
  const bnf::OscillatorSystem sys =
      bnf::build_honeycomb(bnf::brillouin::x_point(), p);
  const bnf::ModalData modal = bnf::modal_decomposition(sys);
  const bnf::NormalForm nf = bnf::build_normal_form(modal, p.m3, p.n3, false);
  const bnf::Amplitudes adm = bnf::admissible_amplitudes(modal, nf.s_star);

  const std::array<double, 2> q0{c.amplitude_fraction * adm.a_minus,
                                 c.amplitude_fraction * adm.a_plus};
  if (!(q0[0] > 0.0) || !(q0[1] > 0.0)) {
    throw bnf::PreconditionFail(
        "verification needs positive admissible amplitudes (quartic "
        "coefficients both zero?)");
  }

  // Remainder bounds over the capped horizon.
  const bnf::RemainderReport rep =
      bnf::verify_remainder(sys, modal, nf, q0, {0.0, 0.0}, c.t_end);

  // Frequency check: measured spectral lines vs the amplitude-shifted
  // prediction, on a long trajectory thinned to ~2^16 output samples.
  const double dt =
      (2.0 * std::numbers::pi / modal.omega_plus) / 256.0;
  const auto n_internal = static_cast<std::int64_t>(c.t_end / dt) + 1;
  const int stride =
      static_cast<int>(std::max<std::int64_t>(n_internal / 65536, 1));
  const bnf::Trajectory traj =
      bnf::integrate_full(sys, q0, {0.0, 0.0}, c.t_end, dt, stride);
  const auto [meas_m, meas_p] = bnf::measure_frequencies(traj);

  const double i1 = 0.5 * modal.omega_minus * (q0[0] * q0[0]);
  const double i2 = 0.5 * modal.omega_plus * (q0[1] * q0[1]);
  const auto [pred_m, pred_p] =
      bnf::nonlinear_frequencies(modal, p.m3, p.n3, i1, i2);

  auto freq_gate = [](double measured, double predicted, double linear) {
    const double shift = predicted - linear;
    if (std::abs(shift) < 1e-12) {
      return std::abs(measured - linear) <= 1e-6 * std::abs(linear);
    }
    return std::abs(measured - predicted) <= 0.2 * std::abs(shift);
  };
  const bool freq_ok_m = freq_gate(meas_m, pred_m, modal.omega_minus);
  const bool freq_ok_p = freq_gate(meas_p, pred_p, modal.omega_plus);

  double drift = 0.0;
  const double e_scale = std::max(std::abs(traj.energy.front()), 1e-30);
  for (const double e : traj.energy) {
    drift = std::max(drift, std::abs(e - traj.energy.front()) / e_scale);
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& st = traj.states[i];
    rows.push_back(
        {traj.times[i], st[0], st[1], st[2], st[3], traj.energy[i]});
  }
  bnf::write_csv(out_path(c, "trajectory.csv"),
                 {"t", "q1", "q2", "p1", "p2", "energy"}, rows);

  const bool all_ok = rep.norm_ok && rep.residual_ok && freq_ok_m && freq_ok_p;
  json report{
      {"parameters",
       {{"m_tilde", c.m_tilde},
        {"k_tilde", c.k_tilde},
        {"n3", c.n3},
        {"m3", c.m3},
        {"amplitude_fraction", c.amplitude_fraction},
        {"t_end", c.t_end},
        {"seed", c.seed}}},
      {"admissible", {{"a_minus", adm.a_minus}, {"a_plus", adm.a_plus}}},
      {"asymptotic",
       {{"epsilon", rep.asymptotic.epsilon},
        {"xi", rep.asymptotic.xi},
        {"t_star", rep.asymptotic.t_star},
        {"r_star", rep.asymptotic.r_star},
        {"i0", {rep.asymptotic.i0[0], rep.asymptotic.i0[1]}},
        {"phi0", {rep.asymptotic.phi0[0], rep.asymptotic.phi0[1]}}}},
      {"remainder",
       {{"horizon", rep.horizon},
        {"checks", rep.checks},
        {"norm_bound", rep.norm_bound},
        {"max_norm_ratio", rep.max_norm_ratio},
        {"max_residual", rep.max_residual},
        {"max_residual_over_bound", rep.max_residual_over_bound},
        {"norm_ok", rep.norm_ok},
        {"residual_ok", rep.residual_ok}}},
      {"frequencies",
       {{"linear", {modal.omega_minus, modal.omega_plus}},
        {"predicted", {pred_m, pred_p}},
        {"measured", {meas_m, meas_p}},
        {"acoustic_ok", freq_ok_m},
        {"optical_ok", freq_ok_p}}},
      {"energy", {{"max_relative_drift", drift}, {"gate", 1e-9}}},
      {"pass", all_ok}};
  write_json(out_path(c, "verify_report.json"), report);

  std::cout << (all_ok ? "verify: PASS" : "verify: FAIL") << " (norm "
            << rep.max_norm_ratio << "/" << rep.norm_bound << ", residual "
            << rep.max_residual_over_bound << "/1, freq "
            << (freq_ok_m && freq_ok_p ? "ok" : "off") << ")\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Nonlinear dispersion and bandgap analysis of a honeycomb "
      "plate-resonator cell via fourth-order normal forms"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, preset, grid_text, params_text, rect_text;
  RunConfig flags;  // receives flag values; merged by count() below

  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--preset", preset,
                 "named profile: fig3, fig5, fig9, fig10, fig11, fig13");
  app.add_option("--out", flags.out_dir, "output directory");
  app.add_option("--grid", grid_text, "grid size WIDTHxHEIGHT");
  app.add_option("--n3", flags.n3, "cubic resonator-spring coefficient");
  app.add_option("--m3", flags.m3, "cubic plate-spring coefficient");
  app.add_option("--params", params_text, "cell parameters M,K");
  app.add_option("--rect", rect_text, "parameter rectangle x0,x1,y0,y1");
  app.add_option("--mode", flags.mode,
                 "normal-form variant: nonresonant | resonant");
  app.add_option("--threads", flags.threads,
                 "worker threads (0 = environment default)");
  app.add_option("--seed", flags.seed, "seed recorded in reports");
  app.add_option("--t-end", flags.t_end, "simulation horizon");
  app.add_option("--amplitude-fraction", flags.amplitude_fraction,
                 "fraction of the admissible amplitude used by verify");
  app.add_option("--per-edge", flags.per_edge,
                 "boundary samples per triangle edge");
  app.add_option("--sweep-per-edge", flags.sweep_per_edge,
                 "boundary samples per edge inside sweeps");
  app.add_option("--step", flags.step, "resonant-curve tracing step");

  auto* sub_dispersion = app.add_subcommand(
      "dispersion", "linear and nonlinear boundary dispersion curves");
  auto* sub_sweep = app.add_subcommand(
      "sweep", "bandgap-gain field over a parameter rectangle");
  auto* sub_resonance = app.add_subcommand(
      "resonance", "3:1 resonant curves and boundary crossings");
  auto* sub_amplitudes = app.add_subcommand(
      "amplitudes", "admissible wave-amplitude fields and profiles");
  auto* sub_verify = app.add_subcommand(
      "verify", "simulator verification suite (bounds, spectra, energy)");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!preset.empty()) apply_preset(cfg, preset);
    if (!config_path.empty()) load_config_file(cfg, config_path);

    auto given = [&](const std::string& name) {
      return app.count(name) > 0;
    };
    if (given("--out")) cfg.out_dir = flags.out_dir;
    if (given("--grid")) {
      std::tie(cfg.grid_nx, cfg.grid_ny) = parse_grid(grid_text);
    }
    if (given("--n3")) cfg.n3 = flags.n3;
    if (given("--m3")) cfg.m3 = flags.m3;
    if (given("--params")) {
      const auto v = parse_doubles(params_text, 2, "params");
      cfg.m_tilde = v[0];
      cfg.k_tilde = v[1];
    }
    if (given("--rect")) {
      const auto v = parse_doubles(rect_text, 4, "rect");
      cfg.rect = {v[0], v[1], v[2], v[3]};
    }
    if (given("--mode")) cfg.mode = flags.mode;
    if (given("--threads")) cfg.threads = flags.threads;
    if (given("--seed")) cfg.seed = flags.seed;
    if (given("--t-end")) cfg.t_end = flags.t_end;
    if (given("--amplitude-fraction")) {
      cfg.amplitude_fraction = flags.amplitude_fraction;
    }
    if (given("--per-edge")) cfg.per_edge = flags.per_edge;
    if (given("--sweep-per-edge")) cfg.sweep_per_edge = flags.sweep_per_edge;
    if (given("--step")) cfg.step = flags.step;

    validate(cfg);
    if (cfg.threads > 0) bnf::set_threads(cfg.threads);
    std::filesystem::create_directories(cfg.out_dir);

    if (*sub_dispersion) return cmd_dispersion(cfg);
    if (*sub_sweep) return cmd_sweep(cfg);
    if (*sub_resonance) return cmd_resonance(cfg);
    if (*sub_amplitudes) return cmd_amplitudes(cfg);
    if (*sub_verify) return cmd_verify(cfg);
    std::cerr << "error: no command selected\n";
    return 1;
  } catch (const bnf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
