#pragma once

// Deterministic artifact emission (CSV, SVG, manifests) and structured-text
// configuration parsing. All numbers are written locale-independently; CSV
// carries 17 significant digits so doubles round-trip.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bresse/experiments.hpp"

namespace bresse {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Number formatting

/// 17 significant digits, round-trippable.
inline std::string g17(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Shortest representation that round-trips.
inline std::string gshort(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string fnv1a_hex(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xf];
    h >>= 4;
  }
  return std::string(buf, 16);
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open " + path.string() + " for writing");
  out << content;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string probe_csv(const ProbeSeries& s) {
  std::string out = "t," + s.field + "\n";
  for (size_t i = 0; i < s.times.size(); ++i)
    out += g17(s.times[i]) + "," + g17(s.values[i]) + "\n";
  return out;
}

inline std::string energy_csv(const std::vector<EnergyEntry>& entries) {
  std::string out =
      "t,kinetic,elastic,potential,dissipated_cum,work_cum,lyapunov,balance_residual\n";
  for (const auto& e : entries) {
    out += g17(e.t) + "," + g17(e.kinetic) + "," + g17(e.elastic) + "," +
           g17(e.potential) + "," + g17(e.dissipated_cum) + "," +
           g17(e.work_cum) + "," + g17(e.lyapunov) + "," +
           g17(e.balance_residual) + "\n";
  }
  return out;
}

inline std::string convergence_table_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "value,probe,field,distance\n";
  for (const auto& r : rows)
    out += g17(r.value) + "," + gshort(r.probe) + "," + r.field + "," +
           g17(r.distance) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// SVG plots

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

struct PlotStyle {
  std::string title, xlabel, ylabel;
  int width = 960, height = 540;
};

/// Deterministic SVG: one polyline per series plus a legend. Identical input
/// produces identical bytes.
inline std::string emit_plot(const std::vector<PlotSeries>& series,
                             const PlotStyle& style) {
  if (series.empty()) throw parameter_error("emit_plot: no series");
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty())
      throw parameter_error("emit_plot: series '" + s.label + "' is empty or ragged");
    if (s.x.size() != series.front().x.size())
      throw parameter_error("emit_plot: series lattices are not aligned");
  }
  double xmin = series[0].x[0], xmax = xmin, ymin = series[0].y[0], ymax = ymin;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (xmax == xmin) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (ymax == ymin) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  const double mL = 70, mR = 180, mT = 40, mB = 50;
  const double W = style.width, H = style.height;
  const double pw = W - mL - mR, ph = H - mT - mB;
  auto px = [&](double x) { return mL + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mT + (ymax - y) / (ymax - ymin) * ph; };

  static const char* palette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf"};
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(style.width) + "\" height=\"" +
         std::to_string(style.height) + "\" viewBox=\"0 0 " +
         std::to_string(style.width) + " " + std::to_string(style.height) +
         "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + gshort(W / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" + style.title +
         "</text>\n";
  // axes
  svg += "<line x1=\"" + gshort(mL) + "\" y1=\"" + gshort(mT) + "\" x2=\"" +
         gshort(mL) + "\" y2=\"" + gshort(H - mB) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + gshort(mL) + "\" y1=\"" + gshort(H - mB) +
         "\" x2=\"" + gshort(W - mR) + "\" y2=\"" + gshort(H - mB) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    svg += "<text x=\"" + gshort(px(xv)) + "\" y=\"" + gshort(H - mB + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + gshort(xv) + "</text>\n";
    svg += "<text x=\"" + gshort(mL - 8) + "\" y=\"" + gshort(py(yv) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + gshort(yv) + "</text>\n";
  }
  svg += "<text x=\"" + gshort(mL + pw / 2) + "\" y=\"" + gshort(H - 10) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" + style.xlabel + "</text>\n";
  svg += "<text x=\"18\" y=\"" + gshort(mT + ph / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 " + gshort(mT + ph / 2) +
         ")\">" + style.ylabel + "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = palette[si % 10];
    std::string pts;
    for (size_t i = 0; i < s.x.size(); ++i)
      pts += gshort(px(s.x[i])) + "," + gshort(py(s.y[i])) + " ";
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";
    const double ly = mT + 16.0 * (double)si;
    svg += "<line x1=\"" + gshort(W - mR + 12) + "\" y1=\"" + gshort(ly) +
           "\" x2=\"" + gshort(W - mR + 36) + "\" y2=\"" + gshort(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + gshort(W - mR + 42) + "\" y=\"" + gshort(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + s.label +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

// ---------------------------------------------------------------------------
// Run manifest

struct RunManifest {
  std::string config_hash;
  int grid_n = 0;
  double grid_h = 0.0;
  int i_interface = 0;
  double dt = 0.0;
  std::string scheme;
  double wall_time_s = 0.0;
  std::string exit_status = "ok";  // "ok" or the error description
};

inline json manifest_json(const RunManifest& m) {
  return json{{"config_hash", m.config_hash},
              {"grid", {{"n", m.grid_n}, {"h", m.grid_h}, {"i_interface", m.i_interface}}},
              {"dt", m.dt},
              {"scheme", m.scheme},
              {"wall_time_s", m.wall_time_s},
              {"exit_status", m.exit_status}};
}

inline void write_manifest(const std::filesystem::path& path,
                           const RunManifest& m) {
  write_text_file(path, manifest_json(m).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Configuration files

struct ParsedConfig {
  BeamConfig cfg;
  IntegratorConfig integrator;
  LadderSpec ladder;
  bool has_ladder = false;
  json canonical;
  std::vector<std::string> warnings;

  std::string hash() const { return fnv1a_hex(canonical.dump()); }
};

namespace detail {

inline void require_keys(const json& j, const std::string& path,
                         std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional = {}) {
  for (const char* k : required)
    if (!j.contains(k))
      throw config_error("missing required key " + path + "." + k);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required)
      if (it.key() == k) known = true;
    for (const char* k : optional)
      if (it.key() == k) known = true;
    if (!known) throw config_error("unknown key " + path + "." + it.key());
  }
}

inline double num_at(const json& j, const std::string& path, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number())
    throw config_error("key " + path + "." + key + " must be a number");
  return v.get<double>();
}

inline SegmentParams parse_segment(const json& j, const std::string& path) {
  require_keys(j, path, {"rho", "beta", "k", "sigma", "lambda"});
  SegmentParams p{num_at(j, path, "rho"), num_at(j, path, "beta"),
                  num_at(j, path, "k"), num_at(j, path, "sigma"),
                  num_at(j, path, "lambda")};
  p.validate(path);
  return p;
}

inline Scalar3Fn poly_from_terms(const std::vector<std::array<double, 4>>& terms) {
  return [terms](double a, double b, double c) {
    double acc = 0.0;
    for (const auto& t : terms)
      acc += t[0] * std::pow(a, t[1]) * std::pow(b, t[2]) * std::pow(c, t[3]);
    return acc;
  };
}

inline std::vector<std::array<double, 4>> parse_terms(const json& arr,
                                                      const std::string& path) {
  if (!arr.is_array()) throw config_error(path + " must be an array of [c,i,j,k] terms");
  std::vector<std::array<double, 4>> terms;
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 4)
      throw config_error(path + " entries must be [coef, pow_a, pow_b, pow_c]");
    terms.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>(),
                     t[3].get<double>()});
  }
  return terms;
}

/// Gradient-consistency sampling of the feedback triples against the
/// central-difference gradients of the potentials.
inline void check_gradient_consistency(const NonlinearitySpec& nl,
                                       int points = 200) {
  std::uint64_t rng = 0x2545F4914F6CDD1Dull;
  auto next01 = [&rng]() {
    rng ^= rng << 13;
    rng ^= rng >> 7;
    rng ^= rng << 17;
    return (double)(rng >> 11) / 9007199254740992.0;
  };
  const double step = 1e-5;
  for (int p = 0; p < points; ++p) {
    const double a = -2.0 + 4.0 * next01();
    const double b = -2.0 + 4.0 * next01();
    const double c = -2.0 + 4.0 * next01();
    for (int seg = 1; seg <= 2; ++seg) {
      const auto& F = seg == 1 ? nl.F1 : nl.F2;
      const auto fb = feedback({a, b, c}, seg, nl);
      for (int arg = 0; arg < 3; ++arg) {
        const double fd = bresse::detail::fd_partial(F, arg, a, b, c, step);
        if (std::abs(fd - fb[arg]) > 1e-6 * (1.0 + std::abs(fb[arg])))
          throw config_error(
              "nonlinearity: feedback triple is not the gradient of the potential");
      }
    }
  }
}

}  // namespace detail

inline ParsedConfig parse_config_json(const json& j) {
  ParsedConfig pc;
  detail::require_keys(j, "config",
                       {"segment", "geometry", "damping", "nonlinearity", "loads"},
                       {"integrator", "ladder"});

  const auto& seg = j.at("segment");
  detail::require_keys(seg, "segment", {"left", "right"});
  pc.cfg.left = detail::parse_segment(seg.at("left"), "segment.left");
  pc.cfg.right = detail::parse_segment(seg.at("right"), "segment.right");

  const auto& geo = j.at("geometry");
  detail::require_keys(geo, "geometry", {"l", "L", "L0"});
  pc.cfg.l = detail::num_at(geo, "geometry", "l");
  pc.cfg.L = detail::num_at(geo, "geometry", "L");
  pc.cfg.L0 = detail::num_at(geo, "geometry", "L0");

  const auto& dmp = j.at("damping");
  detail::require_keys(dmp, "damping", {"variant"});
  pc.cfg.damping = make_damping(dmp.at("variant").get<std::string>());

  const auto& nl = j.at("nonlinearity");
  detail::require_keys(nl, "nonlinearity", {"preset"},
                       {"F1", "F2", "delta1", "delta2", "decoupled"});
  const std::string nlp = nl.at("preset").get<std::string>();
  json nl_canon{{"preset", nlp}};
  if (nlp == "sl1") {
    pc.cfg.nonlinearity = make_nonlinearity_sl1();
  } else if (nlp == "sl2") {
    pc.cfg.nonlinearity = make_nonlinearity_sl2();
  } else if (nlp == "zero") {
    pc.cfg.nonlinearity = make_nonlinearity_zero();
  } else if (nlp == "custom") {
    if (!nl.contains("F1") || !nl.contains("F2"))
      throw config_error(
          "nonlinearity.preset=custom requires F1 and F2 term lists");
    const auto t1 = detail::parse_terms(nl.at("F1"), "nonlinearity.F1");
    const auto t2 = detail::parse_terms(nl.at("F2"), "nonlinearity.F2");
    const double d1 = nl.value("delta1", 0.0), d2 = nl.value("delta2", 0.0);
    const bool dec = nl.value("decoupled", false);
    pc.cfg.nonlinearity = make_nonlinearity_custom(
        detail::poly_from_terms(t1), detail::poly_from_terms(t2), d1, d2, dec);
    nl_canon["F1"] = nl.at("F1");
    nl_canon["F2"] = nl.at("F2");
    nl_canon["delta1"] = d1;
    nl_canon["delta2"] = d2;
    nl_canon["decoupled"] = dec;
  } else {
    throw config_error("nonlinearity.preset must be one of sl1, sl2, zero, custom");
  }

  const auto& ld = j.at("loads");
  detail::require_keys(ld, "loads", {"preset"});
  const std::string ldp = ld.at("preset").get<std::string>();
  if (ldp == "sl1")
    pc.cfg.loads = make_loads_sl1();
  else if (ldp == "sl2")
    pc.cfg.loads = make_loads_sl2();
  else if (ldp == "zero")
    pc.cfg.loads = make_loads_zero();
  else
    throw config_error("loads.preset must be one of sl1, sl2, zero");

  if (j.contains("integrator")) {
    const auto& ic = j.at("integrator");
    detail::require_keys(ic, "integrator", {},
                         {"t_end", "cfl_safety", "output_stride"});
    pc.integrator.t_end = ic.value("t_end", pc.integrator.t_end);
    pc.integrator.cfl_safety = ic.value("cfl_safety", pc.integrator.cfl_safety);
    pc.integrator.output_stride =
        ic.value("output_stride", pc.integrator.output_stride);
    pc.integrator.validate();
  }

  if (j.contains("ladder")) {
    const auto& lc = j.at("ladder");
    detail::require_keys(lc, "ladder", {"kind"},
                         {"values", "probes", "t_end", "smoothing_window", "h",
                          "record_dt", "cfl_safety"});
    const std::string kind = lc.at("kind").get<std::string>();
    if (kind == "l")
      pc.ladder = l_ladder_spec();
    else if (kind == "chi")
      pc.ladder = chi_ladder_spec();
    else
      throw config_error("ladder.kind must be 'l' or 'chi'");
    if (lc.contains("values"))
      pc.ladder.values = lc.at("values").get<std::vector<double>>();
    if (lc.contains("probes"))
      pc.ladder.probes = lc.at("probes").get<std::vector<double>>();
    pc.ladder.t_end = lc.value("t_end", pc.ladder.t_end);
    pc.ladder.smoothing_window =
        lc.value("smoothing_window", pc.ladder.smoothing_window);
    pc.ladder.h = lc.value("h", pc.ladder.h);
    pc.ladder.record_dt = lc.value("record_dt", pc.ladder.record_dt);
    pc.ladder.cfl_safety = lc.value("cfl_safety", pc.ladder.cfl_safety);
    pc.ladder.validate();
    pc.has_ladder = true;
  }

  // module-level invariants, checked at parse time
  pc.cfg.validate();
  const auto damp_report = pc.cfg.damping.validate();
  if (!damp_report.zero_at_origin)
    throw config_error("damping.variant: gamma(0) must be 0");
  if (!damp_report.monotone)
    throw config_error("damping.variant: gamma must be non-decreasing");
  if (!damp_report.lipschitz_ok)
    pc.warnings.push_back(
        "damping variant '" + pc.cfg.damping.variant +
        "' violates the declared Lipschitz bound on the sample lattice "
        "(discontinuous saturation); theorem hypotheses do not hold");
  detail::check_gradient_consistency(pc.cfg.nonlinearity);
  if (pc.cfg.equal_speed_flag())
    pc.warnings.push_back("equal-speed conditions hold on the damped segment");

  // canonical normalized document (sorted keys, defaults materialized)
  pc.canonical = json{
      {"segment",
       {{"left",
         {{"rho", pc.cfg.left.rho},
          {"beta", pc.cfg.left.beta},
          {"k", pc.cfg.left.k},
          {"sigma", pc.cfg.left.sigma},
          {"lambda", pc.cfg.left.lambda}}},
        {"right",
         {{"rho", pc.cfg.right.rho},
          {"beta", pc.cfg.right.beta},
          {"k", pc.cfg.right.k},
          {"sigma", pc.cfg.right.sigma},
          {"lambda", pc.cfg.right.lambda}}}}},
      {"geometry", {{"l", pc.cfg.l}, {"L", pc.cfg.L}, {"L0", pc.cfg.L0}}},
      {"damping", {{"variant", pc.cfg.damping.variant}}},
      {"nonlinearity", nl_canon},
      {"loads", {{"preset", ldp}}},
      {"integrator",
       {{"t_end", pc.integrator.t_end},
        {"cfl_safety", pc.integrator.cfl_safety},
        {"output_stride", pc.integrator.output_stride}}}};
  if (pc.has_ladder) {
    pc.canonical["ladder"] =
        json{{"kind", pc.ladder.kind == LadderKind::curvature ? "l" : "chi"},
             {"values", pc.ladder.values},
             {"probes", pc.ladder.probes},
             {"t_end", pc.ladder.t_end},
             {"smoothing_window", pc.ladder.smoothing_window},
             {"h", pc.ladder.h},
             {"record_dt", pc.ladder.record_dt},
             {"cfl_safety", pc.ladder.cfl_safety}};
  }
  return pc;
}

inline ParsedConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw config_error("malformed config file " + path + ": " + e.what());
  }
  return parse_config_json(j);
}

inline json emit_config(const ParsedConfig& pc) { return pc.canonical; }

/// In-code preset configurations with their canonical documents.
inline ParsedConfig builtin_config(const std::string& name) {
  json j;
  if (name == "sl1") {
    j = json{{"segment",
              {{"left", {{"rho", 1.0}, {"beta", 2.0}, {"k", 4.0}, {"sigma", 4.0}, {"lambda", 8.0}}},
               {"right", {{"rho", 1.0}, {"beta", 2.0}, {"k", 1.0}, {"sigma", 2.0}, {"lambda", 4.0}}}}},
             {"geometry", {{"l", 1.0}, {"L", 10.0}, {"L0", 4.0}}},
             {"damping", {{"variant", "cubic-saturated-C1"}}},
             {"nonlinearity", {{"preset", "sl1"}}},
             {"loads", {{"preset", "sl1"}}}};
  } else if (name == "sl2") {
    j = json{{"segment",
              {{"left", {{"rho", 1.0}, {"beta", 2.0}, {"k", 4.0}, {"sigma", 4.0}, {"lambda", 8.0}}},
               {"right", {{"rho", 1.0}, {"beta", 2.0}, {"k", 1.0}, {"sigma", 2.0}, {"lambda", 4.0}}}}},
             {"geometry", {{"l", 1.0}, {"L", 10.0}, {"L0", 4.0}}},
             {"damping", {{"variant", "linear"}}},
             {"nonlinearity", {{"preset", "sl2"}}},
             {"loads", {{"preset", "sl2"}}}};
  } else {
    throw config_error("unknown preset '" + name + "' (expected sl1 or sl2)");
  }
  return parse_config_json(j);
}

// ---------------------------------------------------------------------------
// Trajectory and ladder artifacts

inline void write_trajectory_artifacts(const std::filesystem::path& dir,
                                       const Trajectory& traj) {
  for (const auto& c : traj.columns) {
    ProbeSeries s{c.x, c.field, traj.times, c.values};
    write_text_file(dir / ("probes_" + c.field + "_" + gshort(c.x) + ".csv"),
                    probe_csv(s));
  }
  write_text_file(dir / "energy.csv", energy_csv(traj.energy));
}

inline void write_ladder_artifacts(const std::filesystem::path& out_dir,
                                   const LadderResult& R,
                                   const std::string& config_hash) {
  const std::string ladder_name =
      R.spec.kind == LadderKind::curvature ? "l" : "chi";
  const auto base = out_dir / "runs" / ladder_name;

  for (size_t i = 0; i < R.spec.values.size(); ++i) {
    const auto dir = base / gshort(R.spec.values[i]);
    RunManifest m;
    m.config_hash = config_hash;
    m.grid_n = R.grid.n;
    m.grid_h = R.grid.h;
    m.i_interface = R.grid.i_interface;
    m.scheme = "explicit-two-stage";
    if (R.rungs[i]) {
      write_trajectory_artifacts(dir, *R.rungs[i]);
      m.dt = R.rungs[i]->dt;
    } else {
      m.exit_status = R.rung_errors[i].empty() ? "not run" : R.rung_errors[i];
    }
    write_manifest(dir / "run_manifest.json", m);
  }

  if (R.limit_primary && R.limit_wave) {
    const auto dir = base / "limit";
    for (const auto& c : R.limit_primary->columns) {
      if (c.field == "omega" || c.field == "w") continue;
      ProbeSeries s{c.x, c.field, R.limit_primary->times, c.values};
      write_text_file(dir / ("probes_" + c.field + "_" + gshort(c.x) + ".csv"),
                      probe_csv(s));
    }
    for (const auto& c : R.limit_wave->columns) {
      if (c.field != "omega" && c.field != "w") continue;
      ProbeSeries s{c.x, c.field, R.limit_wave->times, c.values};
      write_text_file(dir / ("probes_" + c.field + "_" + gshort(c.x) + ".csv"),
                      probe_csv(s));
    }
    write_text_file(dir / "energy_primary.csv",
                    energy_csv(R.limit_primary->energy));
    write_text_file(dir / "energy_wave.csv", energy_csv(R.limit_wave->energy));
  }

  write_text_file(out_dir / "convergence_table.csv",
                  convergence_table_csv(R.table));

  // one overlay plot per (probe, field)
  if (R.limit_primary && R.limit_wave) {
    detail::LimitSelector sel{&*R.limit_primary, &*R.limit_wave};
    for (double pxv : R.spec.probes) {
      const int node = R.grid.probe_node(pxv);
      const int side = node <= R.grid.i_interface ? 0 : 1;
      for (int f = 0; f < 3; ++f) {
        const std::string field = field_name(side, f);
        std::vector<PlotSeries> series;
        for (size_t i = 0; i < R.spec.values.size(); ++i) {
          if (!R.rungs[i]) continue;
          ProbeSeries s = probe(*R.rungs[i], pxv, field);
          if (R.spec.smoothing_window > 1) s = smooth(s, R.spec.smoothing_window);
          series.push_back({ladder_name + "=" + gshort(R.spec.values[i]),
                            s.times, s.values});
        }
        ProbeSeries lim = probe(sel.for_field(field), pxv, field);
        if (R.spec.smoothing_window > 1) lim = smooth(lim, R.spec.smoothing_window);
        series.push_back({"limit", lim.times, lim.values});
        PlotStyle style;
        style.title = field + " at cross-section x=" + gshort(pxv);
        style.xlabel = "t";
        style.ylabel = field;
        write_text_file(out_dir / "plots" / (field + "_x" + gshort(pxv) + ".svg"),
                        emit_plot(series, style));
      }
    }
  }
}

}  // namespace bresse
