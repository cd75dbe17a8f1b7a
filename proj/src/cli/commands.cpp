#include "icas/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include <CLI11.hpp>

#include "icas/analytic.hpp"
#include "icas/bistability.hpp"
#include "icas/csv.hpp"
#include "icas/errors.hpp"
#include "icas/experiments.hpp"
#include "icas/fokker_planck.hpp"
#include "icas/sensitivity.hpp"

namespace icas::cli {
namespace fs = std::filesystem;
namespace {

constexpr double kC = constants::speed_of_light;

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json nullable(const std::optional<double>& v) { return v ? nullable(*v) : json(nullptr); }

json geometry_json(const CavityGeometry& g) {
  return {{"kappa_c_per_s", g.kappa_c()},
          {"finesse", g.finesse()},
          {"fsr_hz", g.fsr()},
          {"linewidth_hz", g.linewidth()},
          {"photon_energy_j", g.photon_energy()},
          {"round_trip_time_s", g.round_trip_time()}};
}

AbsorberCavity absorber_cavity(const CavityGeometry& geom, const AbsorberSpec& a) {
  AbsorberCavity c;
  c.geom = geom;
  c.kappa_l = a.kappa_l_ratio * geom.kappa_c();
  c.i_sat = photons_from_wcm2(a.i_sat_wcm2, geom);
  c.alpha_s = per_cm_to_per_m(a.alpha_s_per_cm);
  return c;
}

double heart_drive_unit(double kappa_prime, double i_sat) { return std::sqrt(2.0) * kappa_prime / std::pow(i_sat, 0.25); }

Eigen::ArrayXd heart_gain_axis(const Eigen::ArrayXd& pump, double kappa_prime, double i_sat) {
  const double root = std::sqrt(i_sat);
  Eigen::ArrayXd out(pump.size());
  for (Eigen::Index i = 0; i < pump.size(); ++i) {
    if (!(2.0 * pump[i] < root)) throw ConfigError("heart_map.pump: values must stay below sqrt(I_sat)/2");
    out[i] = kappa_prime / (1.0 - 2.0 * pump[i] / root);
  }
  return out;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
}

struct Outputs {
  fs::path dir;
  std::vector<std::string> files;
  fs::path add(const std::string& name) {
    files.push_back(name);
    return dir / name;
  }
};

// --- heart-map -------------------------------------------------------------

json run_heart_map(const RunConfig& rc, Outputs& out) {
  const HeartMapConfig& c = rc.heart_map;
  const double kappa_prime = rc.cavity.kappa_c();
  const double i_sat = i_sat_from_eta0(c.eta0);
  const Eigen::ArrayXd gain = heart_gain_axis(c.pump, kappa_prime, i_sat);
  const double unit = heart_drive_unit(kappa_prime, i_sat);
  FPParams fixed;
  fixed.kappa_prime = kappa_prime;
  fixed.i_sat = i_sat;
  fixed.q = 0.0;  // Q = 2 kappa_G per cell

  const Eigen::ArrayXd drive = c.drive * unit;
  const ResponsivityMap map = responsivity_map(drive, gain, fixed, rc.threads);
  const double empty_ref = 2.0 * kC / kappa_prime;
  {
    CsvWriter w(out.add("heart_map.csv"));
    w.row("pump", "kappa_g", "drive_units", "drive", "abs_responsivity", "enhancement", "mean_intensity");
    for (Eigen::Index r = 0; r < gain.size(); ++r) {
      for (Eigen::Index k = 0; k < drive.size(); ++k) {
        w.row(c.pump[r], gain[r], c.drive[k], drive[k], map.abs_responsivity(r, k),
              map.abs_responsivity(r, k) / empty_ref, map.mean_intensity(r, k));
      }
    }
  }
  {
    // Wide layout: drive across the header, gain down the first column.
    CsvWriter w(out.add("heart_map_matrix.csv"));
    w.field("kappa_g");
    for (Eigen::Index k = 0; k < drive.size(); ++k) w.field(drive[k]);
    w.end_row();
    for (Eigen::Index r = 0; r < gain.size(); ++r) {
      w.field(gain[r]);
      for (Eigen::Index k = 0; k < drive.size(); ++k) w.field(map.abs_responsivity(r, k));
      w.end_row();
    }
  }
  json slices = json::object();
  auto slice = [&](const std::string& name, double drive_units) {
    const GainSlice s = gain_slice(drive_units * unit, gain, fixed, rc.threads);
    CsvWriter w(out.add(name + ".csv"));
    w.row("pump", "kappa_g", "abs_responsivity", "mean_intensity", "classical_intensity", "no_emission_limit");
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < gain.size(); ++i) {
      w.row(c.pump[i], gain[i], s.abs_responsivity[i], s.mean_intensity[i], s.classical_intensity[i],
            s.no_emission_limit[i]);
      if (std::isfinite(s.abs_responsivity[i]) && (best < 0 || s.abs_responsivity[i] > s.abs_responsivity[best])) {
        best = i;
      }
    }
    slices[name] = {{"drive_units", drive_units},
                    {"drive", drive_units * unit},
                    {"peak_pump", best >= 0 ? json(c.pump[best]) : json(nullptr)},
                    {"peak_abs_responsivity", best >= 0 ? json(s.abs_responsivity[best]) : json(nullptr)}};
  };
  slice("slice_zero_drive", 0.0);
  slice("slice_driven", c.slice_drive);

  json failures = json::array();
  for (const auto& f : map.failures) {
    failures.push_back({{"pump", c.pump[f.gain_index]}, {"drive_units", c.drive[f.drive_index]}, {"error", f.message}});
  }
  return {{"empty_cavity_responsivity", empty_ref},
          {"i_sat", i_sat},
          {"drive_unit", unit},
          {"slices", slices},
          {"failed_cells", failures}};
}

// --- sensitivity -------------------------------------------------------------

json run_sensitivity(const RunConfig& rc, Outputs& out) {
  const CompareResult r = compare_cases(rc.sensitivity.compare);
  const CompareConfig& c = rc.sensitivity.compare;
  {
    CsvWriter w(out.add("curves.csv"));
    w.row("t", "dalpha2_gain", "dalpha2_empty");
    for (Eigen::Index i = 0; i < c.t_grid.size(); ++i) w.row(c.t_grid[i], r.gain.dalpha2[i], r.empty.dalpha2[i]);
  }
  {
    CsvWriter w(out.add("detuned_curves.csv"));
    w.row("t", "dalpha2_gain_low", "dalpha2_gain_high");
    for (Eigen::Index i = 0; i < c.t_grid.size(); ++i) w.row(c.t_grid[i], r.gain_low.dalpha2[i], r.gain_high.dalpha2[i]);
  }
  {
    CsvWriter w(out.add("technical_noise.csv"));
    w.row("v_T", "dalpha2_gain", "dalpha2_empty", "I_opt", "I_E", "gamma_prime", "clamp");
    for (const auto& row : r.sweep) {
      w.row(row.v_t, row.dalpha2_gain, row.dalpha2_empty, row.intensity_opt, row.intensity_empty, row.gamma_prime,
            std::string(to_string(row.clamped)));
    }
  }
  const OperatingPoint& op = r.optimum;
  json warnings = json::array();
  for (const auto* curve : {&r.gain, &r.gain_low, &r.gain_high}) {
    if (!curve->meta.warning.empty()) warnings.push_back(curve->meta.warning);
  }
  json crossover = nullptr;
  if (c.v_t > 0.0) {
    crossover = {{"t_c", r.crossover.t_c},
                 {"t_g", r.crossover.t_g},
                 {"t_e", r.crossover.t_e},
                 {"chi_max", r.crossover.chi_max},
                 {"v_t_critical_at_t_star", r.crossover.v_t_critical},
                 {"long_time_ratio", r.crossover.long_time_ratio}};
  }
  return {{"kappa_g_prime", r.kappa_g_prime},
          {"kappa_e_prime", r.kappa_e_prime},
          {"i_sat", r.i_sat},
          {"i_empty", r.i_empty},
          {"optimum",
           {{"gamma_prime", op.gamma_prime},
            {"intensity", op.intensity},
            {"pump", op.pump},
            {"clamp", std::string(to_string(op.clamped))},
            {"gamma_lower", op.gamma_lower},
            {"gamma_upper", op.gamma_upper},
            {"dalpha2_at_t_star", op.dalpha2_at_t},
            {"dalpha_at_t_star_per_cm", per_m_to_per_cm(std::sqrt(op.dalpha2_at_t))}}},
          {"detuned_gamma_prime", {r.gain_low.meta.rate, r.gain_high.meta.rate}},
          {"empty_dalpha2_at_t_star", empty_dalpha2(r.kappa_e_prime, r.i_empty, c.v_t, c.t_star)},
          {"crossover", crossover},
          {"intersection_time", nullable(r.intersection_time)},
          {"v_t_critical", nullable(r.v_t_critical)},
          {"warnings", warnings}};
}

// --- bistability ---------------------------------------------------------------

json turning_json(const std::optional<TurningPoints>& tp) {
  if (!tp) return nullptr;
  return {{"i_plus", tp->i_plus},   {"i_minus", tp->i_minus},           {"p0_plus", tp->p0_plus},
          {"p0_minus", tp->p0_minus}, {"x", tp->x},                     {"approx_i_plus", tp->approx_plus},
          {"approx_i_minus", tp->approx_minus}};
}

json run_bistability(const RunConfig& rc, Outputs& out) {
  const BistabilityRunConfig& c = rc.bistability;
  AbsorberCavity clean = absorber_cavity(rc.cavity, c.absorber);
  AbsorberCavity doped = clean;
  doped.alpha_s += per_cm_to_per_m(c.delta_alpha_per_cm);
  const auto tc = turning_points(clean);
  const auto td = turning_points(doped);
  double lo, hi;
  if (tc && td) {
    lo = c.low * std::min(tc->p0_plus, td->p0_plus);
    hi = c.high * std::max(tc->p0_minus, td->p0_minus);
  } else {
    const double ref = clean.input_power(3.0 * clean.i_sat);
    lo = c.low * ref;
    hi = c.high * ref;
  }
  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(c.points, lo, hi);
  json summary = json::object();
  for (const auto& [name, cav] : {std::pair<std::string, const AbsorberCavity&>{"clean", clean}, {"doped", doped}}) {
    const BistabilityCurve curve = hysteresis_sweep(grid, cav);
    {
      CsvWriter w(out.add("bistability_" + name + ".csv"));
      w.row("P0", "I_root1", "I_root2", "I_root3", "stable1", "stable2", "stable3");
      for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const auto& roots = curve.roots[static_cast<std::size_t>(i)];
        w.field(grid[i]);
        for (std::size_t k = 0; k < 3; ++k) {
          w.field(k < roots.size() ? std::optional<double>(roots[k].intensity) : std::nullopt);
        }
        for (std::size_t k = 0; k < 3; ++k) {
          if (k < roots.size()) {
            w.field(roots[k].stable ? 1 : 0);
          } else {
            w.field(std::string_view());
          }
        }
        w.end_row();
      }
    }
    for (const auto& [dir, values] : {std::pair<std::string, const Eigen::ArrayXd&>{"up", curve.up}, {"down", curve.down}}) {
      CsvWriter w(out.add("hysteresis_" + dir + "_" + name + ".csv"));
      w.row("P0", "I");
      for (Eigen::Index i = 0; i < grid.size(); ++i) w.row(grid[i], values[i]);
    }
    summary[name] = {{"alpha_s_per_cm", per_m_to_per_cm(cav.alpha_s)},
                     {"kappa_linear", cav.kappa_linear()},
                     {"kappa_l", cav.kappa_l},
                     {"i_sat", cav.i_sat},
                     {"bistable", tc.has_value() && curve.turning.has_value()},
                     {"turning_points", turning_json(curve.turning)},
                     {"jump_up_p0", nullable(jump_up_power(cav))},
                     {"jump_up_grid_p0", curve.jump_up_index ? json(grid[*curve.jump_up_index]) : json(nullptr)},
                     {"jump_down_grid_p0", curve.jump_down_index ? json(grid[*curve.jump_down_index]) : json(nullptr)}};
  }
  return summary;
}

// --- sweep-up ----------------------------------------------------------------------

json run_sweep_up(const RunConfig& rc, Outputs& out) {
  const SweepUpRunConfig& c = rc.sweep_up;
  SweepUpConfig cfg;
  cfg.cavity = absorber_cavity(rc.cavity, c.absorber);
  cfg.delta_alpha = per_cm_to_per_m(c.delta_alpha_per_cm);
  cfg.q0 = c.absorber.q0_ratio * cfg.cavity.kappa_l;
  cfg.ramp_time = c.ramp_time;
  cfg.ramp_low = c.ramp_low;
  cfg.ramp_high = c.ramp_high;
  cfg.dt_rate = c.dt_rate;
  cfg.shots = static_cast<int>(c.shots);
  cfg.seed = rc.seed;
  cfg.threads = rc.threads;
  cfg.trace_stride = static_cast<int>(c.trace_stride);
  const SweepUpResult r = sweep_up_experiment(cfg);
  std::vector<double> estimates;
  {
    CsvWriter w(out.add("shots.csv"));
    w.row("shot", "switch_time_a", "switch_time_b", "sign", "estimate_per_m", "estimate_per_cm", "flagged");
    for (std::size_t i = 0; i < r.shots.size(); ++i) {
      const SweepShot& s = r.shots[i];
      w.row(i, s.switch_clean, s.switch_doped, s.sign, s.flagged ? std::numeric_limits<double>::quiet_NaN() : s.estimate,
            s.flagged ? std::numeric_limits<double>::quiet_NaN() : per_m_to_per_cm(s.estimate), s.flagged ? 1 : 0);
      if (!s.flagged) estimates.push_back(s.estimate);
    }
  }
  if (r.trace_t.size() > 0) {
    CsvWriter w(out.add("trace.csv"));
    w.row("t", "P_clean", "P_doped", "differential");
    for (Eigen::Index i = 0; i < r.trace_t.size(); ++i) {
      w.row(r.trace_t[i], r.trace_clean[i], r.trace_doped[i], r.trace_doped[i] - r.trace_clean[i]);
    }
  }
  double mean = std::numeric_limits<double>::quiet_NaN(), se = mean;
  if (!estimates.empty()) {
    mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(estimates.size());
    if (estimates.size() > 1) {
      double ss = 0.0;
      for (double e : estimates) ss += (e - mean) * (e - mean);
      se = std::sqrt(ss / static_cast<double>(estimates.size() - 1) / static_cast<double>(estimates.size()));
    }
  }
  const int valid = r.positive + r.negative + r.zero;
  const bool unanimous = valid > 0 && (r.positive == valid || r.negative == valid);
  return {{"shots", r.shots.size()},
          {"flagged", r.flagged},
          {"positive", r.positive},
          {"negative", r.negative},
          {"zero", r.zero},
          {"unanimous", unanimous},
          {"negative_fraction", valid > 0 ? json(static_cast<double>(r.negative) / valid) : json(nullptr)},
          {"estimate_mean_per_cm", nullable(per_m_to_per_cm(mean))},
          {"estimate_se_per_cm", nullable(per_m_to_per_cm(se))},
          {"delta_alpha_per_cm", c.delta_alpha_per_cm},
          {"p0_start", r.p0_start},
          {"p0_stop", r.p0_stop},
          {"ramp_rate", r.ramp_rate},
          {"jump_up_p0_clean", r.jump_clean},
          {"jump_up_p0_doped", r.jump_doped},
          {"jump_slope", r.jump_slope},
          {"threshold_clean", r.threshold_clean},
          {"threshold_doped", r.threshold_doped},
          {"dt", r.dt}};
}

// --- ringdown ------------------------------------------------------------------------

json run_ringdown(const RunConfig& rc, Outputs& out) {
  const RingdownRunConfig& c = rc.ringdown;
  RingdownConfig cfg;
  cfg.cavity = absorber_cavity(rc.cavity, c.absorber);
  const double kappa_c = rc.cavity.kappa_c();
  cfg.q0 = c.absorber.q0_ratio * cfg.cavity.kappa_l;
  cfg.i_init = photons_from_wcm2(c.i_init_wcm2, rc.cavity);
  cfg.threshold = c.threshold_ratio * cfg.cavity.i_sat;
  cfg.reference = c.reference_ratio ? *c.reference_ratio * cfg.cavity.i_sat : 0.0;
  cfg.dt_rate = c.dt_rate;
  cfg.record_stride = static_cast<int>(c.record_stride);
  cfg.shot_noise = c.shot_noise;
  cfg.crds_window = c.crds_window;
  cfg.shots = static_cast<int>(c.shots);
  cfg.seed = rc.seed;
  cfg.threads = rc.threads;
  cfg.g_drift_var.clear();
  for (double x : c.g_rms_ratio) cfg.g_drift_var.push_back(x * x * kappa_c * kappa_c);
  const RingdownResult r = estimator_comparison(cfg);
  {
    CsvWriter w(out.add("estimators.csv"));
    w.row("g_drift_var", "g_drift_rms", "timing_rms_per_m", "timing_bias_per_m", "crds_rms_per_m", "crds_bias_per_m",
          "timing_rms_per_cm", "crds_rms_per_cm", "flagged");
    for (const auto& row : r.table) {
      w.row(row.g_drift_var, std::sqrt(row.g_drift_var), row.timing_rms, row.timing_bias, row.crds_rms, row.crds_bias,
            per_m_to_per_cm(row.timing_rms), per_m_to_per_cm(row.crds_rms), row.flagged);
    }
  }
  {
    CsvWriter w(out.add("shots.csv"));
    w.row("g_index", "shot", "g", "switch_time", "timing_estimate_per_m", "crds_estimate_per_m", "flagged");
    for (std::size_t gi = 0; gi < r.shots.size(); ++gi) {
      for (std::size_t i = 0; i < r.shots[gi].size(); ++i) {
        const RingdownShot& s = r.shots[gi][i];
        w.row(gi, i, s.g, s.switch_time,
              s.flagged ? std::numeric_limits<double>::quiet_NaN() : s.timing_estimate, s.crds_estimate,
              s.flagged ? 1 : 0);
      }
    }
  }
  {
    CsvWriter w(out.add("trace.csv"));
    w.row("t", "intensity", "recorded_output");
    for (Eigen::Index i = 0; i < r.example_t.size(); ++i) w.row(r.example_t[i], r.example_intensity[i], r.example_record[i]);
  }
  return {{"alpha_true_per_cm", per_m_to_per_cm(r.alpha_true)},
          {"threshold", r.threshold},
          {"reference", r.reference},
          {"i_init", cfg.i_init},
          {"dt", r.dt},
          {"duration", r.duration},
          {"timing_offset", r.timing_offset},
          {"crds_kappa_eff", r.crds_kappa_eff},
          {"bad_times_level_per_m", r.bad_times_level},
          {"bad_times_level_per_cm", per_m_to_per_cm(r.bad_times_level)},
          {"timing_floor_ratio", r.table.front().timing_rms / r.bad_times_level},
          {"crossover_g_drift_var", nullable(r.crossover_g_var)}};
}

}  // namespace

json derived_parameters(const RunConfig& rc) {
  json d = {{"cavity", geometry_json(rc.cavity)}};
  if (rc.command == "heart-map") {
    const double i_sat = i_sat_from_eta0(rc.heart_map.eta0);
    d["i_sat"] = i_sat;
    d["kappa_prime"] = rc.cavity.kappa_c();
    d["drive_unit"] = heart_drive_unit(rc.cavity.kappa_c(), i_sat);
    d["empty_cavity_responsivity"] = empty_cavity_responsivity(rc.cavity, 0.0, 0.0);
    const Eigen::ArrayXd gain = heart_gain_axis(rc.heart_map.pump, rc.cavity.kappa_c(), i_sat);
    d["kappa_g_range"] = {gain.minCoeff(), gain.maxCoeff()};
  } else if (rc.command == "sensitivity") {
    const CompareConfig& c = rc.sensitivity.compare;
    CavityGeometry g = c.cavity;
    g.delta1 = c.delta1_gain;
    d["gain_cavity"] = geometry_json(g);
    d["i_sat"] = i_sat_from_eta0(c.eta0);
    d["i_empty"] = photons_from_wcm2(c.mirror_limit_wcm2, c.cavity);
  } else {
    const AbsorberSpec& a = rc.command == "bistability" ? rc.bistability.absorber
                            : rc.command == "sweep-up"  ? rc.sweep_up.absorber
                                                        : rc.ringdown.absorber;
    const AbsorberCavity cav = absorber_cavity(rc.cavity, a);
    d["kappa_l"] = cav.kappa_l;
    d["i_sat"] = cav.i_sat;
    d["alpha_s_per_m"] = cav.alpha_s;
    d["q0"] = a.q0_ratio * cav.kappa_l;
    d["turning_points"] = turning_json(turning_points(cav));
    if (rc.command == "ringdown") d["i_init"] = photons_from_wcm2(rc.ringdown.i_init_wcm2, rc.cavity);
  }
  return d;
}

std::vector<std::string> execute(const RunConfig& rc, const fs::path& dir) {
  fs::create_directories(dir);
  Outputs out{dir, {}};
  json summary;
  if (rc.command == "heart-map") {
    summary = run_heart_map(rc, out);
  } else if (rc.command == "sensitivity") {
    summary = run_sensitivity(rc, out);
  } else if (rc.command == "bistability") {
    summary = run_bistability(rc, out);
  } else if (rc.command == "sweep-up") {
    summary = run_sweep_up(rc, out);
  } else if (rc.command == "ringdown") {
    summary = run_ringdown(rc, out);
  } else {
    throw ConfigError("unknown command " + rc.command);
  }
  write_json(out.add("summary.json"), summary);
  json manifest = {{"artifact", "icas"},
                   {"version", ICAS_VERSION},
                   {"command", rc.command},
                   {"seed", rc.seed},
                   {"config", rc.resolved},
                   {"derived", derived_parameters(rc)},
                   {"constants",
                    {{"speed_of_light", constants::speed_of_light},
                     {"planck", constants::planck},
                     {"reduced_planck", constants::reduced_planck}}}};
  out.files.push_back("manifest.json");
  manifest["files"] = out.files;
  write_json(dir / "manifest.json", manifest);
  return out.files;
}

int run(int argc, char** argv) {
  CLI::App app{"Intracavity absorption spectroscopy models"};
  app.set_version_flag("--version", std::string(ICAS_VERSION));
  app.require_subcommand(1);

  struct Flags {
    std::string config;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    bool dry_run = false;
  } flags;

  const std::pair<const char*, const char*> commands[] = {
      {"heart-map", "responsivity over drive and gain with threshold slices"},
      {"sensitivity", "gain versus empty-cavity uncertainty curves and technical-noise sweep"},
      {"bistability", "steady-state S-curves and hysteresis sweeps"},
      {"sweep-up", "Monte Carlo differential switching of two absorber cavities"},
      {"ringdown", "saturable ring-down timing versus CRDS fitting under gain drift"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "output directory")->capture_default_str();
    sub->add_option("--seed", flags.seed, "64-bit seed");
    sub->add_option("--threads", flags.threads, "worker cap; results do not depend on it")->check(CLI::Range(1, 1024));
    sub->add_flag("--dry-run", flags.dry_run, "validate and print resolved parameters only");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    json doc;
    const json* doc_ptr = nullptr;
    if (!flags.config.empty()) {
      doc = read_config_file(flags.config);
      doc_ptr = &doc;
    }
    RunConfig rc = resolve_config(command, doc_ptr, flags.seed, flags.threads);
    rc.cavity.validate();
    if (flags.dry_run) {
      std::cout << json{{"command", command}, {"config", rc.resolved}, {"derived", derived_parameters(rc)}}.dump(2)
                << "\n";
      return 0;
    }
    const auto files = execute(rc, flags.out);
    std::cout << command << ": wrote " << files.size() << " files to " << flags.out << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace icas::cli
