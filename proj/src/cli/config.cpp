#include "icas/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "icas/errors.hpp"

namespace icas::cli {
namespace {

bool positive(double v) { return v > 0.0; }
bool non_negative(double v) { return v >= 0.0; }
bool unit_open(double v) { return v > 0.0 && v < 1.0; }

const char* const kSections[] = {"heart_map", "sensitivity", "bistability", "sweep_up", "ringdown"};

std::string section_for(const std::string& command) {
  std::string s = command;
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

}  // namespace

Section::Section(const json* node, std::string path, json* resolved)
    : node_(node), path_(std::move(path)), resolved_(resolved) {
  if (node_ != nullptr && !node_->is_object()) throw ConfigError(path_ + ": expected an object");
  if (!resolved_->is_object()) *resolved_ = json::object();
}

std::string Section::where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

const json* Section::find(const std::string& key) {
  seen_.push_back(key);
  if (node_ == nullptr) return nullptr;
  auto it = node_->find(key);
  if (it == node_->end() || it->is_null()) return nullptr;
  return &*it;
}

double Section::number(const std::string& key, double def, const std::function<bool(double)>& ok,
                       const char* requirement) {
  const json* v = find(key);
  double out = def;
  if (v != nullptr) {
    if (!v->is_number()) throw ConfigError(where(key) + ": expected a number");
    out = v->get<double>();
  }
  if (!std::isfinite(out) || (ok && !ok(out))) {
    throw ConfigError(where(key) + ": must be " + (requirement[0] ? requirement : "finite"));
  }
  (*resolved_)[key] = out;
  return out;
}

std::optional<double> Section::optional_number(const std::string& key, const std::function<bool(double)>& ok,
                                               const char* requirement) {
  const json* v = find(key);
  if (v == nullptr) {
    (*resolved_)[key] = nullptr;
    return std::nullopt;
  }
  return number(key, 0.0, ok, requirement);
}

long long Section::integer(const std::string& key, long long def, long long min, long long max) {
  const json* v = find(key);
  long long out = def;
  if (v != nullptr) {
    if (!v->is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
    if (v->is_number_unsigned() && v->get<unsigned long long>() > static_cast<unsigned long long>(max)) {
      throw ConfigError(where(key) + ": out of range");
    }
    out = v->get<long long>();
  }
  if (out < min || out > max) {
    std::ostringstream msg;
    msg << where(key) << ": must lie in [" << min << ", " << max << "]";
    throw ConfigError(msg.str());
  }
  (*resolved_)[key] = out;
  return out;
}

bool Section::boolean(const std::string& key, bool def) {
  const json* v = find(key);
  bool out = def;
  if (v != nullptr) {
    if (!v->is_boolean()) throw ConfigError(where(key) + ": expected true or false");
    out = v->get<bool>();
  }
  (*resolved_)[key] = out;
  return out;
}

std::vector<double> Section::numbers(const std::string& key, const std::vector<double>& def,
                                     const std::function<bool(double)>& ok, const char* requirement) {
  const json* v = find(key);
  std::vector<double> out = def;
  if (v != nullptr) {
    if (!v->is_array()) throw ConfigError(where(key) + ": expected an array of numbers");
    out.clear();
    for (const auto& x : *v) {
      if (!x.is_number()) throw ConfigError(where(key) + ": expected an array of numbers");
      out.push_back(x.get<double>());
    }
  }
  if (out.empty()) throw ConfigError(where(key) + ": must not be empty");
  for (double x : out) {
    if (!std::isfinite(x) || (ok && !ok(x))) {
      throw ConfigError(where(key) + ": entries must be " + (requirement[0] ? requirement : "finite"));
    }
  }
  (*resolved_)[key] = out;
  return out;
}

Eigen::ArrayXd Section::grid(const std::string& key, const GridDefault& def) {
  const json* v = find(key);
  if (v != nullptr && v->is_array()) {
    std::vector<double> vals;
    for (const auto& x : *v) {
      if (!x.is_number()) throw ConfigError(where(key) + ": expected numbers");
      vals.push_back(x.get<double>());
    }
    if (vals.empty()) throw ConfigError(where(key) + ": grid must not be empty");
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (!std::isfinite(vals[i]) || (i > 0 && !(vals[i] > vals[i - 1]))) {
        throw ConfigError(where(key) + ": grid values must be finite and strictly increasing");
      }
    }
    (*resolved_)[key] = vals;
    return Eigen::Map<Eigen::ArrayXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  }
  if (v != nullptr && !v->is_object()) throw ConfigError(where(key) + ": expected an array or a grid object");
  json sub_resolved = json::object();
  Section s(v, where(key), &sub_resolved);
  const double lo = s.number("min", def.min);
  const double hi = s.number("max", def.max);
  const long long count = s.integer("count", def.count, 0, 10'000'000);
  bool log = def.log;
  {
    const json* sp = s.find("spacing");
    if (sp != nullptr) {
      if (!sp->is_string() || (sp->get<std::string>() != "linear" && sp->get<std::string>() != "log")) {
        throw ConfigError(where(key) + ".spacing: must be \"linear\" or \"log\"");
      }
      log = sp->get<std::string>() == "log";
    }
    sub_resolved["spacing"] = log ? "log" : "linear";
  }
  s.finish();
  if (count < 1) throw ConfigError(where(key) + ": grid must not be empty");
  if (count > 1 && !(hi > lo)) throw ConfigError(where(key) + ": max must exceed min");
  if (log && !(lo > 0.0)) throw ConfigError(where(key) + ": log spacing needs min > 0");
  (*resolved_)[key] = sub_resolved;
  Eigen::ArrayXd out(count);
  if (count == 1) {
    out[0] = lo;
  } else if (log) {
    out = Eigen::ArrayXd::LinSpaced(count, std::log10(lo), std::log10(hi));
    out = Eigen::pow(10.0, out);
    out[0] = lo;
    out[count - 1] = hi;
  } else {
    out = Eigen::ArrayXd::LinSpaced(count, lo, hi);
  }
  return out;
}

Section Section::child(const std::string& key) {
  const json* v = find(key);
  if (v != nullptr && !v->is_object()) throw ConfigError(where(key) + ": expected an object");
  json& slot = (*resolved_)[key];
  slot = json::object();
  return Section(v, where(key), &slot);
}

void Section::finish() const {
  if (node_ == nullptr) return;
  for (auto it = node_->begin(); it != node_->end(); ++it) {
    if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end()) {
      throw ConfigError(where(it.key()) + ": unknown key");
    }
  }
}

json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
}

namespace {

CavityGeometry read_cavity(Section s, double delta1_default) {
  CavityGeometry g;
  g.length = s.number("length_m", g.length, positive, "positive");
  g.mode_area = s.number("mode_area_m2", g.mode_area, positive, "positive");
  g.wavelength = s.number("wavelength_m", g.wavelength, positive, "positive");
  g.delta1 = s.number("delta1", delta1_default, unit_open, "in (0, 1)");
  g.delta0 = s.number("delta0", g.delta0, non_negative, "non-negative");
  s.finish();
  return g;
}

AbsorberSpec read_absorber(Section& s, double kappa_l_ratio, double alpha_default) {
  AbsorberSpec a;
  a.kappa_l_ratio = s.number("kappa_l_over_kappa_c", kappa_l_ratio, non_negative, "non-negative");
  a.i_sat_wcm2 = s.number("i_sat_wcm2", a.i_sat_wcm2, positive, "positive");
  a.alpha_s_per_cm = s.number("alpha_s_per_cm", alpha_default, non_negative, "non-negative");
  a.q0_ratio = s.number("q0_over_kappa_l", a.q0_ratio, non_negative, "non-negative");
  return a;
}

void read_heart_map(Section s, HeartMapConfig& c) {
  c.eta0 = s.number("eta0", c.eta0, [](double v) { return v > 1.0; }, "greater than 1");
  c.pump = s.grid("pump", {-6.0, 12.0, 91, false});
  c.drive = s.grid("drive", {0.0, 4.0, 21, false});
  c.slice_drive = s.number("slice_drive", c.slice_drive, non_negative, "non-negative");
  s.finish();
  if ((c.drive < 0.0).any()) throw ConfigError("heart_map.drive: values must be non-negative");
}

void read_sensitivity(Section s, SensitivityRunConfig& c, const CavityGeometry& cavity) {
  CompareConfig& k = c.compare;
  k.cavity = cavity;
  k.delta1_gain = s.number("delta1_gain", k.delta1_gain, unit_open, "in (0, 1)");
  k.eta0 = s.number("eta0", k.eta0, [](double v) { return v > 1.0; }, "greater than 1");
  k.mirror_limit_wcm2 = s.number("mirror_limit_wcm2", k.mirror_limit_wcm2, positive, "positive");
  k.v_t = s.number("v_t", k.v_t, non_negative, "non-negative");
  k.t_star = s.number("t_star_s", k.t_star, positive, "positive");
  k.min_pump = s.number("min_pump", k.min_pump, positive, "positive");
  k.detune_factor = s.number("detune_factor", k.detune_factor, [](double v) { return v > 1.0; }, "greater than 1");
  k.t_grid = s.grid("t_grid_s", {1e-6, 1e3, 91, true});
  k.v_t_sweep = s.grid("v_t_sweep", {1e-16, 1e-2, 57, true});
  s.finish();
  if ((k.t_grid <= 0.0).any()) throw ConfigError("sensitivity.t_grid_s: times must be positive");
  if ((k.v_t_sweep < 0.0).any()) throw ConfigError("sensitivity.v_t_sweep: values must be non-negative");
}

void read_bistability(Section s, BistabilityRunConfig& c) {
  c.absorber = read_absorber(s, 12.0, 0.0);
  c.delta_alpha_per_cm = s.number("delta_alpha_per_cm", c.delta_alpha_per_cm, non_negative, "non-negative");
  c.points = s.integer("points", c.points, 2, 10'000'000);
  c.low = s.number("p0_low_factor", c.low, positive, "positive");
  c.high = s.number("p0_high_factor", c.high, positive, "positive");
  s.finish();
  if (!(c.low < 1.0) || !(c.high > 1.0)) {
    throw ConfigError("bistability: need p0_low_factor < 1 < p0_high_factor");
  }
}

void read_sweep_up(Section s, SweepUpRunConfig& c) {
  c.absorber = read_absorber(s, 12.0, 0.0);
  c.delta_alpha_per_cm = s.number("delta_alpha_per_cm", c.delta_alpha_per_cm, non_negative, "non-negative");
  c.ramp_time = s.number("ramp_time_s", c.ramp_time, non_negative, "non-negative (0 selects 100/kappa_C)");
  c.ramp_low = s.number("ramp_low", c.ramp_low, unit_open, "in (0, 1)");
  c.ramp_high = s.number("ramp_high", c.ramp_high, [](double v) { return v > 1.0; }, "greater than 1");
  c.dt_rate = s.number("dt_rate", c.dt_rate, [](double v) { return v > 0.0 && v <= 0.01; }, "in (0, 0.01]");
  c.shots = s.integer("shots", c.shots, 1, 100'000'000);
  c.trace_stride = s.integer("trace_stride", c.trace_stride, 0, 1'000'000'000);
  s.finish();
}

void read_ringdown(Section s, RingdownRunConfig& c) {
  c.absorber = read_absorber(s, 100.0, 1e-10);
  c.i_init_wcm2 = s.number("i_init_wcm2", c.i_init_wcm2, positive, "positive");
  c.threshold_ratio = s.number("threshold_over_i_sat", c.threshold_ratio, positive, "positive");
  c.reference_ratio = s.optional_number("reference_over_i_sat", positive, "positive");
  c.dt_rate = s.number("dt_rate", c.dt_rate, [](double v) { return v > 0.0 && v <= 0.01; }, "in (0, 0.01]");
  c.record_stride = s.integer("record_stride", c.record_stride, 1, 1'000'000);
  c.shot_noise = s.boolean("shot_noise", c.shot_noise);
  c.crds_window = s.number("crds_window_s", c.crds_window, non_negative, "non-negative (0 selects 5/kappa_C)");
  c.shots = s.integer("shots", c.shots, 1, 100'000'000);
  c.g_rms_ratio = s.numbers("g_drift_rms_over_kappa_c", {0.0, 1e-4, 1e-3, 1e-2, 3e-2, 0.1, 0.3}, non_negative,
                            "non-negative");
  s.finish();
}

}  // namespace

RunConfig resolve_config(const std::string& command, const json* doc, std::optional<std::uint64_t> seed,
                         std::optional<int> threads) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    throw ConfigError("unknown command " + command);
  }
  if (doc != nullptr && !doc->is_object()) throw ConfigError("config: top level must be an object");

  RunConfig rc;
  rc.command = command;
  json resolved = json::object();
  json scratch = json::object();
  Section top(doc, "", &resolved);

  const long long file_seed = top.integer("seed", 1, 0, std::numeric_limits<long long>::max());
  const long long file_threads = top.integer("threads", 1, 1, 1024);
  rc.seed = seed ? *seed : static_cast<std::uint64_t>(file_seed);
  rc.threads = threads ? *threads : static_cast<int>(file_threads);
  if (rc.threads < 1) throw ConfigError("threads: must be at least 1");
  resolved["seed"] = rc.seed;
  resolved.erase("threads");

  rc.cavity = read_cavity(top.child("cavity"), 1e-5);

  const std::string active = section_for(command);
  for (const char* name : kSections) {
    const bool is_active = active == name;
    json* slot = is_active ? &resolved : &scratch;
    top.child(name);  // marks the key as known; the echo is filled below
    Section holder(doc, "", slot);
    Section s = holder.child(name);
    if (std::string(name) == "heart_map") {
      HeartMapConfig c;
      read_heart_map(s, c);
      if (is_active) rc.heart_map = c;
    } else if (std::string(name) == "sensitivity") {
      SensitivityRunConfig c;
      read_sensitivity(s, c, rc.cavity);
      if (is_active) rc.sensitivity = c;
    } else if (std::string(name) == "bistability") {
      BistabilityRunConfig c;
      read_bistability(s, c);
      if (is_active) rc.bistability = c;
    } else if (std::string(name) == "sweep_up") {
      SweepUpRunConfig c;
      read_sweep_up(s, c);
      if (is_active) rc.sweep_up = c;
    } else {
      RingdownRunConfig c;
      read_ringdown(s, c);
      if (is_active) rc.ringdown = c;
    }
  }
  top.finish();
  // Keep only the active section next to the shared settings.
  for (const char* name : kSections) {
    if (active != name) resolved.erase(name);
  }
  rc.resolved = resolved;
  return rc;
}

}  // namespace icas::cli
