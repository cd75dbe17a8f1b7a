#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "icas/sensitivity.hpp"
#include "icas/units.hpp"

namespace icas::cli {

using nlohmann::json;

/// Reads one JSON object, filling defaults and recording every effective value
/// in `resolved`. finish() rejects keys that were never read.
class Section {
 public:
  Section(const json* node, std::string path, json* resolved);

  double number(const std::string& key, double def, const std::function<bool(double)>& ok = {},
                const char* requirement = "");
  std::optional<double> optional_number(const std::string& key, const std::function<bool(double)>& ok = {},
                                        const char* requirement = "");
  long long integer(const std::string& key, long long def, long long min, long long max);
  bool boolean(const std::string& key, bool def);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& def,
                              const std::function<bool(double)>& ok = {}, const char* requirement = "");

  struct GridDefault {
    double min;
    double max;
    long long count;
    bool log;
  };
  /// Either an explicit array or {"min", "max", "count", "spacing": "linear" | "log"}.
  Eigen::ArrayXd grid(const std::string& key, const GridDefault& def);

  Section child(const std::string& key);
  void finish() const;

 private:
  const json* find(const std::string& key);
  std::string where(const std::string& key) const;

  const json* node_;
  std::string path_;
  json* resolved_;
  std::vector<std::string> seen_;
};

struct HeartMapConfig {
  double eta0 = 1e6;
  Eigen::ArrayXd pump;         // a values for the gain axis
  Eigen::ArrayXd drive;        // drive in units of sqrt(2) kappa' / I_sat^(1/4)
  double slice_drive = 1.0;    // same units
};

struct SensitivityRunConfig {
  CompareConfig compare;
};

/// Saturable-absorber cavity shared by the bistability, sweep-up and ring-down commands.
struct AbsorberSpec {
  double kappa_l_ratio = 12.0;     // kappa_L / kappa_C
  double i_sat_wcm2 = 1.0;
  double alpha_s_per_cm = 0.0;
  double q0_ratio = 2.0;           // Q0 / kappa_L
};

struct BistabilityRunConfig {
  AbsorberSpec absorber;
  double delta_alpha_per_cm = 1e-8;
  long long points = 801;
  double low = 0.8;
  double high = 1.2;
};

struct SweepUpRunConfig {
  AbsorberSpec absorber;
  double delta_alpha_per_cm = 1e-8;
  double ramp_time = 0.0;  // s, 0 selects 100 / kappa_C
  double ramp_low = 0.8;
  double ramp_high = 1.2;
  double dt_rate = 0.005;
  long long shots = 100;
  long long trace_stride = 100;
};

struct RingdownRunConfig {
  AbsorberSpec absorber;
  double i_init_wcm2 = 1e4;
  double threshold_ratio = 0.1;               // threshold / I_sat
  std::optional<double> reference_ratio;      // reference / I_sat, defaults to the threshold
  double dt_rate = 0.01;
  long long record_stride = 10;
  bool shot_noise = true;
  double crds_window = 0.0;                   // s, 0 selects 5 / kappa_C
  long long shots = 200;
  std::vector<double> g_rms_ratio;            // sqrt(<g'^2>) / kappa_C
};

struct RunConfig {
  std::string command;
  CavityGeometry cavity;
  std::uint64_t seed = 1;
  int threads = 1;
  HeartMapConfig heart_map;
  SensitivityRunConfig sensitivity;
  BistabilityRunConfig bistability;
  SweepUpRunConfig sweep_up;
  RingdownRunConfig ringdown;
  json resolved;  // every effective setting of `command`, without the thread count
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"heart-map", "sensitivity", "bistability", "sweep-up", "ringdown"};
  return names;
}

/// Parse and validate. `doc` may be null (all defaults). Command-line seed and
/// thread overrides win over the file. Throws ConfigError with the key path.
RunConfig resolve_config(const std::string& command, const json* doc, std::optional<std::uint64_t> seed,
                         std::optional<int> threads);

/// Reads a JSON file; ConfigError on I/O or parse failure.
json read_config_file(const std::filesystem::path& path);

}  // namespace icas::cli
