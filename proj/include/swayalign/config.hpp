#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swayalign/aligners.hpp"
#include "swayalign/earth.hpp"
#include "swayalign/simulator.hpp"

namespace swayalign {

/// Everything an experiment run needs, with defaults matching the reference
/// swaying scenario: 50 Hz, 180 s, latitude 30.266 deg, 7/10/5 deg sway at
/// 5/6/7 s periods, navigation-grade sensor errors, 1 Hz estimate updates,
/// 30 s terminal metrics window.
struct ExperimentConfig {
  std::vector<AlignMethod> methods = {AlignMethod::kTriad, AlignMethod::kOba,
                                      AlignMethod::kNewTriad,
                                      AlignMethod::kSalad};
  double latitude_deg = 30.266;
  double fs = 50.0;           // IMU sample rate, Hz
  double duration_s = 180.0;  // alignment span, s
  double update_hz = 1.0;     // estimate update cadence
  SwayProfile sway;
  SensorErrorModel sensors;
  EarthModeld earth;
  std::uint64_t seed = 1;
  double rmse_window_s = 30.0;
};

const char* method_name(AlignMethod m);
AlignMethod method_from_name(const std::string& name);  // throws on unknown

/// Parse the flat-key config format:
///
///   # comment
///   sim.fs = 50
///   sway.amplitude_deg = [7, 10, 5]
///   methods = [triad, oba, newtriad, salad]
///
/// Unknown keys and malformed values throw std::runtime_error naming the
/// key (and file line).  Keys may appear in any order; later wins.
ExperimentConfig parse_config_file(const std::string& path);

/// Apply one `key=value` override (the CLI --set flag) on top of an
/// existing config.  Same key set and validation as the file format.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

/// The full key set, one `key = current-value` line each: serves as
/// documentation and as a round-trippable dump of a config.
std::string dump_config(const ExperimentConfig& cfg);

}  // namespace swayalign
