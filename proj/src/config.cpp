#include "swayalign/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swayalign {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail_key(const std::string& key, const std::string& msg) {
  throw std::runtime_error("config key '" + key + "': " + msg);
}

double parse_number(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) {
    fail_key(key, "expected a number, got '" + value + "'");
  }
  return x;
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size()) {
    fail_key(key, "expected a non-negative integer, got '" + value + "'");
  }
  return x;
}

std::vector<std::string> parse_list(const std::string& key,
                                    const std::string& value) {
  const std::string v = trim(value);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    fail_key(key, "expected a [a, b, ...] list, got '" + value + "'");
  }
  std::vector<std::string> items;
  std::stringstream ss(v.substr(1, v.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    items.push_back(trim(item));
  }
  if (!items.empty() && items.back().empty()) {
    items.pop_back();  // tolerate a trailing comma
  }
  return items;
}

Vec3d parse_vec3(const std::string& key, const std::string& value) {
  const std::vector<std::string> items = parse_list(key, value);
  if (items.size() != 3) {
    fail_key(key, "expected exactly 3 values");
  }
  return Vec3d(parse_number(key, items[0]), parse_number(key, items[1]),
               parse_number(key, items[2]));
}

void require(const std::string& key, bool ok, const char* msg) {
  if (!ok) fail_key(key, msg);
}

// Per-axis quantities accept either a scalar (applied to all axes) or a
// three-element list.
Vec3d parse_scalar_or_vec3(const std::string& key, const std::string& value) {
  if (!trim(value).empty() && trim(value).front() == '[') {
    return parse_vec3(key, value);
  }
  return Vec3d::Constant(parse_number(key, value));
}

// Dispatch a single assignment onto the config.  Sensor magnitudes are
// given in the conventional datasheet units and converted here; the
// micro-g conversions use the currently configured gravity, so earth.g
// should be set before the accelerometer keys when both are customized
// (file parsing orders that automatically).
void apply(ExperimentConfig& cfg, const std::string& key,
           const std::string& value) {
  if (key == "methods") {
    std::vector<AlignMethod> methods;
    for (const std::string& name : parse_list(key, value)) {
      const AlignMethod m = method_from_name(name);
      if (std::find(methods.begin(), methods.end(), m) == methods.end()) {
        methods.push_back(m);
      }
    }
    require(key, !methods.empty(), "method list must not be empty");
    cfg.methods = std::move(methods);
  } else if (key == "earth.latitude_deg") {
    const double v = parse_number(key, value);
    require(key, std::abs(v) <= 90.0, "latitude must lie in [-90, 90]");
    cfg.latitude_deg = v;
  } else if (key == "earth.omega_e") {
    const double v = parse_number(key, value);
    require(key, v > 0.0, "rotation rate must be positive");
    cfg.earth.omega_e = v;
  } else if (key == "earth.g") {
    const double v = parse_number(key, value);
    require(key, v > 0.0, "gravity must be positive");
    cfg.earth.g = v;
  } else if (key == "sim.fs") {
    const double v = parse_number(key, value);
    require(key, v > 0.0, "sample rate must be positive");
    cfg.fs = v;
  } else if (key == "sim.duration_s") {
    const double v = parse_number(key, value);
    require(key, v >= 0.0, "duration must be non-negative");
    cfg.duration_s = v;
  } else if (key == "sim.update_hz") {
    const double v = parse_number(key, value);
    require(key, v > 0.0, "update rate must be positive");
    cfg.update_hz = v;
  } else if (key == "sway.amplitude_deg") {
    const Vec3d v = parse_vec3(key, value);
    require(key, v.minCoeff() >= 0.0, "amplitudes must be non-negative");
    cfg.sway.amplitude = deg_to_rad(1.0) * v;
  } else if (key == "sway.period_s") {
    const Vec3d v = parse_vec3(key, value);
    require(key, v.minCoeff() > 0.0, "periods must be positive");
    cfg.sway.period_s = v;
  } else if (key == "sway.center_deg") {
    const Vec3d v = parse_vec3(key, value);
    cfg.sway.center = EulerAnglesd{deg_to_rad(v(0)), deg_to_rad(v(1)),
                                   deg_to_rad(v(2))};
  } else if (key == "sensors.gyro_bias_dph") {
    cfg.sensors.gyro_bias =
        deg_to_rad(1.0) / 3600.0 * parse_scalar_or_vec3(key, value);
  } else if (key == "sensors.gyro_arw_dpsh") {
    const double v = parse_number(key, value);
    require(key, v >= 0.0, "noise density must be non-negative");
    cfg.sensors.gyro_arw = deg_to_rad(v) / 60.0;
  } else if (key == "sensors.accel_bias_ug") {
    cfg.sensors.accel_bias =
        1e-6 * cfg.earth.g * parse_scalar_or_vec3(key, value);
  } else if (key == "sensors.accel_vrw_ugpshz") {
    const double v = parse_number(key, value);
    require(key, v >= 0.0, "noise density must be non-negative");
    cfg.sensors.accel_vrw = v * 1e-6 * cfg.earth.g;
  } else if (key == "seed") {
    cfg.seed = parse_seed(key, value);
  } else if (key == "rmse.window_s") {
    const double v = parse_number(key, value);
    require(key, v > 0.0, "window must be positive");
    cfg.rmse_window_s = v;
  } else {
    throw std::runtime_error("unknown config key '" + key + "'");
  }
}

}  // namespace

const char* method_name(AlignMethod m) {
  switch (m) {
    case AlignMethod::kTriad: return "triad";
    case AlignMethod::kOba: return "oba";
    case AlignMethod::kNewTriad: return "newtriad";
    case AlignMethod::kSalad: return "salad";
  }
  throw std::logic_error("invalid method enum");
}

AlignMethod method_from_name(const std::string& name) {
  std::string n = trim(name);
  std::transform(n.begin(), n.end(), n.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (n == "triad") return AlignMethod::kTriad;
  if (n == "oba") return AlignMethod::kOba;
  if (n == "newtriad") return AlignMethod::kNewTriad;
  if (n == "salad") return AlignMethod::kSalad;
  throw std::runtime_error("unknown method '" + name +
                           "' (expected triad, oba, newtriad, or salad)");
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path + "'");
  }
  std::vector<std::pair<std::string, std::string>> assignments;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string body = trim(line);
    if (body.empty()) {
      continue;
    }
    const size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 'key = value'");
    }
    assignments.emplace_back(trim(body.substr(0, eq)),
                             trim(body.substr(eq + 1)));
  }

  ExperimentConfig cfg;
  // Earth constants first so unit conversions elsewhere see them.
  for (const auto& [key, value] : assignments) {
    if (key.rfind("earth.", 0) == 0) apply(cfg, key, value);
  }
  for (const auto& [key, value] : assignments) {
    if (key.rfind("earth.", 0) != 0) apply(cfg, key, value);
  }
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw std::runtime_error("override '" + assignment +
                             "': expected key=value");
  }
  apply(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string dump_config(const ExperimentConfig& cfg) {
  const auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  const auto vec = [&](const Vec3d& v) {
    return "[" + num(v(0)) + ", " + num(v(1)) + ", " + num(v(2)) + "]";
  };
  std::string methods;
  for (const AlignMethod m : cfg.methods) {
    methods += methods.empty() ? "" : ", ";
    methods += method_name(m);
  }
  std::string out;
  out += "methods = [" + methods + "]\n";
  out += "earth.latitude_deg = " + num(cfg.latitude_deg) + "\n";
  out += "earth.omega_e = " + num(cfg.earth.omega_e) + "\n";
  out += "earth.g = " + num(cfg.earth.g) + "\n";
  out += "sim.fs = " + num(cfg.fs) + "\n";
  out += "sim.duration_s = " + num(cfg.duration_s) + "\n";
  out += "sim.update_hz = " + num(cfg.update_hz) + "\n";
  out += "sway.amplitude_deg = " + vec(rad_to_deg(1.0) * cfg.sway.amplitude) +
         "\n";
  out += "sway.period_s = " + vec(cfg.sway.period_s) + "\n";
  out += "sway.center_deg = " +
         vec(Vec3d(rad_to_deg(cfg.sway.center.pitch),
                   rad_to_deg(cfg.sway.center.roll),
                   rad_to_deg(cfg.sway.center.yaw))) +
         "\n";
  out += "sensors.gyro_bias_dph = " +
         vec(rad_to_deg(1.0) * 3600.0 * cfg.sensors.gyro_bias) + "\n";
  out += "sensors.gyro_arw_dpsh = " +
         num(rad_to_deg(cfg.sensors.gyro_arw) * 60.0) + "\n";
  out += "sensors.accel_bias_ug = " +
         vec(cfg.sensors.accel_bias / (1e-6 * cfg.earth.g)) + "\n";
  out += "sensors.accel_vrw_ugpshz = " +
         num(cfg.sensors.accel_vrw / (1e-6 * cfg.earth.g)) + "\n";
  out += "seed = " + std::to_string(cfg.seed) + "\n";
  out += "rmse.window_s = " + num(cfg.rmse_window_s) + "\n";
  return out;
}

}  // namespace swayalign
