#include "swayalign/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "swayalign/attmath.hpp"

namespace swayalign {

namespace {

constexpr char kImuHeader[] = "t,gx,gy,gz,ax,ay,az";
constexpr char kTruthHeader[] = "t,pitch_deg,roll_deg,yaw_deg";
constexpr char kSeriesHeader[] =
    "t,method,phi_e_deg,phi_n_deg,phi_u_deg,lat_err_deg,ready";
constexpr char kEstimatesHeader[] =
    "t,method,pitch_deg,roll_deg,yaw_deg,lat_deg,ready";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  return out;
}

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& msg) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) {
    fields.push_back(f);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

double field_double(const std::string& path, int line,
                    const std::string& field) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) {
    fail(path, line, "expected a number, got '" + field + "'");
  }
  return v;
}

bool field_bool(const std::string& path, int line, const std::string& field) {
  if (field == "0") return false;
  if (field == "1") return true;
  fail(path, line, "expected 0 or 1, got '" + field + "'");
}

// Shared reader skeleton: header check, per-line field-count check, then a
// row callback.  Tolerates a trailing newline and CRLF endings.
template <typename Fn>
void read_rows(const std::string& path, const char* header, size_t n_fields,
               Fn&& on_row) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!saw_header) {
      if (line != header) {
        fail(path, line_no,
             std::string("expected header '") + header + "', got '" + line +
                 "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) {
      continue;
    }
    const std::vector<std::string> fields = split(line);
    if (fields.size() != n_fields) {
      fail(path, line_no,
           "expected " + std::to_string(n_fields) + " fields, got " +
               std::to_string(fields.size()));
    }
    on_row(line_no, fields);
  }
  if (!saw_header) {
    throw std::runtime_error(path + ": empty file (missing header)");
  }
}

void check_monotone(const std::string& path, int line, double t,
                    double prev_t, bool first) {
  if (!first && !(t > prev_t)) {
    fail(path, line, "timestamps must strictly increase (" + num(t) +
                         " after " + num(prev_t) + ")");
  }
}

}  // namespace

void write_imu_csv(const std::string& path, const std::vector<ImuSample>& s) {
  std::ofstream out = open_out(path);
  out << kImuHeader << "\n";
  for (const ImuSample& x : s) {
    out << num(x.t) << ',' << num(x.gyro(0)) << ',' << num(x.gyro(1)) << ','
        << num(x.gyro(2)) << ',' << num(x.accel(0)) << ',' << num(x.accel(1))
        << ',' << num(x.accel(2)) << "\n";
  }
}

std::vector<ImuSample> read_imu_csv(const std::string& path) {
  std::vector<ImuSample> out;
  read_rows(path, kImuHeader, 7, [&](int line, const auto& f) {
    ImuSample s;
    s.t = field_double(path, line, f[0]);
    check_monotone(path, line, s.t, out.empty() ? 0 : out.back().t,
                   out.empty());
    s.gyro = Vec3d(field_double(path, line, f[1]),
                   field_double(path, line, f[2]),
                   field_double(path, line, f[3]));
    s.accel = Vec3d(field_double(path, line, f[4]),
                    field_double(path, line, f[5]),
                    field_double(path, line, f[6]));
    out.push_back(s);
  });
  return out;
}

void write_truth_csv(const std::string& path,
                     const std::vector<TruthSample>& s) {
  std::ofstream out = open_out(path);
  out << kTruthHeader << "\n";
  for (const TruthSample& x : s) {
    out << num(x.t) << ',' << num(rad_to_deg(x.euler.pitch)) << ','
        << num(rad_to_deg(x.euler.roll)) << ','
        << num(rad_to_deg(x.euler.yaw)) << "\n";
  }
}

std::vector<TruthSample> read_truth_csv(const std::string& path) {
  std::vector<TruthSample> out;
  read_rows(path, kTruthHeader, 4, [&](int line, const auto& f) {
    TruthSample s;
    s.t = field_double(path, line, f[0]);
    check_monotone(path, line, s.t, out.empty() ? 0 : out.back().t,
                   out.empty());
    s.euler = EulerAnglesd{deg_to_rad(field_double(path, line, f[1])),
                           deg_to_rad(field_double(path, line, f[2])),
                           deg_to_rad(field_double(path, line, f[3]))};
    s.c_b_n = euler_to_dcm(s.euler);
    // The body-to-anchor rotation is not representable in this schema and
    // is not needed for replay scoring; leave it identity.
    s.c_b_b0 = Mat3d::Identity();
    out.push_back(s);
  });
  return out;
}

void write_series_csv(const std::string& path,
                      const std::vector<ErrorRow>& rows) {
  std::ofstream out = open_out(path);
  out << kSeriesHeader << "\n";
  for (const ErrorRow& r : rows) {
    out << num(r.t) << ',' << r.method << ',' << num(r.phi_e_deg) << ','
        << num(r.phi_n_deg) << ',' << num(r.phi_u_deg) << ','
        << num(r.lat_err_deg) << ',' << (r.ready ? '1' : '0') << "\n";
  }
}

std::vector<ErrorRow> read_series_csv(const std::string& path) {
  std::vector<ErrorRow> out;
  read_rows(path, kSeriesHeader, 7, [&](int line, const auto& f) {
    ErrorRow r;
    r.t = field_double(path, line, f[0]);
    r.method = f[1];
    if (r.method.empty()) {
      fail(path, line, "empty method name");
    }
    r.phi_e_deg = field_double(path, line, f[2]);
    r.phi_n_deg = field_double(path, line, f[3]);
    r.phi_u_deg = field_double(path, line, f[4]);
    r.lat_err_deg = field_double(path, line, f[5]);
    r.ready = field_bool(path, line, f[6]);
    out.push_back(r);
  });
  return out;
}

void write_estimates_csv(const std::string& path,
                         const std::vector<EstimateRow>& rows) {
  std::ofstream out = open_out(path);
  out << kEstimatesHeader << "\n";
  for (const EstimateRow& r : rows) {
    out << num(r.t) << ',' << r.method << ',' << num(r.pitch_deg) << ','
        << num(r.roll_deg) << ',' << num(r.yaw_deg) << ',' << num(r.lat_deg)
        << ',' << (r.ready ? '1' : '0') << "\n";
  }
}

}  // namespace swayalign
