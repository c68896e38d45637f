#include "swayalign/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "swayalign/aligners.hpp"
#include "swayalign/attmath.hpp"
#include "swayalign/propagation.hpp"
#include "swayalign/rng.hpp"
#include "swayalign/simulator.hpp"

namespace swayalign {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stored epoch whose time is nearest to target (epochs sorted by t).
const VelocityVectors& epoch_nearest(const std::vector<VelocityVectors>& v,
                                     double target) {
  const auto it = std::lower_bound(
      v.begin(), v.end(), target,
      [](const VelocityVectors& a, double t) { return a.t < t; });
  if (it == v.begin()) return v.front();
  if (it == v.end()) return v.back();
  const auto before = std::prev(it);
  return (target - before->t) <= (it->t - target) ? *before : *it;
}

const TruthSample& truth_at(const std::vector<TruthSample>& truth, double t) {
  const auto it = std::lower_bound(
      truth.begin(), truth.end(), t,
      [](const TruthSample& a, double tt) { return a.t < tt; });
  for (const auto* cand : {it != truth.end() ? &*it : nullptr,
                           it != truth.begin() ? &*std::prev(it) : nullptr}) {
    if (cand != nullptr && std::abs(cand->t - t) <= 1e-6) {
      return *cand;
    }
  }
  throw std::runtime_error("no truth sample within 1e-6 s of epoch t = " +
                           std::to_string(t));
}

}  // namespace

AlignmentRun run_alignment(const ExperimentConfig& cfg) {
  if (cfg.duration_s <= 0.0) {
    return {};
  }
  SensorErrorModel sensors = cfg.sensors;
  sensors.seed = cfg.seed;
  const SimulatedImu synth =
      synth_imu(cfg.sway, sensors, deg_to_rad(cfg.latitude_deg), cfg.fs,
                cfg.duration_s, cfg.earth);
  return run_alignment(cfg, synth.imu, &synth.truth);
}

AlignmentRun run_alignment(const ExperimentConfig& cfg,
                           const std::vector<ImuSample>& imu,
                           const std::vector<TruthSample>* truth) {
  AlignmentRun out;
  if (imu.size() < 2) {
    return out;
  }
  const double lat = deg_to_rad(cfg.latitude_deg);
  const double t0 = imu.front().t;
  const double dt_update = 1.0 / cfg.update_hz;

  BodyTracker bt;
  NavTracker nav(cfg.earth, lat);
  VelocityIntegrator vi_known(VelocityIntegrator::Chain::kLatitudeKnown,
                              cfg.earth, lat);
  VelocityIntegrator vi_norm(VelocityIntegrator::Chain::kNormalized,
                             cfg.earth);

  // Every method owns its accumulators, so running a subset produces the
  // same numbers for the methods that are enabled.
  WahbaAccumulator wahba;
  DyadicAccumulator dyad;
  DyadicAccumulator dyad_norm;
  std::vector<VelocityVectors> known_epochs;
  std::vector<VelocityVectors> norm_epochs;
  std::optional<double> prev_l_plus;
  long next_update = 1;

  for (const ImuSample& s : imu) {
    bt.update(s);
    nav.advance(s.t);
    vi_known.update(s, bt.c_b_b0());
    vi_norm.update(s, bt.c_b_b0());

    if (s.t + 1e-9 < t0 + next_update * dt_update) {
      continue;
    }
    next_update =
        static_cast<long>(std::floor((s.t - t0) / dt_update + 1e-9)) + 1;
    const double epoch_t = s.t;

    const VelocityVectors vk = vi_known.current();
    const VelocityVectors vn = vi_norm.current();
    known_epochs.push_back(vk);
    norm_epochs.push_back(vn);
    const VelocityVectors* vk_prev =
        known_epochs.size() >= 2 ? &known_epochs[known_epochs.size() - 2]
                                 : nullptr;
    const VelocityVectors* vn_prev =
        norm_epochs.size() >= 2 ? &norm_epochs[norm_epochs.size() - 2]
                                : nullptr;

    wahba.add(vk);
    dyad.add(vk);
    dyad_norm.add(vn);
    const LatitudeEstimate le = salad_latitude(dyad_norm, prev_l_plus);
    if (le.valid) {
      prev_l_plus = le.l_plus;
    }

    const TruthSample* ts =
        truth != nullptr ? &truth_at(*truth, epoch_t) : nullptr;

    for (const AlignMethod m : cfg.methods) {
      AlignmentEstimate est;
      switch (m) {
        case AlignMethod::kTriad: {
          // Pair the current epoch with the stored one nearest half the
          // elapsed time.
          const VelocityVectors& early =
              epoch_nearest(known_epochs, t0 + (epoch_t - t0) / 2.0);
          est = triad_align(early, vk);
          break;
        }
        case AlignMethod::kOba:
          est = oba_align(wahba);
          break;
        case AlignMethod::kNewTriad:
          est = newtriad_solve(dyad, vk, vk_prev);
          break;
        case AlignMethod::kSalad:
          est = salad_solve(dyad_norm, le, vn, vn_prev);
          break;
      }

      EstimateRow er;
      er.t = epoch_t;
      er.method = method_name(m);
      er.pitch_deg = er.roll_deg = er.yaw_deg = er.lat_deg = kNaN;
      er.ready = est.ready;
      ErrorRow xr;
      xr.t = epoch_t;
      xr.method = er.method;
      xr.phi_e_deg = xr.phi_n_deg = xr.phi_u_deg = xr.lat_err_deg = kNaN;
      xr.ready = est.ready;

      if (est.ready) {
        const Mat3d c_b_n =
            m == AlignMethod::kSalad
                ? realtime_attitude_salad(est.c_b0, *est.latitude,
                                          epoch_t - t0, bt.c_b_b0(),
                                          cfg.earth)
                : realtime_attitude_latknown(est.c_b0, nav.c_n_n0(),
                                             bt.c_b_b0());
        const EulerDecomposition<double> eu = dcm_to_euler(c_b_n);
        er.pitch_deg = rad_to_deg(eu.angles.pitch);
        er.roll_deg = rad_to_deg(eu.angles.roll);
        er.yaw_deg = rad_to_deg(eu.angles.yaw);
        if (m == AlignMethod::kSalad) {
          er.lat_deg = rad_to_deg(*est.latitude);
        }
        if (ts != nullptr) {
          const Vec3d phi = misalignment(c_b_n, ts->c_b_n);
          xr.phi_e_deg = rad_to_deg(phi(0));
          xr.phi_n_deg = rad_to_deg(phi(1));
          xr.phi_u_deg = rad_to_deg(phi(2));
          if (m == AlignMethod::kSalad) {
            xr.lat_err_deg = rad_to_deg(*est.latitude) - cfg.latitude_deg;
          }
        }
      }
      out.estimates.push_back(std::move(er));
      if (truth != nullptr) {
        out.errors.push_back(std::move(xr));
      }
    }
  }
  return out;
}

RmseWindow rmse_window(const std::vector<ErrorRow>& rows,
                       const std::string& method, double t_start,
                       double t_end) {
  if (!(t_end > t_start)) {
    throw std::invalid_argument("rmse window: t_end must exceed t_start");
  }
  if (rows.empty()) {
    throw std::invalid_argument("rmse window: empty series");
  }
  double t_min = rows.front().t, t_max = rows.front().t;
  for (const ErrorRow& r : rows) {
    t_min = std::min(t_min, r.t);
    t_max = std::max(t_max, r.t);
  }
  if (t_start < t_min - 1e-9 || t_end > t_max + 1e-9) {
    throw std::invalid_argument("rmse window: outside the series span");
  }

  RmseWindow w;
  w.t_start = t_start;
  w.t_end = t_end;
  double se = 0, sn = 0, su = 0, slat = 0;
  int n = 0, n_lat = 0;
  for (const ErrorRow& r : rows) {
    if (r.method != method || !r.ready || r.t < t_start - 1e-9 ||
        r.t > t_end + 1e-9) {
      continue;
    }
    se += r.phi_e_deg * r.phi_e_deg;
    sn += r.phi_n_deg * r.phi_n_deg;
    su += r.phi_u_deg * r.phi_u_deg;
    ++n;
    if (!std::isnan(r.lat_err_deg)) {
      slat += r.lat_err_deg * r.lat_err_deg;
      ++n_lat;
    }
  }
  if (n == 0) {
    throw std::runtime_error("rmse window: no ready epochs for method '" +
                             method + "'");
  }
  w.phi_e_deg = std::sqrt(se / n);
  w.phi_n_deg = std::sqrt(sn / n);
  w.phi_u_deg = std::sqrt(su / n);
  w.lat_deg = n_lat > 0 ? std::sqrt(slat / n_lat) : kNaN;
  w.epochs = n;
  return w;
}

std::vector<SweepPoint> latitude_sweep(ExperimentConfig cfg,
                                       double lat_min_deg, double lat_max_deg,
                                       double step_deg) {
  if (!(step_deg > 0)) {
    throw std::invalid_argument("latitude sweep: step must be positive");
  }
  if (std::abs(lat_min_deg) > 90.0 || std::abs(lat_max_deg) > 90.0 ||
      lat_max_deg < lat_min_deg) {
    throw std::invalid_argument("latitude sweep: bad latitude range");
  }
  cfg.methods = {AlignMethod::kSalad};
  cfg.sensors.gyro_arw = 0.0;  // systematic (bias) error view
  cfg.sensors.accel_vrw = 0.0;

  std::vector<SweepPoint> out;
  const int n = static_cast<int>(
      std::floor((lat_max_deg - lat_min_deg) / step_deg + 1e-9));
  for (int i = 0; i <= n; ++i) {
    cfg.latitude_deg = lat_min_deg + i * step_deg;
    const AlignmentRun run = run_alignment(cfg);
    SweepPoint p;
    p.lat_true_deg = cfg.latitude_deg;
    p.lat_est_deg = p.lat_err_deg = kNaN;
    p.phi_e_deg = p.phi_n_deg = p.phi_u_deg = kNaN;
    for (auto it = run.errors.rbegin(); it != run.errors.rend(); ++it) {
      if (it->ready) {
        p.lat_err_deg = it->lat_err_deg;
        p.lat_est_deg = cfg.latitude_deg + it->lat_err_deg;
        p.phi_e_deg = it->phi_e_deg;
        p.phi_n_deg = it->phi_n_deg;
        p.phi_u_deg = it->phi_u_deg;
        p.ready = true;
        break;
      }
    }
    out.push_back(p);
  }
  return out;
}

MonteCarloResult monte_carlo(const ExperimentConfig& cfg, int runs) {
  if (runs < 1) {
    throw std::invalid_argument("monte carlo: need at least one run");
  }
  const Prng root{cfg.seed};
  MonteCarloResult result;
  result.runs.reserve(runs);

  for (int i = 0; i < runs; ++i) {
    const Prng sub = root.substream(static_cast<std::uint64_t>(i) + 1);
    ExperimentConfig c = cfg;
    c.sway.center.pitch = deg_to_rad(60.0) * (2.0 * sub.uniform01(0) - 1.0);
    c.sway.center.roll = deg_to_rad(60.0) * (2.0 * sub.uniform01(1) - 1.0);
    c.sway.center.yaw = deg_to_rad(180.0) * (2.0 * sub.uniform01(2) - 1.0);
    c.seed = sub.bits(3);

    const AlignmentRun run = run_alignment(c);
    MonteCarloRun r;
    r.run = i;
    r.center = c.sway.center;
    r.yaw_diff_deg = kNaN;
    if (run.errors.empty()) {
      for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        r.method_rmse.push_back(RmseWindow{0, 0, kNaN, kNaN, kNaN, kNaN, 0});
      }
      result.runs.push_back(std::move(r));
      continue;
    }
    const double t_last = run.errors.back().t;
    const double t_first = run.errors.front().t;
    const double t_start = std::max(t_first, t_last - cfg.rmse_window_s);
    std::optional<double> yaw_oba, yaw_newtriad;
    for (const AlignMethod m : cfg.methods) {
      RmseWindow w;
      try {
        w = rmse_window(run.errors, method_name(m), t_start, t_last);
      } catch (const std::runtime_error&) {
        w = RmseWindow{t_start, t_last, kNaN, kNaN, kNaN, kNaN, 0};
      }
      if (w.epochs > 0 && m == AlignMethod::kOba) yaw_oba = w.phi_u_deg;
      if (w.epochs > 0 && m == AlignMethod::kNewTriad) {
        yaw_newtriad = w.phi_u_deg;
      }
      r.method_rmse.push_back(w);
    }
    if (yaw_oba && yaw_newtriad) {
      r.yaw_diff_deg = *yaw_oba - *yaw_newtriad;
    }
    result.runs.push_back(std::move(r));
  }

  // Aggregate over runs that produced a usable window.
  MonteCarloSummary& summary = result.summary;
  summary.runs = runs;
  for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    MonteCarloSummary::MethodStats st;
    st.method = method_name(cfg.methods[mi]);
    const auto accumulate = [&](auto pick, double& mean, double& stddev) {
      double sum = 0, sum2 = 0;
      int n = 0;
      for (const MonteCarloRun& r : result.runs) {
        const double v = pick(r.method_rmse[mi]);
        if (r.method_rmse[mi].epochs > 0 && !std::isnan(v)) {
          sum += v;
          sum2 += v * v;
          ++n;
        }
      }
      mean = n > 0 ? sum / n : kNaN;
      stddev = n > 0 ? std::sqrt(std::max(0.0, sum2 / n - mean * mean)) : kNaN;
    };
    accumulate([](const RmseWindow& w) { return w.phi_e_deg; },
               st.mean_phi_e_deg, st.std_phi_e_deg);
    accumulate([](const RmseWindow& w) { return w.phi_n_deg; },
               st.mean_phi_n_deg, st.std_phi_n_deg);
    accumulate([](const RmseWindow& w) { return w.phi_u_deg; },
               st.mean_phi_u_deg, st.std_phi_u_deg);
    accumulate([](const RmseWindow& w) { return w.lat_deg; },
               st.mean_lat_deg, st.std_lat_deg);
    summary.stats.push_back(st);
  }
  double sum_diff = 0, max_diff = 0;
  int n_diff = 0;
  for (const MonteCarloRun& r : result.runs) {
    if (!std::isnan(r.yaw_diff_deg)) {
      sum_diff += r.yaw_diff_deg;
      max_diff = std::max(max_diff, std::abs(r.yaw_diff_deg));
      ++n_diff;
    }
  }
  summary.mean_yaw_diff_deg = n_diff > 0 ? sum_diff / n_diff : kNaN;
  summary.max_abs_yaw_diff_deg = n_diff > 0 ? max_diff : kNaN;
  return result;
}

}  // namespace swayalign
