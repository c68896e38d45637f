#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "swayalign/config.hpp"
#include "swayalign/csv.hpp"
#include "swayalign/harness.hpp"
#include "swayalign/simulator.hpp"

using namespace swayalign;

namespace {

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

// Options shared by every config-driven subcommand.
struct CommonOpts {
  std::string config;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config,
                    "Experiment config file (flat `key = value` text)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", sets,
                    "Override one config key, e.g. --set sim.fs=100 "
                    "(repeatable)");
    seed_opt = cmd->add_option("--seed", seed, "Override the config seed");
  }

  ExperimentConfig load() const {
    ExperimentConfig cfg =
        config.empty() ? ExperimentConfig{} : parse_config_file(config);
    for (const std::string& s : sets) {
      apply_override(cfg, s);
    }
    if (seed_opt != nullptr && seed_opt->count() > 0) {
      cfg.seed = seed;
    }
    return cfg;
  }
};

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepPoint>& points) {
  std::ofstream out = open_out(path);
  out << "lat_true_deg,lat_est_deg,lat_err_deg,phi_e_deg,phi_n_deg,phi_u_deg,"
         "ready\n";
  for (const SweepPoint& p : points) {
    out << num(p.lat_true_deg) << ',' << num(p.lat_est_deg) << ','
        << num(p.lat_err_deg) << ',' << num(p.phi_e_deg) << ','
        << num(p.phi_n_deg) << ',' << num(p.phi_u_deg) << ','
        << (p.ready ? '1' : '0') << "\n";
  }
}

void write_montecarlo_csv(const std::string& path,
                          const MonteCarloResult& mc) {
  std::ofstream out = open_out(path);
  out << "run,center_pitch_deg,center_roll_deg,center_yaw_deg,method,"
         "phi_e_deg,phi_n_deg,phi_u_deg,lat_rmse_deg,epochs,yaw_diff_deg\n";
  for (const MonteCarloRun& r : mc.runs) {
    for (size_t mi = 0; mi < r.method_rmse.size(); ++mi) {
      const RmseWindow& w = r.method_rmse[mi];
      out << r.run << ',' << num(rad_to_deg(r.center.pitch)) << ','
          << num(rad_to_deg(r.center.roll)) << ','
          << num(rad_to_deg(r.center.yaw)) << ','
          << mc.summary.stats[mi].method << ',' << num(w.phi_e_deg) << ','
          << num(w.phi_n_deg) << ',' << num(w.phi_u_deg) << ','
          << num(w.lat_deg) << ',' << w.epochs << ','
          << num(r.yaw_diff_deg) << "\n";
    }
  }
}

void print_montecarlo_summary(std::ostream& out, const MonteCarloResult& mc) {
  out << "runs = " << mc.summary.runs << "\n";
  out << "method,mean_phi_e_deg,std_phi_e_deg,mean_phi_n_deg,std_phi_n_deg,"
         "mean_phi_u_deg,std_phi_u_deg,mean_lat_deg,std_lat_deg\n";
  for (const auto& st : mc.summary.stats) {
    out << st.method << ',' << num(st.mean_phi_e_deg) << ','
        << num(st.std_phi_e_deg) << ',' << num(st.mean_phi_n_deg) << ','
        << num(st.std_phi_n_deg) << ',' << num(st.mean_phi_u_deg) << ','
        << num(st.std_phi_u_deg) << ',' << num(st.mean_lat_deg) << ','
        << num(st.std_lat_deg) << "\n";
  }
  out << "mean_yaw_diff_deg = " << num(mc.summary.mean_yaw_diff_deg) << "\n";
  out << "max_abs_yaw_diff_deg = " << num(mc.summary.max_abs_yaw_diff_deg)
      << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "swayalign: swaying-base self-alignment toolkit (simulator, four "
      "aligners, experiment drivers)"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand(
      "simulate", "Synthesize a swaying IMU log and optional truth log");
  CommonOpts sim_common;
  sim_common.attach(sim);
  std::string sim_imu_out, sim_truth_out;
  sim->add_option("--imu-out", sim_imu_out, "Output IMU CSV path")
      ->required();
  sim->add_option("--truth-out", sim_truth_out,
                  "Output attitude-truth CSV path");

  auto* aln = app.add_subcommand(
      "align",
      "Run the enabled aligners on a synthesized or recorded IMU stream");
  CommonOpts aln_common;
  aln_common.attach(aln);
  std::string aln_imu_in, aln_truth_in, aln_series_out, aln_estimates_out;
  aln->add_option("--imu", aln_imu_in,
                  "Input IMU CSV (omit to synthesize per config)")
      ->check(CLI::ExistingFile);
  aln->add_option("--truth", aln_truth_in,
                  "Ground-truth CSV matching --imu (enables the error series)")
      ->check(CLI::ExistingFile);
  aln->add_option("--out", aln_series_out,
                  "Output alignment-error series CSV (needs ground truth)");
  aln->add_option("--estimates-out", aln_estimates_out,
                  "Output attitude-estimates CSV (works without truth)");

  auto* swp = app.add_subcommand(
      "sweep", "Latitude sweep of the latitude-free method, biases only");
  CommonOpts swp_common;
  swp_common.attach(swp);
  double swp_min = -85.0, swp_max = 85.0, swp_step = 1.0;
  std::string swp_out;
  swp->add_option("--min", swp_min, "First latitude, degrees");
  swp->add_option("--max", swp_max, "Last latitude, degrees");
  swp->add_option("--step", swp_step, "Step, degrees");
  swp->add_option("--out", swp_out, "Output CSV path")->required();

  auto* mc = app.add_subcommand(
      "montecarlo",
      "Repeat the experiment with randomized sway centers and noise streams");
  CommonOpts mc_common;
  mc_common.attach(mc);
  int mc_runs = 0;
  std::string mc_out;
  mc->add_option("--runs", mc_runs, "Number of runs")->required();
  mc->add_option("--out", mc_out, "Per-run RMSE CSV path")->required();

  auto* rms = app.add_subcommand(
      "rmse", "Windowed RMSE of an alignment-error series");
  std::string rms_series, rms_out;
  double rms_start = 0, rms_end = 0, rms_window = 30.0;
  rms->add_option("--series", rms_series, "Alignment-error series CSV")
      ->required()
      ->check(CLI::ExistingFile);
  CLI::Option* rms_start_opt =
      rms->add_option("--start", rms_start, "Window start, s");
  CLI::Option* rms_end_opt = rms->add_option("--end", rms_end, "Window end, s");
  rms->add_option("--window", rms_window,
                  "Window length ending at the last epoch (default 30 s; "
                  "ignored when --start/--end are given)");
  rms->add_option("--out", rms_out, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sim->parsed()) {
      const ExperimentConfig cfg = sim_common.load();
      SensorErrorModel sensors = cfg.sensors;
      sensors.seed = cfg.seed;
      const SimulatedImu synth =
          synth_imu(cfg.sway, sensors, deg_to_rad(cfg.latitude_deg), cfg.fs,
                    cfg.duration_s, cfg.earth);
      write_imu_csv(sim_imu_out, synth.imu);
      if (!sim_truth_out.empty()) {
        write_truth_csv(sim_truth_out, synth.truth);
      }
    } else if (aln->parsed()) {
      const ExperimentConfig cfg = aln_common.load();
      if (aln_series_out.empty() && aln_estimates_out.empty()) {
        throw std::runtime_error("specify --out and/or --estimates-out");
      }
      AlignmentRun run;
      bool have_truth = true;
      if (!aln_imu_in.empty()) {
        const std::vector<ImuSample> samples = read_imu_csv(aln_imu_in);
        if (!aln_truth_in.empty()) {
          const std::vector<TruthSample> truth = read_truth_csv(aln_truth_in);
          run = run_alignment(cfg, samples, &truth);
        } else {
          have_truth = false;
          run = run_alignment(cfg, samples, nullptr);
        }
      } else {
        if (!aln_truth_in.empty()) {
          throw std::runtime_error("--truth requires --imu");
        }
        run = run_alignment(cfg);
      }
      if (!aln_series_out.empty()) {
        if (!have_truth) {
          throw std::runtime_error(
              "--out needs ground truth (give --truth, or use "
              "--estimates-out)");
        }
        write_series_csv(aln_series_out, run.errors);
      }
      if (!aln_estimates_out.empty()) {
        write_estimates_csv(aln_estimates_out, run.estimates);
      }
    } else if (swp->parsed()) {
      const ExperimentConfig cfg = swp_common.load();
      write_sweep_csv(swp_out, latitude_sweep(cfg, swp_min, swp_max, swp_step));
    } else if (mc->parsed()) {
      const ExperimentConfig cfg = mc_common.load();
      const MonteCarloResult result = monte_carlo(cfg, mc_runs);
      write_montecarlo_csv(mc_out, result);
      print_montecarlo_summary(std::cout, result);
    } else if (rms->parsed()) {
      const std::vector<ErrorRow> rows = read_series_csv(rms_series);
      if (rows.empty()) {
        throw std::runtime_error("series '" + rms_series + "' has no rows");
      }
      double t_end = rows.front().t, t_first = rows.front().t;
      for (const ErrorRow& r : rows) {
        t_end = std::max(t_end, r.t);
        t_first = std::min(t_first, r.t);
      }
      double t_start = std::max(t_first, t_end - rms_window);
      if (rms_start_opt->count() > 0) t_start = rms_start;
      if (rms_end_opt->count() > 0) t_end = rms_end;

      std::vector<std::string> methods;
      for (const ErrorRow& r : rows) {
        if (std::find(methods.begin(), methods.end(), r.method) ==
            methods.end()) {
          methods.push_back(r.method);
        }
      }
      std::string table =
          "method,t_start,t_end,phi_e_deg,phi_n_deg,phi_u_deg,lat_rmse_deg,"
          "epochs\n";
      for (const std::string& m : methods) {
        try {
          const RmseWindow w = rmse_window(rows, m, t_start, t_end);
          table += m + ',' + num(w.t_start) + ',' + num(w.t_end) + ',' +
                   num(w.phi_e_deg) + ',' + num(w.phi_n_deg) + ',' +
                   num(w.phi_u_deg) + ',' + num(w.lat_deg) + ',' +
                   std::to_string(w.epochs) + "\n";
        } catch (const std::runtime_error&) {
          table += m + ',' + num(t_start) + ',' + num(t_end) +
                   ",nan,nan,nan,nan,0\n";
        }
      }
      if (!rms_out.empty()) {
        open_out(rms_out) << table;
      } else {
        std::cout << table;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
