#include "ferrohyst/scenario.hpp"

#include <cmath>
#include <numbers>

#include "ferrohyst/csv.hpp"
#include "ferrohyst/error.hpp"
#include "ferrohyst/waveform.hpp"

namespace ferrohyst {

namespace {

std::vector<PointRecord> bipolar(const MaterialModel& model, const RunConfig& cfg) {
  const auto drive = sample_waveform(cfg.drive);
  const std::vector<double> sigma(drive.t.size(), 0.0);
  return drive_field(model, PointState::virgin(model), drive.t, drive.value, sigma).records;
}

ScenarioResult stress_scenario(const MaterialModel& model, const RunConfig& cfg) {
  const auto& st = cfg.stress;
  const std::size_t n = st.poling_samples;
  std::vector<double> t(n), E(n), zero(n, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const double up = 2.0 * static_cast<double>(std::min(k, n - k)) / static_cast<double>(n);
    t[k - 1] = st.duration * static_cast<double>(k) / static_cast<double>(n);
    E[k - 1] = st.poling_field * up;
  }
  auto poled = drive_field(model, PointState::virgin(model), t, E, zero);

  ScenarioResult result;
  result.records = std::move(poled.records);
  result.poling_records = result.records.size();
  const double r = result.records.back().D;

  const std::size_t m = st.stress_samples;
  std::vector<double> ts(m), sigma(m), datum(m, r);
  for (std::size_t k = 1; k <= m; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(m);
    ts[k - 1] = st.duration * (1.0 + s);
    sigma[k - 1] = -st.stress_peak * s;
  }
  auto ramp = drive_stress(model, poled.final_state, ts, sigma, datum);
  result.records.insert(result.records.end(), ramp.records.begin() + 1, ramp.records.end());
  return result;
}

BeamRun beam_demo(const MaterialModel& model, const RunConfig& cfg) {
  const auto& b = cfg.beam;
  BeamSolver solver(b.mesh, model, b.stepper);
  BoundaryData boundary;
  const double amp = b.r_amplitude;
  const double omega = 2.0 * std::numbers::pi / b.r_period;
  const double traction = b.traction;
  boundary.r = [amp, omega](double t) { return amp * std::sin(omega * t); };
  boundary.s = [traction](double) { return traction; };
  auto zero = [](double) { return 0.0; };
  return solver.simulate(zero, zero, boundary, b.t_end, b.output_stride);
}

}  // namespace

MaterialModel make_material_model(const RunConfig& cfg) {
  return MaterialModel(cfg.material, cfg.density.build(), cfg.density.cutoff, cfg.density.nodes);
}

ScenarioResult simulate_scenario(const RunConfig& cfg) {
  const MaterialModel model = make_material_model(cfg);
  const std::string& name = cfg.scenario;
  if (name == "bipolar-linear" || name == "bipolar-quartic") {
    ScenarioResult r;
    r.scenario = name;
    r.records = bipolar(model, cfg);
    return r;
  }
  if (name == "stress-linear" || name == "stress-quartic") {
    ScenarioResult r = stress_scenario(model, cfg);
    r.scenario = name;
    return r;
  }
  if (name == "beam-demo") {
    ScenarioResult r;
    r.scenario = name;
    r.mesh = cfg.beam.mesh;
    r.beam = beam_demo(model, cfg);
    return r;
  }
  throw Error(ErrorCode::Config, "unknown scenario '" + name + "'");
}

std::vector<std::filesystem::path> write_scenario_outputs(const ScenarioResult& result,
                                                          const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> files;
  if (result.beam) {
    files.push_back(out_dir / "beam_snapshots.csv");
    write_file_atomic(files.back(), beam_snapshots_csv(result.mesh, result.beam->snapshots));
    files.push_back(out_dir / "beam_energy.csv");
    write_file_atomic(files.back(), beam_energy_csv(result.beam->energy));
  } else {
    files.push_back(out_dir / "point_trajectory.csv");
    write_file_atomic(files.back(), point_trajectory_csv(result.records));
  }
  return files;
}

std::vector<std::filesystem::path> run_scenario(const RunConfig& cfg,
                                                const std::filesystem::path& out_dir) {
  return write_scenario_outputs(simulate_scenario(cfg), out_dir);
}

}  // namespace ferrohyst
