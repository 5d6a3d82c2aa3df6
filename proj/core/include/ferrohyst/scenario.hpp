#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ferrohyst/beam.hpp"
#include "ferrohyst/config.hpp"
#include "ferrohyst/constitutive.hpp"

namespace ferrohyst {

[[nodiscard]] MaterialModel make_material_model(const RunConfig& cfg);

struct ScenarioResult {
  std::string scenario;
  std::vector<PointRecord> records;   ///< point scenarios
  std::size_t poling_records = 0;     ///< stress scenarios: records before the stress ramp
  std::optional<BeamRun> beam;        ///< beam-demo
  BeamMesh mesh;
};

/// Runs a built-in scenario without touching the file system.
[[nodiscard]] ScenarioResult simulate_scenario(const RunConfig& cfg);

/// point_trajectory.csv, or beam_snapshots.csv and beam_energy.csv.
std::vector<std::filesystem::path> write_scenario_outputs(const ScenarioResult& result,
                                                          const std::filesystem::path& out_dir);

/// simulate_scenario followed by write_scenario_outputs.
std::vector<std::filesystem::path> run_scenario(const RunConfig& cfg,
                                                const std::filesystem::path& out_dir);

}  // namespace ferrohyst
