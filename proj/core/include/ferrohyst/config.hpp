#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ferrohyst/beam.hpp"
#include "ferrohyst/constitutive.hpp"
#include "ferrohyst/density.hpp"
#include "ferrohyst/waveform.hpp"

namespace ferrohyst {

struct DensitySpec {
  std::string kind = "projection";  ///< projection | prandtl | zero
  std::vector<PrandtlCell> cells;   ///< prandtl only
  double cutoff = 4.0;
  std::size_t nodes = 400;

  [[nodiscard]] PreisachDensity build() const;
};

/// Stress scenarios: E ramps 0 -> poling_field -> 0, then sigma ramps
/// linearly from 0 to -stress_peak with the displacement datum frozen.
struct StressDriveSpec {
  double poling_field = 1.0;
  std::size_t poling_samples = 1000;
  double stress_peak = 0.8;
  std::size_t stress_samples = 2000;
  double duration = 1.0;  ///< time of each of the two phases
};

struct BeamDemoSpec {
  BeamMesh mesh;
  StepperConfig stepper;
  double t_end = 2.0;
  std::size_t output_stride = 50;
  double traction = 0.0;      ///< s(t) = traction, constant
  double r_amplitude = 0.3;   ///< r(t) = r_amplitude sin(2 pi t / r_period)
  double r_period = 1.0;
};

struct RunConfig {
  std::string scenario = "bipolar-linear";
  MaterialParams material;
  DensitySpec density;
  WaveformSpec drive;
  StressDriveSpec stress;
  BeamDemoSpec beam;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  std::size_t cases = 0;  ///< 0 = suite default
};

/// Built-in defaults for a scenario name. Throws config for unknown names.
[[nodiscard]] RunConfig default_config(std::string_view scenario);

/// INI text with sections [scenario], [material], [hysteresis], [drive],
/// [stress], [beam], [output]. Values may be quoted. Unset keys keep the
/// defaults of the named scenario; unknown sections or keys are errors.
[[nodiscard]] RunConfig parse_config(std::string_view text);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// "r:mu, r:mu, ..." as used by hysteresis.prandtl_table.
[[nodiscard]] std::vector<PrandtlCell> parse_prandtl_table(std::string_view text);

[[nodiscard]] std::vector<std::string_view> scenario_names();

/// The --out-dir flag wins, then FERROHYST_OUT, then the config value.
[[nodiscard]] std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag,
                                                       const std::string& configured);

}  // namespace ferrohyst
