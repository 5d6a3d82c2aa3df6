#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace ferrohyst {

enum class Waveform { Triangle, Sine };

/// Periodic excitation starting at 0 and rising first.
struct WaveformSpec {
  Waveform kind = Waveform::Triangle;
  double amplitude = 1.0;
  double periods = 3.0;
  std::size_t samples_per_period = 2000;
  double period = 1.0;  ///< duration of one period

  void validate() const;
};

struct Samples {
  std::vector<double> t;
  std::vector<double> value;
};

/// Value at a phase in [0, 1): triangle 0 -> 1 -> -1 -> 0 or sin(2 pi phase).
[[nodiscard]] double unit_waveform(Waveform kind, double phase);

/// t_k = k * period / samples_per_period for k = 1..round(periods * spp); the
/// start value 0 at t = 0 is not included. Phases are formed from the sample
/// index, so breakpoints are hit exactly.
[[nodiscard]] Samples sample_waveform(const WaveformSpec& spec);

[[nodiscard]] Waveform parse_waveform(std::string_view name);
[[nodiscard]] std::string_view to_string(Waveform kind) noexcept;

}  // namespace ferrohyst
