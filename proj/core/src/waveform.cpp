#include "ferrohyst/waveform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ferrohyst/error.hpp"

namespace ferrohyst {

void WaveformSpec::validate() const {
  if (!std::isfinite(amplitude) || !(periods > 0.0) || samples_per_period < 4 || !(period > 0.0)) {
    throw Error(ErrorCode::InvalidParameter,
                "waveform needs finite amplitude, periods > 0, period > 0 and >= 4 samples per period");
  }
}

double unit_waveform(Waveform kind, double phase) {
  if (kind == Waveform::Sine) return std::sin(2.0 * std::numbers::pi * phase);
  if (phase <= 0.25) return 4.0 * phase;
  if (phase <= 0.75) return 2.0 - 4.0 * phase;
  return 4.0 * phase - 4.0;
}

Samples sample_waveform(const WaveformSpec& spec) {
  spec.validate();
  const std::size_t spp = spec.samples_per_period;
  const auto n = static_cast<std::size_t>(std::llround(spec.periods * static_cast<double>(spp)));
  Samples s;
  s.t.reserve(n);
  s.value.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double phase = static_cast<double>(k % spp) / static_cast<double>(spp);
    s.t.push_back(spec.period * static_cast<double>(k) / static_cast<double>(spp));
    s.value.push_back(spec.amplitude * unit_waveform(spec.kind, phase));
  }
  return s;
}

Waveform parse_waveform(std::string_view name) {
  if (name == "triangle") return Waveform::Triangle;
  if (name == "sine") return Waveform::Sine;
  throw Error(ErrorCode::Config, "unknown waveform '" + std::string(name) + "'");
}

std::string_view to_string(Waveform kind) noexcept {
  return kind == Waveform::Sine ? "sine" : "triangle";
}

}  // namespace ferrohyst
