#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ferrohyst/inversion.hpp"

namespace ferrohyst {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 0;   ///< 0 = suite default
  std::size_t pairs = 500; ///< lipschitz
  double bbar = 1.0;       ///< lipschitz
  InversionMode mode = InversionMode::Bracketed;  ///< lipschitz
};

/// Outcome of one property suite. `worst` is the worst observed value of
/// `metric`, which must stay on the right side of `threshold`.
struct SuiteReport {
  std::string suite;
  bool passed = false;
  std::string metric;
  double worst = 0.0;
  double threshold = 0.0;
  std::size_t cases = 0;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

[[nodiscard]] std::vector<std::string_view> verify_suites();

/// Throws invalid-parameter for an unknown suite.
[[nodiscard]] SuiteReport run_verify(std::string_view suite, const VerifyOptions& opts);

/// Random piecewise-monotone samples starting after 0: 1..max_segments
/// segments towards uniform targets in [-amplitude, amplitude], each sampled
/// at 1..max_samples points including its endpoint.
[[nodiscard]] std::vector<double> random_piecewise_monotone(std::mt19937_64& rng,
                                                            std::size_t max_segments,
                                                            double amplitude,
                                                            std::size_t max_samples = 8);

}  // namespace ferrohyst
