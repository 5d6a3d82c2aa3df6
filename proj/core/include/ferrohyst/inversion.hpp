#pragma once

#include <span>
#include <vector>

#include "ferrohyst/density.hpp"
#include "ferrohyst/hysteresis.hpp"
#include "ferrohyst/preisach.hpp"

namespace ferrohyst {

/// Solve q_k + b_k * P[q]_k = w_k sample by sample.
struct InversionProblem {
  std::vector<double> b;  ///< coefficients, b_k >= 0, same stamps as w
  std::vector<double> w;  ///< right-hand sides
  PreisachDensity density;
  MemoryState initial_memory;
};

enum class InversionMode {
  /// Per-sample root finding on x -> x + b_k P(x; memory).
  Bracketed,
  /// Windowed fixed-point construction: on windows where b varies by less
  /// than gamma = 1 / (2 M L), iterate
  ///   q = (I + b_ref P)^{-1} [w - (b - b_ref) P[q_hat]]
  /// until q stops changing.
  Picard,
};

struct PicardOptions {
  double inverse_lipschitz = 2.0;  ///< L for (I + cP)^{-1} of a Preisach operator
  double tolerance = 1e-13;        ///< relative to 1 + max|w| on the window
  int max_iterations = 500;
};

struct StepSolution {
  double q = 0.0;
  MemoryState memory;
  HysteresisOutputs outputs;  ///< P and U of `memory`
  double residual = 0.0;      ///< q + b P - w
};

/// Caches the density constants and solves the scalar equation per sample.
class Inverter {
 public:
  explicit Inverter(PreisachDensity density);

  [[nodiscard]] const PreisachDensity& density() const noexcept { return density_; }
  [[nodiscard]] const DensityConstants& constants() const noexcept { return constants_; }

  /// Unique q with q + b * P[evolve_memory(memory, q)] = w.
  /// Throws invalid-coefficient for b < 0 and cutoff-violation when no
  /// bracket exists inside the memory cutoff.
  [[nodiscard]] StepSolution step(const MemoryState& memory, double b, double w) const;

  [[nodiscard]] std::vector<double> trajectory(std::span<const double> b, std::span<const double> w,
                                               const MemoryState& initial,
                                               InversionMode mode = InversionMode::Bracketed,
                                               const PicardOptions& picard = {}) const;

 private:
  [[nodiscard]] std::vector<double> picard_trajectory(std::span<const double> b,
                                                      std::span<const double> w,
                                                      const MemoryState& initial,
                                                      const PicardOptions& opts) const;

  PreisachDensity density_;
  DensityConstants constants_;
};

[[nodiscard]] StepSolution invert_step(const MemoryState& memory, double b, double w,
                                       const PreisachDensity& density);

/// Throws invalid-parameter when b and w differ in length, plus everything
/// Inverter::step throws.
[[nodiscard]] std::vector<double> invert_trajectory(const InversionProblem& problem,
                                                    InversionMode mode = InversionMode::Bracketed);

/// exp(b_bar * M): bound on ||q1 - q2|| / ||w1 - w2|| for a shared b with
/// 0 <= b <= b_bar.
[[nodiscard]] double inverse_lipschitz_bound(double b_bar, double M);

/// exp(b_bar * M) * (dw + M1 * db) for differing coefficients b1, b2.
[[nodiscard]] double inverse_data_bound(double b_bar, double M, double M1, double dw, double db);

/// prod_j (1 + b_bar * mu_j) for a discrete Preisach operator with cell
/// slope bounds mu_j.
[[nodiscard]] double discrete_inverse_lipschitz_bound(double b_bar, std::span<const double> mu);

}  // namespace ferrohyst
