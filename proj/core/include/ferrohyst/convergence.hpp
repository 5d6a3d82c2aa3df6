#pragma once

#include <span>
#include <string>
#include <vector>

namespace ferrohyst {

struct ConvergenceLevel {
  double size = 0.0;   ///< dr, h or dt
  double error = 0.0;
};

/// orders[k] compares levels k and k + 1; NaN when both errors sit below
/// the round-off floor.
struct ConvergenceStudy {
  std::string target;
  std::string quantity;
  std::vector<ConvergenceLevel> levels;
  std::vector<double> orders;

  [[nodiscard]] double min_order() const;
  /// error(k + 1) <= error(k) / ratio^order for every k, floored levels excepted.
  [[nodiscard]] bool reduces_at(double order, double ratio = 2.0) const;
};

constexpr double kRoundOffFloor = 1e-14;

/// Saturation values P_sat and U_sat of the projection density on uniform
/// grids of (0, 1] with base_nodes * ratio^k nodes.
/// Throws invalid-parameter for levels < 3 or ratio <= 1.
[[nodiscard]] std::vector<ConvergenceStudy> point_convergence(int levels,
                                                              std::size_t base_nodes = 125,
                                                              double ratio = 2.0);

/// Linear beam (no hysteresis) under a smooth traction ramp: discrete L2
/// strain error at t_end against a run with reference_elements.
[[nodiscard]] ConvergenceStudy beam_space_convergence(int levels, std::size_t base_elements = 8,
                                                      std::size_t reference_elements = 512,
                                                      int ratio = 2);

/// Hysteretic beam driven by r(t): max nodal displacement error at t_end
/// against a run with dt / ratio^(levels + 2).
[[nodiscard]] ConvergenceStudy beam_time_convergence(int levels, double base_dt = 0.02,
                                                     int ratio = 2);

/// Same problem: max |energy balance residual| over the run.
[[nodiscard]] ConvergenceStudy beam_energy_convergence(int levels, double base_dt = 0.02,
                                                       int ratio = 2);

/// target,quantity,level,size,error,order (order empty on the last level).
[[nodiscard]] std::string convergence_csv(std::span<const ConvergenceStudy> studies);

}  // namespace ferrohyst
