#pragma once

#include "ferrohyst/density.hpp"
#include "ferrohyst/hysteresis.hpp"

namespace ferrohyst {

struct HysteresisOutputs {
  double P = 0.0;  ///< Preisach output
  double U = 0.0;  ///< hysteresis potential
};

/// P[q] = int g(r, xi_r) dr on the state's grid.
/// Throws cutoff-violation when the input history left the grid inside the
/// density's support, invalid-parameter when a Prandtl stack is evaluated on
/// a grid other than its own radii.
[[nodiscard]] double preisach_output(const PreisachDensity& density, const MemoryState& state);

/// U[q] = int G(r, xi_r) dr.
[[nodiscard]] double potential_output(const PreisachDensity& density, const MemoryState& state);

/// P and U in one sweep.
[[nodiscard]] HysteresisOutputs hysteresis_outputs(const PreisachDensity& density,
                                                   const MemoryState& state);

/// P and U of evolve_memory(state, q_new) without materialising the new state.
[[nodiscard]] HysteresisOutputs outputs_after(const PreisachDensity& density,
                                              const MemoryState& state, double q_new);

/// q_after * (P_after - P_before) - (U_after - U_before).
[[nodiscard]] double dissipation_increment(const PreisachDensity& density,
                                           const MemoryState& before, const MemoryState& after,
                                           double q_after);

}  // namespace ferrohyst
