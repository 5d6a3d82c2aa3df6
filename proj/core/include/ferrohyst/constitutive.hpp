#pragma once

#include <span>
#include <vector>

#include "ferrohyst/density.hpp"
#include "ferrohyst/hysteresis.hpp"
#include "ferrohyst/inversion.hpp"
#include "ferrohyst/preisach.hpp"
#include "ferrohyst/shape_function.hpp"

namespace ferrohyst {

struct MaterialParams {
  double c_E = 1.0;     ///< elastic constant, > 0
  double e_pz = 0.0;    ///< piezoelectric coupling
  double kappa = 0.01;  ///< dielectric constant, > 0
  double nu = 0.0;      ///< viscosity, >= 0
  double rho = 1.0;     ///< mass density, > 0
  ShapeFunction shape = ShapeFunction::linear();

  /// Throws invalid-parameter when an invariant is violated.
  void validate() const;
};

/// Material constants, Preisach density and memory grid of one material.
/// Immutable; cheap to share between material points.
class MaterialModel {
 public:
  MaterialModel(MaterialParams params, PreisachDensity density, RGrid grid);

  /// Uniform grid (cutoff, nodes) for continuous densities, the cell radii
  /// for Prandtl stacks.
  MaterialModel(MaterialParams params, PreisachDensity density, double cutoff = 4.0,
                std::size_t nodes = 400);

  [[nodiscard]] const MaterialParams& params() const noexcept { return params_; }
  [[nodiscard]] const PreisachDensity& density() const noexcept { return inverter_.density(); }
  [[nodiscard]] const Inverter& inverter() const noexcept { return inverter_; }
  [[nodiscard]] const RGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] MemoryState virgin_memory() const { return MemoryState::virgin(grid_); }

 private:
  MaterialParams params_;
  Inverter inverter_;
  RGrid grid_;
};

// Pointwise constitutive relations in terms of the hysteresis outputs.
[[nodiscard]] double stress(const MaterialParams& p, double eps, double eps_dot, double E, double U);
[[nodiscard]] double dielectric_displacement(const MaterialParams& p, double eps, double E, double P);
[[nodiscard]] double free_energy(const MaterialParams& p, double eps, double E, double U);

// Same relations reading P and U off an already evolved memory.
[[nodiscard]] double stress(const MaterialModel& m, double eps, double eps_dot, double E,
                            const MemoryState& memory_after);
[[nodiscard]] double dielectric_displacement(const MaterialModel& m, double eps, double E,
                                             const MemoryState& memory_after);
[[nodiscard]] double free_energy(const MaterialModel& m, double eps, double E,
                                 const MemoryState& memory_after);

struct FieldSolution {
  double q = 0.0;
  double E = 0.0;
  MemoryState memory;
  HysteresisOutputs outputs;
};

/// Eliminates the field from e eps + kappa E + P[E / f(eps)] = r by
/// inverting q + P[q] / (kappa f) = (r - e eps) / (kappa f).
[[nodiscard]] FieldSolution solve_field_from_D(const MaterialModel& model, double eps, double r,
                                               const MemoryState& memory);

struct PointRecord {
  double t = 0.0;
  double eps = 0.0;
  double E = 0.0;
  double q = 0.0;
  double P = 0.0;
  double U = 0.0;
  double sigma = 0.0;
  double D = 0.0;
  double F = 0.0;
  double diss = 0.0;  ///< dissipation_increment of the step that produced this record
};

/// State of one material point: strain, field and hysteresis memory of q.
struct PointState {
  double t = 0.0;
  double eps = 0.0;
  double E = 0.0;
  MemoryState memory;

  [[nodiscard]] static PointState virgin(const MaterialModel& model, double t0 = 0.0);
};

/// Record for a state, with dissipation 0 and eps_dot 0.
[[nodiscard]] PointRecord make_record(const MaterialModel& model, const PointState& state);

/// records[0] describes the start state, records[k] the state after the
/// k-th input sample.
struct PointTrajectory {
  std::vector<PointRecord> records;
  PointState final_state;
};

/// Per step: dEps * sigma_k + dD * E_k - dF (right-endpoint values).
[[nodiscard]] std::vector<double> clausius_duhem_residuals(const PointTrajectory& traj);
[[nodiscard]] std::vector<double> clausius_duhem_residuals(std::span<const PointRecord> records);

/// Field-controlled driver: for every sample solves
///   nu (eps - eps_prev)/dt + c eps - e E_k + f'(eps) U[E_k / f(eps)] = sigma_target_k
/// for eps by bracketed root finding on the working range.
/// Throws out-of-range when no root exists on [-1.5, 1.5] and no-convergence
/// when the strain equation is found not to be increasing on its bracket.
[[nodiscard]] PointTrajectory drive_field(const MaterialModel& model, const PointState& start,
                                          std::span<const double> t, std::span<const double> E,
                                          std::span<const double> sigma_target);

/// Stress-controlled driver with dielectric displacement datum r: solves the
/// strain equation with E eliminated through solve_field_from_D.
[[nodiscard]] PointTrajectory drive_stress(const MaterialModel& model, const PointState& start,
                                           std::span<const double> t, std::span<const double> sigma,
                                           std::span<const double> r);

}  // namespace ferrohyst
