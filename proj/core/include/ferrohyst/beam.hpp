#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ferrohyst/constitutive.hpp"

namespace ferrohyst {

/// Uniform mesh of (0, length) with `elements` linear elements.
struct BeamMesh {
  double length = 1.0;
  std::size_t elements = 64;

  [[nodiscard]] double h() const noexcept { return length / static_cast<double>(elements); }
  [[nodiscard]] std::size_t nodes() const noexcept { return elements + 1; }
  [[nodiscard]] double x(std::size_t i) const noexcept {
    return i == elements ? length : static_cast<double>(i) * h();
  }
  void validate() const;
};

/// Element-local material state; strain is constant per element.
struct ElementState {
  double eps = 0.0;
  double eps_dot = 0.0;
  double E = 0.0;
  double q = 0.0;
  double P = 0.0;
  double U = 0.0;
  double sigma = 0.0;  ///< total stress including the viscous part
  double F = 0.0;      ///< free energy density
  MemoryState memory;
};

struct BeamState {
  double t = 0.0;
  double r = 0.0;              ///< dielectric displacement datum at t
  std::vector<double> u;       ///< nodal displacement, u[0] == 0
  std::vector<double> v;       ///< nodal velocity
  std::vector<ElementState> elements;
  int picard_iterations = 0;   ///< sweeps used by the step that produced this state
};

/// Boundary data as functions of time: D(0,t) = D(l,t) = r(t) and the
/// traction sigma(l, t) = s(t).
struct BoundaryData {
  std::function<double(double)> r = [](double) { return 0.0; };
  std::function<double(double)> s = [](double) { return 0.0; };
};

struct StepperConfig {
  double dt = 1e-3;
  double picard_tolerance = 1e-10;  ///< discrete L2 norm of the strain-rate update
  int picard_max_iterations = 50;
  bool lumped_mass = false;

  void validate() const;
};

/// W[eps] = -(e/kappa)(r - e eps - P[q]) + f'(eps) U[q] for one element,
/// with q from solve_field_from_D.
struct StressFunctional {
  double W = 0.0;
  FieldSolution field;
};
[[nodiscard]] StressFunctional hysteretic_stress_functional(const MaterialModel& model, double eps,
                                                            const MemoryState& memory, double r);

struct BeamSnapshot {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> eps;    ///< per element
  std::vector<double> sigma;  ///< per element
  std::vector<double> E;      ///< per element
  std::vector<double> P;      ///< per element
};

/// Instantaneous energies and cumulative fluxes since the start of the run.
struct EnergyRow {
  double t = 0.0;
  double K = 0.0;              ///< kinetic energy
  double F = 0.0;              ///< stored free energy, integral of F over the beam
  double diss_hyst = 0.0;      ///< cumulative hysteretic dissipation
  double diss_visc = 0.0;      ///< cumulative viscous dissipation
  double work_boundary = 0.0;  ///< cumulative mechanical + electrical boundary work
  double residual = 0.0;       ///< K + F + diss - work - (K + F)(t0)
};

struct BeamRun {
  std::vector<BeamSnapshot> snapshots;
  std::vector<EnergyRow> energy;  ///< one row per step, plus the initial row
  BeamState final_state;
  int max_picard_iterations = 0;
  double mean_picard_iterations = 0.0;
};

struct EnergyAudit {
  std::vector<double> residuals;  ///< per-step change of the balance residual
  std::vector<double> dissipation;  ///< per-step hysteretic + viscous dissipation
  double total_abs_residual = 0.0;
  double min_dissipation = 0.0;
};

/// Backward-Euler / linear-element solver for
///   rho u_tt - (nu u_xt + c u_x + W[u_x])_x = 0,  u(0) = 0,
///   (nu u_xt + c u_x + W[u_x])(l) = s(t).
/// Every step runs Picard sweeps: W is frozen at the current strain iterate,
/// the linear system is solved for the new velocity, and the sweep repeats
/// until the strain rate settles.
class BeamSolver {
 public:
  BeamSolver(BeamMesh mesh, MaterialModel model, StepperConfig cfg);
  ~BeamSolver();
  BeamSolver(BeamSolver&&) noexcept;
  BeamSolver& operator=(BeamSolver&&) noexcept;

  [[nodiscard]] const BeamMesh& mesh() const noexcept { return mesh_; }
  [[nodiscard]] const MaterialModel& model() const noexcept { return model_; }
  [[nodiscard]] const StepperConfig& config() const noexcept { return cfg_; }

  /// Samples u0, u1 at the nodes; u0(0) must vanish. Element fields are
  /// solved against r(t0) starting from virgin memory.
  [[nodiscard]] BeamState initial_state(const std::function<double(double)>& u0,
                                        const std::function<double(double)>& u1,
                                        const BoundaryData& boundary, double t0 = 0.0) const;

  /// One time step of size cfg.dt. Throws step-divergence when the Picard
  /// sweeps do not settle within cfg.picard_max_iterations.
  [[nodiscard]] BeamState step(const BeamState& state, const BoundaryData& boundary) const;

  /// Steps until t_end (rounded to a whole number of steps), storing a
  /// snapshot every `output_stride` steps plus the first and last state.
  [[nodiscard]] BeamRun simulate(const BeamState& start, const BoundaryData& boundary, double t_end,
                                 std::size_t output_stride = 1) const;

  [[nodiscard]] BeamRun simulate(const std::function<double(double)>& u0,
                                 const std::function<double(double)>& u1,
                                 const BoundaryData& boundary, double t_end,
                                 std::size_t output_stride = 1) const;

  [[nodiscard]] double kinetic_energy(const BeamState& state) const;
  [[nodiscard]] double stored_energy(const BeamState& state) const;
  [[nodiscard]] BeamSnapshot snapshot(const BeamState& state) const;

 private:
  struct Linear;

  [[nodiscard]] ElementState element_state(double eps, double eps_dot, const MemoryState& memory,
                                           double r) const;

  BeamMesh mesh_;
  MaterialModel model_;
  StepperConfig cfg_;
  std::unique_ptr<Linear> linear_;
};

/// Per-step balance residuals and dissipation from a run's energy rows.
[[nodiscard]] EnergyAudit energy_audit(std::span<const EnergyRow> energy);

}  // namespace ferrohyst
