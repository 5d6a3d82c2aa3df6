#include "ferrohyst/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ferrohyst/error.hpp"
#include "ferrohyst/root_finding.hpp"

namespace ferrohyst {

namespace {

constexpr double kStrainTolerance = 5e-13;
constexpr double kInitialStrainBracket = 1e-2;
constexpr int kMonotoneProbes = 8;

void require_lengths(std::size_t a, std::size_t b, std::size_t c) {
  if (a != b || a != c) {
    throw Error(ErrorCode::InvalidParameter, "driver input series must have equal lengths");
  }
}

// Solves h(eps) = 0 for an increasing h on the working range, starting the
// bracket search at the previous strain.
template <class H>
double solve_strain(H&& h, double eps_prev) {
  const double limit = ShapeFunction::kWorkingLimit;
  auto bracket = expand_bracket(h, eps_prev - kInitialStrainBracket, eps_prev + kInitialStrainBracket,
                                -limit, limit);
  if (!bracket) {
    throw Error(ErrorCode::OutOfRange, "strain equation has no root on the working range");
  }
  // A coarse scan of the bracket; a decrease means the coupled map lost
  // monotonicity (|f'| dU/deps competing with c) and the root is not unique.
  double prev = bracket->f_lo;
  const double slack = 1e-12 * (1.0 + std::abs(bracket->f_lo) + std::abs(bracket->f_hi));
  for (int i = 1; i <= kMonotoneProbes; ++i) {
    const double x = bracket->lo + (bracket->hi - bracket->lo) * i / (kMonotoneProbes + 1);
    const double hx = h(x);
    if (hx < prev - slack) {
      throw Error(ErrorCode::NoConvergence,
                  "strain equation is not increasing near eps = " + std::to_string(x));
    }
    prev = hx;
  }
  return solve_increasing(h, *bracket, kStrainTolerance).x;
}

void require_increasing_time(double t_prev, double t) {
  if (!(t > t_prev)) {
    throw Error(ErrorCode::InvalidParameter, "time stamps must be strictly increasing");
  }
}

PointRecord record_from(const MaterialParams& p, double t, double eps, double eps_dot, double E,
                        double q, const HysteresisOutputs& out, double diss) {
  PointRecord rec;
  rec.t = t;
  rec.eps = eps;
  rec.E = E;
  rec.q = q;
  rec.P = out.P;
  rec.U = out.U;
  rec.sigma = stress(p, eps, eps_dot, E, out.U);
  rec.D = dielectric_displacement(p, eps, E, out.P);
  rec.F = free_energy(p, eps, E, out.U);
  rec.diss = diss;
  return rec;
}

}  // namespace

void MaterialParams::validate() const {
  if (!(c_E > 0.0)) throw Error(ErrorCode::InvalidParameter, "elastic constant must be positive");
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidParameter, "dielectric constant must be positive");
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidParameter, "mass density must be positive");
  if (!(nu >= 0.0)) throw Error(ErrorCode::InvalidParameter, "viscosity must be nonnegative");
  if (!std::isfinite(e_pz)) throw Error(ErrorCode::InvalidParameter, "coupling must be finite");
}

MaterialModel::MaterialModel(MaterialParams params, PreisachDensity density, RGrid grid)
    : params_(std::move(params)), inverter_(std::move(density)), grid_(std::move(grid)) {
  params_.validate();
}

MaterialModel::MaterialModel(MaterialParams params, PreisachDensity density, double cutoff,
                             std::size_t nodes)
    : MaterialModel(std::move(params), density, density.make_grid(cutoff, nodes)) {}

double stress(const MaterialParams& p, double eps, double eps_dot, double E, double U) {
  return p.nu * eps_dot + p.c_E * eps - p.e_pz * E + p.shape.eval(eps).f_prime * U;
}

double dielectric_displacement(const MaterialParams& p, double eps, double E, double P) {
  return p.e_pz * eps + p.kappa * E + P;
}

double free_energy(const MaterialParams& p, double eps, double E, double U) {
  return 0.5 * p.c_E * eps * eps + 0.5 * p.kappa * E * E + p.shape.eval(eps).f * U;
}

double stress(const MaterialModel& m, double eps, double eps_dot, double E,
              const MemoryState& memory_after) {
  return stress(m.params(), eps, eps_dot, E, potential_output(m.density(), memory_after));
}

double dielectric_displacement(const MaterialModel& m, double eps, double E,
                               const MemoryState& memory_after) {
  return dielectric_displacement(m.params(), eps, E, preisach_output(m.density(), memory_after));
}

double free_energy(const MaterialModel& m, double eps, double E, const MemoryState& memory_after) {
  return free_energy(m.params(), eps, E, potential_output(m.density(), memory_after));
}

FieldSolution solve_field_from_D(const MaterialModel& model, double eps, double r,
                                 const MemoryState& memory) {
  const auto& p = model.params();
  const double f = p.shape.eval(eps).f;
  if (!(f >= p.shape.floor())) {
    throw Error(ErrorCode::ShapeDegeneracy, "f(eps) fell below its floor");
  }
  const double kf = p.kappa * f;
  auto sol = model.inverter().step(memory, 1.0 / kf, (r - p.e_pz * eps) / kf);
  return {sol.q, f * sol.q, std::move(sol.memory), sol.outputs};
}

PointState PointState::virgin(const MaterialModel& model, double t0) {
  return {t0, 0.0, 0.0, model.virgin_memory()};
}

PointRecord make_record(const MaterialModel& model, const PointState& state) {
  const double f = model.params().shape.eval(state.eps).f;
  const auto out = hysteresis_outputs(model.density(), state.memory);
  return record_from(model.params(), state.t, state.eps, 0.0, state.E, state.E / f, out, 0.0);
}

std::vector<double> clausius_duhem_residuals(std::span<const PointRecord> records) {
  std::vector<double> res;
  if (records.size() < 2) return res;
  res.reserve(records.size() - 1);
  for (std::size_t k = 1; k < records.size(); ++k) {
    const auto& a = records[k - 1];
    const auto& b = records[k];
    res.push_back((b.eps - a.eps) * b.sigma + (b.D - a.D) * b.E - (b.F - a.F));
  }
  return res;
}

std::vector<double> clausius_duhem_residuals(const PointTrajectory& traj) {
  return clausius_duhem_residuals(traj.records);
}

PointTrajectory drive_field(const MaterialModel& model, const PointState& start,
                            std::span<const double> t, std::span<const double> E,
                            std::span<const double> sigma_target) {
  require_lengths(t.size(), E.size(), sigma_target.size());
  const auto& p = model.params();
  const auto& density = model.density();

  PointTrajectory traj{{}, start};
  traj.records.reserve(t.size() + 1);
  traj.records.push_back(make_record(model, start));
  PointState& s = traj.final_state;
  HysteresisOutputs prev = hysteresis_outputs(density, s.memory);

  for (std::size_t k = 0; k < t.size(); ++k) {
    require_increasing_time(s.t, t[k]);
    const double dt = t[k] - s.t;
    const double Ek = E[k];
    auto h = [&](double eps) {
      const auto sv = p.shape.eval(eps);
      const auto out = outputs_after(density, s.memory, Ek / sv.f);
      return p.nu * (eps - s.eps) / dt + p.c_E * eps - p.e_pz * Ek + sv.f_prime * out.U -
             sigma_target[k];
    };
    const double eps = solve_strain(h, s.eps);
    const double q = Ek / p.shape.eval(eps).f;
    s.memory.evolve(q);
    const auto out = hysteresis_outputs(density, s.memory);
    const double diss = q * (out.P - prev.P) - (out.U - prev.U);
    traj.records.push_back(record_from(p, t[k], eps, (eps - s.eps) / dt, Ek, q, out, diss));
    s.t = t[k];
    s.eps = eps;
    s.E = Ek;
    prev = out;
  }
  return traj;
}

PointTrajectory drive_stress(const MaterialModel& model, const PointState& start,
                             std::span<const double> t, std::span<const double> sigma,
                             std::span<const double> r) {
  require_lengths(t.size(), sigma.size(), r.size());
  const auto& p = model.params();
  const auto& density = model.density();

  PointTrajectory traj{{}, start};
  traj.records.reserve(t.size() + 1);
  traj.records.push_back(make_record(model, start));
  PointState& s = traj.final_state;
  HysteresisOutputs prev = hysteresis_outputs(density, s.memory);

  for (std::size_t k = 0; k < t.size(); ++k) {
    require_increasing_time(s.t, t[k]);
    const double dt = t[k] - s.t;
    auto h = [&](double eps) {
      const auto field = solve_field_from_D(model, eps, r[k], s.memory);
      return p.nu * (eps - s.eps) / dt + p.c_E * eps - p.e_pz * field.E +
             p.shape.eval(eps).f_prime * field.outputs.U - sigma[k];
    };
    const double eps = solve_strain(h, s.eps);
    auto field = solve_field_from_D(model, eps, r[k], s.memory);
    const double diss = field.q * (field.outputs.P - prev.P) - (field.outputs.U - prev.U);
    traj.records.push_back(
        record_from(p, t[k], eps, (eps - s.eps) / dt, field.E, field.q, field.outputs, diss));
    s.t = t[k];
    s.eps = eps;
    s.E = field.E;
    s.memory = std::move(field.memory);
    prev = field.outputs;
  }
  return traj;
}

}  // namespace ferrohyst
