#include "ferrohyst/beam.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "ferrohyst/error.hpp"

namespace ferrohyst {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// Assembles the free-node (1..N) part of an element matrix [[a, b], [b, a]].
SpMat assemble(std::size_t n_el, double diag, double off) {
  const auto n = static_cast<Eigen::Index>(n_el);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(4 * n_el);
  for (Eigen::Index e = 0; e < n; ++e) {
    // element e couples nodes e and e + 1; free index = node - 1
    const Eigen::Index a = e - 1;
    const Eigen::Index b = e;
    if (a >= 0) {
      t.emplace_back(a, a, diag);
      t.emplace_back(a, b, off);
      t.emplace_back(b, a, off);
    }
    t.emplace_back(b, b, diag);
  }
  SpMat m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

struct BeamSolver::Linear {
  SpMat mass;
  SpMat stiffness;  // unit-coefficient, 1/h [[1, -1], [-1, 1]]
  SpMat system;     // mass/dt + (nu + c dt) stiffness
  Eigen::SimplicialLDLT<SpMat> solver;
};

void BeamMesh::validate() const {
  if (!(length > 0.0) || elements == 0) {
    throw Error(ErrorCode::InvalidParameter, "beam needs a positive length and at least one element");
  }
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !(picard_tolerance > 0.0) || picard_max_iterations < 1) {
    throw Error(ErrorCode::InvalidParameter, "stepper needs dt > 0, tolerance > 0, iterations >= 1");
  }
}

StressFunctional hysteretic_stress_functional(const MaterialModel& model, double eps,
                                              const MemoryState& memory, double r) {
  const auto& p = model.params();
  auto field = solve_field_from_D(model, eps, r, memory);
  const double W = -(p.e_pz / p.kappa) * (r - p.e_pz * eps - field.outputs.P) +
                   p.shape.eval(eps).f_prime * field.outputs.U;
  return {W, std::move(field)};
}

BeamSolver::BeamSolver(BeamMesh mesh, MaterialModel model, StepperConfig cfg)
    : mesh_(mesh), model_(std::move(model)), cfg_(cfg), linear_(std::make_unique<Linear>()) {
  mesh_.validate();
  cfg_.validate();
  const double h = mesh_.h();
  const auto& p = model_.params();
  if (cfg_.lumped_mass) {
    linear_->mass = assemble(mesh_.elements, 0.5 * p.rho * h, 0.0);
  } else {
    linear_->mass = assemble(mesh_.elements, p.rho * h / 3.0, p.rho * h / 6.0);
  }
  linear_->stiffness = assemble(mesh_.elements, 1.0 / h, -1.0 / h);
  linear_->system = linear_->mass / cfg_.dt + (p.nu + p.c_E * cfg_.dt) * linear_->stiffness;
  linear_->solver.compute(linear_->system);
  if (linear_->solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidParameter, "beam system matrix is not positive definite");
  }
}

BeamSolver::~BeamSolver() = default;
BeamSolver::BeamSolver(BeamSolver&&) noexcept = default;
BeamSolver& BeamSolver::operator=(BeamSolver&&) noexcept = default;

ElementState BeamSolver::element_state(double eps, double eps_dot, const MemoryState& memory,
                                       double r) const {
  const auto& p = model_.params();
  auto sf = hysteretic_stress_functional(model_, eps, memory, r);
  ElementState el{eps,
                  eps_dot,
                  sf.field.E,
                  sf.field.q,
                  sf.field.outputs.P,
                  sf.field.outputs.U,
                  p.nu * eps_dot + p.c_E * eps + sf.W,
                  free_energy(p, eps, sf.field.E, sf.field.outputs.U),
                  std::move(sf.field.memory)};
  return el;
}

BeamState BeamSolver::initial_state(const std::function<double(double)>& u0,
                                    const std::function<double(double)>& u1,
                                    const BoundaryData& boundary, double t0) const {
  const std::size_t n = mesh_.nodes();
  BeamState s;
  s.t = t0;
  s.r = boundary.r(t0);
  s.u.resize(n);
  s.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.u[i] = u0(mesh_.x(i));
    s.v[i] = u1(mesh_.x(i));
  }
  if (s.u[0] != 0.0) {
    throw Error(ErrorCode::InvalidParameter, "initial displacement must vanish at the clamp");
  }
  s.v[0] = 0.0;
  const double h = mesh_.h();
  s.elements.reserve(mesh_.elements);
  const MemoryState virgin = model_.virgin_memory();
  for (std::size_t e = 0; e < mesh_.elements; ++e) {
    const double eps = (s.u[e + 1] - s.u[e]) / h;
    const double eps_dot = (s.v[e + 1] - s.v[e]) / h;
    s.elements.push_back(element_state(eps, eps_dot, virgin, s.r));
  }
  return s;
}

BeamState BeamSolver::step(const BeamState& state, const BoundaryData& boundary) const {
  const std::size_t n_el = mesh_.elements;
  const auto n = static_cast<Eigen::Index>(n_el);
  const double h = mesh_.h();
  const double dt = cfg_.dt;
  const double t_new = state.t + dt;
  const double r_new = boundary.r(t_new);
  const double s_new = boundary.s(t_new);
  const auto& p = model_.params();

  Vec u_old(n), v_old(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    u_old[i] = state.u[static_cast<std::size_t>(i) + 1];
    v_old[i] = state.v[static_cast<std::size_t>(i) + 1];
  }
  // Parts of the right-hand side that do not depend on W.
  Vec base = linear_->mass * v_old / dt - p.c_E * (linear_->stiffness * u_old);
  base[n - 1] += s_new;

  auto node = [](const Vec& x, std::size_t i) { return i == 0 ? 0.0 : x[static_cast<Eigen::Index>(i) - 1]; };

  Vec v = v_old;
  std::vector<double> W(n_el);
  std::vector<double> rate(n_el);
  for (std::size_t e = 0; e < n_el; ++e) rate[e] = (node(v, e + 1) - node(v, e)) / h;

  int sweeps = 0;
  bool settled = false;
  while (!settled) {
    if (sweeps == cfg_.picard_max_iterations) {
      throw Error(ErrorCode::StepDivergence,
                  "Picard sweeps did not settle at t = " + std::to_string(t_new) +
                      "; reduce dt");
    }
    ++sweeps;
    for (std::size_t e = 0; e < n_el; ++e) {
      const double eps = state.elements[e].eps + dt * rate[e];
      W[e] = hysteretic_stress_functional(model_, eps, state.elements[e].memory, r_new).W;
    }
    Vec rhs = base;
    for (std::size_t e = 0; e < n_el; ++e) {
      const auto a = static_cast<Eigen::Index>(e) - 1;  // free index of node e
      if (a >= 0) rhs[a] += W[e];
      rhs[a + 1] -= W[e];
    }
    v = linear_->solver.solve(rhs);

    double change = 0.0;
    for (std::size_t e = 0; e < n_el; ++e) {
      const double next = (node(v, e + 1) - node(v, e)) / h;
      change += h * (next - rate[e]) * (next - rate[e]);
      rate[e] = next;
    }
    settled = std::sqrt(change) < cfg_.picard_tolerance;
  }

  BeamState next;
  next.t = t_new;
  next.r = r_new;
  next.picard_iterations = sweeps;
  next.u.assign(mesh_.nodes(), 0.0);
  next.v.assign(mesh_.nodes(), 0.0);
  for (std::size_t i = 1; i < mesh_.nodes(); ++i) {
    next.v[i] = node(v, i);
    next.u[i] = state.u[i] + dt * next.v[i];
  }
  next.elements.reserve(n_el);
  for (std::size_t e = 0; e < n_el; ++e) {
    const double eps = (next.u[e + 1] - next.u[e]) / h;
    next.elements.push_back(element_state(eps, rate[e], state.elements[e].memory, r_new));
  }
  return next;
}

double BeamSolver::kinetic_energy(const BeamState& state) const {
  const auto n = static_cast<Eigen::Index>(mesh_.elements);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = state.v[static_cast<std::size_t>(i) + 1];
  return 0.5 * v.dot(linear_->mass * v);
}

double BeamSolver::stored_energy(const BeamState& state) const {
  double total = 0.0;
  for (const auto& el : state.elements) total += el.F;
  return total * mesh_.h();
}

BeamSnapshot BeamSolver::snapshot(const BeamState& state) const {
  BeamSnapshot snap;
  snap.t = state.t;
  snap.u = state.u;
  snap.v = state.v;
  for (const auto& el : state.elements) {
    snap.eps.push_back(el.eps);
    snap.sigma.push_back(el.sigma);
    snap.E.push_back(el.E);
    snap.P.push_back(el.P);
  }
  return snap;
}

BeamRun BeamSolver::simulate(const BeamState& start, const BoundaryData& boundary, double t_end,
                             std::size_t output_stride) const {
  if (output_stride == 0) {
    throw Error(ErrorCode::InvalidParameter, "output stride must be at least 1");
  }
  const double span = t_end - start.t;
  const auto steps = static_cast<std::size_t>(std::max(0.0, std::llround(span / cfg_.dt) * 1.0));
  const double h = mesh_.h();
  const auto& p = model_.params();

  BeamRun run;
  run.snapshots.push_back(snapshot(start));
  EnergyRow row;
  row.t = start.t;
  row.K = kinetic_energy(start);
  row.F = stored_energy(start);
  const double initial_energy = row.K + row.F;
  run.energy.push_back(row);

  BeamState cur = start;
  long total_sweeps = 0;
  for (std::size_t k = 1; k <= steps; ++k) {
    BeamState next = step(cur, boundary);
    total_sweeps += next.picard_iterations;
    run.max_picard_iterations = std::max(run.max_picard_iterations, next.picard_iterations);

    double visc = 0.0;
    double hyst = 0.0;
    double electric = 0.0;
    for (std::size_t e = 0; e < mesh_.elements; ++e) {
      const auto& a = cur.elements[e];
      const auto& b = next.elements[e];
      visc += p.nu * b.eps_dot * b.eps_dot;
      const double f = p.shape.eval(b.eps).f;
      hyst += f * (b.q * (b.P - a.P) - (b.U - a.U));
      electric += b.E * (next.r - cur.r);
    }
    row.t = next.t;
    row.K = kinetic_energy(next);
    row.F = stored_energy(next);
    row.diss_visc += cfg_.dt * h * visc;
    row.diss_hyst += h * hyst;
    row.work_boundary += cfg_.dt * boundary.s(next.t) * next.v.back() + h * electric;
    row.residual = row.K + row.F + row.diss_hyst + row.diss_visc - row.work_boundary - initial_energy;
    run.energy.push_back(row);

    if (k % output_stride == 0 || k == steps) run.snapshots.push_back(snapshot(next));
    cur = std::move(next);
  }
  run.mean_picard_iterations =
      steps > 0 ? static_cast<double>(total_sweeps) / static_cast<double>(steps) : 0.0;
  run.final_state = std::move(cur);
  return run;
}

BeamRun BeamSolver::simulate(const std::function<double(double)>& u0,
                             const std::function<double(double)>& u1,
                             const BoundaryData& boundary, double t_end,
                             std::size_t output_stride) const {
  return simulate(initial_state(u0, u1, boundary), boundary, t_end, output_stride);
}

EnergyAudit energy_audit(std::span<const EnergyRow> energy) {
  EnergyAudit audit;
  for (std::size_t k = 1; k < energy.size(); ++k) {
    const auto& a = energy[k - 1];
    const auto& b = energy[k];
    const double res = b.residual - a.residual;
    const double diss = (b.diss_hyst - a.diss_hyst) + (b.diss_visc - a.diss_visc);
    audit.residuals.push_back(res);
    audit.dissipation.push_back(diss);
    audit.total_abs_residual += std::abs(res);
    audit.min_dissipation = k == 1 ? diss : std::min(audit.min_dissipation, diss);
  }
  return audit;
}

}  // namespace ferrohyst
