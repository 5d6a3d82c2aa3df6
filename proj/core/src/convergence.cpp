#include "ferrohyst/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "ferrohyst/beam.hpp"
#include "ferrohyst/error.hpp"
#include "ferrohyst/preisach.hpp"

namespace ferrohyst {

namespace {

void require_ladder(int levels, double ratio) {
  if (levels < 3) throw Error(ErrorCode::InvalidParameter, "a convergence study needs at least 3 levels");
  if (!(ratio > 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "refinement ratio must exceed 1; levels would be identical");
  }
}

void fill_orders(ConvergenceStudy& s, double ratio) {
  s.orders.clear();
  for (std::size_t k = 0; k + 1 < s.levels.size(); ++k) {
    const double a = s.levels[k].error;
    const double b = s.levels[k + 1].error;
    if (a <= kRoundOffFloor && b <= kRoundOffFloor) {
      s.orders.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      s.orders.push_back(std::log(a / std::max(b, kRoundOffFloor)) / std::log(ratio));
    }
  }
}

constexpr double kTimeStudyEnd = 0.5;

MaterialParams beam_params(double nu) {
  MaterialParams p;
  p.nu = nu;
  return p;
}

BeamRun linear_beam(std::size_t elements, double dt) {
  MaterialModel model(beam_params(0.05), PreisachDensity::zero(), 1.0, 1);
  BeamSolver solver({1.0, elements}, model, {dt, 1e-12, 50, false});
  BoundaryData bd;
  bd.s = [](double t) { return 0.05 * (1.0 - std::cos(2.0 * std::numbers::pi * t)); };
  auto zero = [](double) { return 0.0; };
  return solver.simulate(zero, zero, bd, 0.5, 1u << 30);
}

BeamRun hysteretic_beam(double dt) {
  MaterialModel model(beam_params(0.01), PreisachDensity::projection(), 1.0, 32);
  BeamSolver solver({1.0, 16}, model, {dt, 1e-12, 50, false});
  BoundaryData bd;
  bd.r = [](double t) { return 0.3 * std::sin(2.0 * std::numbers::pi * t); };
  auto zero = [](double) { return 0.0; };
  return solver.simulate(zero, zero, bd, kTimeStudyEnd, 1u << 30);
}

}  // namespace

double ConvergenceStudy::min_order() const {
  double m = std::numeric_limits<double>::infinity();
  for (double o : orders) {
    if (!std::isnan(o)) m = std::min(m, o);
  }
  return m;
}

bool ConvergenceStudy::reduces_at(double order, double ratio) const {
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const double next = levels[k + 1].error;
    if (next <= kRoundOffFloor) continue;
    if (next > levels[k].error / std::pow(ratio, order)) return false;
  }
  return true;
}

std::vector<ConvergenceStudy> point_convergence(int levels, std::size_t base_nodes, double ratio) {
  require_ladder(levels, ratio);
  if (base_nodes == 0) throw Error(ErrorCode::InvalidParameter, "base_nodes must be positive");
  ConvergenceStudy p{"point", "P_sat", {}, {}};
  ConvergenceStudy u{"point", "U_sat", {}, {}};
  const auto density = PreisachDensity::projection();
  double nodes = static_cast<double>(base_nodes);
  for (int k = 0; k < levels; ++k) {
    const auto m = static_cast<std::size_t>(std::llround(nodes));
    auto state = MemoryState::virgin(RGrid::uniform(1.0, m));
    state.evolve(2.0);
    const auto out = hysteresis_outputs(density, state);
    const double dr = 1.0 / static_cast<double>(m);
    p.levels.push_back({dr, std::abs(out.P - 0.5)});
    u.levels.push_back({dr, std::abs(out.U - 1.0 / 6.0)});
    nodes *= ratio;
  }
  fill_orders(p, ratio);
  fill_orders(u, ratio);
  return {p, u};
}

ConvergenceStudy beam_space_convergence(int levels, std::size_t base_elements,
                                        std::size_t reference_elements, int ratio) {
  require_ladder(levels, ratio);
  std::size_t finest = base_elements;
  for (int k = 1; k < levels; ++k) finest *= static_cast<std::size_t>(ratio);
  if (base_elements == 0 || reference_elements <= finest || reference_elements % finest != 0) {
    throw Error(ErrorCode::InvalidParameter,
                "reference mesh must be a strict refinement of the finest level");
  }
  constexpr double dt = 1e-3;
  const auto ref = linear_beam(reference_elements, dt).final_state;

  ConvergenceStudy s{"beam", "strain_L2_h", {}, {}};
  std::size_t n = base_elements;
  for (int k = 0; k < levels; ++k) {
    const auto run = linear_beam(n, dt).final_state;
    const double h = 1.0 / static_cast<double>(n);
    const std::size_t stride = reference_elements / n;
    double err = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      const double ref_eps = (ref.u[(e + 1) * stride] - ref.u[e * stride]) / h;
      err += h * (run.elements[e].eps - ref_eps) * (run.elements[e].eps - ref_eps);
    }
    s.levels.push_back({h, std::sqrt(err)});
    n *= static_cast<std::size_t>(ratio);
  }
  fill_orders(s, ratio);
  return s;
}

ConvergenceStudy beam_time_convergence(int levels, double base_dt, int ratio) {
  require_ladder(levels, ratio);
  const double ref_dt = base_dt / std::pow(ratio, levels + 2);
  const auto ref = hysteretic_beam(ref_dt).final_state;
  ConvergenceStudy s{"beam", "displacement_max_dt", {}, {}};
  double dt = base_dt;
  for (int k = 0; k < levels; ++k) {
    const auto run = hysteretic_beam(dt).final_state;
    double err = 0.0;
    for (std::size_t i = 0; i < run.u.size(); ++i) err = std::max(err, std::abs(run.u[i] - ref.u[i]));
    s.levels.push_back({dt, err});
    dt /= ratio;
  }
  fill_orders(s, ratio);
  return s;
}

ConvergenceStudy beam_energy_convergence(int levels, double base_dt, int ratio) {
  require_ladder(levels, ratio);
  ConvergenceStudy s{"beam", "energy_residual_dt", {}, {}};
  double dt = base_dt;
  for (int k = 0; k < levels; ++k) {
    const auto run = hysteretic_beam(dt);
    double err = 0.0;
    for (const auto& row : run.energy) err = std::max(err, std::abs(row.residual));
    s.levels.push_back({dt, err});
    dt /= ratio;
  }
  fill_orders(s, ratio);
  return s;
}

std::string convergence_csv(std::span<const ConvergenceStudy> studies) {
  std::string out = "target,quantity,level,size,error,order\n";
  for (const auto& s : studies) {
    for (std::size_t k = 0; k < s.levels.size(); ++k) {
      fmt::format_to(std::back_inserter(out), "{},{},{},{:.17g},{:.17g},", s.target, s.quantity, k,
                     s.levels[k].size, s.levels[k].error);
      if (k < s.orders.size()) fmt::format_to(std::back_inserter(out), "{:.17g}", s.orders[k]);
      out += '\n';
    }
  }
  return out;
}

}  // namespace ferrohyst
