#include "ferrohyst/preisach.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ferrohyst/error.hpp"

namespace ferrohyst {

namespace {

void check_discrete_grid(const PreisachDensity& density, const RGrid& grid) {
  const auto cells = density.cells();
  const auto nodes = grid.nodes();
  bool ok = cells.size() == nodes.size();
  for (std::size_t j = 0; ok && j < cells.size(); ++j) ok = cells[j].radius == nodes[j];
  if (!ok) {
    throw Error(ErrorCode::InvalidParameter,
                "Prandtl-Ishlinskii stack must be evaluated on its own radii");
  }
}

void check_cutoff(const PreisachDensity& density, const RGrid& grid, double input_sup) {
  const double R = grid.cutoff();
  if (input_sup > R && density.support() > R) {
    throw Error(ErrorCode::CutoffViolation,
                "input history sup " + std::to_string(input_sup) + " exceeds memory cutoff " +
                    std::to_string(R));
  }
}

// xi_at(j) yields the play value at node j; q is the current input (the
// radius-0 play at the origin node).
template <class XiAt>
HysteresisOutputs accumulate(const PreisachDensity& density, const RGrid& grid, double q,
                             double input_sup, XiAt&& xi_at) {
  using Kind = PreisachDensity::Kind;
  HysteresisOutputs out;
  const auto r = grid.nodes();
  const auto w = grid.weights();
  const std::size_t m = r.size();

  switch (density.kind()) {
    case Kind::Zero: return out;
    case Kind::Prandtl: {
      check_discrete_grid(density, grid);
      const auto cells = density.cells();
      for (std::size_t j = 0; j < m; ++j) {
        const double xi = xi_at(j);
        out.P += cells[j].weight * xi;
        out.U += 0.5 * cells[j].weight * xi * xi;
      }
      return out;
    }
    case Kind::Projection: {
      check_cutoff(density, grid, input_sup);
      auto add = [&](double weight, double radius, double xi) {
        const double bound = 1.0 - radius;
        const double gv = std::clamp(xi, -bound, bound);
        const double a = std::min(std::abs(xi), bound);
        out.P += weight * gv;
        out.U += weight * 0.5 * a * a;
      };
      add(grid.origin_weight(), 0.0, q);
      for (std::size_t j = 0; j < m && r[j] < 1.0; ++j) add(w[j], r[j], xi_at(j));
      return out;
    }
    case Kind::Tabulated: {
      check_cutoff(density, grid, input_sup);
      const double support = density.support();
      out.P += grid.origin_weight() * density.g(0.0, q);
      out.U += grid.origin_weight() * density.potential(0.0, q);
      for (std::size_t j = 0; j < m && r[j] < support; ++j) {
        const double xi = xi_at(j);
        out.P += w[j] * density.g(r[j], xi);
        out.U += w[j] * density.potential(r[j], xi);
      }
      return out;
    }
  }
  return out;
}

}  // namespace

HysteresisOutputs hysteresis_outputs(const PreisachDensity& density, const MemoryState& state) {
  const auto xi = state.xi();
  return accumulate(density, state.grid(), state.input(), state.input_sup(),
                    [&](std::size_t j) { return xi[j]; });
}

HysteresisOutputs outputs_after(const PreisachDensity& density, const MemoryState& state,
                                double q_new) {
  const auto xi = state.xi();
  const auto r = state.grid().nodes();
  return accumulate(density, state.grid(), q_new, std::max(state.input_sup(), std::abs(q_new)),
                    [&](std::size_t j) { return std::min(q_new + r[j], std::max(q_new - r[j], xi[j])); });
}

double preisach_output(const PreisachDensity& density, const MemoryState& state) {
  return hysteresis_outputs(density, state).P;
}

double potential_output(const PreisachDensity& density, const MemoryState& state) {
  return hysteresis_outputs(density, state).U;
}

double dissipation_increment(const PreisachDensity& density, const MemoryState& before,
                             const MemoryState& after, double q_after) {
  if (!(before.grid() == after.grid())) {
    throw Error(ErrorCode::InvalidParameter, "dissipation needs states on the same grid");
  }
  const auto b = hysteresis_outputs(density, before);
  const auto a = hysteresis_outputs(density, after);
  return q_after * (a.P - b.P) - (a.U - b.U);
}

}  // namespace ferrohyst
