#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ferrohyst/hysteresis.hpp"

namespace ferrohyst {

/// One discrete Prandtl-Ishlinskii cell: a play of radius `radius` weighted
/// linearly, g_j(v) = weight * v.
struct PrandtlCell {
  double radius = 0.0;
  double weight = 0.0;
};

/// Preisach density g(r, v) together with its slope bound mu(r) and the
/// potential kernel G(r, v) = int_0^v v' dg/dv(r, v') dv'.
///
/// Continuous kinds are integrated over r with the grid's trapezoid weights;
/// the Prandtl kind is a finite sum of cells evaluated on a grid whose nodes
/// are exactly the cell radii (see make_grid).
class PreisachDensity {
 public:
  enum class Kind { Projection, Zero, Prandtl, Tabulated };

  /// g(r, v) = clamp(v, -(1 - r), 1 - r) for r <= 1, zero beyond.
  static PreisachDensity projection();

  static PreisachDensity zero();

  /// Finite Prandtl-Ishlinskii stack. Radii must be positive and distinct;
  /// weights nonnegative.
  static PreisachDensity prandtl(std::vector<PrandtlCell> cells);

  /// User-supplied density. `g` must vanish at v = 0, be nondecreasing in v
  /// with slope at most `slope_bound(r)`, be constant in v for
  /// |v| >= v_limit and vanish for r >= support. G is tabulated on a
  /// (table_r + 1) x (2 * table_v + 1) lattice and bilinearly interpolated.
  static PreisachDensity tabulated(std::function<double(double, double)> g,
                                   std::function<double(double)> slope_bound, double support,
                                   double v_limit, std::size_t table_r = 256,
                                   std::size_t table_v = 256);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_discrete() const noexcept { return kind_ == Kind::Prandtl; }

  /// Radius beyond which g vanishes identically (largest cell radius for
  /// Prandtl stacks).
  [[nodiscard]] double support() const noexcept;

  /// |v| beyond which g is constant in v (0 for the zero and Prandtl kinds).
  [[nodiscard]] double saturation_level() const noexcept;

  [[nodiscard]] double g(double r, double v) const;
  [[nodiscard]] double potential(double r, double v) const;
  [[nodiscard]] double slope_bound(double r) const;

  [[nodiscard]] std::span<const PrandtlCell> cells() const noexcept;

  /// Memory grid suited to this density: uniform on (0, cutoff] for the
  /// continuous kinds, the sorted cell radii for Prandtl stacks.
  [[nodiscard]] RGrid make_grid(double cutoff, std::size_t nodes) const;

 private:
  struct Table;
  PreisachDensity() = default;

  Kind kind_ = Kind::Zero;
  std::shared_ptr<const std::vector<PrandtlCell>> cells_;
  std::function<double(double, double)> user_g_;
  std::function<double(double)> user_mu_;
  std::shared_ptr<const Table> table_;
  double support_ = 0.0;
  double v_limit_ = 0.0;
};

/// M = int mu(r) dr and M1 = int int dg/dv dv dr.
struct DensityConstants {
  double M = 0.0;
  double M1 = 0.0;
};

/// Numerical quadrature of the two constants. Prandtl stacks have
/// unbounded output, so their M1 is +infinity (and M is the weight sum).
/// Throws invalid-density when a quadrature result is NaN or when the
/// slope bound integral diverges.
[[nodiscard]] DensityConstants density_constants(const PreisachDensity& density);

/// Per-node weights mu_j of the discrete Preisach operator that the
/// quadrature actually evaluates, P = sum_j g_j(xi_j). Index 0 is the
/// origin node (radius 0, xi = q) for continuous densities.
class DiscreteWeights {
 public:
  DiscreteWeights(const PreisachDensity& density, const RGrid& grid);

  [[nodiscard]] std::span<const double> mu() const noexcept { return mu_; }
  [[nodiscard]] std::span<const double> radii() const noexcept { return radii_; }

  /// g_j(v); nondecreasing, Lipschitz with constant mu_j, g_j(0) = 0.
  [[nodiscard]] double cell_output(std::size_t j, double v) const;

 private:
  PreisachDensity density_;
  std::vector<double> radii_;
  std::vector<double> quad_;
  std::vector<double> mu_;
};

}  // namespace ferrohyst
