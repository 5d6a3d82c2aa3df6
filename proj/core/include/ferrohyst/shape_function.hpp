#pragma once

#include <memory>
#include <vector>

namespace ferrohyst {

struct ShapeValue {
  double f = 0.0;
  double f_prime = 0.0;
};

/// The strain-dependent weight f(eps) > 0 of the hysteresis potential.
///
/// The defining formula applies on [-1, 1]. Outside, f' is ramped linearly
/// to zero over a margin (0.5 by default, narrower where needed to keep
/// f >= floor()) and f is constant beyond, which keeps f' Lipschitz and
/// 1/f, eps/f Lipschitz on the working range [-1.5, 1.5].
class ShapeFunction {
 public:
  enum class Variant { Linear, Quartic, Table };

  static constexpr double kWorkingLimit = 1.5;
  static constexpr double kMargin = 0.5;
  static constexpr double kFloor = 0.05;

  /// f = 1.1 - eps.
  static ShapeFunction linear();
  /// f = 1/2 + (eps - 1)^4 / 4.
  static ShapeFunction quartic();
  /// Piecewise cubic Hermite (PCHIP) through (eps_i, f_i); the nodes must
  /// span exactly [-1, 1] and every f_i must exceed floor().
  static ShapeFunction table(std::vector<double> eps, std::vector<double> f);

  [[nodiscard]] Variant variant() const noexcept { return variant_; }
  [[nodiscard]] double floor() const noexcept { return kFloor; }

  /// Throws out-of-range for |eps| > 1.5.
  [[nodiscard]] ShapeValue eval(double eps) const;

  /// Width of the C1 margin actually used on each side.
  [[nodiscard]] double left_margin() const noexcept { return left_.width; }
  [[nodiscard]] double right_margin() const noexcept { return right_.width; }

 private:
  struct Interp;
  struct Extension {
    double f = 0.0;      // value at the interval end
    double slope = 0.0;  // f' at the interval end
    double width = 0.0;  // margin over which f' decays to zero
  };

  ShapeFunction(Variant variant, std::shared_ptr<const Interp> interp);
  [[nodiscard]] ShapeValue core(double eps) const;

  Variant variant_;
  std::shared_ptr<const Interp> interp_;
  Extension left_;
  Extension right_;
};

[[nodiscard]] inline ShapeValue shape_eval(const ShapeFunction& f, double eps) { return f.eval(eps); }

}  // namespace ferrohyst
