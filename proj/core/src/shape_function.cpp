#include "ferrohyst/shape_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

// boost 1.74 pchip calls isnan unqualified
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "ferrohyst/error.hpp"

namespace ferrohyst {

struct ShapeFunction::Interp {
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

ShapeFunction::ShapeFunction(Variant variant, std::shared_ptr<const Interp> interp)
    : variant_(variant), interp_(std::move(interp)) {
  const auto lo = core(-1.0);
  const auto hi = core(1.0);
  if (!(lo.f > kFloor) || !(hi.f > kFloor)) {
    throw Error(ErrorCode::ShapeDegeneracy, "f must exceed the floor at eps = +-1");
  }
  left_ = {lo.f, lo.f_prime, kMargin};
  right_ = {hi.f, hi.f_prime, kMargin};
  // Moving outward, f changes by slope * width / 2 (left: with opposite sign).
  if (left_.slope > 0.0) {
    left_.width = std::min(kMargin, 2.0 * (left_.f - kFloor) / left_.slope);
  }
  if (right_.slope < 0.0) {
    right_.width = std::min(kMargin, 2.0 * (right_.f - kFloor) / -right_.slope);
  }
}

ShapeFunction ShapeFunction::linear() { return ShapeFunction(Variant::Linear, nullptr); }

ShapeFunction ShapeFunction::quartic() { return ShapeFunction(Variant::Quartic, nullptr); }

ShapeFunction ShapeFunction::table(std::vector<double> eps, std::vector<double> f) {
  if (eps.size() != f.size() || eps.size() < 4) {
    throw Error(ErrorCode::InvalidParameter, "shape table needs at least 4 (eps, f) pairs");
  }
  if (eps.front() != -1.0 || eps.back() != 1.0 || !std::is_sorted(eps.begin(), eps.end()) ||
      std::adjacent_find(eps.begin(), eps.end()) != eps.end()) {
    throw Error(ErrorCode::InvalidParameter, "shape table nodes must increase from -1 to 1");
  }
  for (double v : f) {
    if (!(v > kFloor) || !std::isfinite(v)) {
      throw Error(ErrorCode::ShapeDegeneracy, "shape table values must exceed the floor");
    }
  }
  auto interp = std::make_shared<Interp>(Interp{{std::move(eps), std::move(f)}});
  return ShapeFunction(Variant::Table, std::move(interp));
}

ShapeValue ShapeFunction::core(double eps) const {
  switch (variant_) {
    case Variant::Linear: return {1.1 - eps, -1.0};
    case Variant::Quartic: {
      const double d = eps - 1.0;
      return {0.5 + 0.25 * d * d * d * d, d * d * d};
    }
    case Variant::Table: return {interp_->spline(eps), interp_->spline.prime(eps)};
  }
  return {};
}

ShapeValue ShapeFunction::eval(double eps) const {
  if (!(std::abs(eps) <= kWorkingLimit)) {
    throw Error(ErrorCode::OutOfRange,
                "strain " + std::to_string(eps) + " outside the working range [-1.5, 1.5]");
  }
  if (eps > 1.0) {
    const double t = eps - 1.0;
    const auto& e = right_;
    if (t >= e.width) return {e.f + 0.5 * e.slope * e.width, 0.0};
    return {e.f + e.slope * (t - 0.5 * t * t / e.width), e.slope * (1.0 - t / e.width)};
  }
  if (eps < -1.0) {
    const double t = -1.0 - eps;
    const auto& e = left_;
    if (t >= e.width) return {e.f - 0.5 * e.slope * e.width, 0.0};
    return {e.f - e.slope * (t - 0.5 * t * t / e.width), e.slope * (1.0 - t / e.width)};
  }
  return core(eps);
}

}  // namespace ferrohyst
