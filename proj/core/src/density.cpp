#include "ferrohyst/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ferrohyst/error.hpp"

namespace ferrohyst {

namespace {

constexpr double kQuadTol = 1e-11;

template <class F>
double integrate(F&& f, double a, double b) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, kQuadTol, &err);
  if (!(err <= 1e-6 * (1.0 + std::abs(value)))) return std::numeric_limits<double>::quiet_NaN();
  return value;
}

template <class F>
double integrate_cell(F&& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 10>::integrate(f, a, b);
}

const PrandtlCell* find_cell(const std::vector<PrandtlCell>& cells, double r) {
  auto it = std::lower_bound(cells.begin(), cells.end(), r,
                             [](const PrandtlCell& c, double x) { return c.radius < x; });
  if (it != cells.end() && it->radius == r) return &*it;
  return nullptr;
}

}  // namespace

// G on a regular (r, v) lattice; v runs over [-v_limit, v_limit].
struct PreisachDensity::Table {
  std::size_t nr = 0;
  std::size_t nv = 0;  // lattice points per half axis, excluding v = 0
  double dr = 0.0;
  double dv = 0.0;
  std::vector<double> values;  // (nr + 1) rows of (2 nv + 1)

  [[nodiscard]] double at(std::size_t i, std::size_t k) const { return values[i * (2 * nv + 1) + k]; }
};

PreisachDensity PreisachDensity::projection() {
  PreisachDensity d;
  d.kind_ = Kind::Projection;
  d.support_ = 1.0;
  d.v_limit_ = 1.0;
  return d;
}

PreisachDensity PreisachDensity::zero() {
  PreisachDensity d;
  d.kind_ = Kind::Zero;
  return d;
}

PreisachDensity PreisachDensity::prandtl(std::vector<PrandtlCell> cells) {
  if (cells.empty()) {
    throw Error(ErrorCode::InvalidDensity, "Prandtl-Ishlinskii stack needs at least one cell");
  }
  std::sort(cells.begin(), cells.end(),
            [](const PrandtlCell& a, const PrandtlCell& b) { return a.radius < b.radius; });
  double prev = 0.0;
  for (const auto& c : cells) {
    if (!(c.radius > prev) || !std::isfinite(c.radius)) {
      throw Error(ErrorCode::InvalidDensity, "cell radii must be positive, finite and distinct");
    }
    if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
      throw Error(ErrorCode::InvalidDensity, "cell weights must be finite and nonnegative");
    }
    prev = c.radius;
  }
  PreisachDensity d;
  d.kind_ = Kind::Prandtl;
  d.support_ = cells.back().radius;
  d.cells_ = std::make_shared<const std::vector<PrandtlCell>>(std::move(cells));
  return d;
}

PreisachDensity PreisachDensity::tabulated(std::function<double(double, double)> g,
                                           std::function<double(double)> slope_bound,
                                           double support, double v_limit, std::size_t table_r,
                                           std::size_t table_v) {
  if (!g || !slope_bound) {
    throw Error(ErrorCode::InvalidDensity, "tabulated density needs g and its slope bound");
  }
  if (!(support > 0.0) || !(v_limit > 0.0) || !std::isfinite(support) || !std::isfinite(v_limit)) {
    throw Error(ErrorCode::InvalidDensity, "support and v_limit must be positive and finite");
  }
  if (table_r < 2 || table_v < 2) {
    throw Error(ErrorCode::InvalidParameter, "potential table needs at least 2 cells per axis");
  }

  auto table = std::make_shared<Table>();
  table->nr = table_r;
  table->nv = table_v;
  table->dr = support / static_cast<double>(table_r);
  table->dv = v_limit / static_cast<double>(table_v);
  const std::size_t row = 2 * table_v + 1;
  table->values.assign((table_r + 1) * row, 0.0);

  // G(r, v) = v g(r, v) - int_0^v g(r, v') dv', accumulated outward from v = 0.
  for (std::size_t i = 0; i <= table_r; ++i) {
    const double r = static_cast<double>(i) * table->dr;
    auto gr = [&](double v) { return g(r, v); };
    for (int side : {-1, 1}) {
      double acc = 0.0;
      for (std::size_t k = 1; k <= table_v; ++k) {
        const double v0 = side * static_cast<double>(k - 1) * table->dv;
        const double v1 = side * static_cast<double>(k) * table->dv;
        acc += side > 0 ? integrate_cell(gr, v0, v1) : -integrate_cell(gr, v1, v0);
        const double value = v1 * g(r, v1) - acc;
        if (!std::isfinite(value)) {
          throw Error(ErrorCode::InvalidDensity, "non-finite potential while tabulating G");
        }
        const std::size_t col = side > 0 ? table_v + k : table_v - k;
        table->values[i * row + col] = value;
      }
    }
  }

  PreisachDensity d;
  d.kind_ = Kind::Tabulated;
  d.user_g_ = std::move(g);
  d.user_mu_ = std::move(slope_bound);
  d.table_ = std::move(table);
  d.support_ = support;
  d.v_limit_ = v_limit;
  return d;
}

double PreisachDensity::support() const noexcept { return support_; }

double PreisachDensity::saturation_level() const noexcept { return v_limit_; }

std::span<const PrandtlCell> PreisachDensity::cells() const noexcept {
  if (!cells_) return {};
  return *cells_;
}

double PreisachDensity::g(double r, double v) const {
  switch (kind_) {
    case Kind::Projection: {
      if (r >= 1.0) return 0.0;
      const double bound = 1.0 - r;
      return std::clamp(v, -bound, bound);
    }
    case Kind::Zero: return 0.0;
    case Kind::Prandtl: {
      const auto* cell = find_cell(*cells_, r);
      return cell ? cell->weight * v : 0.0;
    }
    case Kind::Tabulated: return r >= support_ ? 0.0 : user_g_(r, v);
  }
  return 0.0;
}

double PreisachDensity::potential(double r, double v) const {
  switch (kind_) {
    case Kind::Projection: {
      if (r >= 1.0) return 0.0;
      const double a = std::min(std::abs(v), 1.0 - r);
      return 0.5 * a * a;
    }
    case Kind::Zero: return 0.0;
    case Kind::Prandtl: {
      const auto* cell = find_cell(*cells_, r);
      return cell ? 0.5 * cell->weight * v * v : 0.0;
    }
    case Kind::Tabulated: {
      if (r >= support_ || r < 0.0) return 0.0;
      const Table& t = *table_;
      const double vc = std::clamp(v, -v_limit_, v_limit_);
      const double x = r / t.dr;
      const double y = (vc + v_limit_) / t.dv;
      const auto i = std::min(static_cast<std::size_t>(x), t.nr - 1);
      const auto k = std::min(static_cast<std::size_t>(y), 2 * t.nv - 1);
      const double fx = x - static_cast<double>(i);
      const double fy = y - static_cast<double>(k);
      return (1 - fx) * ((1 - fy) * t.at(i, k) + fy * t.at(i, k + 1)) +
             fx * ((1 - fy) * t.at(i + 1, k) + fy * t.at(i + 1, k + 1));
    }
  }
  return 0.0;
}

double PreisachDensity::slope_bound(double r) const {
  switch (kind_) {
    case Kind::Projection: return r < 1.0 ? 1.0 : 0.0;
    case Kind::Zero: return 0.0;
    case Kind::Prandtl: {
      const auto* cell = find_cell(*cells_, r);
      return cell ? cell->weight : 0.0;
    }
    case Kind::Tabulated: return r >= support_ ? 0.0 : user_mu_(r);
  }
  return 0.0;
}

RGrid PreisachDensity::make_grid(double cutoff, std::size_t nodes) const {
  if (kind_ == Kind::Prandtl) {
    std::vector<double> radii;
    radii.reserve(cells_->size());
    for (const auto& c : *cells_) radii.push_back(c.radius);
    return RGrid::from_nodes(std::move(radii));
  }
  return RGrid::uniform(cutoff, nodes);
}

DensityConstants density_constants(const PreisachDensity& density) {
  using Kind = PreisachDensity::Kind;
  DensityConstants out;
  switch (density.kind()) {
    case Kind::Zero: return out;
    case Kind::Prandtl: {
      for (const auto& c : density.cells()) out.M += c.weight;
      out.M1 = out.M > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      return out;
    }
    case Kind::Projection:
    case Kind::Tabulated: {
      const double support = density.support();
      const double v_sat = density.saturation_level();
      out.M = integrate([&](double r) { return density.slope_bound(r); }, 0.0, support);
      out.M1 = integrate([&](double r) { return density.g(r, v_sat) - density.g(r, -v_sat); }, 0.0,
                         support);
      break;
    }
  }
  if (!std::isfinite(out.M) || !std::isfinite(out.M1) || out.M < 0.0) {
    throw Error(ErrorCode::InvalidDensity, "density constants are not finite");
  }
  return out;
}

DiscreteWeights::DiscreteWeights(const PreisachDensity& density, const RGrid& grid)
    : density_(density) {
  if (density.is_discrete()) {
    for (const auto& c : density.cells()) {
      radii_.push_back(c.radius);
      quad_.push_back(1.0);
      mu_.push_back(c.weight);
    }
    return;
  }
  radii_.push_back(0.0);
  quad_.push_back(grid.origin_weight());
  const auto r = grid.nodes();
  const auto w = grid.weights();
  radii_.insert(radii_.end(), r.begin(), r.end());
  quad_.insert(quad_.end(), w.begin(), w.end());
  mu_.resize(radii_.size());
  for (std::size_t j = 0; j < radii_.size(); ++j) {
    mu_[j] = quad_[j] * density.slope_bound(radii_[j]);
  }
}

double DiscreteWeights::cell_output(std::size_t j, double v) const {
  return quad_.at(j) * density_.g(radii_[j], v);
}

}  // namespace ferrohyst
