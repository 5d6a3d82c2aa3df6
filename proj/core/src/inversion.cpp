#include "ferrohyst/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ferrohyst/error.hpp"
#include "ferrohyst/root_finding.hpp"

namespace ferrohyst {

namespace {

constexpr double kStepTolerance = 2.5e-13;  // relative to 1 + |w|

void require_coefficient(double b) {
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidCoefficient,
                "coefficient b must be finite and nonnegative, got " + std::to_string(b));
  }
}

}  // namespace

Inverter::Inverter(PreisachDensity density)
    : density_(std::move(density)), constants_(density_constants(density_)) {}

StepSolution Inverter::step(const MemoryState& memory, double b, double w) const {
  require_coefficient(b);
  if (!std::isfinite(w)) {
    throw Error(ErrorCode::InvalidParameter, "right-hand side must be finite");
  }
  if (b == 0.0) {
    MemoryState next = evolve_memory(memory, w);
    const auto out = hysteresis_outputs(density_, next);
    return {w, std::move(next), out, 0.0};
  }

  auto residual = [&](double x) { return x + b * outputs_after(density_, memory, x).P - w; };

  if (residual(memory.input()) == 0.0) {
    const auto out = hysteresis_outputs(density_, memory);
    return {memory.input(), memory, out, 0.0};
  }

  // The map is continuous with slope >= 1, so a sign change exists; when
  // |P| <= M1 it lies inside [w - b M1, w + b M1].
  double half_width = std::isfinite(constants_.M1) ? b * constants_.M1 : 0.5 * (1.0 + std::abs(w));
  half_width = std::max(half_width, 1e-12 * (1.0 + std::abs(w)));

  double limit = std::numeric_limits<double>::max() / 4;
  const double R = memory.grid().cutoff();
  if (!density_.is_discrete() && density_.support() > R) limit = R;

  auto bracket = expand_bracket(residual, w - half_width, w + half_width, -limit, limit);
  if (!bracket) {
    throw Error(ErrorCode::CutoffViolation,
                "no root bracket for q + b P[q] = w inside the memory cutoff " + std::to_string(R));
  }

  const double tol = kStepTolerance * (1.0 + std::abs(w));
  const auto root = solve_increasing(residual, *bracket, tol);

  MemoryState next = evolve_memory(memory, root.x);
  const auto out = hysteresis_outputs(density_, next);
  return {root.x, std::move(next), out, root.x + b * out.P - w};
}

std::vector<double> Inverter::trajectory(std::span<const double> b, std::span<const double> w,
                                         const MemoryState& initial, InversionMode mode,
                                         const PicardOptions& picard) const {
  if (b.size() != w.size()) {
    throw Error(ErrorCode::InvalidParameter, "b and w must share time stamps");
  }
  for (double bk : b) require_coefficient(bk);
  if (mode == InversionMode::Picard) return picard_trajectory(b, w, initial, picard);

  std::vector<double> q;
  q.reserve(w.size());
  MemoryState memory = initial;
  for (std::size_t k = 0; k < w.size(); ++k) {
    auto sol = step(memory, b[k], w[k]);
    q.push_back(sol.q);
    memory = std::move(sol.memory);
  }
  return q;
}

std::vector<double> Inverter::picard_trajectory(std::span<const double> b,
                                                std::span<const double> w,
                                                const MemoryState& initial,
                                                const PicardOptions& opts) const {
  const double ml = constants_.M * opts.inverse_lipschitz;
  const double gamma = ml > 0.0 ? 1.0 / (2.0 * ml) : std::numeric_limits<double>::infinity();

  std::vector<double> q(w.begin(), w.end());
  MemoryState window_start = initial;
  std::size_t s = 0;
  while (s < w.size()) {
    const double b_ref = b[s];
    std::size_t e = s + 1;
    while (e < w.size() && std::abs(b[e] - b_ref) < gamma) ++e;

    double scale = 1.0;
    for (std::size_t l = s; l < e; ++l) scale = std::max(scale, 1.0 + std::abs(w[l]));

    MemoryState end_memory = window_start;
    bool converged = false;
    for (int it = 0; it < opts.max_iterations && !converged; ++it) {
      // Right-hand side from the previous iterate q_hat (still stored in q).
      std::vector<double> rhs(e - s);
      MemoryState probe = window_start;
      for (std::size_t l = s; l < e; ++l) {
        probe.evolve(q[l]);
        rhs[l - s] = w[l] - (b[l] - b_ref) * preisach_output(density_, probe);
      }

      MemoryState memory = window_start;
      double change = 0.0;
      for (std::size_t l = s; l < e; ++l) {
        auto sol = step(memory, b_ref, rhs[l - s]);
        change = std::max(change, std::abs(sol.q - q[l]));
        q[l] = sol.q;
        memory = std::move(sol.memory);
      }
      end_memory = std::move(memory);
      converged = change <= std::max(opts.tolerance, 4.0 * kStepTolerance) * scale;
    }
    if (!converged) {
      throw Error(ErrorCode::NoConvergence,
                  "fixed-point inversion did not converge on window starting at sample " +
                      std::to_string(s));
    }
    window_start = std::move(end_memory);
    s = e;
  }
  return q;
}

StepSolution invert_step(const MemoryState& memory, double b, double w,
                         const PreisachDensity& density) {
  return Inverter(density).step(memory, b, w);
}

std::vector<double> invert_trajectory(const InversionProblem& problem, InversionMode mode) {
  return Inverter(problem.density).trajectory(problem.b, problem.w, problem.initial_memory, mode);
}

double inverse_lipschitz_bound(double b_bar, double M) { return std::exp(b_bar * M); }

double inverse_data_bound(double b_bar, double M, double M1, double dw, double db) {
  // db == 0 must not multiply an unbounded M1.
  const double data = db == 0.0 ? dw : dw + M1 * db;
  return std::exp(b_bar * M) * data;
}

double discrete_inverse_lipschitz_bound(double b_bar, std::span<const double> mu) {
  double rho = 1.0;
  for (double m : mu) rho *= 1.0 + b_bar * m;
  return rho;
}

}  // namespace ferrohyst
