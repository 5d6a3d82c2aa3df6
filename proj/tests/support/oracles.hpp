#pragma once

// Reference values computed without the library: closed forms of the
// projection density, a direct play recursion, brute-force bisection.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

inline double play_init(double q0, double r) { return std::max(q0 - r, std::min(0.0, q0 + r)); }

inline double play_step(double xi, double q, double r) { return std::clamp(xi, q - r, q + r); }

// Projection density: virgin loading 0 -> q with 0 <= q <= 1.
inline double virgin_P(double q) { return 0.5 * q * q; }
inline double virgin_U(double q) { return q * q * q / 6.0; }
constexpr double kPsat = 0.5;
constexpr double kUsat = 1.0 / 6.0;

// Trajectory of a single play for a sampled input.
inline std::vector<double> play_path(const std::vector<double>& input, double q0, double r) {
  std::vector<double> out{play_init(q0, r)};
  for (double q : input) out.push_back(play_step(out.back(), q, r));
  return out;
}

// Root of an increasing function on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& h, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Projection-density Preisach output of a history by direct midpoint
// integration over r in (0, 1) with `cells` cells.
inline double projection_P(const std::vector<double>& input, double q0, int cells = 20000) {
  double sum = 0.0;
  const double dr = 1.0 / cells;
  for (int j = 0; j < cells; ++j) {
    const double r = (j + 0.5) * dr;
    double xi = play_init(q0, r);
    for (double q : input) xi = play_step(xi, q, r);
    sum += std::clamp(xi, -(1.0 - r), 1.0 - r) * dr;
  }
  return sum;
}

// Piecewise-monotone random program: up to max_segments segments with
// endpoints in [-amplitude, amplitude], 1..max_samples samples each.
inline std::vector<double> random_program(std::mt19937_64& rng, int max_segments, double amplitude,
                                          int max_samples = 6) {
  std::uniform_int_distribution<int> seg(1, max_segments);
  std::uniform_int_distribution<int> samp(1, max_samples);
  std::uniform_real_distribution<double> val(-amplitude, amplitude);
  std::vector<double> out;
  double from = 0.0;
  const int n = seg(rng);
  for (int s = 0; s < n; ++s) {
    const double to = val(rng);
    const int m = samp(rng);
    for (int k = 1; k < m; ++k) {
      const double x = from + (to - from) * k / m;
      out.push_back(std::clamp(x, std::min(from, to), std::max(from, to)));
    }
    out.push_back(to);
    from = to;
  }
  return out;
}

// Least-squares order from successive errors with refinement ratio 2.
inline std::vector<double> observed_orders(const std::vector<double>& errors) {
  std::vector<double> p;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) p.push_back(std::log2(errors[k] / errors[k + 1]));
  return p;
}

}  // namespace oracle
