#include "ferrohyst/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ferrohyst/config.hpp"
#include "ferrohyst/constitutive.hpp"
#include "ferrohyst/convergence.hpp"
#include "ferrohyst/density.hpp"
#include "ferrohyst/error.hpp"
#include "ferrohyst/hysteresis.hpp"
#include "ferrohyst/inversion.hpp"
#include "ferrohyst/preisach.hpp"
#include "ferrohyst/scenario.hpp"

namespace ferrohyst {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Point on the segment [a, b] that never leaves it through rounding.
double lerp_clamped(double a, double b, double s) {
  const double x = a + (b - a) * s;
  return std::clamp(x, std::min(a, b), std::max(a, b));
}

// n samples of a piecewise-linear path through random knots in [lo, hi].
std::vector<double> random_path(std::mt19937_64& rng, std::size_t n, std::size_t knots, double lo,
                                double hi) {
  std::vector<double> k(knots + 1);
  for (double& v : k) v = uniform(rng, lo, hi);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) * static_cast<double>(knots) / static_cast<double>(n - 1);
    const auto j = std::min(static_cast<std::size_t>(x), knots - 1);
    out[i] = lerp_clamped(k[j], k[j + 1], x - static_cast<double>(j));
  }
  return out;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

PreisachDensity random_prandtl(std::mt19937_64& rng, std::size_t cells) {
  std::vector<PrandtlCell> c;
  for (std::size_t j = 0; j < cells; ++j) {
    c.push_back({(static_cast<double>(j) + uniform(rng, 0.1, 0.9)) * 2.0 / static_cast<double>(cells),
                 uniform(rng, 0.0, 0.4)});
  }
  return PreisachDensity::prandtl(std::move(c));
}

SuiteReport dissipation(const VerifyOptions& o) {
  SuiteReport rep{"dissipation", false, "min increment / scale", 0.0, -1e-10, o.cases ? o.cases : 1000,
                  {"case", "min_increment", "scale"}, {}};
  std::mt19937_64 rng(o.seed);
  for (std::size_t c = 0; c < rep.cases; ++c) {
    const bool stack = c % 2 == 1;
    const auto density = stack ? random_prandtl(rng, 6) : PreisachDensity::projection();
    const auto grid = density.make_grid(1.0, 200);
    const auto input = random_piecewise_monotone(rng, 50, 2.0);
    MemoryState state = MemoryState::virgin(grid);
    HysteresisOutputs prev = hysteresis_outputs(density, state);
    double worst = 0.0;
    double scale = 1.0;
    for (double q : input) {
      state.evolve(q);
      const auto out = hysteresis_outputs(density, state);
      worst = std::min(worst, q * (out.P - prev.P) - (out.U - prev.U));
      scale = std::max(scale, 1.0 + std::abs(q));
      prev = out;
    }
    rep.rows.push_back({static_cast<double>(c), worst, scale});
    rep.worst = std::min(rep.worst, worst / scale);
  }
  rep.passed = rep.worst >= rep.threshold;
  return rep;
}

// Even pair ids share the coefficient series; odd ids perturb it as well.
SuiteReport lipschitz(const VerifyOptions& o) {
  const std::size_t pairs = o.cases ? o.cases : o.pairs;
  SuiteReport rep{"lipschitz", false, "max ratio - bound", -1e300, 1e-8, pairs,
                  {"pair_id", "ratio", "bound"}, {}};
  if (!(o.bbar >= 0.0)) throw Error(ErrorCode::InvalidParameter, "bbar must be nonnegative");
  std::mt19937_64 rng(o.seed);
  const Inverter inv(PreisachDensity::projection());
  const auto grid = RGrid::uniform(1.0, 200);
  const auto virgin = MemoryState::virgin(grid);
  const auto k = inv.constants();
  const double bound = inverse_lipschitz_bound(o.bbar, k.M);
  constexpr std::size_t n = 200;
  for (std::size_t id = 0; id < pairs; ++id) {
    const auto w1 = random_path(rng, n, pick(rng, 1, 10), -2.0, 2.0);
    const double delta = std::pow(10.0, uniform(rng, -3.0, 0.0));
    auto w2 = random_path(rng, n, pick(rng, 1, 10), -delta, delta);
    for (std::size_t i = 0; i < n; ++i) w2[i] += w1[i];
    const auto b1 = random_path(rng, n, pick(rng, 1, 5), 0.0, o.bbar);
    auto b2 = b1;
    if (id % 2 == 1) {
      const auto db = random_path(rng, n, pick(rng, 1, 5), -0.1 * o.bbar, 0.1 * o.bbar);
      for (std::size_t i = 0; i < n; ++i) b2[i] = std::clamp(b1[i] + db[i], 0.0, o.bbar);
    }
    const auto q1 = inv.trajectory(b1, w1, virgin, o.mode);
    const auto q2 = inv.trajectory(b2, w2, virgin, o.mode);
    const double dw = sup_diff(w1, w2);
    const double db = sup_diff(b1, b2);
    const double data = db == 0.0 ? dw : dw + k.M1 * db;
    const double ratio = data > 0.0 ? sup_diff(q1, q2) / data : 0.0;
    rep.rows.push_back({static_cast<double>(id), ratio, bound});
    rep.worst = std::max(rep.worst, ratio - bound);
  }
  rep.passed = rep.worst <= rep.threshold;
  return rep;
}

SuiteReport brokate(const VerifyOptions& o) {
  SuiteReport rep{"brokate", false, "max composition or ordering excess", 0.0, 1e-12,
                  o.cases ? o.cases : 200, {"case", "composition_error", "ordering_excess"}, {}};
  std::mt19937_64 rng(o.seed);
  const auto grid = RGrid::uniform(2.0, 40);
  const auto r = grid.nodes();
  for (std::size_t c = 0; c < rep.cases; ++c) {
    const double q0 = uniform(rng, -2.0, 2.0);
    const auto input = random_piecewise_monotone(rng, 50, 2.0);
    MemoryState state = MemoryState::initial(grid, q0);
    std::vector<std::vector<double>> xi{{state.xi().begin(), state.xi().end()}};
    for (double q : input) {
      state.evolve(q);
      xi.emplace_back(state.xi().begin(), state.xi().end());
    }
    double ordering = 0.0;
    for (const auto& row : xi) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = i + 1; j < r.size(); ++j) {
          ordering = std::max(ordering, std::abs(row[i] - row[j]) - (r[j] - r[i]));
        }
      }
    }
    double composition = 0.0;
    for (int t = 0; t < 8; ++t) {
      std::size_t i = pick(rng, 0, r.size() - 2);
      std::size_t j = pick(rng, i + 1, r.size() - 1);
      const double d = r[j] - r[i];
      double y = play_init(xi[0][i], d);
      composition = std::max(composition, std::abs(y - xi[0][j]));
      for (std::size_t s = 1; s < xi.size(); ++s) {
        y = play_update(y, xi[s][i], d);
        composition = std::max(composition, std::abs(y - xi[s][j]));
      }
    }
    rep.rows.push_back({static_cast<double>(c), composition, ordering});
    rep.worst = std::max({rep.worst, composition, ordering});
  }
  rep.passed = rep.worst <= rep.threshold;
  return rep;
}

// Monotone walk from the current input to `target` in `steps` samples.
void walk(MemoryState& state, double target, std::size_t steps) {
  const double from = state.input();
  for (std::size_t k = 1; k <= steps; ++k) {
    state.evolve(k == steps ? target
                            : lerp_clamped(from, target, static_cast<double>(k) / static_cast<double>(steps)));
  }
}

SuiteReport madelung(const VerifyOptions& o) {
  SuiteReport rep{"madelung", false, "max loop-closure error", 0.0, 1e-12, o.cases ? o.cases : 200,
                  {"case", "closure_P", "closure_xi"}, {}};
  std::mt19937_64 rng(o.seed);
  for (std::size_t c = 0; c < rep.cases; ++c) {
    const auto density = c % 2 == 0 ? PreisachDensity::projection() : random_prandtl(rng, 6);
    MemoryState state = MemoryState::virgin(density.make_grid(2.0, 200));
    for (double q : random_piecewise_monotone(rng, 10, 2.0)) state.evolve(q);
    double closure_p = 0.0;
    double closure_xi = 0.0;
    for (int loop = 0; loop < 5; ++loop) {
      const double p = state.input();
      const double a = uniform(rng, -2.0, 2.0);
      walk(state, a, pick(rng, 1, 6));
      const MemoryState at_a = state;
      const double P_a = preisach_output(density, at_a);
      // Nested minor loops inside (a, p), each closed before the next.
      for (int minor = 0; minor < 3; ++minor) {
        const double b = lerp_clamped(a, p, uniform(rng, 0.05, 0.95));
        walk(state, b, pick(rng, 1, 6));
        walk(state, a, pick(rng, 1, 6));
        closure_p = std::max(closure_p, std::abs(preisach_output(density, state) - P_a));
        for (std::size_t j = 0; j < state.xi().size(); ++j) {
          closure_xi = std::max(closure_xi, std::abs(state.xi()[j] - at_a.xi()[j]));
        }
      }
    }
    rep.rows.push_back({static_cast<double>(c), closure_p, closure_xi});
    rep.worst = std::max({rep.worst, closure_p, closure_xi});
  }
  rep.passed = rep.worst <= rep.threshold;
  return rep;
}

// The same knots sampled at two different, irregular rates; outputs at the
// knots must agree bit for bit.
SuiteReport rate_independence(const VerifyOptions& o) {
  SuiteReport rep{"rate-independence", false, "max output difference at knots", 0.0, 0.0,
                  o.cases ? o.cases : 200, {"case", "max_diff_P", "max_diff_U"}, {}};
  std::mt19937_64 rng(o.seed);
  const auto density = PreisachDensity::projection();
  const auto grid = RGrid::uniform(1.0, 200);
  for (std::size_t c = 0; c < rep.cases; ++c) {
    const auto knots = random_piecewise_monotone(rng, 30, 2.0, 1);
    MemoryState slow = MemoryState::virgin(grid);
    MemoryState fast = MemoryState::virgin(grid);
    double dp = 0.0;
    double du = 0.0;
    for (double target : knots) {
      for (MemoryState* s : {&slow, &fast}) {
        const double from = s->input();
        const std::size_t n = pick(rng, 1, s == &slow ? 40 : 3);
        std::vector<double> at(n - 1);
        for (double& x : at) x = uniform(rng, 0.0, 1.0);
        std::sort(at.begin(), at.end());
        for (double x : at) s->evolve(lerp_clamped(from, target, x));
        s->evolve(target);
      }
      const auto a = hysteresis_outputs(density, slow);
      const auto b = hysteresis_outputs(density, fast);
      dp = std::max(dp, std::abs(a.P - b.P));
      du = std::max(du, std::abs(a.U - b.U));
    }
    rep.rows.push_back({static_cast<double>(c), dp, du});
    rep.worst = std::max({rep.worst, dp, du});
  }
  rep.passed = rep.worst <= rep.threshold;
  return rep;
}

SuiteReport clausius_duhem(const VerifyOptions& o) {
  SuiteReport rep{"clausius-duhem", false, "min residual / scale", 0.0, -1e-8, 0,
                  {"scenario", "min_residual", "scale"}, {}};
  const std::vector<std::string_view> names{"bipolar-linear", "bipolar-quartic", "stress-linear",
                                            "stress-quartic"};
  std::mt19937_64 rng(o.seed);
  std::vector<RunConfig> configs;
  for (auto n : names) configs.push_back(default_config(n));
  // Extra sine-driven and viscous variants with random amplitude.
  const std::size_t extra = o.cases ? o.cases : 4;
  for (std::size_t c = 0; c < extra; ++c) {
    RunConfig cfg = default_config(names[c % 2]);
    cfg.drive.kind = Waveform::Sine;
    cfg.drive.amplitude = uniform(rng, 0.2, 1.2);
    cfg.drive.samples_per_period = 500;
    cfg.material.nu = uniform(rng, 0.0, 0.05);
    configs.push_back(cfg);
  }
  rep.cases = configs.size();
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const auto records = simulate_scenario(configs[c]).records;
    const auto res = clausius_duhem_residuals(records);
    double scale = 1.0;
    for (const auto& r : records) {
      scale = std::max(scale, 1.0 + std::abs(r.F) + std::abs(r.sigma * r.eps) + std::abs(r.D * r.E));
    }
    const double worst = res.empty() ? 0.0 : *std::min_element(res.begin(), res.end());
    rep.rows.push_back({static_cast<double>(c), worst, scale});
    rep.worst = std::min(rep.worst, worst / scale);
  }
  rep.passed = rep.worst >= rep.threshold;
  return rep;
}

SuiteReport convergence(const VerifyOptions& o) {
  SuiteReport rep{"convergence", false, "min observed order", 0.0, 1.0, 0,
                  {"study", "level", "size", "error"}, {}};
  const int levels = o.cases ? static_cast<int>(std::max<std::size_t>(o.cases, 3)) : 4;
  auto studies = point_convergence(levels);
  studies.push_back(beam_space_convergence(levels, 4, 128));
  rep.cases = studies.size();
  bool ok = true;
  double worst = 1e300;
  for (std::size_t s = 0; s < studies.size(); ++s) {
    for (std::size_t k = 0; k < studies[s].levels.size(); ++k) {
      rep.rows.push_back({static_cast<double>(s), static_cast<double>(k), studies[s].levels[k].size,
                          studies[s].levels[k].error});
    }
    ok = ok && studies[s].reduces_at(1.0);
    worst = std::min(worst, studies[s].min_order());
  }
  rep.worst = worst;
  rep.passed = ok;
  return rep;
}

}  // namespace

std::vector<std::string_view> verify_suites() {
  return {"dissipation", "lipschitz", "brokate", "madelung", "rate-independence", "clausius-duhem",
          "convergence"};
}

SuiteReport run_verify(std::string_view suite, const VerifyOptions& opts) {
  if (suite == "dissipation") return dissipation(opts);
  if (suite == "lipschitz") return lipschitz(opts);
  if (suite == "brokate") return brokate(opts);
  if (suite == "madelung") return madelung(opts);
  if (suite == "rate-independence") return rate_independence(opts);
  if (suite == "clausius-duhem") return clausius_duhem(opts);
  if (suite == "convergence") return convergence(opts);
  throw Error(ErrorCode::InvalidParameter, "unknown verify suite '" + std::string(suite) + "'");
}

std::vector<double> random_piecewise_monotone(std::mt19937_64& rng, std::size_t max_segments,
                                              double amplitude, std::size_t max_samples) {
  std::vector<double> out;
  const std::size_t segments = pick(rng, 1, std::max<std::size_t>(max_segments, 1));
  double from = 0.0;
  for (std::size_t s = 0; s < segments; ++s) {
    const double to = uniform(rng, -amplitude, amplitude);
    const std::size_t n = pick(rng, 1, std::max<std::size_t>(max_samples, 1));
    for (std::size_t k = 1; k < n; ++k) {
      out.push_back(lerp_clamped(from, to, static_cast<double>(k) / static_cast<double>(n)));
    }
    out.push_back(to);
    from = to;
  }
  return out;
}

}  // namespace ferrohyst
