#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ferrohyst/constitutive.hpp"
#include "ferrohyst/error.hpp"
#include "oracles.hpp"

using namespace ferrohyst;

namespace {

MaterialModel projection_model(ShapeFunction shape = ShapeFunction::linear(), double nu = 0.0) {
  MaterialParams p;
  p.shape = std::move(shape);
  p.nu = nu;
  return MaterialModel(p, PreisachDensity::projection());
}

}  // namespace

TEST(Shape, Examples) {
  const auto lin = shape_eval(ShapeFunction::linear(), 0.0);
  EXPECT_DOUBLE_EQ(lin.f, 1.1);
  EXPECT_DOUBLE_EQ(lin.f_prime, -1.0);
  const auto q1 = shape_eval(ShapeFunction::quartic(), 1.0);
  EXPECT_DOUBLE_EQ(q1.f, 0.5);
  EXPECT_DOUBLE_EQ(q1.f_prime, 0.0);
  const auto q0 = shape_eval(ShapeFunction::quartic(), 0.0);
  EXPECT_DOUBLE_EQ(q0.f, 0.75);
  EXPECT_DOUBLE_EQ(q0.f_prime, -1.0);
}

TEST(Shape, ExtensionIsC1PositiveAndFlat) {
  for (const auto& s : {ShapeFunction::linear(), ShapeFunction::quartic()}) {
    double prev = s.eval(-1.5).f;
    for (double e = -1.5; e <= 1.5; e += 1e-4) {
      const auto v = s.eval(e);
      ASSERT_GE(v.f, s.floor());
      // f' is the derivative of f: central difference check.
      if (std::abs(e) < 1.4999) {
        const double fd = (s.eval(e + 1e-6).f - s.eval(e - 1e-6).f) / 2e-6;
        ASSERT_NEAR(fd, v.f_prime, 1e-4) << e;
      }
      prev = v.f;
    }
    (void)prev;
    EXPECT_EQ(s.eval(1.5).f_prime, 0.0);
    EXPECT_EQ(s.eval(-1.5).f_prime, 0.0);
    EXPECT_THROW((void)s.eval(1.6), Error);
  }
}

TEST(Shape, TableMatchesFormula) {
  std::vector<double> eps, f;
  for (int i = 0; i <= 40; ++i) {
    eps.push_back(-1.0 + i * 0.05);
    f.push_back(0.5 + std::pow(eps.back() - 1.0, 4) / 4.0);
  }
  const auto t = ShapeFunction::table(eps, f);
  for (double e : {-0.93, -0.2, 0.31, 0.77}) EXPECT_NEAR(t.eval(e).f, ShapeFunction::quartic().eval(e).f, 1e-3);
  EXPECT_THROW((void)ShapeFunction::table({-1.0, 0.5}, {1.0, 1.0}), Error);
}

TEST(Constitutive, StressExamples) {
  MaterialParams p;
  EXPECT_DOUBLE_EQ(stress(p, 0.1, 0.0, 0.0, 0.0), 0.1);
  EXPECT_NEAR(stress(p, 0.0, 0.0, 0.0, oracle::kUsat), -1.0 / 6.0, 1e-15);
  p.nu = 0.01;
  EXPECT_DOUBLE_EQ(stress(p, 0.0, 1.0, 0.0, 0.0), 0.01);
}

TEST(Constitutive, DisplacementAndEnergyExamples) {
  MaterialParams p;
  EXPECT_EQ(dielectric_displacement(p, 0.1, 0.0, 0.0), 0.0);
  EXPECT_EQ(dielectric_displacement(p, 0.0, 0.0, 0.5), 0.5);
  EXPECT_EQ(free_energy(p, 0.0, 0.0, 0.0), 0.0);
  EXPECT_NEAR(free_energy(p, 0.2, 0.0, 0.0), 0.02, 1e-15);
  EXPECT_NEAR(free_energy(p, 0.0, 0.0, oracle::kUsat), 1.1 / 6.0, 1e-15);

  // D on the virgin curve at E = 1, eps = 0: q = 1 / 1.1.
  const auto m = projection_model();
  auto mem = m.virgin_memory();
  mem.evolve(1.0 / 1.1);
  EXPECT_NEAR(dielectric_displacement(m, 0.0, 1.0, mem), 0.01 + oracle::virgin_P(1.0 / 1.1), 2e-4);
}

TEST(Constitutive, InvalidParams) {
  MaterialParams p;
  p.kappa = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.nu = -1.0;
  EXPECT_THROW(MaterialModel(p, PreisachDensity::projection()), Error);
}

TEST(FieldSolve, Examples) {
  const auto m = projection_model();
  const auto zero = solve_field_from_D(m, 0.0, 0.0, m.virgin_memory());
  EXPECT_EQ(zero.q, 0.0);
  EXPECT_EQ(zero.E, 0.0);

  const auto fine = MaterialModel(MaterialParams{}, PreisachDensity::projection(), 1.0, 20000);
  const auto s = solve_field_from_D(fine, 0.0, 0.005, fine.virgin_memory());
  EXPECT_NEAR(s.q, 0.089603, 1e-6);
  EXPECT_NEAR(s.E, 0.098564, 1e-6);

  const double r = 3.0;
  const auto sat = solve_field_from_D(m, 0.0, r, m.virgin_memory());
  EXPECT_NEAR(sat.E, (r - 0.5) / 0.01, 1e-6);
  EXPECT_NEAR(0.01 * sat.E + sat.outputs.P, r, 1e-10);
}

TEST(Drivers, ZeroFieldStaysAtRest) {
  const auto m = projection_model();
  const std::vector<double> t{0.1, 0.2, 0.3}, z(3, 0.0);
  const auto traj = drive_field(m, PointState::virgin(m), t, z, z);
  for (const auto& r : traj.records) {
    EXPECT_EQ(r.eps, 0.0);
    EXPECT_EQ(r.P, 0.0);
  }
  for (double res : clausius_duhem_residuals(traj)) EXPECT_EQ(res, 0.0);
}

TEST(Drivers, TimeMustIncrease) {
  const auto m = projection_model();
  const std::vector<double> t{0.1, 0.1}, z(2, 0.0);
  EXPECT_THROW((void)drive_field(m, PointState::virgin(m), t, z, z), Error);
}

TEST(Drivers, ElasticLimit) {
  MaterialParams p;
  const MaterialModel m(p, PreisachDensity::zero(), 1.0, 1);
  std::vector<double> t, sigma, r;
  for (int k = 1; k <= 20; ++k) {
    t.push_back(0.05 * k);
    sigma.push_back(-0.04 * k);
    r.push_back(0.0);
  }
  const auto traj = drive_stress(m, PointState::virgin(m), t, sigma, r);
  for (std::size_t k = 1; k < traj.records.size(); ++k) {
    EXPECT_NEAR(traj.records[k].eps, sigma[k - 1], 1e-12);
  }
  for (double res : clausius_duhem_residuals(traj)) EXPECT_GE(res, -1e-14);
}

TEST(Drivers, FieldDrivenRecordsAreConsistent) {
  const auto m = projection_model(ShapeFunction::quartic(), 0.02);
  std::vector<double> t, E, sigma;
  for (int k = 1; k <= 400; ++k) {
    t.push_back(0.01 * k);
    E.push_back(std::sin(0.05 * k));
    sigma.push_back(0.0);
  }
  const auto traj = drive_field(m, PointState::virgin(m), t, E, sigma);
  for (std::size_t k = 1; k < traj.records.size(); ++k) {
    const auto& rec = traj.records[k];
    const auto sv = m.params().shape.eval(rec.eps);
    EXPECT_LE(std::abs(rec.q * sv.f - rec.E), 1e-12);
    EXPECT_LE(std::abs(rec.sigma), 1e-10);
    EXPECT_GE(rec.diss, -1e-12);
  }
  for (double res : clausius_duhem_residuals(traj)) EXPECT_GE(res, -1e-10);
}

TEST(Drivers, StressDrivenKeepsDisplacementDatum) {
  const auto m = projection_model();
  const std::vector<double> t{0.5, 1.0}, E{1.0, 0.0}, z(2, 0.0);
  const auto poled = drive_field(m, PointState::virgin(m), t, E, z);
  const double r = poled.records.back().D;
  std::vector<double> ts, sigma, datum;
  for (int k = 1; k <= 50; ++k) {
    ts.push_back(1.0 + 0.01 * k);
    sigma.push_back(-0.01 * k);
    datum.push_back(r);
  }
  const auto traj = drive_stress(m, poled.final_state, ts, sigma, datum);
  for (std::size_t k = 1; k < traj.records.size(); ++k) {
    EXPECT_NEAR(traj.records[k].D, r, 1e-10);
    EXPECT_NEAR(traj.records[k].sigma, sigma[k - 1], 1e-10);
  }
}
