#include <gtest/gtest.h>

#include <random>

#include "ferrohyst/error.hpp"
#include "ferrohyst/hysteresis.hpp"
#include "oracles.hpp"

using namespace ferrohyst;

TEST(Play, InitExamples) {
  EXPECT_DOUBLE_EQ(play_init(0.3, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(play_init(0.8, 0.5), 0.3);
  EXPECT_DOUBLE_EQ(play_init(0.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(play_init(-0.8, 0.5), -0.3);
}

TEST(Play, UpdateExamples) {
  EXPECT_DOUBLE_EQ(play_update(0.0, 1.0, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(play_update(0.5, 0.2, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(play_update(0.5, -1.0, 0.5), -0.5);
}

TEST(Play, RejectsNonPositiveRadius) {
  try {
    (void)play_init(0.1, 0.0);
    FAIL() << "expected invalid-parameter";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
  }
  EXPECT_THROW((void)play_update(0.0, 0.1, -1.0), Error);
}

TEST(RGrid, UniformNodesAndWeights) {
  const auto g = RGrid::uniform(4.0, 400);
  ASSERT_EQ(g.size(), 400u);
  EXPECT_DOUBLE_EQ(g.cutoff(), 4.0);
  EXPECT_NEAR(g.nodes()[0], 0.01, 1e-15);
  double total = g.origin_weight();
  for (double w : g.weights()) total += w;
  EXPECT_NEAR(total, 4.0, 1e-12);
  EXPECT_NEAR(g.max_spacing(), 0.01, 1e-15);
}

TEST(RGrid, RejectsBadNodes) {
  EXPECT_THROW((void)RGrid::uniform(0.0, 10), Error);
  EXPECT_THROW((void)RGrid::uniform(1.0, 0), Error);
  EXPECT_THROW((void)RGrid::from_nodes({0.5, 0.5, 1.0}), Error);
  EXPECT_THROW((void)RGrid::from_nodes({-0.1, 1.0}), Error);
  EXPECT_THROW((void)RGrid::from_nodes({}), Error);
}

TEST(Memory, VirginRampToTwo) {
  const auto g = RGrid::uniform(1.0, 100);
  auto s = evolve_memory(MemoryState::virgin(g), 2.0);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_DOUBLE_EQ(s.xi()[j], 2.0 - g.nodes()[j]);
  EXPECT_DOUBLE_EQ(s.input(), 2.0);
}

TEST(Memory, ZeroStepLeavesStateUnchanged) {
  const auto g = RGrid::uniform(2.0, 50);
  auto s = MemoryState::virgin(g);
  s.evolve(0.7);
  s.evolve(-0.2);
  const auto t = evolve_memory(s, s.input());
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(s.xi()[j], t.xi()[j]);
}

TEST(Memory, TwoSegmentHistory) {
  const auto g = RGrid::uniform(2.0, 200);
  auto s = MemoryState::virgin(g);
  s.evolve(1.0);
  s.evolve(0.5);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double r = g.nodes()[j];
    const double expect = std::max(std::min(1.0 - r, 0.5 + r), 0.0);
    EXPECT_NEAR(s.xi()[j], expect, 1e-15) << "r=" << r;
  }
}

TEST(Memory, InitialStateUsesPlayInit) {
  const auto g = RGrid::uniform(1.0, 10);
  const auto s = MemoryState::initial(g, 0.55);
  for (std::size_t j = 0; j < g.size(); ++j) {
    EXPECT_DOUBLE_EQ(s.xi()[j], oracle::play_init(0.55, g.nodes()[j]));
  }
}

TEST(Memory, InvariantsOnRandomPrograms) {
  std::mt19937_64 rng(11);
  const auto g = RGrid::uniform(3.0, 60);
  for (int c = 0; c < 100; ++c) {
    auto s = MemoryState::virgin(g);
    double sup = 0.0;
    for (double q : oracle::random_program(rng, 30, 2.0)) {
      s.evolve(q);
      sup = std::max(sup, std::abs(q));
      const auto r = g.nodes();
      for (std::size_t j = 0; j < r.size(); ++j) {
        ASSERT_LE(std::abs(q - s.xi()[j]), r[j] + 1e-12);
        if (r[j] >= sup) ASSERT_EQ(s.xi()[j], 0.0);
        if (j > 0) ASSERT_LE(std::abs(s.xi()[j] - s.xi()[j - 1]), r[j] - r[j - 1] + 1e-12);
      }
    }
    EXPECT_DOUBLE_EQ(s.input_sup(), sup);
  }
}

TEST(Memory, MatchesDirectPlayRecursion) {
  std::mt19937_64 rng(5);
  const auto g = RGrid::uniform(2.0, 40);
  const auto input = oracle::random_program(rng, 40, 2.0);
  auto s = MemoryState::initial(g, 0.3);
  for (double q : input) s.evolve(q);
  for (std::size_t j = 0; j < g.size(); ++j) {
    EXPECT_EQ(s.xi()[j], oracle::play_path(input, 0.3, g.nodes()[j]).back());
  }
}

TEST(Memory, InputLipschitz) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise(0.0, 0.05);
  const auto g = RGrid::uniform(3.0, 60);
  for (int c = 0; c < 50; ++c) {
    const auto a = oracle::random_program(rng, 20, 2.0);
    auto s1 = MemoryState::virgin(g);
    auto s2 = MemoryState::virgin(g);
    double dmax = 0.0;
    for (double q : a) {
      const double q2 = q + noise(rng);
      dmax = std::max(dmax, std::abs(q - q2));
      s1.evolve(q);
      s2.evolve(q2);
      for (std::size_t j = 0; j < g.size(); ++j) {
        ASSERT_LE(std::abs(s1.xi()[j] - s2.xi()[j]), dmax + 1e-12);
      }
    }
  }
}
