#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "wb/density.hpp"

using namespace wb;

TEST_CASE("grid_from_indicator on intervals") {
  RegionSpec region;
  region.intervals.push_back({0.0, 1.0});
  GridDensity g = grid_from_indicator(region, 0.25, 1);
  CHECK(g.mass() == doctest::Approx(1.0).epsilon(1e-12));
  int occupied = static_cast<int>(g.occupied().size());
  CHECK(occupied == 4);

  GridDensity empty = grid_from_indicator(RegionSpec{}, 0.5, 1);
  CHECK(empty.mass() == 0.0);

  CHECK_THROWS_AS(grid_from_indicator(region, -0.1, 1), std::invalid_argument);
}

TEST_CASE("grid_from_indicator unit disk mass approximates pi") {
  RegionSpec region;
  region.disks.push_back({0.0, 0.0, 1.0});
  GridDensity g = grid_from_indicator(region, 0.1, 2);
  // cell-centre count oracle
  int count = 0;
  for (int idx = 0; idx < g.size(); ++idx) {
    auto c = g.cell_center(idx);
    if (std::hypot(c[0], c[1]) <= 1.0) ++count;
  }
  CHECK(g.mass() == doctest::Approx(count * 0.01).epsilon(1e-12));
  CHECK(std::abs(g.mass() - M_PI) < 0.05);
}

TEST_CASE("from_droplets") {
  GridDensity one = from_droplets(DropletConfig(1, {{{0.0, 0.0}, 0.5}}), 0.1);
  CHECK(std::abs(one.mass() - 1.0) <= 0.1 + 1e-12);

  GridDensity two = from_droplets(
      DropletConfig(1, {{{0.0, 0.0}, 0.5}, {{10.0, 0.0}, 0.5}}), 0.1);
  CHECK(std::abs(two.mass() - 2.0) <= 0.2 + 1e-12);

  CHECK_THROWS_AS(DropletConfig(1, {{{0.0, 0.0}, 0.5}, {{0.6, 0.0}, 0.5}}),
                  std::invalid_argument);
}

TEST_CASE("from_droplets in 2D") {
  DropletConfig cfg(2, {{{0.0, 0.0}, 0.6}, {{5.0, 1.0}, 0.4}});
  GridDensity g = from_droplets(cfg, 0.05);
  CHECK(std::abs(g.mass() - cfg.total_mass()) < 0.1);
  CHECK_THROWS_AS(DropletConfig(2, {{{0.0, 0.0}, 0.6}, {{0.9, 0.0}, 0.4}}),
                  std::invalid_argument);
}

TEST_CASE("droplet grid mass converges as h halves") {
  DropletConfig cfg(1, {{{0.3, 0.0}, 0.37}, {{5.1, 0.0}, 0.61}});
  const double exact = cfg.total_mass();
  double prev = 1e300;
  for (double h : {0.2, 0.1, 0.05, 0.025}) {
    double err = std::abs(from_droplets(cfg, h).mass() - exact);
    CHECK(err <= prev + 2.0 * h);  // monotone up to one boundary cell per ball
    CHECK(err <= 4.0 * h);
    prev = err;
  }
}

TEST_CASE("interval config normalization") {
  IntervalConfig c({{2.0, 3.0}, {0.0, 1.0}});
  CHECK(c.size() == 2);
  CHECK(c.intervals()[0][0] == 0.0);
  CHECK(c.mass() == doctest::Approx(2.0));

  // touching intervals merge exactly once; normalization is idempotent
  IntervalConfig touch({{0.0, 1.0}, {1.0, 2.0}});
  CHECK(touch.size() == 1);
  CHECK(touch.mass() == doctest::Approx(2.0));
  IntervalConfig again(touch.intervals());
  CHECK(again.intervals() == touch.intervals());

  CHECK_THROWS_AS(IntervalConfig({{1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("interval normalization idempotent on random inputs") {
  uint64_t state = 99;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return double(state >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::array<double, 2>> iv;
    for (int i = 0; i < 8; ++i) {
      double a = 10.0 * next();
      iv.push_back({a, a + 0.05 + next()});
    }
    IntervalConfig once(iv);
    IntervalConfig twice(once.intervals());
    CHECK(twice.intervals() == once.intervals());
    for (std::size_t i = 0; i + 1 < once.size(); ++i)
      CHECK(once.intervals()[i][1] < once.intervals()[i + 1][0]);
  }
}

TEST_CASE("check_admissible") {
  RegionSpec region;
  region.intervals.push_back({0.0, 1.0});
  GridDensity g = grid_from_indicator(region, 0.25, 1);
  CHECK(check_admissible(g, 1.0, 1e-9).pass());
  CHECK_FALSE(check_admissible(g, 0.9, 1e-6).pass());

  GridDensity bad = g;
  bad.set_value(0, 1.2);
  auto rep = check_admissible(bad, bad.mass(), 1e-6);
  CHECK_FALSE(rep.bathtub_ok);
  CHECK_FALSE(rep.pass());
}

TEST_CASE("mass cache stays consistent under set_value") {
  GridDensity g = GridDensity::zeros(1, {0.0, 0.0}, 0.5, {8, 1});
  g.set_value(2, 1.0);
  g.set_value(5, 1.0);
  g.set_value(2, 0.0);
  double direct = 0.0;
  for (double v : g.values()) direct += v;
  direct *= g.cell_volume();
  CHECK(g.mass() == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("dimension 3 is rejected") {
  CHECK_THROWS_AS(GridDensity::zeros(3, {0.0, 0.0}, 0.5, {4, 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DropletConfig(3, {}), std::invalid_argument);
}
