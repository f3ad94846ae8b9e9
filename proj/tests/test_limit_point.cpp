#include "doctest.h"
#include "oracles.hpp"
#include "subshift/construction.hpp"
#include "subshift/errors.hpp"
#include "subshift/verify.hpp"

using namespace subshift;

namespace {

GroupPoint pt(std::vector<Int> c) { return GroupPoint(std::move(c)); }

Construction build(int d, int dp, ScheduleMode mode, int depth) {
  BuildConfig cfg;
  cfg.group_dim = d;
  cfg.poly_dim = dp;
  cfg.mode = mode;
  cfg.depth = depth;
  return Construction::build(cfg);
}

}  // namespace

TEST_CASE("profile frequencies are exact block tallies") {
  // The profile is bookkeeping; the tally below recounts the materialized block.
  Construction toy = build(1, 1, ScheduleMode::toy, 3);
  for (int level = 1; level <= 3; ++level) {
    std::vector<DyadicBox> table = oracle::materialize_block(toy, level);
    for (const auto& [width, count] : toy.profile(level).entries) {
      Int tally = 0;
      for (const DyadicBox& b : table) {
        if (b.width() == width) ++tally;
      }
      CHECK(tally == count);
    }
  }
}

TEST_CASE("level-2 coverage fractions beat the schedule") {
  Construction c = build(1, 1, ScheduleMode::paper, 2);
  const Profile& p2 = c.profile(2);
  Int cells = c.tiling().cells(2);
  Rat f0 = make_rat(p2.count_at_least(scale_width(0)), cells);
  Rat f1 = make_rat(p2.count_at_least(scale_width(1)), cells);
  Rat f2 = make_rat(p2.count_at_least(scale_width(2)), cells);
  CHECK(f0 == Rat(57, 80));
  CHECK(f1 == Rat(19, 20));
  CHECK(f2 == 1);

  FractionRule rule{ScheduleMode::paper};
  CHECK(f0 >= rule.required_fraction(0, 2));
  CHECK(f1 >= rule.required_fraction(1, 2));
  CHECK(f2 >= rule.required_fraction(2, 2));
  CHECK(f0 > rule.limit_fraction(0));
  CHECK(f1 > rule.limit_fraction(1));
  CHECK(f2 > rule.limit_fraction(2));
}

TEST_CASE("every level beats its required fractions in both modes") {
  for (ScheduleMode mode : {ScheduleMode::paper, ScheduleMode::toy}) {
    int depth = mode == ScheduleMode::paper ? 2 : 4;
    Construction c = build(1, 1, mode, depth);
    for (int k = 1; k <= depth; ++k) {
      Int cells = c.tiling().cells(k);
      for (int n = 0; n <= k; ++n) {
        Rat frac = make_rat(c.profile(k).count_at_least(scale_width(n)), cells);
        CHECK(frac >= c.rule().required_fraction(n, k));
      }
    }
  }
}

TEST_CASE("toy level-3 coverage stays above the terminal value at scale 0") {
  Construction c = build(1, 1, ScheduleMode::toy, 3);
  Rat frac = make_rat(c.profile(3).count_at_least(Rat(1)), c.tiling().cells(3));
  CHECK(frac == Rat(3094, 49410));
  CHECK(frac >= Rat(1, 16));
  CHECK(frac > Rat(1, 32));
}

TEST_CASE("density reports read the profiles") {
  Construction c = build(1, 1, ScheduleMode::paper, 2);
  DensityReport r0 = density_estimate(c, 0, {1, 2});
  REQUIRE(r0.fractions.size() == 2);
  CHECK(r0.fractions[0] == Rat(3, 4));
  CHECK(r0.fractions[1] == Rat(57, 80));
  CHECK(r0.certified_lower == Rat(1, 2));
  CHECK(r0.mdim_term == Rat(1, 2));

  DensityReport r2 = density_estimate(c, 2, {2});
  CHECK(r2.fractions[0] == 1);
  CHECK(r2.certified_lower == Rat(3, 4));

  CHECK_THROWS_AS(density_estimate(c, -1, {1}), std::invalid_argument);
  CHECK_THROWS_AS(density_estimate(c, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(density_estimate(c, 0, {0}), std::out_of_range);
  CHECK_THROWS_AS(density_estimate(c, 0, {3}), std::out_of_range);
}

TEST_CASE("dimension bounds") {
  Construction c = build(1, 1, ScheduleMode::paper, 2);
  MdimBound b = mdim_lower_bound(c, {0, 1, 2});
  CHECK(b.lower == Rat(3, 4));
  CHECK(b.upper == 1);
  CHECK(b.limit_note.find("sup") != std::string::npos);
  REQUIRE(b.reports.size() == 3);

  MdimBound b0 = mdim_lower_bound(c, {0});
  CHECK(b0.lower == Rat(1, 2));

  // Deeper scales only improve the bound.
  Rat prev(0);
  for (int n = 0; n <= 2; ++n) {
    MdimBound bn = mdim_lower_bound(c, {n});
    CHECK(bn.lower > prev);
    prev = bn.lower;
  }

  Construction toy = build(1, 1, ScheduleMode::toy, 3);
  MdimBound bt = mdim_lower_bound(toy, {0, 1, 2, 3});
  CHECK(bt.lower == Rat(1, 20));
  CHECK(bt.upper == 1);

  Construction planar = build(2, 2, ScheduleMode::toy, 2);
  MdimBound bp = mdim_lower_bound(planar, {0, 1, 2});
  CHECK(bp.upper == 2);
  CHECK(bp.lower == Rat(3, 64) * 2);
}

TEST_CASE("canonical values are dyadic with bounded exponent") {
  Construction toy = build(1, 1, ScheduleMode::toy, 3);
  Int max_den = pow2(Int(1 + 2 + 3));
  bool ok = true;
  toy.tiling().shape(2).for_each([&](const GroupPoint& g) {
    for (const Rat& v : toy.point_value(g, 3)) {
      if (v < 0 || v > 1) ok = false;
      Int d = den(v);
      if ((d & (d - 1)) != 0 || d > max_den) ok = false;
    }
  });
  CHECK(ok);
}

TEST_CASE("rescale slope checks") {
  DyadicInterval unit;
  CHECK(rescale_slope_ok(DyadicBox({unit.piece(1, Int(0))}), 1));
  CHECK_FALSE(rescale_slope_ok(DyadicBox({unit.piece(2, Int(0))}), 1));
  CHECK(rescale_slope_ok(DyadicBox({unit.piece(1, Int(1))}), 1));
  CHECK(rescale_slope_ok(DyadicBox({unit.piece(2, Int(0))}), 2));

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    int k = 1 + static_cast<int>(rng() % 4);
    int dim = 1 + static_cast<int>(rng() % 2);
    std::vector<DyadicInterval> axes;
    for (int a = 0; a < dim; ++a) {
      Int idx = Int(rng() % (1ULL << k));
      axes.push_back(unit.piece(k, idx));
    }
    DyadicBox box(axes);
    int scale = static_cast<int>(rng() % 4);
    CHECK(rescale_slope_ok(box, scale) == (box.min_width() >= scale_width(scale)));
  }
}

TEST_CASE("rescale map checks on resolved coordinates") {
  Construction c = build(1, 1, ScheduleMode::paper, 2);
  CHECK(rescale_map_check(c, 0, pt({Int(0)})));       // box [0,1] stays full width
  CHECK(rescale_map_check(c, 1, pt({Int(6)})));       // half-width box at scale 1
  CHECK_THROWS_AS(rescale_map_check(c, 0, pt({Int(6)})), thin_box_error);
  CHECK_THROWS_AS(rescale_map_check(c, -1, pt({Int(0)})), std::invalid_argument);
}
