#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subshift/errors.hpp"
#include "subshift/group.hpp"

using namespace subshift;

namespace {

GroupPoint pt(std::vector<Int> c) { return GroupPoint(std::move(c)); }

std::vector<GroupPoint> cube_points(const Int& lo, const Int& hi, int dim) {
  std::vector<std::pair<Int, Int>> r(dim, {lo, hi});
  return Window::box(r).points(Int(1) << 20);
}

}  // namespace

TEST_CASE("group operations") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 64; ++trial) {
    int dim = 1 + static_cast<int>(rng() % 2);
    GroupPoint a = oracle::random_point(rng, dim, 128);
    GroupPoint b = oracle::random_point(rng, dim, 128);
    CHECK(a + b == b + a);
    CHECK((a + b) - b == a);
    CHECK(a + zero_point(dim) == a);
    CHECK(-(-a) == a);
    CHECK(a * Int(3) == a + a + a);
  }
  CHECK(pt({Int(1), Int(2)}).str() == "1,2");
  CHECK(zero_point(2).is_zero());
  CHECK_FALSE(pt({Int(0), Int(1)}).is_zero());
}

TEST_CASE("lexicographic order") {
  CHECK(lex_less(pt({Int(0), Int(5)}), pt({Int(1), Int(0)})));
  CHECK(lex_less(pt({Int(1), Int(0)}), pt({Int(1), Int(1)})));
  CHECK_FALSE(lex_less(pt({Int(1)}), pt({Int(1)})));
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 64; ++trial) {
    GroupPoint a = oracle::random_point(rng, 2, 16);
    GroupPoint b = oracle::random_point(rng, 2, 16);
    if (a == b) continue;
    CHECK(lex_less(a, b) != lex_less(b, a));
  }
}

TEST_CASE("window parse and volume") {
  Window w = Window::parse("0..10");
  CHECK(w.dim() == 1);
  CHECK(w.volume() == 10);
  CHECK(w.contains(pt({Int(0)})));
  CHECK(w.contains(pt({Int(9)})));
  CHECK_FALSE(w.contains(pt({Int(10)})));
  CHECK_FALSE(w.contains(pt({Int(-1)})));

  Window w2 = Window::parse("0..10,-5..5", 2);
  CHECK(w2.volume() == 100);
  CHECK(w2.str() == "0..10,-5..5");
  CHECK(Window::parse(w2.str()).ranges == w2.ranges);

  CHECK(Window::cube(Int(4), 2).volume() == 16);

  CHECK_THROWS_AS(Window::parse("5..5"), config_error);
  CHECK_THROWS_AS(Window::parse("7..3"), config_error);
  CHECK_THROWS_AS(Window::parse("a..b"), config_error);
  CHECK_THROWS_AS(Window::parse("0..10", 2), config_error);
  CHECK_THROWS_AS(Window::parse(""), config_error);
}

TEST_CASE("window enumeration order and cap") {
  Window w = Window::box({{Int(0), Int(3)}, {Int(0), Int(2)}});
  std::vector<GroupPoint> seen;
  w.for_each([&](const GroupPoint& g) { seen.push_back(g); });
  REQUIRE(seen.size() == 6);
  CHECK(seen[0] == pt({Int(0), Int(0)}));
  CHECK(seen[1] == pt({Int(0), Int(1)}));
  CHECK(seen[2] == pt({Int(1), Int(0)}));
  CHECK(seen[5] == pt({Int(2), Int(1)}));
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(lex_less(seen[i - 1], seen[i]));

  CHECK(w.points(Int(6)).size() == 6);
  CHECK_THROWS_AS(w.points(Int(5)), config_error);
}

TEST_CASE("boundary matches the frozen values") {
  std::vector<GroupPoint> probe = {pt({Int(-1)}), pt({Int(0)}), pt({Int(1)})};

  Window f10 = Window::box({{Int(0), Int(10)}});
  std::vector<GroupPoint> b = boundary(f10, probe);
  REQUIRE(b.size() == 4);
  CHECK(b[0] == pt({Int(-1)}));
  CHECK(b[1] == pt({Int(0)}));
  CHECK(b[2] == pt({Int(9)}));
  CHECK(b[3] == pt({Int(10)}));
  CHECK(boundary_size(f10, probe) == 4);

  Window f100 = Window::box({{Int(0), Int(100)}});
  CHECK(boundary_size(f100, probe) == 4);
  CHECK(is_invariant(f100, probe, Rat(1, 20)));
  CHECK_FALSE(is_invariant(f100, probe, Rat(3, 100)));

  Window f2 = Window::cube(Int(10), 2);
  std::vector<GroupPoint> moore = cube_points(Int(-1), Int(2), 2);
  REQUIRE(moore.size() == 9);
  CHECK(boundary_size(f2, moore) == 80);

  std::vector<GroupPoint> cross = {pt({Int(0), Int(0)}), pt({Int(1), Int(0)}),
                                   pt({Int(-1), Int(0)}), pt({Int(0), Int(1)}),
                                   pt({Int(0), Int(-1)})};
  CHECK(boundary_size(f2, cross) == 76);

  CHECK_THROWS_AS(boundary(f10, {}), std::invalid_argument);
}

TEST_CASE("boundary agrees with the scan oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 24; ++trial) {
    int dim = 1 + static_cast<int>(rng() % 2);
    std::vector<std::pair<Int, Int>> ranges;
    for (int i = 0; i < dim; ++i) {
      Int lo = Int(rng() % 7) - 3;
      Int len = 1 + Int(rng() % 12);
      ranges.emplace_back(lo, lo + len);
    }
    Window f = Window::box(ranges);
    std::vector<GroupPoint> probe;
    int probe_size = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < probe_size; ++i) probe.push_back(oracle::random_point(rng, dim, 2));
    probe.push_back(zero_point(dim));

    std::vector<GroupPoint> expect = oracle::brute_boundary(f, probe);
    std::vector<GroupPoint> got = boundary(f, probe);
    CHECK(got == expect);
    CHECK(boundary_size(f, probe) == Int(expect.size()));
  }
}

TEST_CASE("invariance threshold is exact") {
  // |boundary| == 4 for the radius-1 probe on [0, n): the test is 4/n <= eps.
  std::vector<GroupPoint> probe = {pt({Int(-1)}), pt({Int(0)}), pt({Int(1)})};
  Window f = Window::box({{Int(0), Int(80)}});
  CHECK(is_invariant(f, probe, Rat(1, 20)));
  CHECK_FALSE(is_invariant(f, probe, Rat(4, 81)));
}
