#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subshift/errors.hpp"
#include "subshift/tiling.hpp"

using namespace subshift;

namespace {

GroupPoint pt(std::vector<Int> c) { return GroupPoint(std::move(c)); }

TilingHierarchy paper1d() { return TilingHierarchy(1, {Int(1), Int(8), Int(10485760)}); }
TilingHierarchy toy1d() { return TilingHierarchy(1, {Int(1), Int(3), Int(270), Int(49410)}); }

}  // namespace

TEST_CASE("hierarchy validation") {
  CHECK_THROWS_AS(TilingHierarchy(3, {Int(1), Int(2)}), std::invalid_argument);
  CHECK_THROWS_AS(TilingHierarchy(1, {Int(2), Int(4)}), std::invalid_argument);
  CHECK_THROWS_AS(TilingHierarchy(1, {Int(1), Int(8), Int(8)}), std::invalid_argument);
  CHECK_THROWS_AS(TilingHierarchy(1, {}), std::invalid_argument);

  TilingHierarchy h = paper1d();
  CHECK(h.depth() == 2);
  CHECK(h.side(0) == 1);
  CHECK(h.side(2) == 10485760);
  CHECK(h.ratio(1) == 8);
  CHECK(h.ratio(2) == 1310720);
  CHECK(h.subtiles(2) == 1310720);
  CHECK(h.cells(1) == 8);
  CHECK_THROWS_AS(h.side(3), std::out_of_range);

  TilingHierarchy h2(2, {Int(1), Int(3), Int(6)});
  CHECK(h2.cells(1) == 9);
  CHECK(h2.subtiles(2) == 4);
}

TEST_CASE("lexicographic rank") {
  CHECK(lex_rank(pt({Int(0), Int(0)}), Int(3)) == 0);
  CHECK(lex_rank(pt({Int(0), Int(1)}), Int(3)) == 1);
  CHECK(lex_rank(pt({Int(1), Int(0)}), Int(3)) == 3);
  CHECK(lex_rank(pt({Int(2), Int(2)}), Int(3)) == 8);
  CHECK(lex_unrank(Int(5), Int(3), 2) == pt({Int(1), Int(2)}));

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 64; ++trial) {
    int dim = 1 + static_cast<int>(rng() % 2);
    Int base = 2 + oracle::random_bits(rng, 5);
    Int rank = oracle::random_bits(rng, 9) % ipow(base, dim);
    CHECK(lex_rank(lex_unrank(rank, base, dim), base) == rank);
  }

  CHECK_THROWS_AS(lex_rank(pt({Int(3)}), Int(3)), std::invalid_argument);
  CHECK_THROWS_AS(lex_rank(pt({Int(-1)}), Int(3)), std::invalid_argument);
  CHECK_THROWS_AS(lex_unrank(Int(9), Int(3), 2), std::invalid_argument);
}

TEST_CASE("locate uses floor semantics") {
  TilingHierarchy h = paper1d();

  TileAddress a = locate(pt({Int(17)}), 1, h);
  CHECK(a.tile == pt({Int(2)}));
  CHECK(a.offset == pt({Int(1)}));
  CHECK(a.subtile == 1);

  TileAddress b = locate(pt({Int(-1)}), 1, h);
  CHECK(b.tile == pt({Int(-1)}));
  CHECK(b.offset == pt({Int(7)}));
  CHECK(b.subtile == 7);

  TileAddress c = locate(pt({Int(9961472)}), 2, h);
  CHECK(c.tile == pt({Int(0)}));
  CHECK(c.subtile == 1245184);

  TilingHierarchy h2(2, {Int(1), Int(3), Int(6)});
  TileAddress d = locate(pt({Int(4), Int(5)}), 2, h2);
  CHECK(d.tile == pt({Int(0), Int(0)}));
  CHECK(d.offset == pt({Int(4), Int(5)}));
  CHECK(d.subtile == 3);
  TileAddress e = locate(pt({Int(4), Int(5)}), 1, h2);
  CHECK(e.tile == pt({Int(1), Int(1)}));
  CHECK(e.subtile == 5);
}

TEST_CASE("locate and reconstruct are inverse") {
  std::mt19937_64 rng(7);
  TilingHierarchy h1 = paper1d();
  TilingHierarchy h2(2, {Int(1), Int(3), Int(6870)});
  for (int trial = 0; trial < 64; ++trial) {
    const TilingHierarchy& h = (trial % 2 == 0) ? h1 : h2;
    GroupPoint g = oracle::random_point(rng, h.dim, 80);
    for (int level = 1; level <= h.depth(); ++level) {
      TileAddress a = locate(g, level, h);
      CHECK(reconstruct(a, h) == g);
      for (const Int& c : a.offset.coords) {
        CHECK(c >= 0);
        CHECK(c < h.side(level));
      }
      CHECK(a.subtile >= 0);
      CHECK(a.subtile < h.subtiles(level));
    }
  }
}

TEST_CASE("full tile counts") {
  TilingHierarchy h = paper1d();
  CHECK(count_full_tiles(Window::parse("0..80"), 1, h) == 10);
  CHECK(count_full_tiles(Window::parse("3..83"), 1, h) == 9);
  CHECK(count_full_tiles(Window::parse("0..8"), 2, h) == 0);
  CHECK(count_full_tiles(Window::parse("-16..17"), 1, h) == 4);

  TilingHierarchy h2(2, {Int(1), Int(4), Int(12)});
  CHECK(count_full_tiles(Window::cube(Int(12), 2), 1, h2) == 9);
  CHECK(count_full_tiles(Window::cube(Int(12), 2), 2, h2) == 1);
  CHECK(count_full_tiles(Window::box({{Int(1), Int(12)}, {Int(0), Int(12)}}), 2, h2) == 0);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 48; ++trial) {
    int dim = 1 + static_cast<int>(rng() % 2);
    TilingHierarchy ht(dim, {Int(1), Int(4), Int(12)});
    std::vector<std::pair<Int, Int>> ranges;
    for (int i = 0; i < dim; ++i) {
      Int lo = Int(rng() % 60) - 30;
      ranges.emplace_back(lo, lo + 1 + Int(rng() % 50));
    }
    Window w = Window::box(ranges);
    for (int level = 1; level <= 2; ++level) {
      CHECK(count_full_tiles(w, level, ht) ==
            oracle::brute_count_full_tiles(w, ht.side(level), dim));
    }
  }
}

TEST_CASE("congruence across levels") {
  std::string why;
  CHECK(check_prime_congruence(paper1d(), Window::parse("-1000..1000"), &why));
  CHECK(why.empty());
  CHECK(check_prime_congruence(toy1d(), Window::parse("-1000..1000"), &why));
  CHECK(check_prime_congruence(TilingHierarchy(2, {Int(1), Int(3), Int(18), Int(234)}),
                               Window::cube(Int(300), 2), &why));

  // 8 does not divide 12: the tower is constructible but not congruent.
  CHECK_FALSE(check_prime_congruence(TilingHierarchy(1, {Int(1), Int(8), Int(12)}),
                                     Window::parse("0..100"), &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("center gaps and folner windows") {
  TilingHierarchy h = toy1d();
  CHECK(center_gap_witness(1, h).str() == "0..3");
  CHECK(center_gap_witness(3, h).volume() == 49410);
  CHECK(folner_window(2, h).str() == "0..270");
  CHECK_THROWS_AS(folner_window(0, h), std::invalid_argument);
  CHECK_THROWS_AS(folner_window(4, h), std::out_of_range);

  // Boundary-to-volume ratio shrinks along the exhausting sequence.
  std::vector<GroupPoint> probe = Window::cube(Int(2), 1).points(Int(16));
  Rat prev(2);
  for (int j = 1; j <= 3; ++j) {
    Window f = folner_window(j, h);
    Rat ratio = make_rat(boundary_size(f, probe), f.volume());
    CHECK(ratio < prev);
    prev = ratio;
    CHECK(is_invariant(f, probe, make_rat(Int(4), h.side(j))));
  }
}
