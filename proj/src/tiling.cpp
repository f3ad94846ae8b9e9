#include "subshift/tiling.hpp"

#include <algorithm>
#include <stdexcept>

namespace subshift {

TilingHierarchy::TilingHierarchy(int dim_, std::vector<Int> sides_)
    : dim(dim_), sides(std::move(sides_)) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("hierarchy: dim must be 1 or 2");
  if (sides.empty() || sides[0] != 1) throw std::invalid_argument("hierarchy: sides must start at 1");
  for (size_t k = 1; k < sides.size(); ++k)
    if (sides[k] <= sides[k - 1]) throw std::invalid_argument("hierarchy: sides must increase");
}

const Int& TilingHierarchy::side(int level) const {
  if (level < 0 || level > depth()) throw std::out_of_range("hierarchy: level out of range");
  return sides[level];
}

Int TilingHierarchy::cells(int level) const { return ipow(side(level), dim); }

Int TilingHierarchy::ratio(int level) const {
  if (level < 1) throw std::out_of_range("hierarchy: ratio needs level >= 1");
  return floor_div(side(level), side(level - 1));
}

Int TilingHierarchy::subtiles(int level) const { return ipow(ratio(level), dim); }

Window TilingHierarchy::shape(int level) const { return Window::cube(side(level), dim); }

Int lex_rank(const GroupPoint& p, const Int& base) {
  Int rank = 0;
  for (int i = 0; i < p.dim(); ++i) {
    if (p.coords[i] < 0 || p.coords[i] >= base)
      throw std::invalid_argument("lex_rank: coordinate out of [0, base)");
    rank = rank * base + p.coords[i];
  }
  return rank;
}

GroupPoint lex_unrank(Int rank, const Int& base, int dim) {
  if (rank < 0 || rank >= ipow(base, dim))
    throw std::invalid_argument("lex_unrank: rank out of range");
  GroupPoint p = zero_point(dim);
  for (int i = dim - 1; i >= 0; --i) {
    p.coords[i] = floor_mod(rank, base);
    rank = floor_div(rank, base);
  }
  return p;
}

TileAddress locate(const GroupPoint& g, int level, const TilingHierarchy& h) {
  if (level < 1 || level > h.depth()) throw std::out_of_range("locate: level out of range");
  if (g.dim() != h.dim) throw std::invalid_argument("locate: point of wrong dimension");
  const Int& N = h.side(level);
  TileAddress a;
  a.level = level;
  a.tile = zero_point(h.dim);
  a.offset = zero_point(h.dim);
  GroupPoint sub = zero_point(h.dim);
  const Int& prev = h.side(level - 1);
  for (int i = 0; i < h.dim; ++i) {
    a.tile.coords[i] = floor_div(g.coords[i], N);
    a.offset.coords[i] = g.coords[i] - a.tile.coords[i] * N;
    sub.coords[i] = floor_div(a.offset.coords[i], prev);
  }
  a.subtile = lex_rank(sub, h.ratio(level));
  return a;
}

GroupPoint reconstruct(const TileAddress& a, const TilingHierarchy& h) {
  return a.tile * h.side(a.level) + a.offset;
}

Int count_full_tiles(const Window& W, int level, const TilingHierarchy& h) {
  if (level < 1 || level > h.depth()) throw std::out_of_range("count_full_tiles: level out of range");
  if (W.dim() != h.dim) throw std::invalid_argument("count_full_tiles: window of wrong dimension");
  const Int& N = h.side(level);
  Int total = 1;
  for (const auto& [a, b] : W.ranges) {
    Int n = floor_div(b, N) - ceil_div(a, N);
    if (n <= 0) return 0;
    total *= n;
  }
  return total;
}

namespace {

std::vector<Int> spread_values(const Int& lo, const Int& hi, int want) {
  std::vector<Int> out;
  if (hi < lo) return out;
  Int span = hi - lo;
  if (span + 1 <= want) {
    for (Int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  for (int j = 0; j < want; ++j) out.push_back(lo + span * j / (want - 1));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

bool check_prime_congruence(const TilingHierarchy& h, const Window& W, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (W.dim() != h.dim) throw std::invalid_argument("check_prime_congruence: window of wrong dimension");
  for (int k = 2; k <= h.depth(); ++k) {
    if (h.side(k) % h.side(k - 1) != 0)
      return fail("side " + h.side(k).str() + " at level " + std::to_string(k) +
                  " is not a multiple of " + h.side(k - 1).str());
  }
  for (int k = 2; k <= h.depth(); ++k) {
    const Int& N = h.side(k);
    const Int& prev = h.side(k - 1);
    Int r = h.ratio(k);
    Int n_sub = h.subtiles(k);

    // tiles meeting W, a handful per axis
    std::vector<std::vector<Int>> axis_tiles;
    for (const auto& [a, b] : W.ranges)
      axis_tiles.push_back(spread_values(floor_div(a, N), floor_div(b - 1, N), 5));
    std::vector<GroupPoint> tiles;
    std::vector<size_t> idx(h.dim, 0);
    while (true) {
      GroupPoint q = zero_point(h.dim);
      for (int i = 0; i < h.dim; ++i) q.coords[i] = axis_tiles[i][idx[i]];
      tiles.push_back(q);
      int axis = h.dim - 1;
      while (axis >= 0) {
        if (++idx[axis] < axis_tiles[axis].size()) break;
        idx[axis] = 0;
        --axis;
      }
      if (axis < 0) break;
    }

    std::vector<Int> ranks = spread_values(Int(0), n_sub - 1, n_sub <= 4096 ? 4096 : 64);
    for (const GroupPoint& q : tiles) {
      for (const Int& s : ranks) {
        GroupPoint start = q * N + lex_unrank(s, r, h.dim) * prev;
        TileAddress at = locate(start, k, h);
        if (at.tile != q || at.subtile != s)
          return fail("subtile " + s.str() + " of tile " + q.str() + " at level " +
                      std::to_string(k) + " does not address consistently");
        TileAddress below = locate(start, k - 1, h);
        if (!below.offset.is_zero())
          return fail("subtile start " + start.str() + " at level " + std::to_string(k) +
                      " is not on a level-" + std::to_string(k - 1) + " tile start");
      }
    }

    // identical subtile structure across tiles: equal offsets give equal addresses
    if (tiles.size() >= 2) {
      for (int j = 0; j < 32; ++j) {
        GroupPoint o = zero_point(h.dim);
        for (int i = 0; i < h.dim; ++i)
          o.coords[i] = floor_mod((N - 1) * (j + 1) / 33 + Int(17) * i, N);
        TileAddress base = locate(tiles[0] * N + o, k, h);
        for (size_t t = 1; t < tiles.size(); ++t) {
          TileAddress other = locate(tiles[t] * N + o, k, h);
          if (other.subtile != base.subtile || other.offset != base.offset)
            return fail("tiles " + tiles[0].str() + " and " + tiles[t].str() + " at level " +
                        std::to_string(k) + " disagree at offset " + o.str());
        }
      }
    }
  }
  return true;
}

Window center_gap_witness(int level, const TilingHierarchy& h) {
  if (level < 0 || level > h.depth()) throw std::out_of_range("center_gap_witness: level out of range");
  return h.shape(level);
}

Window folner_window(int index, const TilingHierarchy& h) {
  if (index < 1) throw std::invalid_argument("folner_window: index must be >= 1");
  if (index > h.depth()) throw std::out_of_range("folner_window: index beyond depth");
  return h.shape(index);
}

}  // namespace subshift
