#include "oracles.hpp"

#include <stdexcept>

#include "subshift/errors.hpp"

namespace subshift::oracle {

std::vector<GroupPoint> brute_boundary(const Window& window,
                                       const std::vector<GroupPoint>& probe) {
  if (probe.empty()) throw std::invalid_argument("brute_boundary: empty probe set");
  int dim = window.dim();
  std::vector<std::pair<Int, Int>> ranges;
  for (int i = 0; i < dim; ++i) {
    Int kmin = probe[0].coords[i];
    Int kmax = probe[0].coords[i];
    for (const auto& k : probe) {
      if (k.coords[i] < kmin) kmin = k.coords[i];
      if (k.coords[i] > kmax) kmax = k.coords[i];
    }
    ranges.emplace_back(window.ranges[i].first - kmax, window.ranges[i].second - kmin);
  }
  std::vector<GroupPoint> out;
  Window::box(ranges).for_each([&](const GroupPoint& g) {
    bool inside = false;
    bool outside = false;
    for (const auto& k : probe) {
      if (window.contains(k + g)) {
        inside = true;
      } else {
        outside = true;
      }
      if (inside && outside) break;
    }
    if (inside && outside) out.push_back(g);
  });
  return out;
}

Int brute_count_full_tiles(const Window& window, const Int& side, int dim) {
  std::vector<std::pair<Int, Int>> tile_range;
  for (int i = 0; i < dim; ++i) {
    Int lo = floor_div(window.ranges[i].first, side) - 1;
    Int hi = floor_div(window.ranges[i].second, side) + 2;
    tile_range.emplace_back(lo, hi);
  }
  Int count = 0;
  Window::box(tile_range).for_each([&](const GroupPoint& q) {
    for (int i = 0; i < dim; ++i) {
      Int a = q.coords[i] * side;
      if (a < window.ranges[i].first || a + side > window.ranges[i].second) return;
    }
    ++count;
  });
  return count;
}

Int brute_level1_subtiles(const Rat& required, const Int& sacrificed) {
  if (required >= 1) throw infeasible_schedule_error("brute_level1_subtiles: required >= 1");
  Int p = num(required);
  Int q = den(required);
  Int l = sacrificed + 1;
  while ((l - sacrificed) * q < p * l) ++l;
  return l;
}

Int brute_base_copies(const FractionRule& rule, int level, const Profile& prev,
                      const Int& prev_cells, const Int& variants, const Int& cap) {
  struct Scale {
    Int count;
    Int p;
    Int q;
  };
  std::vector<Scale> scales;
  for (int n = 0; n <= level; ++n) {
    Rat req = rule.required_fraction(n, level);
    scales.push_back({prev.count_at_least(scale_width(n)), num(req), den(req)});
  }
  for (Int r = 1; r <= cap; ++r) {
    bool ok = true;
    for (const auto& s : scales) {
      if (s.count * s.q * r < s.p * prev_cells * (r + variants)) {
        ok = false;
        break;
      }
    }
    if (ok) return r;
  }
  throw infeasible_schedule_error("brute_base_copies: no copy count up to cap works");
}

std::vector<DyadicBox> materialize_block(const Construction& c, int level) {
  const TilingHierarchy& h = c.tiling();
  int dim = c.group_dim();
  int poly = c.poly_dim();
  std::vector<DyadicBox> table{DyadicBox::unit(poly)};
  for (int k = 1; k <= level; ++k) {
    std::vector<DyadicBox> next;
    next.reserve(static_cast<std::size_t>(to_ulong_checked(h.cells(k), "materialize cells")));
    if (k == 1) {
      Int cells1 = h.cells(1);
      Int orthants = pow2(poly);
      for (Int rho = 0; rho < cells1; ++rho) {
        DyadicBox box = DyadicBox::unit(poly);
        if (rho >= cells1 - orthants) {
          Int t = rho - (cells1 - orthants);
          for (int a = 0; a < poly; ++a) {
            Int bit = (t >> (poly - 1 - a)) & 1;
            box.axes[a] = box.axes[a].piece(1, bit);
          }
        }
        next.push_back(box);
      }
    } else {
      Int prev_side = h.side(k - 1);
      Int ratio = h.ratio(k);
      Int first_variant = h.subtiles(k) - c.variant_copies(k);
      Int positions = h.cells(k - 1) * poly;
      h.shape(k).for_each([&](const GroupPoint& g) {
        Int slot = 0;
        Int cell_rank = 0;
        for (int i = 0; i < dim; ++i) {
          slot = slot * ratio + g.coords[i] / prev_side;
          cell_rank = cell_rank * prev_side + g.coords[i] % prev_side;
        }
        std::size_t cell = to_ulong_checked(cell_rank, "materialize cell rank");
        DyadicBox box = table[cell];
        if (slot >= first_variant) {
          Int m1 = slot - first_variant;  // refinement index minus one
          for (int a = 0; a < poly; ++a) {
            Int pos = cell_rank * poly + a;
            Int digit = (m1 >> to_ulong_checked(Int(k) * (positions - 1 - pos),
                                                "materialize digit shift")) &
                        (pow2(k) - 1);
            box.axes[a] = box.axes[a].piece(k, digit);
          }
        }
        next.push_back(box);
      });
    }
    table = std::move(next);
  }
  return table;
}

WitnessScan brute_witness_scan(const Construction& c, int window_level) {
  if (c.group_dim() != 1) throw std::invalid_argument("brute_witness_scan: dim 1 only");
  int depth = c.depth();
  const Int& period = c.tiling().side(depth);
  const Int& window = c.tiling().side(window_level);
  std::vector<DyadicBox> table = materialize_block(c, depth);
  std::size_t n = table.size();
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = table[i].axes[0].left();
  std::size_t w = to_ulong_checked(window, "brute witness window");

  WitnessScan best;
  best.best_bound = Rat(2);
  best.best_shift = 0;
  for (std::size_t hshift = 1; hshift < n; ++hshift) {
    Rat bound = 0;
    for (std::size_t g = 0; g < w; ++g) {
      const DyadicInterval& iv = table[(g + hshift) % n].axes[0];
      Rat lo = x[g] - iv.left();
      if (lo < 0) lo = -lo;
      Rat hi = iv.right() - x[g];
      if (hi < 0) hi = -hi;
      if (lo > bound) bound = lo;
      if (hi > bound) bound = hi;
      if (bound >= best.best_bound) break;
    }
    if (bound < best.best_bound) {
      best.best_bound = bound;
      best.best_shift = Int(hshift);
    }
  }
  (void)period;
  return best;
}

Int random_bits(std::mt19937_64& rng, int bits) {
  Int v = 0;
  int remaining = bits;
  while (remaining >= 64) {
    v = (v << 64) | Int(rng());
    remaining -= 64;
  }
  if (remaining > 0) v = (v << remaining) | Int(rng() >> (64 - remaining));
  return v;
}

Int random_signed(std::mt19937_64& rng, int bits) {
  Int v = random_bits(rng, bits);
  return (rng() & 1) ? v : -v;
}

GroupPoint random_point(std::mt19937_64& rng, int dim, int bits) {
  std::vector<Int> coords;
  coords.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) coords.push_back(random_signed(rng, bits));
  return GroupPoint(std::move(coords));
}

}  // namespace subshift::oracle
