#include "subshift/construction.hpp"

#include <stdexcept>
#include <string>

#include "subshift/errors.hpp"

namespace subshift {

int variant_digit(const Int& index, const Int& position, int level, const Int& positions) {
  if (level < 1 || level > 20) throw std::invalid_argument("variant_digit: level out of range");
  if (position < 0 || position >= positions)
    throw std::invalid_argument("variant_digit: position out of range");
  if (index < 1) throw std::invalid_argument("variant_digit: index must be positive");
  Int m = index - 1;
  if (Int(bit_length(m)) > Int(level) * positions)
    throw std::invalid_argument("variant_digit: index too large for digit grid");
  // Positions to the right of this one occupy level * (positions - 1 - position) low bits.
  Int shift = Int(level) * (positions - 1 - position);
  if (Int(bit_length(m)) <= shift) return 0;  // digit is zero; avoids materializing the shift
  Int digit = (m >> to_ulong_checked(shift, "variant_digit shift")) & (pow2(level) - 1);
  return static_cast<int>(to_ulong_checked(digit, "variant_digit digit"));
}

Construction Construction::build(const BuildConfig& cfg) {
  if (cfg.group_dim != 1 && cfg.group_dim != 2)
    throw config_error("group dimension must be 1 or 2");
  if (cfg.poly_dim != 1 && cfg.poly_dim != 2)
    throw config_error("polytope dimension must be 1 or 2");
  if (cfg.depth < 0) throw config_error("depth must be nonnegative");
  if (cfg.window_cap < 1) throw config_error("window cap must be positive");
  const int max_depth = cfg.mode == ScheduleMode::toy ? kMaxCappedDepth : kMaxDirectDepth;
  if (cfg.depth > max_depth)
    throw depth_limit_error("depth " + std::to_string(cfg.depth) + " exceeds the " +
                            std::string(mode_name(cfg.mode)) + " cap of " +
                            std::to_string(max_depth));

  Construction c;
  c.cfg_ = cfg;
  c.rule_ = FractionRule{cfg.mode};

  const int d = cfg.group_dim;
  const Int sacrificed = pow2(cfg.poly_dim);
  std::vector<Int> sides{Int(1)};

  if (cfg.depth >= 1) {
    Int l1 = select_level1_subtiles(c.rule_.required_fraction(0, 1), sacrificed);
    Int side1 = side_for_volume(l1, d);
    sides.push_back(side1);
    c.minimums_.push_back(l1);
    Int cells1 = ipow(side1, d);
    c.profiles_.push_back(Profile::step_one(cells1, cfg.poly_dim));
    // Full-width coverage at level 1 must already meet the level-1 demand.
    Rat covered = Rat(cells1 - sacrificed) / Rat(cells1);
    if (covered < c.rule_.required_fraction(0, 1))
      throw infeasible_schedule_error("level 1 coverage below the required fraction");
  }

  for (int k = 2; k <= cfg.depth; ++k) {
    const Int& prev_side = sides[static_cast<size_t>(k - 1)];
    Int prev_cells = ipow(prev_side, d);
    Int v = variant_count(cfg.mode, k, prev_cells, cfg.poly_dim);
    Int r = select_base_copies(c.rule_, k, c.profiles_.back(), prev_cells, v);
    Int l = r + v;
    Int ratio = side_for_volume(l, d);
    sides.push_back(prev_side * ratio);
    Int n_sub = ipow(ratio, d);
    // Slack subtiles join the base copies, so the realized fraction only improves.
    Int first_variant = n_sub - v;
    c.minimums_.push_back(l);
    c.copies_.push_back(r);
    c.variants_.push_back(v);
    c.profiles_.push_back(c.profiles_.back().refined_level(first_variant, v, k));
  }

  c.tiling_ = TilingHierarchy(d, sides);
  return c;
}

const Int& Construction::subtile_minimum(int level) const {
  if (level < 1 || level > depth()) throw std::out_of_range("subtile_minimum: level");
  return minimums_[static_cast<size_t>(level - 1)];
}

const Int& Construction::base_copies(int level) const {
  if (level < 2 || level > depth()) throw std::out_of_range("base_copies: level");
  return copies_[static_cast<size_t>(level - 2)];
}

const Int& Construction::variant_copies(int level) const {
  if (level < 2 || level > depth()) throw std::out_of_range("variant_copies: level");
  return variants_[static_cast<size_t>(level - 2)];
}

Int Construction::first_variant_slot(int level) const {
  return tiling_.subtiles(level) - variant_copies(level);
}

const Profile& Construction::profile(int level) const {
  if (level < 1 || level > depth()) throw std::out_of_range("profile: level");
  return profiles_[static_cast<size_t>(level - 1)];
}

DyadicBox Construction::resolve_box(const GroupPoint& g, int to_depth) const {
  if (g.dim() != cfg_.group_dim) throw std::invalid_argument("resolve_box: dimension mismatch");
  if (to_depth < 0 || to_depth > depth()) throw std::out_of_range("resolve_box: depth");
  const int d = cfg_.group_dim;
  const int p = cfg_.poly_dim;
  DyadicBox box = DyadicBox::unit(p);

  if (to_depth >= 1) {
    const Int& side1 = tiling_.side(1);
    GroupPoint off(std::vector<Int>(static_cast<size_t>(d)));
    for (int a = 0; a < d; ++a)
      off.coords[static_cast<size_t>(a)] = floor_mod(g.coords[static_cast<size_t>(a)], side1);
    Int rho = lex_rank(off, side1);
    Int cells1 = tiling_.cells(1);
    Int sacrificed = pow2(p);
    if (rho >= cells1 - sacrificed) {
      // Orthant cell: axis a keeps the half selected by bit a of the orthant index.
      unsigned long t = to_ulong_checked(rho - (cells1 - sacrificed), "orthant index");
      for (int a = 0; a < p; ++a) {
        int bit = static_cast<int>((t >> (p - 1 - a)) & 1UL);
        box.axes[static_cast<size_t>(a)] = box.axes[static_cast<size_t>(a)].piece(1, bit);
      }
    }
  }

  for (int k = 2; k <= to_depth; ++k) {
    const Int& side_k = tiling_.side(k);
    const Int& side_prev = tiling_.side(k - 1);
    Int ratio = tiling_.ratio(k);
    GroupPoint sub(std::vector<Int>(static_cast<size_t>(d)));
    GroupPoint cell(std::vector<Int>(static_cast<size_t>(d)));
    for (int a = 0; a < d; ++a) {
      Int within = floor_mod(g.coords[static_cast<size_t>(a)], side_k);
      sub.coords[static_cast<size_t>(a)] = floor_div(within, side_prev);
      cell.coords[static_cast<size_t>(a)] = floor_mod(within, side_prev);
    }
    Int slot = lex_rank(sub, ratio);
    Int first_variant = first_variant_slot(k);
    if (slot < first_variant) continue;  // base copy: boxes carry over unchanged
    Int m = slot - first_variant + 1;
    Int cell_rank = lex_rank(cell, side_prev);
    Int positions = tiling_.cells(k - 1) * p;
    for (int a = 0; a < p; ++a) {
      Int pos = cell_rank * p + a;
      int digit = variant_digit(m, pos, k, positions);
      box.axes[static_cast<size_t>(a)] = box.axes[static_cast<size_t>(a)].piece(k, digit);
    }
  }
  return box;
}

std::vector<Rat> Construction::point_value(const GroupPoint& g, int to_depth) const {
  DyadicBox box = resolve_box(g, to_depth);
  std::vector<Rat> value;
  value.reserve(box.axes.size());
  for (const auto& axis : box.axes) value.push_back(axis.left());
  return value;
}

std::vector<DyadicBox> Construction::window_pattern(const Window& w, int to_depth) const {
  if (w.dim() != cfg_.group_dim) throw std::invalid_argument("window_pattern: dimension mismatch");
  if (w.volume() > cfg_.window_cap)
    throw config_error("window volume " + int_str(w.volume()) + " exceeds cap " +
                       int_str(cfg_.window_cap));
  std::vector<DyadicBox> out;
  w.for_each([&](const GroupPoint& g) { out.push_back(resolve_box(g, to_depth)); });
  return out;
}

}  // namespace subshift
