#pragma once

#include <vector>

#include "subshift/dyadic.hpp"
#include "subshift/schedule.hpp"
#include "subshift/tiling.hpp"

namespace subshift {

struct BuildConfig {
  int group_dim = 1;           // d, lattice dimension, 1 or 2
  int poly_dim = 1;            // axes of the value cube [0,1]^poly_dim, 1 or 2
  ScheduleMode mode = ScheduleMode::paper;
  int depth = 1;               // constructed levels
  Int window_cap = Int(1) << 20;
};

/** Depth cap with direct variant growth: level 3 would need 2^(3 * cells_2) variants. */
inline constexpr int kMaxDirectDepth = 2;
/** Depth cap with the toy variant cap of 2^6 per level. */
inline constexpr int kMaxCappedDepth = 5;

/**
 * The assembled object: a tiling hierarchy plus, per level, the copy counts and
 * the exact width profile of the level shape. Coordinates are never enumerated
 * at build time; resolve_box walks one coordinate through all levels lazily.
 *
 * Placement conventions (all recorded in certificates):
 *  - level 1 sacrifices the last 2^poly_dim cell ranks of the shape to the
 *    2^poly_dim half-width orthants, in rank order;
 *  - within a level-k tile the refined variant copies occupy the last
 *    variant_copies(k) subtile ranks, base copies everything before them;
 *  - the t-th variant slot (0-based) carries refinement index m = t + 1.
 */
class Construction {
 public:
  static Construction build(const BuildConfig& cfg);

  const BuildConfig& config() const { return cfg_; }
  const FractionRule& rule() const { return rule_; }
  const TilingHierarchy& tiling() const { return tiling_; }
  int depth() const { return tiling_.depth(); }
  int group_dim() const { return cfg_.group_dim; }
  int poly_dim() const { return cfg_.poly_dim; }

  /** l_k: the required subtile count at level k (1 <= k <= depth). */
  const Int& subtile_minimum(int level) const;
  /** r_k: minimal unrefined copies inside a level-k tile (2 <= k <= depth). */
  const Int& base_copies(int level) const;
  /** V_k: refined variant copies inside a level-k tile (2 <= k <= depth). */
  const Int& variant_copies(int level) const;
  /** First subtile rank holding a variant: subtiles(k) - V_k. */
  Int first_variant_slot(int level) const;
  /** Exact width profile of the level shape (1 <= k <= depth). */
  const Profile& profile(int level) const;

  /** The box assigned to coordinate g after to_depth levels. Pure; any g in Z^d. */
  DyadicBox resolve_box(const GroupPoint& g, int to_depth) const;
  /** Per-axis left endpoints of resolve_box: the canonical point, exact wherever
   *  the box chain has stabilized (always true for g in [0, N_to_depth)^d). */
  std::vector<Rat> point_value(const GroupPoint& g, int to_depth) const;
  /** resolve_box over every point of W in lexicographic order; respects window_cap. */
  std::vector<DyadicBox> window_pattern(const Window& W, int to_depth) const;

 private:
  Construction() = default;

  BuildConfig cfg_;
  FractionRule rule_;
  TilingHierarchy tiling_;
  std::vector<Int> minimums_;    // l_k, index k-1
  std::vector<Int> copies_;      // r_k, index k-2
  std::vector<Int> variants_;    // V_k, index k-2
  std::vector<Profile> profiles_;  // index k-1
};

/**
 * Digit of refinement index m at a coordinate position: position 0 is the most
 * significant base-2^level digit of m-1, written with `positions` digits.
 * 1 <= m <= (2^level)^positions; 0 <= position < positions.
 */
int variant_digit(const Int& index, const Int& position, int level, const Int& positions);

}  // namespace subshift
