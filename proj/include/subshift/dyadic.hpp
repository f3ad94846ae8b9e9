#pragma once

#include <string>
#include <vector>

#include "subshift/bigint.hpp"

namespace subshift {

/**
 * Closed interval [lo/2^e, hi/2^e] with 0 <= lo < hi <= 2^e.
 * Kept normalized: either e == 0 or at least one endpoint numerator is odd.
 */
struct DyadicInterval {
  Int lo = 0;
  Int hi = 1;
  unsigned long e = 0;

  DyadicInterval() = default;
  DyadicInterval(Int lo_, Int hi_, unsigned long e_);

  static DyadicInterval unit() { return DyadicInterval(); }

  Rat left() const { return make_rat(lo, Int(1) << e); }
  Rat right() const { return make_rat(hi, Int(1) << e); }
  Rat width() const { return make_rat(hi - lo, Int(1) << e); }
  bool contains(const Rat& v) const { return left() <= v && v <= right(); }

  /**
   * The index-th of the 2^k equal closed pieces, counted from the left.
   * Pieces overlap only at shared endpoints.
   */
  DyadicInterval piece(int k, const Int& index) const;

  /** The piece index whose piece contains v; ties at interior endpoints go right,
   *  and v == right() clamps to the last piece. v must lie in the interval. */
  Int piece_index(const Rat& v, int k) const;

  std::string str() const;  // "[a, b]" with dyadic endpoint strings
};

bool operator==(const DyadicInterval& a, const DyadicInterval& b);
bool operator!=(const DyadicInterval& a, const DyadicInterval& b);

/** All 2^k pieces in increasing order. */
std::vector<DyadicInterval> subdivide(const DyadicInterval& iv, int k);

/** Product of per-axis intervals. Every box produced by the construction is a cube. */
struct DyadicBox {
  std::vector<DyadicInterval> axes;

  DyadicBox() = default;
  explicit DyadicBox(std::vector<DyadicInterval> a) : axes(std::move(a)) {}
  static DyadicBox unit(int dim) { return DyadicBox(std::vector<DyadicInterval>(dim)); }

  int dim() const { return static_cast<int>(axes.size()); }
  /** Largest per-axis width (the sup-metric diameter). */
  Rat width() const;
  /** Smallest per-axis width. */
  Rat min_width() const;
  bool contains(const std::vector<Rat>& v) const;
  std::string str() const;  // axes joined by " x "
};

bool operator==(const DyadicBox& a, const DyadicBox& b);
bool operator!=(const DyadicBox& a, const DyadicBox& b);

/** All (2^k)^dim sub-boxes, ordered lexicographically by per-axis piece index (axis 0 major). */
std::vector<DyadicBox> subdivide(const DyadicBox& box, int k);

}  // namespace subshift
