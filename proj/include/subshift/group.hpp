#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "subshift/bigint.hpp"

namespace subshift {

/** A lattice element of Z^d. Componentwise group operations, lexicographic order. */
struct GroupPoint {
  std::vector<Int> coords;

  GroupPoint() = default;
  explicit GroupPoint(std::vector<Int> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  bool is_zero() const;
  std::string str() const;  // coordinates joined by ","
};

GroupPoint zero_point(int dim);
GroupPoint operator+(const GroupPoint& a, const GroupPoint& b);
GroupPoint operator-(const GroupPoint& a, const GroupPoint& b);
GroupPoint operator-(const GroupPoint& a);
GroupPoint operator*(const GroupPoint& a, const Int& s);
bool operator==(const GroupPoint& a, const GroupPoint& b);
bool operator!=(const GroupPoint& a, const GroupPoint& b);
/** Lexicographic, coordinate 0 most significant. */
bool lex_less(const GroupPoint& a, const GroupPoint& b);

/**
 * An axis-aligned box of lattice points, half-open per axis: [lo, hi) with lo < hi.
 * Enumeration order is lexicographic with coordinate 0 most significant.
 */
struct Window {
  std::vector<std::pair<Int, Int>> ranges;

  static Window box(std::vector<std::pair<Int, Int>> ranges);
  /** The cube [0, side)^dim. */
  static Window cube(const Int& side, int dim);
  /** Parse "a..b" or "a..b,c..d". expect_dim 0 accepts any dimension. */
  static Window parse(const std::string& text, int expect_dim = 0);

  int dim() const { return static_cast<int>(ranges.size()); }
  Int volume() const;
  bool contains(const GroupPoint& p) const;
  std::string str() const;

  /** Visit every point in lexicographic order. Caller is responsible for the volume. */
  void for_each(const std::function<void(const GroupPoint&)>& fn) const;
  /** Materialize all points; throws config_error when volume exceeds cap. */
  std::vector<GroupPoint> points(const Int& cap) const;
};

/**
 * Elements g for which the translate K+g meets both F and its complement.
 * Exact, sorted lexicographically. Result size is capped (default 2^20 points).
 */
std::vector<GroupPoint> boundary(const Window& F, const std::vector<GroupPoint>& K,
                                 const Int& cap = Int(1) << 20);

/** |boundary(F, K)| computed by coordinate compression; no point enumeration. */
Int boundary_size(const Window& F, const std::vector<GroupPoint>& K);

/** Exact test |boundary(F,K)| / |F| <= eps. eps must be >= 0. */
bool is_invariant(const Window& F, const std::vector<GroupPoint>& K, const Rat& eps);

}  // namespace subshift
