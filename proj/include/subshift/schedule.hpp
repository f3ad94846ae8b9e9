#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "subshift/bigint.hpp"

namespace subshift {

enum class ScheduleMode { paper, toy };

const char* mode_name(ScheduleMode m);
ScheduleMode parse_mode(const std::string& s);

/** 2^{-n(n+1)/2}: the width threshold attached to scale n. */
Rat scale_width(int scale);

/**
 * The coverage-fraction schedule. required_fraction(n, k) is the fraction of
 * coordinates whose box must stay at least scale_width(n) wide after level k;
 * it strictly decreases in k towards limit_fraction(n), which strictly
 * increases in n towards terminal_value().
 *
 * paper mode: required = 1 - 1/(n+2) + 1/(k+3), limit = 1 - 1/(n+2), terminal 1.
 * toy mode: the same shape scaled by 1/16 with a 2^-(k+2) excess, terminal 1/16;
 * the small fractions keep every derived copy count materializable.
 */
struct FractionRule {
  ScheduleMode mode = ScheduleMode::paper;

  Rat required_fraction(int scale, int level) const;  // scale >= 0, level >= 1
  Rat limit_fraction(int scale) const;                // scale >= 0
  Rat terminal_value() const;
};

/**
 * Exact grid check of the schedule shape: values in range, strict decrease in
 * level, strict excess over the limit, limits strictly increasing and
 * approaching the terminal value from below at the witnessed rate
 * limit(n) > terminal * n/(n+1). Returns false and fills why on any violation.
 */
bool verify_fraction_properties(const std::function<Rat(int, int)>& required,
                                const std::function<Rat(int)>& limit, const Rat& terminal,
                                int scale_max, int level_max, std::string* why = nullptr);
bool verify_fraction_properties(const FractionRule& rule, int scale_max, int level_max,
                                std::string* why = nullptr);

/** Box widths with multiplicities, widths strictly decreasing. */
struct Profile {
  std::vector<std::pair<Rat, Int>> entries;

  static Profile make(std::vector<std::pair<Rat, Int>> entries);
  /** cells - 2^poly_dim full-width cells plus 2^poly_dim half-width cells. */
  static Profile step_one(const Int& cells, int poly_dim);

  Int total() const;
  Int count_at_least(const Rat& w) const;
  Rat max_width() const;
  Rat min_width() const;

  /**
   * The profile of the next level: base_copies unrefined copies of this
   * profile plus variants copies refined by 2^-level.
   */
  Profile refined_level(const Int& base_copies, const Int& variants, int level) const;

  bool operator==(const Profile& o) const { return entries == o.entries; }
};

/**
 * Smallest subtile count l > sacrificed with (l - sacrificed)/l >= required.
 * required must be < 1.
 */
Int select_level1_subtiles(const Rat& required, const Int& sacrificed);

/**
 * Number of refined copies at `level` over a previous shape with prev_cells
 * cells: (2^level)^(prev_cells * poly_dim), capped at 2^6 in toy mode so that
 * deep levels stay materializable.
 */
Int variant_count(ScheduleMode mode, int level, const Int& prev_cells, int poly_dim);

/**
 * Smallest positive copy count r such that for every scale 0 <= n <= level,
 *   count_at_least(scale_width(n)) * r >= required_fraction(n, level) * prev_cells * (r + variants).
 * Closed form per scale, cross-checked by a +-1 scan.
 * Throws infeasible_schedule_error when no r can work.
 */
Int select_base_copies(const FractionRule& rule, int level, const Profile& prev,
                       const Int& prev_cells, const Int& variants);

}  // namespace subshift
