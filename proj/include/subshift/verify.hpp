#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subshift/construction.hpp"
#include "subshift/errors.hpp"

namespace subshift {

/**
 * A return-time certificate for the window [0, N_window_level)^d at precision
 * 1/precision: translating by element (or by element plus any multiple of gap)
 * moves every canonical value in the window by at most bound < 1/precision.
 */
struct ReturnTimeWitness {
  int window_level = 0;
  int precision = 0;
  int depth_used = 0;   // level whose tile law pins the witness
  GroupPoint element;   // the certified return translate
  Rat bound;            // sup-metric displacement bound
  Int gap = 0;          // translates element + gap * Z^d all work
};

/**
 * Constructs the witness. precision <= 1 needs no movement and returns the
 * identity translate with bound 0. Larger precisions pick the smallest level D
 * whose refinement factor beats 1/precision and aim every hop at the all-zeros
 * variant slot; throws depth_limit_error when no constructed level is deep enough.
 */
ReturnTimeWitness return_time_witness(const Construction& c, int window_level, int precision);

/**
 * max over g in [0, N_window_level)^d and over axes of the distance from the
 * canonical value at g to the farthest point of the box resolved at g + shift.
 * Exact; enumerates the window, so keep window_level small.
 */
Rat coset_translate_bound(const Construction& c, int window_level, const GroupPoint& shift);

/**
 * Spot-checks that element + gap*t stays within the witness bound for random
 * per-axis multipliers t (magnitude up to 2^100) plus t = 0, +-1. Deterministic
 * in seed. samples >= 1.
 */
bool syndetic_gap_check(const Construction& c, const ReturnTimeWitness& w, int samples,
                        std::uint64_t seed = 0x5eedULL);

/**
 * Exact per-level fractions of cells whose box is still at least
 * scale_width(scale) wide, read off the level profiles; by the tail placement
 * of refined copies these equal the asymptotic frequencies. mdim_term is the
 * certified contribution certified_lower * poly_dim.
 */
struct DensityReport {
  int scale = 0;
  std::vector<int> levels;
  std::vector<Rat> fractions;
  Rat certified_lower;
  Rat mdim_term;
};

DensityReport density_estimate(const Construction& c, int scale, const std::vector<int>& levels);

/** True when every axis of the box is at least scale_width(scale) wide. */
bool rescale_slope_ok(const DyadicBox& box, int scale);

/**
 * Slope condition for the coordinate's fully resolved box. Throws
 * thin_box_error when the box is already narrower than the scale threshold.
 */
bool rescale_map_check(const Construction& c, int scale, const GroupPoint& g);

struct MdimBound {
  Rat lower;
  Rat upper;
  std::string limit_note;
  std::vector<DensityReport> reports;
};

/** Best certified lower bound over the given scales; upper bound is poly_dim. */
MdimBound mdim_lower_bound(const Construction& c, const std::vector<int>& scales);

struct ContainmentWitness {
  GroupPoint element;
  Rat bound;
  int depth_used = 0;
};

/**
 * Finds a translate whose canonical values approximate an arbitrary target
 * pattern over [0, N_window_level)^d within 1/precision. target[i][a] is the
 * axis-a value at the i-th window point in lexicographic order and must lie in
 * that point's level-window_level box. Steers one variant digit per coordinate
 * and axis per level; throws depth_limit_error when the needed variant index
 * is beyond the level's copy count or the construction is too shallow.
 */
ContainmentWitness containment_check(const Construction& c, int window_level,
                                     const std::vector<std::vector<Rat>>& target, int precision);

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  ExitCode code = ExitCode::ok;
  std::vector<CheckResult> checks;

  bool ok() const;
};

struct VerifyOptions {
  std::vector<int> scales;  // empty: 0..depth
  int samples = 50;
  std::uint64_t seed = 0x5eedULL;
};

/** Canonical suite order; a verify run's exit code is the first failing suite's code. */
const std::vector<std::string>& suite_names();
ExitCode suite_exit_code(const std::string& suite);

/** Runs one named suite. Unknown names throw config_error. */
SuiteResult run_suite(const Construction& c, const std::string& suite, const VerifyOptions& opt);

}  // namespace subshift
