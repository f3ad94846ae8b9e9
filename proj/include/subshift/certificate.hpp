#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "subshift/construction.hpp"

namespace subshift {

inline constexpr int kCertificateVersion = 1;

/**
 * Everything a checker needs to re-derive and audit a construction, exactly:
 * the configuration, every per-level table, the fraction schedule it was built
 * against, and (optionally) the results block written by a verification run.
 * All big numbers are serialized as decimal strings; fractions as "p/q".
 */
struct Certificate {
  BuildConfig config;
  std::vector<Int> sides;           // N_0 .. N_depth
  std::vector<Int> shape_cells;     // N_k^d
  std::vector<Int> subtiles;        // ratio_k^d, levels 1..depth
  std::vector<Int> subtile_minimums;  // l_k, levels 1..depth
  std::vector<Int> base_copies;       // r_k, levels 2..depth
  std::vector<Int> variant_copies;    // V_k, levels 2..depth
  std::vector<std::tuple<int, int, Rat>> required;  // (scale, level, value)
  std::vector<std::pair<int, Rat>> limits;          // (scale, value)
  std::vector<Profile> profiles;                    // levels 1..depth
  nlohmann::ordered_json results;                   // null until a verify run writes one
};

Certificate make_certificate(const Construction& c);

/** Canonical serialization; byte-identical for equal certificates. */
std::string certificate_text(const Certificate& cert);

void emit_certificate(const Certificate& cert, const std::string& path);

/**
 * Load and fully validate. Throws certificate_error with fault io or parse for
 * unreadable or structurally bad files, version for an unknown format_version,
 * divisibility when the side tower is not a divisor chain, schedule when the
 * tables disagree with a rebuild from the recorded configuration, consistency
 * for cell counts, profile totals, placement or results-shape mismatches.
 */
Certificate load_certificate(const std::string& path);

/** Rebuild the construction a (validated) certificate describes. */
Construction reconstruct(const Certificate& cert);

}  // namespace subshift
