#pragma once

#include <string>
#include <vector>

#include "subshift/group.hpp"

namespace subshift {

/**
 * Nested box tilings of Z^d. Level k tiles are the translates N_k*q + [0,N_k)^d,
 * so the level-k centers are N_k * Z^d. sides[0] = 1 and each side divides the next,
 * which makes every level-k tile an aligned union of level-(k-1) tiles.
 */
struct TilingHierarchy {
  int dim = 1;
  std::vector<Int> sides;  // sides[k] = N_k

  TilingHierarchy() = default;
  TilingHierarchy(int dim_, std::vector<Int> sides_);

  int depth() const { return static_cast<int>(sides.size()) - 1; }
  const Int& side(int level) const;  // 0 <= level <= depth
  Int cells(int level) const;        // N_level^dim
  /** N_level / N_{level-1}; level >= 1. */
  Int ratio(int level) const;
  /** ratio^dim: number of level-(level-1) subtiles inside a level tile. */
  Int subtiles(int level) const;
  Window shape(int level) const;  // [0, N_level)^dim
};

/** Rank of p in the lexicographic enumeration of [0, base)^dim; all coords in [0, base). */
Int lex_rank(const GroupPoint& p, const Int& base);
GroupPoint lex_unrank(Int rank, const Int& base, int dim);

/**
 * Where a point sits at a level: which tile, at which offset, and in which
 * level-(level-1) subtile (lexicographic rank among the ratio^dim slots).
 */
struct TileAddress {
  int level = 0;
  GroupPoint tile;    // q: the tile is N_level*q + [0, N_level)^dim
  GroupPoint offset;  // within [0, N_level)^dim
  Int subtile = 0;
};

TileAddress locate(const GroupPoint& g, int level, const TilingHierarchy& h);
GroupPoint reconstruct(const TileAddress& a, const TilingHierarchy& h);

/** Number of level tiles contained entirely in W. */
Int count_full_tiles(const Window& W, int level, const TilingHierarchy& h);

/**
 * Checks that consecutive levels refine each other over W: sides divide, every
 * level tile meeting W starts on a lower-level tile start, and the subtile
 * structure is the same in every tile (verified on explicit points, not assumed).
 */
bool check_prime_congruence(const TilingHierarchy& h, const Window& W, std::string* why = nullptr);

/**
 * The finite set K = [0, N_level)^dim with K + centers(level) = Z^d exactly;
 * N_level is the syndeticity gap recorded in certificates.
 */
Window center_gap_witness(int level, const TilingHierarchy& h);

/** The index-th window of the exhausting sequence: [0, N_index)^dim. index >= 1. */
Window folner_window(int index, const TilingHierarchy& h);

}  // namespace subshift
