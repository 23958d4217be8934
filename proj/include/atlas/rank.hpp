#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "atlas/arith.hpp"

namespace atlas {

// Sparse integer matrix, column-major: columns[j] lists (row, value) with
// strictly increasing row indices and nonzero values.
struct SparseIntColumns {
  std::int64_t rows = 0;
  std::vector<std::vector<std::pair<std::int32_t, Int>>> columns;
  std::int64_t cols() const { return static_cast<std::int64_t>(columns.size()); }
};

struct RankResult {
  std::int64_t rank = 0;
  std::string method;  // "modp-certified-full" or "bareiss"
};

// Rank over Z/p, p = 2^61 - 1.  A lower bound for the rank over Q.
std::int64_t rank_mod_p(const SparseIntColumns& m);

// Fraction-free Bareiss elimination over Z; exact, deterministic pivoting
// (first nonzero scanning rows then columns).  Dense; refuses above the cap.
std::int64_t rank_bareiss(const SparseIntColumns& m, std::int64_t dense_cap = 2000);

// Exact rank over Q.  Tries the mod-p certificate first: full rank mod p
// certifies full rank over Q.  Anything short of full falls back to Bareiss.
RankResult exact_rank(const SparseIntColumns& m, std::int64_t dense_cap = 2000);

}  // namespace atlas
