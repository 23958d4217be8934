#pragma once

#include <functional>
#include <vector>

#include "atlas/arith.hpp"
#include "atlas/permutation.hpp"

namespace atlas {

struct SignTriple {
  int row_sign;    // product of the n row permutation signs
  int col_sign;    // product of the n column permutation signs
  int total_sign;  // row_sign * col_sign
};

// An n x n array in which every row and every column is a permutation of
// {0, ..., n-1}.  Construction validates, so instances are always Latin.
class LatinSquare {
 public:
  LatinSquare(int n, std::vector<int> cells);  // row-major
  static LatinSquare from_rows(const std::vector<std::vector<int>>& rows);

  int n() const { return n_; }
  int at(int r, int c) const { return cells_[static_cast<std::size_t>(r * n_ + c)]; }
  const std::vector<int>& cells() const { return cells_; }

  Permutation row(int r) const;
  Permutation column(int c) const;
  SignTriple sign_data() const;

  LatinSquare transposed() const;
  // Applies a symbol relabelling: cell value v becomes relabel(v).
  LatinSquare relabeled(const Permutation& relabel) const;

  bool operator==(const LatinSquare&) const = default;

 private:
  int n_;
  std::vector<int> cells_;
};

// Joint sign census of all Latin squares of one order.
struct SignedCensus {
  int n = 0;
  Int total = 0;
  Int even = 0, odd = 0;          // by total_sign
  Int row_even = 0, row_odd = 0;  // by row_sign
  Int col_even = 0, col_odd = 0;  // by col_sign
  std::int64_t shard_count = 1;   // two-row prefixes the work was split into

  Int at_difference() const { return even - odd; }
  Int row_difference() const { return row_even - row_odd; }
  Int col_difference() const { return col_even - col_odd; }
};

// Order 6 sits behind allow_large (about 8.1e8 squares); order >= 7 is always
// refused (the next census is out of reach of exhaustive enumeration here).
struct LatinLimits {
  bool allow_large = false;
  int threads = 1;  // census only; 0 means hardware concurrency
};

// Visits every Latin square of order n once, in row-major lexicographic
// order of the cell array, and returns the count.  Serial.
Int enumerate_latin(int n, const std::function<void(const LatinSquare&)>& visit,
                    const LatinLimits& limits = {});

// Full sign census.  Parallelized over first-two-row prefixes; the result is
// reduced in fixed shard order and is independent of limits.threads.
SignedCensus latin_census(int n, const LatinLimits& limits = {});

Int at_difference(int n, const LatinLimits& limits = {});
Int row_difference(int n, const LatinLimits& limits = {});
Int col_difference(int n, const LatinLimits& limits = {});

// |even - odd| == |col_even - col_odd| for the same order.
bool huang_rota_verify(int n, const LatinLimits& limits = {});

// Coefficient of prod_{i,j} g[i][j] in det^n, computed by direct DFS over
// n-tuples of permutations with disjoint supports (never expanding det^n).
// Equals col_difference(n) exactly under this row convention.
Int det_power_coefficient(int n, const LatinLimits& limits = {});

}  // namespace atlas
