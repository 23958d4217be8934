#include "atlas/latin.hpp"

#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <string>
#include <thread>

#include "atlas/errors.hpp"

namespace atlas {

/**************************** LatinSquare ***********************************/

LatinSquare::LatinSquare(int n, std::vector<int> cells) : n_(n), cells_(std::move(cells)) {
  if (n < 1) throw ValidationError("latin square order must be >= 1");
  if (cells_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw ValidationError("latin square cell array has wrong size");
  for (int r = 0; r < n; ++r) {
    std::uint64_t seen = 0;
    for (int c = 0; c < n; ++c) {
      int v = at(r, c);
      if (v < 0 || v >= n || (seen >> v) & 1)
        throw ValidationError("row " + std::to_string(r) + " is not a permutation");
      seen |= std::uint64_t{1} << v;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::uint64_t seen = 0;
    for (int r = 0; r < n; ++r) {
      int v = at(r, c);
      if ((seen >> v) & 1)
        throw ValidationError("column " + std::to_string(c) + " is not a permutation");
      seen |= std::uint64_t{1} << v;
    }
  }
}

LatinSquare LatinSquare::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw ValidationError("ragged row list");
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return LatinSquare(n, std::move(cells));
}

Permutation LatinSquare::row(int r) const {
  std::vector<int> img(cells_.begin() + static_cast<std::ptrdiff_t>(r) * n_,
                       cells_.begin() + static_cast<std::ptrdiff_t>(r + 1) * n_);
  return Permutation(std::move(img));
}

Permutation LatinSquare::column(int c) const {
  std::vector<int> img(static_cast<std::size_t>(n_));
  for (int r = 0; r < n_; ++r) img[static_cast<std::size_t>(r)] = at(r, c);
  return Permutation(std::move(img));
}

SignTriple LatinSquare::sign_data() const {
  int rs = 1, cs = 1;
  for (int i = 0; i < n_; ++i) {
    rs *= row(i).sign();
    cs *= column(i).sign();
  }
  return SignTriple{rs, cs, rs * cs};
}

LatinSquare LatinSquare::transposed() const {
  std::vector<int> cells(cells_.size());
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) cells[static_cast<std::size_t>(c * n_ + r)] = at(r, c);
  return LatinSquare(n_, std::move(cells));
}

LatinSquare LatinSquare::relabeled(const Permutation& relabel) const {
  if (relabel.n() != n_) throw ValidationError("relabelling has wrong size");
  std::vector<int> cells(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) cells[i] = relabel(cells_[i]);
  return LatinSquare(n_, std::move(cells));
}

/**************************** enumeration core ******************************/

namespace {

constexpr int kMaxOrder = 6;

void check_order(int n, const LatinLimits& limits) {
  if (n < 1) throw ValidationError("order must be >= 1");
  if (n > kMaxOrder)
    throw ResourceLimitError("order " + std::to_string(n) +
                             " exceeds the exhaustive-enumeration limit (6)");
  if (n == kMaxOrder && !limits.allow_large)
    throw ResourceLimitError("order 6 enumerates ~8.1e8 squares; pass allow_large to proceed");
}

// Cell-by-cell backtracking with per-column used-symbol masks.  Row and
// column inversion parities are maintained incrementally: placing symbol s
// flips the row (column) parity by the number of already-placed symbols
// greater than s in that row (column).  Symbols are tried in increasing
// order, so leaves appear in row-major lexicographic order of the array.
template <typename LeafFn>
class Backtracker {
 public:
  Backtracker(int n, LeafFn leaf) : n_(n), full_((1u << n) - 1), leaf_(std::move(leaf)) {}

  std::array<int, kMaxOrder * kMaxOrder> cells{};
  std::array<std::uint32_t, kMaxOrder> col_mask{};
  int row_parity = 0;  // parity of the sum of row inversion counts so far
  int col_parity = 0;

  void run(int start_row) {
    if (start_row == n_) {
      leaf_(*this);
      return;
    }
    descend(start_row, 0, 0u);
  }

 private:
  void descend(int r, int c, std::uint32_t row_mask) {
    if (c == n_) {
      run(r + 1);
      return;
    }
    std::uint32_t avail = full_ & ~(row_mask | col_mask[static_cast<std::size_t>(c)]);
    while (avail) {
      const int s = std::countr_zero(avail);
      const std::uint32_t bit = avail & (avail ^ (avail - 1));
      avail &= avail - 1;
      const std::uint32_t above = full_ & ~(bit | (bit - 1));
      const int dr = std::popcount(row_mask & above) & 1;
      const int dc = std::popcount(col_mask[static_cast<std::size_t>(c)] & above) & 1;
      cells[static_cast<std::size_t>(r * n_ + c)] = s;
      col_mask[static_cast<std::size_t>(c)] |= bit;
      row_parity ^= dr;
      col_parity ^= dc;
      descend(r, c + 1, row_mask | bit);
      col_parity ^= dc;
      row_parity ^= dr;
      col_mask[static_cast<std::size_t>(c)] &= ~bit;
    }
  }

  int n_;
  std::uint32_t full_;
  LeafFn leaf_;
};

// Counts indexed by [row_parity][col_parity]; uint64 suffices through n = 6.
struct ParityCounts {
  std::uint64_t c[2][2] = {{0, 0}, {0, 0}};
  void accumulate(const ParityCounts& o) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) c[a][b] += o.c[a][b];
  }
};

struct Prefix {
  std::array<std::int8_t, 2 * kMaxOrder> cells;
  std::int8_t row_parity, col_parity;
};

// Census shards are the legal first-two-row states.  The full Backtracker
// cannot stop early, so this small DFS mirrors its parity bookkeeping over
// rows 0 and 1 only, emitting prefixes in the same lexicographic order.
void prefix_dfs(int n, int r, int c, std::uint32_t row_mask,
                std::array<std::uint32_t, kMaxOrder>& col_mask,
                std::array<std::int8_t, 2 * kMaxOrder>& cells, int rp, int cp,
                std::vector<Prefix>& out) {
  if (c == n) {
    if (r == 1) {
      Prefix p{};
      p.cells = cells;
      p.row_parity = static_cast<std::int8_t>(rp);
      p.col_parity = static_cast<std::int8_t>(cp);
      out.push_back(p);
    } else {
      prefix_dfs(n, r + 1, 0, 0u, col_mask, cells, rp, cp, out);
    }
    return;
  }
  const std::uint32_t full = (1u << n) - 1;
  std::uint32_t avail = full & ~(row_mask | col_mask[static_cast<std::size_t>(c)]);
  while (avail) {
    const int s = std::countr_zero(avail);
    const std::uint32_t bit = 1u << s;
    avail &= avail - 1;
    const std::uint32_t above = full & ~(bit | (bit - 1));
    const int dr = std::popcount(row_mask & above) & 1;
    const int dc = std::popcount(col_mask[static_cast<std::size_t>(c)] & above) & 1;
    cells[static_cast<std::size_t>(r * n + c)] = static_cast<std::int8_t>(s);
    col_mask[static_cast<std::size_t>(c)] |= bit;
    prefix_dfs(n, r, c + 1, row_mask | bit, col_mask, cells, rp ^ dr, cp ^ dc, out);
    col_mask[static_cast<std::size_t>(c)] &= ~bit;
  }
}

std::vector<Prefix> collect_prefixes(int n) {
  std::vector<Prefix> out;
  std::array<std::uint32_t, kMaxOrder> col_mask{};
  std::array<std::int8_t, 2 * kMaxOrder> cells{};
  prefix_dfs(n, 0, 0, 0u, col_mask, cells, 0, 0, out);
  return out;
}

ParityCounts census_of_prefix(int n, const Prefix& p) {
  ParityCounts counts;
  auto leaf = [&counts](auto& b) {
    ++counts.c[b.row_parity][b.col_parity];
  };
  Backtracker bt(n, leaf);
  for (int i = 0; i < 2 * n; ++i) {
    const int s = p.cells[static_cast<std::size_t>(i)];
    bt.cells[static_cast<std::size_t>(i)] = s;
    bt.col_mask[static_cast<std::size_t>(i % n)] |= 1u << s;
  }
  bt.row_parity = p.row_parity;
  bt.col_parity = p.col_parity;
  bt.run(2);
  return counts;
}

SignedCensus census_from_counts(int n, const ParityCounts& counts) {
  SignedCensus sc;
  sc.n = n;
  for (int rp = 0; rp < 2; ++rp)
    for (int cp = 0; cp < 2; ++cp) {
      const Int v(static_cast<unsigned long>(counts.c[rp][cp]));
      sc.total += v;
      ((rp ^ cp) ? sc.odd : sc.even) += v;
      (rp ? sc.row_odd : sc.row_even) += v;
      (cp ? sc.col_odd : sc.col_even) += v;
    }
  return sc;
}

}  // namespace

/**************************** public operations *****************************/

Int enumerate_latin(int n, const std::function<void(const LatinSquare&)>& visit,
                    const LatinLimits& limits) {
  check_order(n, limits);
  std::uint64_t count = 0;
  auto leaf = [&](auto& b) {
    ++count;
    if (visit)
      visit(LatinSquare(
          n, std::vector<int>(b.cells.begin(), b.cells.begin() + static_cast<std::ptrdiff_t>(n) *
                                                                     static_cast<std::ptrdiff_t>(n))));
  };
  Backtracker bt(n, leaf);
  bt.run(0);
  return Int(static_cast<unsigned long>(count));
}

SignedCensus latin_census(int n, const LatinLimits& limits) {
  check_order(n, limits);
  if (n < 3) {
    ParityCounts counts;
    auto leaf = [&counts](auto& b) { ++counts.c[b.row_parity][b.col_parity]; };
    Backtracker bt(n, leaf);
    bt.run(0);
    return census_from_counts(n, counts);
  }

  const std::vector<Prefix> prefixes = collect_prefixes(n);
  int threads = limits.threads;
  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min<int>(threads, static_cast<int>(prefixes.size()));

  std::vector<ParityCounts> per_thread(static_cast<std::size_t>(threads));
  std::atomic<std::size_t> next{0};
  auto work = [&](int t) {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= prefixes.size()) break;
      per_thread[static_cast<std::size_t>(t)].accumulate(census_of_prefix(n, prefixes[k]));
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  // uint64 sums cannot overflow through n = 6, so the reduction below is
  // exact and independent of how shards were interleaved across threads.
  ParityCounts counts;
  for (const auto& pc : per_thread) counts.accumulate(pc);
  SignedCensus sc = census_from_counts(n, counts);
  sc.shard_count = static_cast<std::int64_t>(prefixes.size());
  return sc;
}

Int at_difference(int n, const LatinLimits& limits) { return latin_census(n, limits).at_difference(); }
Int row_difference(int n, const LatinLimits& limits) {
  return latin_census(n, limits).row_difference();
}
Int col_difference(int n, const LatinLimits& limits) {
  return latin_census(n, limits).col_difference();
}

bool huang_rota_verify(int n, const LatinLimits& limits) {
  const SignedCensus sc = latin_census(n, limits);
  return abs(sc.at_difference()) == abs(sc.col_difference());
}

/************************ det-power coefficient DFS *************************/

namespace {

// Enumerates n-tuples (sigma_1, ..., sigma_n) of permutations whose graphs
// {(i, sigma_k(i))} partition the n x n cell grid, accumulating the product
// of signs.  Such tuples are exactly the multilinear monomials of det^n that
// survive on prod g[i][j].
struct DetPowerDfs {
  int n;
  std::uint32_t full;
  std::array<std::uint32_t, kMaxOrder> used{};  // used[i]: columns consumed in row i
  long long acc = 0;

  void tuple(int k, int parity) {
    if (k == n) {
      acc += parity ? -1 : 1;
      return;
    }
    cell(k, 0, 0u, parity);
  }

  // Choose sigma_k(i) = j over rows i; cur_mask holds sigma_k's used columns.
  void cell(int k, int i, std::uint32_t cur_mask, int parity) {
    if (i == n) {
      tuple(k + 1, parity);
      return;
    }
    std::uint32_t avail = full & ~(cur_mask | used[static_cast<std::size_t>(i)]);
    while (avail) {
      const int j = std::countr_zero(avail);
      const std::uint32_t bit = 1u << j;
      avail &= avail - 1;
      const std::uint32_t above = full & ~(bit | (bit - 1));
      const int dp = std::popcount(cur_mask & above) & 1;
      used[static_cast<std::size_t>(i)] |= bit;
      cell(k, i + 1, cur_mask | bit, parity ^ dp);
      used[static_cast<std::size_t>(i)] &= ~bit;
    }
  }
};

}  // namespace

Int det_power_coefficient(int n, const LatinLimits& limits) {
  check_order(n, limits);
  DetPowerDfs dfs;
  dfs.n = n;
  dfs.full = (1u << n) - 1;
  dfs.tuple(0, 0);
  return Int(static_cast<long>(dfs.acc));
}

}  // namespace atlas
