#include "atlas/rank.hpp"

#include <algorithm>

#include "atlas/errors.hpp"

namespace atlas {

namespace {

constexpr std::uint64_t kP = (std::uint64_t{1} << 61) - 1;  // Mersenne prime

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kP);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, b);
    b = mul_mod(b, b);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kP - 2); }

std::uint64_t reduce_mod_p(const Int& v) {
  // mpz_fdiv_ui returns the nonnegative remainder of |floor division|.
  return mpz_fdiv_ui(v.get_mpz_t(), kP);
}

}  // namespace

std::int64_t rank_mod_p(const SparseIntColumns& m) {
  const std::int64_t rows = m.rows, cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  // Dense row-major working copy.
  std::vector<std::uint64_t> a(static_cast<std::size_t>(rows * cols), 0);
  for (std::int64_t j = 0; j < cols; ++j)
    for (const auto& [r, v] : m.columns[static_cast<std::size_t>(j)])
      a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
        static_cast<std::size_t>(j)] = reduce_mod_p(v);

  std::int64_t rank = 0;
  for (std::int64_t c = 0; c < cols && rank < rows; ++c) {
    std::int64_t pivot = -1;
    for (std::int64_t r = rank; r < rows; ++r) {
      if (a[static_cast<std::size_t>(r * cols + c)] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank)
      std::swap_ranges(a.begin() + pivot * cols, a.begin() + (pivot + 1) * cols,
                       a.begin() + rank * cols);
    const std::uint64_t inv = inv_mod(a[static_cast<std::size_t>(rank * cols + c)]);
    for (std::int64_t r = rank + 1; r < rows; ++r) {
      std::uint64_t& head = a[static_cast<std::size_t>(r * cols + c)];
      if (head == 0) continue;
      const std::uint64_t f = mul_mod(head, inv);
      head = 0;
      const std::size_t src = static_cast<std::size_t>(rank * cols);
      const std::size_t dst = static_cast<std::size_t>(r * cols);
      for (std::int64_t k = c + 1; k < cols; ++k) {
        const std::uint64_t sub = mul_mod(f, a[src + static_cast<std::size_t>(k)]);
        std::uint64_t& cell = a[dst + static_cast<std::size_t>(k)];
        cell = (cell >= sub) ? cell - sub : cell + kP - sub;
      }
    }
    ++rank;
  }
  return rank;
}

std::int64_t rank_bareiss(const SparseIntColumns& m, std::int64_t dense_cap) {
  const std::int64_t rows = m.rows, cols = m.cols();
  if (rows > dense_cap || cols > dense_cap)
    throw ResourceLimitError("matrix exceeds the dense elimination cap (" +
                             std::to_string(dense_cap) + ")");
  if (rows == 0 || cols == 0) return 0;
  std::vector<std::vector<Int>> a(static_cast<std::size_t>(rows),
                                  std::vector<Int>(static_cast<std::size_t>(cols), 0));
  for (std::int64_t j = 0; j < cols; ++j)
    for (const auto& [r, v] : m.columns[static_cast<std::size_t>(j)])
      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = v;

  Int prev = 1;
  std::int64_t rank = 0;
  for (std::int64_t c = 0; c < cols && rank < rows; ++c) {
    std::int64_t pivot = -1;
    for (std::int64_t r = rank; r < rows; ++r) {
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(rank)]);
    const auto& prow = a[static_cast<std::size_t>(rank)];
    for (std::int64_t r = rank + 1; r < rows; ++r) {
      // The update applies to every lower row, including those with a zero
      // head entry: Bareiss rescales by pivot/prev, not just eliminates.
      auto& row = a[static_cast<std::size_t>(r)];
      const Int head = row[static_cast<std::size_t>(c)];
      for (std::int64_t k = c + 1; k < cols; ++k) {
        Int t = prow[static_cast<std::size_t>(c)] * row[static_cast<std::size_t>(k)] -
                head * prow[static_cast<std::size_t>(k)];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        row[static_cast<std::size_t>(k)] = std::move(t);
      }
      row[static_cast<std::size_t>(c)] = 0;
    }
    prev = prow[static_cast<std::size_t>(c)];
    ++rank;
  }
  return rank;
}

RankResult exact_rank(const SparseIntColumns& m, std::int64_t dense_cap) {
  const std::int64_t full = std::min(m.rows, m.cols());
  const std::int64_t modp = rank_mod_p(m);
  if (modp == full) return RankResult{modp, "modp-certified-full"};
  return RankResult{rank_bareiss(m, dense_cap), "bareiss"};
}

}  // namespace atlas
