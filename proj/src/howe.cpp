#include "atlas/howe.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

#include "atlas/errors.hpp"

namespace atlas {

/***************************** SymBasisElement ******************************/

SymBasisElement::SymBasisElement(int dimv, std::vector<std::vector<std::uint16_t>> groups)
    : dimv_(dimv), groups_(std::move(groups)) {
  if (dimv_ < 1) throw ValidationError("dimV must be >= 1");
  if (groups_.empty()) throw ValidationError("outer degree must be >= 1");
  const std::size_t inner_deg = groups_.front().size();
  if (inner_deg == 0) throw ValidationError("inner degree must be >= 1");
  for (auto& g : groups_) {
    if (g.size() != inner_deg) throw ValidationError("inner degrees must agree");
    std::sort(g.begin(), g.end());
    for (auto v : g)
      if (v >= dimv_) throw ValidationError("variable index out of range");
  }
  std::sort(groups_.begin(), groups_.end());
}

std::string SymBasisElement::label() const {
  std::ostringstream out;
  for (const auto& g : groups_) {
    out << '(';
    std::size_t i = 0;
    while (i < g.size()) {
      std::size_t j = i;
      while (j < g.size() && g[j] == g[i]) ++j;
      if (i > 0) out << ' ';
      out << 'x' << (g[i] + 1);
      if (j - i > 1) out << '^' << (j - i);
      i = j;
    }
    out << ')';
  }
  return out.str();
}

/***************************** basis enumeration ****************************/

std::vector<std::vector<std::uint16_t>> inner_monomials(int dimv, int n) {
  if (dimv < 1 || n < 1) throw ValidationError("inner_monomials needs dimv >= 1 and n >= 1");
  std::vector<std::vector<std::uint16_t>> out;
  std::vector<std::uint16_t> cur(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == dimv - 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(i)];
  }
  return out;
}

Int sym_basis_count(int dimv, int d, int n) {
  if (dimv < 1 || d < 1 || n < 1) throw ValidationError("sym_basis_count needs positive arguments");
  const Int inner = binomial(static_cast<std::uint64_t>(dimv + n - 1), static_cast<std::uint64_t>(n));
  // C(inner + d - 1, d) without assuming it fits a machine word.
  Int num = 1;
  for (int i = 0; i < d; ++i) num *= inner + i;
  return num / factorial(static_cast<std::uint64_t>(d));
}

std::vector<SymBasisElement> sym_basis(int dimv, int d, int n, const HoweLimits& limits) {
  const Int count = sym_basis_count(dimv, d, n);
  if (count > limits.basis_cap)
    throw ResourceLimitError("basis of size " + count.get_str() + " exceeds the cap (" +
                             std::to_string(limits.basis_cap) + ")");
  const auto inner = inner_monomials(dimv, n);
  const int m = static_cast<int>(inner.size());
  std::vector<SymBasisElement> out;
  out.reserve(count.get_ui());
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    std::vector<std::vector<std::uint16_t>> groups;
    groups.reserve(static_cast<std::size_t>(d));
    for (int i : idx) groups.push_back(inner[static_cast<std::size_t>(i)]);
    out.emplace_back(dimv, std::move(groups));
    int i = d - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - 1) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < d; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(i)];
  }
  return out;
}

/*************************** reference symmetrization ***********************/

namespace {

Int word_count(const std::vector<std::uint16_t>& sorted_letters) {
  Int w = factorial(sorted_letters.size());
  std::size_t i = 0;
  while (i < sorted_letters.size()) {
    std::size_t j = i;
    while (j < sorted_letters.size() && sorted_letters[j] == sorted_letters[i]) ++j;
    w /= factorial(j - i);
    i = j;
  }
  return w;
}

struct ApplyDfs {
  int d, n, dimv;
  const std::vector<std::vector<std::uint16_t>>* groups = nullptr;
  std::vector<std::vector<std::uint16_t>> slots;
  std::map<SymBasisElement, long long> counts;

  void rec(int g) {
    if (g == d) {
      counts[SymBasisElement(dimv, slots)] += 1;
      return;
    }
    std::vector<std::uint16_t> w = (*groups)[static_cast<std::size_t>(g)];
    do {
      for (int k = 0; k < n; ++k) slots[static_cast<std::size_t>(k)].push_back(w[static_cast<std::size_t>(k)]);
      rec(g + 1);
      for (int k = 0; k < n; ++k) slots[static_cast<std::size_t>(k)].pop_back();
    } while (std::next_permutation(w.begin(), w.end()));
  }
};

}  // namespace

std::map<SymBasisElement, Rat> hdn_apply(const SymBasisElement& b, const HoweLimits& limits) {
  Int total = 1;
  for (const auto& g : b.groups()) total *= word_count(g);
  if (total > limits.word_cap)
    throw ResourceLimitError("word expansion of size " + total.get_str() + " exceeds the cap (" +
                             std::to_string(limits.word_cap) + ")");
  ApplyDfs dfs;
  dfs.d = b.d();
  dfs.n = b.n();
  dfs.dimv = b.dimv();
  dfs.groups = &b.groups();
  dfs.slots.resize(static_cast<std::size_t>(b.n()));
  dfs.rec(0);

  std::map<SymBasisElement, Rat> out;
  for (const auto& [elem, count] : dfs.counts) {
    Rat v(Int(static_cast<long>(count)), total);
    v.canonicalize();
    out.emplace(elem, v);
  }
  return out;
}

/*************************** matrix assembly ********************************/

namespace {

// dimV = 2 fast path.  Inner monomials are indexed by their count of x2, so
// a partially built column is summarized by the sorted profile of per-slot
// x2-counts; columns sharing a prefix share the whole profile distribution.
struct Dimv2Dfs {
  int d = 0, n = 0;
  const std::map<std::vector<std::uint8_t>, std::int32_t>* row_of_profile = nullptr;
  std::vector<std::vector<std::uint32_t>> masks_by_count;
  std::vector<std::vector<std::pair<std::int32_t, Rat>>> columns;
  std::vector<int> chosen;

  using StateMap = std::map<std::vector<std::uint8_t>, long long>;

  void run() {
    StateMap init;
    init.emplace(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0), 1);
    rec(0, 0, init);
  }

  void rec(int level, int min_i, const StateMap& states) {
    if (level == d) {
      emit(states);
      return;
    }
    for (int i = min_i; i <= n; ++i) {
      StateMap next;
      for (const auto& [profile, ways] : states) {
        for (std::uint32_t mask : masks_by_count[static_cast<std::size_t>(i)]) {
          std::vector<std::uint8_t> np = profile;
          for (int bpos = 0; bpos < n; ++bpos)
            if ((mask >> bpos) & 1) ++np[static_cast<std::size_t>(bpos)];
          std::sort(np.begin(), np.end());
          next[np] += ways;
        }
      }
      chosen.push_back(i);
      rec(level + 1, i, next);
      chosen.pop_back();
    }
  }

  void emit(const StateMap& states) {
    long long denom = 1;
    for (int i : chosen) {
      long long b = 1;
      for (int t = 0; t < i; ++t) b = b * (n - t) / (t + 1);
      denom *= b;
    }
    std::vector<std::pair<std::int32_t, Rat>> col;
    col.reserve(states.size());
    for (const auto& [profile, ways] : states) {
      Rat v(Int(static_cast<long>(ways)), Int(static_cast<long>(denom)));
      v.canonicalize();
      col.emplace_back(row_of_profile->at(profile), v);
    }
    std::sort(col.begin(), col.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    columns.push_back(std::move(col));
  }
};

}  // namespace

ExactLinearMap hdn_matrix(int dimv, int d, int n, const HoweLimits& limits) {
  ExactLinearMap map;
  map.dimv = dimv;
  map.d = d;
  map.n = n;
  map.domain_basis = sym_basis(dimv, d, n, limits);
  map.codomain_basis = sym_basis(dimv, n, d, limits);

  if (dimv == 2) {
    Dimv2Dfs dfs;
    dfs.d = d;
    dfs.n = n;
    dfs.masks_by_count.resize(static_cast<std::size_t>(n) + 1);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
      dfs.masks_by_count[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
    std::map<std::vector<std::uint8_t>, std::int32_t> row_of_profile;
    for (std::size_t r = 0; r < map.codomain_basis.size(); ++r) {
      std::vector<std::uint8_t> profile;
      profile.reserve(map.codomain_basis[r].groups().size());
      for (const auto& g : map.codomain_basis[r].groups())
        profile.push_back(static_cast<std::uint8_t>(std::count(g.begin(), g.end(), 1)));
      row_of_profile.emplace(std::move(profile), static_cast<std::int32_t>(r));
    }
    dfs.row_of_profile = &row_of_profile;
    dfs.run();
    if (dfs.columns.size() != map.domain_basis.size())
      throw InconsistencyError("dimV=2 assembly emitted a wrong column count");
    map.columns = std::move(dfs.columns);
    return map;
  }

  std::map<SymBasisElement, std::int32_t> row_index;
  for (std::size_t r = 0; r < map.codomain_basis.size(); ++r)
    row_index.emplace(map.codomain_basis[r], static_cast<std::int32_t>(r));
  map.columns.reserve(map.domain_basis.size());
  for (const auto& b : map.domain_basis) {
    std::vector<std::pair<std::int32_t, Rat>> col;
    for (const auto& [elem, v] : hdn_apply(b, limits)) col.emplace_back(row_index.at(elem), v);
    // std::map iteration is already sorted by element, which matches row order.
    map.columns.push_back(std::move(col));
  }
  return map;
}

/*************************** weight-zero restriction ************************/

namespace {

Int partition_count(int total, int blocks, int block_size) {
  Int c = factorial(static_cast<std::uint64_t>(total));
  for (int i = 0; i < blocks; ++i) c /= factorial(static_cast<std::uint64_t>(block_size));
  return c / factorial(static_cast<std::uint64_t>(blocks));
}

// Set partitions of {0,...,total-1} into equal blocks, emitted in canonical
// (lexicographic on sorted-block lists) order: each new block is led by the
// smallest unused element, partners chosen in ascending combinations.
struct PartitionGen {
  int block_size = 0, dimv = 0;
  std::vector<std::vector<std::uint16_t>> cur;
  std::vector<SymBasisElement>* out = nullptr;

  void rec(std::vector<std::uint16_t>& avail) {
    if (avail.empty()) {
      out->emplace_back(dimv, cur);
      return;
    }
    std::vector<std::uint16_t> block{avail.front()};
    std::vector<std::uint16_t> rest(avail.begin() + 1, avail.end());
    choose(rest, block, 0);
  }

  void choose(const std::vector<std::uint16_t>& rest, std::vector<std::uint16_t>& block,
              std::size_t start) {
    if (static_cast<int>(block.size()) == block_size) {
      std::vector<std::uint16_t> remaining;
      remaining.reserve(rest.size() - block.size() + 1);
      std::size_t bi = 1;  // block[0] is not in rest
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (bi < block.size() && rest[i] == block[bi]) {
          ++bi;
          continue;
        }
        remaining.push_back(rest[i]);
      }
      cur.push_back(block);
      rec(remaining);
      cur.pop_back();
      return;
    }
    const std::size_t need = static_cast<std::size_t>(block_size) - block.size();
    for (std::size_t i = start; i + need <= rest.size(); ++i) {
      block.push_back(rest[i]);
      choose(rest, block, i + 1);
      block.pop_back();
    }
  }
};

std::vector<SymBasisElement> equal_block_partitions(int blocks, int block_size) {
  PartitionGen gen;
  gen.block_size = block_size;
  gen.dimv = blocks * block_size;
  std::vector<SymBasisElement> out;
  gen.out = &out;
  std::vector<std::uint16_t> avail(static_cast<std::size_t>(blocks * block_size));
  std::iota(avail.begin(), avail.end(), static_cast<std::uint16_t>(0));
  gen.rec(avail);
  return out;
}

}  // namespace

ExactLinearMap weight_zero_matrix(int d, int n, const HoweLimits& limits) {
  if (d < 1 || n < 1) throw ValidationError("weight_zero_matrix needs d >= 1 and n >= 1");
  const Int dom_count = partition_count(d * n, d, n);
  const Int cod_count = partition_count(d * n, n, d);
  if (dom_count > limits.basis_cap || cod_count > limits.basis_cap)
    throw ResourceLimitError("weight-zero basis of size " +
                             (dom_count > cod_count ? dom_count : cod_count).get_str() +
                             " exceeds the cap (" + std::to_string(limits.basis_cap) + ")");
  Int per_column = 1;
  for (int i = 0; i < d; ++i) per_column *= factorial(static_cast<std::uint64_t>(n));
  if (dom_count * per_column > limits.word_cap)
    throw ResourceLimitError("weight-zero expansion exceeds the word cap");

  ExactLinearMap map;
  map.dimv = d * n;
  map.d = d;
  map.n = n;
  map.weight_zero = true;
  map.domain_basis = equal_block_partitions(d, n);
  map.codomain_basis = equal_block_partitions(n, d);
  if (Int(static_cast<long>(map.domain_basis.size())) != dom_count ||
      Int(static_cast<long>(map.codomain_basis.size())) != cod_count)
    throw InconsistencyError("partition enumeration disagrees with the closed-form count");

  std::map<SymBasisElement, std::int32_t> row_index;
  for (std::size_t r = 0; r < map.codomain_basis.size(); ++r)
    row_index.emplace(map.codomain_basis[r], static_cast<std::int32_t>(r));
  map.columns.reserve(map.domain_basis.size());
  for (const auto& b : map.domain_basis) {
    std::vector<std::pair<std::int32_t, Rat>> col;
    for (const auto& [elem, v] : hdn_apply(b, limits)) col.emplace_back(row_index.at(elem), v);
    map.columns.push_back(std::move(col));
  }
  return map;
}

/*************************** serialization and rank *************************/

std::string ExactLinearMap::to_triplet_text() const {
  std::ostringstream out;
  out << "symmetrization-map dimv=" << dimv << " d=" << d << " n=" << n
      << " weight_zero=" << (weight_zero ? 1 : 0) << '\n';
  out << "domain " << domain_basis.size() << '\n';
  for (std::size_t j = 0; j < domain_basis.size(); ++j)
    out << j << ' ' << domain_basis[j].label() << '\n';
  out << "codomain " << codomain_basis.size() << '\n';
  for (std::size_t i = 0; i < codomain_basis.size(); ++i)
    out << i << ' ' << codomain_basis[i].label() << '\n';
  std::size_t nnz = 0;
  for (const auto& col : columns) nnz += col.size();
  out << "entries " << nnz << '\n';
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [r, v] : columns[j]) out << r << ' ' << j << ' ' << v.get_str() << '\n';
  return out.str();
}

RankReport rank_report(const ExactLinearMap& map, const HoweLimits& limits) {
  SparseIntColumns s;
  s.rows = static_cast<std::int64_t>(map.codomain_basis.size());
  s.columns.resize(map.columns.size());
  for (std::size_t j = 0; j < map.columns.size(); ++j) {
    Int scale = 1;
    for (const auto& [r, v] : map.columns[j])
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den().get_mpz_t());
    for (const auto& [r, v] : map.columns[j])
      s.columns[j].emplace_back(r, Int(v.get_num() * (scale / v.get_den())));
  }
  const RankResult res = exact_rank(s, limits.dense_rank_cap);
  RankReport report;
  report.domain_dim = static_cast<std::int64_t>(map.domain_basis.size());
  report.codomain_dim = static_cast<std::int64_t>(map.codomain_basis.size());
  report.rank = res.rank;
  report.injective = res.rank == report.domain_dim;
  report.surjective = res.rank == report.codomain_dim;
  report.method = res.method;
  return report;
}

/*************************** invariant evaluation ***************************/

namespace {

// Online column elimination for one determinant factor: push columns one at
// a time, reducing against earlier pivots; a column reducing to zero kills
// the whole branch.  det() reads off pivots times the pivot-row permutation
// sign once all d columns are in.
struct Elim {
  int d = 0;
  std::vector<std::vector<Rat>> red;
  std::vector<int> piv;

  bool push(const std::vector<Rat>& col) {
    std::vector<Rat> v = col;
    for (std::size_t t = 0; t < red.size(); ++t) {
      const Rat head = v[static_cast<std::size_t>(piv[t])];
      if (head != 0) {
        const Rat f = head / red[t][static_cast<std::size_t>(piv[t])];
        for (int r = 0; r < d; ++r) v[static_cast<std::size_t>(r)] -= f * red[t][static_cast<std::size_t>(r)];
      }
    }
    int p = -1;
    for (int r = 0; r < d; ++r)
      if (v[static_cast<std::size_t>(r)] != 0) {
        p = r;
        break;
      }
    if (p < 0) return false;
    red.push_back(std::move(v));
    piv.push_back(p);
    return true;
  }

  void pop() {
    red.pop_back();
    piv.pop_back();
  }

  Rat det() const {
    Rat prod = 1;
    int inversions = 0;
    for (std::size_t t = 0; t < red.size(); ++t) {
      prod *= red[t][static_cast<std::size_t>(piv[t])];
      for (std::size_t s = 0; s < t; ++s)
        if (piv[s] > piv[t]) ++inversions;
    }
    return (inversions % 2) ? Rat(-prod) : prod;
  }
};

}  // namespace

Rat eval_p(const std::vector<std::vector<std::vector<Rat>>>& groups, bool allow_odd) {
  const int d = static_cast<int>(groups.size());
  if (d < 1) throw ValidationError("eval_p needs at least one group");
  const int n = static_cast<int>(groups.front().size());
  if (n < 1) throw ValidationError("eval_p groups must be nonempty");
  for (const auto& g : groups) {
    if (static_cast<int>(g.size()) != n) throw ValidationError("all groups must hold n vectors");
    for (const auto& v : g)
      if (static_cast<int>(v.size()) != d)
        throw ValidationError("vectors must have dimension d (one per group)");
  }
  if (n % 2 == 1 && !allow_odd)
    throw ValidationError("odd inner degree gives an alternating (non-symmetric) sum; pass allow_odd");
  Int cost = 1;
  for (int i = 0; i < d; ++i) cost *= factorial(static_cast<std::uint64_t>(n));
  if (cost > 10'000'000)
    throw ResourceLimitError("eval_p DFS over " + cost.get_str() + " assignments exceeds the budget");

  std::vector<Elim> factors(static_cast<std::size_t>(n));
  for (auto& f : factors) f.d = d;
  Rat acc = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i == d) {
      Rat prod = 1;
      for (const auto& f : factors) prod *= f.det();
      acc += prod;
      return;
    }
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      int pushed = 0;
      bool alive = true;
      for (int k = 0; k < n; ++k) {
        if (!factors[static_cast<std::size_t>(k)].push(
                groups[static_cast<std::size_t>(i)][static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])])) {
          alive = false;
          break;
        }
        ++pushed;
      }
      if (alive) rec(i + 1);
      for (int k = 0; k < pushed; ++k) factors[static_cast<std::size_t>(k)].pop();
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  };
  rec(0);
  return acc;
}

Int p_on_power(int n, bool allow_odd) {
  if (n < 1) throw ValidationError("p_on_power needs n >= 1");
  if (n % 2 == 1 && !allow_odd)
    throw ValidationError("odd n gives the zero invariant; pass allow_odd to evaluate the sum anyway");
  if (n > 5)
    throw ResourceLimitError("p_on_power beyond n = 5 exceeds the exhaustive DFS budget");

  // Nonvanishing assignments are Latin squares L[i][k] = sigma_i(k); each
  // contributes the product of its column signs.
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> col_mask(static_cast<std::size_t>(n), 0);
  long long acc = 0;
  int col_parity = 0;
  std::function<void(int, int, std::uint32_t)> cell = [&](int i, int k, std::uint32_t row_mask) {
    if (k == n) {
      if (i + 1 == n)
        acc += col_parity ? -1 : 1;
      else
        cell(i + 1, 0, 0u);
      return;
    }
    std::uint32_t avail = full & ~(row_mask | col_mask[static_cast<std::size_t>(k)]);
    while (avail) {
      const std::uint32_t bit = avail & (avail ^ (avail - 1));
      avail &= avail - 1;
      const std::uint32_t above = full & ~(bit | (bit - 1));
      const int dc = std::popcount(col_mask[static_cast<std::size_t>(k)] & above) & 1;
      col_mask[static_cast<std::size_t>(k)] |= bit;
      col_parity ^= dc;
      cell(i, k + 1, row_mask | bit);
      col_parity ^= dc;
      col_mask[static_cast<std::size_t>(k)] &= ~bit;
    }
  };
  cell(0, 0, 0u);
  return Int(static_cast<long>(acc));
}

/*************************** determinant invariant **************************/

std::vector<SymBasisElement> weight_zero_power_basis(int n, const HoweLimits& limits) {
  if (n < 1) throw ValidationError("weight_zero_power_basis needs n >= 1");
  const auto inner = inner_monomials(n, n);
  std::vector<SymBasisElement> out;
  std::vector<int> content(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<std::uint16_t>> groups;
  std::function<void(int)> rec = [&](int min_i) {
    if (static_cast<int>(groups.size()) == n) {
      // Each variable's content is capped at n and the grand total is n*n,
      // so hitting full depth forces content == (n, ..., n).
      out.emplace_back(n, groups);
      if (static_cast<std::int64_t>(out.size()) > limits.basis_cap)
        throw ResourceLimitError("weight-zero power basis exceeds the cap");
      return;
    }
    for (int i = min_i; i < static_cast<int>(inner.size()); ++i) {
      bool ok = true;
      for (auto v : inner[static_cast<std::size_t>(i)]) {
        if (++content[v] > n) ok = false;
      }
      if (ok) {
        groups.push_back(inner[static_cast<std::size_t>(i)]);
        rec(i);
        groups.pop_back();
      }
      for (auto v : inner[static_cast<std::size_t>(i)]) --content[v];
    }
  };
  rec(0);
  return out;
}

namespace {

// Signed count of word tuples: pick one distinct-letter word per group; the
// k-th letters of the d words must form a permutation, contributing its sign.
long long signed_word_tuples(const SymBasisElement& b) {
  const int d = b.d(), n = b.n();
  std::vector<std::uint32_t> slot_mask(static_cast<std::size_t>(n), 0);
  int parity = 0;
  long long acc = 0;
  std::function<void(int)> rec = [&](int g) {
    if (g == d) {
      acc += parity ? -1 : 1;
      return;
    }
    std::vector<std::uint16_t> w = b.groups()[static_cast<std::size_t>(g)];
    do {
      int pushed = 0;
      bool alive = true;
      std::array<int, 8> flips{};
      for (int k = 0; k < n; ++k) {
        const std::uint32_t bit = 1u << w[static_cast<std::size_t>(k)];
        std::uint32_t& mask = slot_mask[static_cast<std::size_t>(k)];
        if (mask & bit) {
          alive = false;
          break;
        }
        const std::uint32_t above = ~(bit | (bit - 1));
        const int dp = std::popcount(mask & above) & 1;
        mask |= bit;
        parity ^= dp;
        flips[static_cast<std::size_t>(pushed)] = dp;
        ++pushed;
      }
      if (alive) rec(g + 1);
      for (int k = pushed - 1; k >= 0; --k) {
        parity ^= flips[static_cast<std::size_t>(k)];
        slot_mask[static_cast<std::size_t>(k)] &= ~(1u << w[static_cast<std::size_t>(k)]);
      }
    } while (std::next_permutation(w.begin(), w.end()));
  };
  rec(0);
  return acc;
}

}  // namespace

std::vector<std::pair<SymBasisElement, Int>> pstar_coefficients(int n, const HoweLimits& limits) {
  if (n < 1) throw ValidationError("pstar_coefficients needs n >= 1");
  if (n % 2 == 1) throw ValidationError("the invariant vanishes identically for odd n");
  if (n > 4) throw ResourceLimitError("pstar_coefficients beyond n = 4 exceeds the DFS budget");
  const auto basis = weight_zero_power_basis(n, limits);
  std::vector<std::pair<SymBasisElement, Int>> out;
  out.reserve(basis.size());
  for (const auto& b : basis) {
    Int words = 1;
    for (const auto& g : b.groups()) words *= word_count(g);
    if (words > limits.word_cap) throw ResourceLimitError("coefficient expansion exceeds the word cap");
    out.emplace_back(b, Int(static_cast<long>(signed_word_tuples(b))));
  }
  return out;
}

}  // namespace atlas
