#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "atlas/errors.hpp"
#include "atlas/howe.hpp"
#include "atlas/latin.hpp"
#include "atlas/rank.hpp"

using namespace atlas;

namespace {

using Groups = std::vector<std::vector<std::uint16_t>>;

// (x1^n)(x2^n)...(xd^n) on d variables.
SymBasisElement power_of_variables(int d, int n) {
  Groups g;
  for (int i = 0; i < d; ++i)
    g.emplace_back(std::vector<std::uint16_t>(static_cast<std::size_t>(n),
                                              static_cast<std::uint16_t>(i)));
  return SymBasisElement(d, std::move(g));
}

// Letter content of an element: how often each variable occurs overall.
std::vector<int> content(const SymBasisElement& b) {
  std::vector<int> c(static_cast<std::size_t>(b.dimv()), 0);
  for (const auto& g : b.groups())
    for (auto v : g) ++c[v];
  return c;
}

SparseIntColumns dense_to_sparse(const std::vector<std::vector<long>>& rows) {
  SparseIntColumns m;
  m.rows = static_cast<std::int64_t>(rows.size());
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  m.columns.resize(cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i][j] != 0) m.columns[j].emplace_back(static_cast<std::int32_t>(i), Int(rows[i][j]));
  return m;
}

}  // namespace

TEST_CASE("inner monomials are lexicographic with x1^n first") {
  auto ms = inner_monomials(2, 3);
  REQUIRE(ms.size() == 4);
  CHECK(ms[0] == std::vector<std::uint16_t>{0, 0, 0});
  CHECK(ms[1] == std::vector<std::uint16_t>{0, 0, 1});
  CHECK(ms[2] == std::vector<std::uint16_t>{0, 1, 1});
  CHECK(ms[3] == std::vector<std::uint16_t>{1, 1, 1});
  CHECK(inner_monomials(3, 2).size() == 6);
}

TEST_CASE("basis element normalizes its nested multisets") {
  SymBasisElement b(2, {{1, 0}, {0, 0}});
  CHECK(b.groups() == Groups{{0, 0}, {0, 1}});
  CHECK(b.label() == "(x1^2)(x1 x2)");
  CHECK(b.d() == 2);
  CHECK(b.n() == 2);
  CHECK(SymBasisElement(2, {{0, 1}, {0, 1}}).label() == "(x1 x2)(x1 x2)");
  CHECK(power_of_variables(3, 2).label() == "(x1^2)(x2^2)(x3^2)");
}

TEST_CASE("symmetric power basis count and canonical order") {
  CHECK(sym_basis_count(2, 2, 2) == 6);
  CHECK(sym_basis_count(2, 6, 6) == 924);
  CHECK(sym_basis_count(3, 3, 3) == 220);  // multisets of 3 from the 10 inner monomials
  auto basis = sym_basis(2, 2, 2);
  REQUIRE(basis.size() == 6);
  CHECK(basis.front().label() == "(x1^2)(x1^2)");
  CHECK(basis.back().label() == "(x2^2)(x2^2)");
  CHECK(std::is_sorted(basis.begin(), basis.end()));
  for (int d = 1; d <= 4; ++d)
    for (int n = 1; n <= 4; ++n) {
      CAPTURE(d);
      CAPTURE(n);
      CHECK(Int(static_cast<long>(sym_basis(2, d, n).size())) == sym_basis_count(2, d, n));
    }
  HoweLimits tiny;
  tiny.basis_cap = 5;
  CHECK_THROWS_AS(sym_basis(2, 2, 2, tiny), ResourceLimitError);
}

TEST_CASE("worked symmetrization: the cube of x1 x2") {
  SymBasisElement b(2, {{0, 1}, {0, 1}, {0, 1}});
  auto img = hdn_apply(b);
  REQUIRE(img.size() == 2);
  SymBasisElement pure(2, {{0, 0, 0}, {1, 1, 1}});
  SymBasisElement mixed(2, {{0, 0, 1}, {0, 1, 1}});
  CHECK(img.at(pure) == Rat(1, 4));
  CHECK(img.at(mixed) == Rat(3, 4));
}

TEST_CASE("worked symmetrization: the square of x1 x2") {
  SymBasisElement b(2, {{0, 1}, {0, 1}});
  auto img = hdn_apply(b);
  REQUIRE(img.size() == 2);
  CHECK(img.at(SymBasisElement(2, {{0, 0}, {1, 1}})) == Rat(1, 2));
  CHECK(img.at(SymBasisElement(2, {{0, 1}, {0, 1}})) == Rat(1, 2));
}

TEST_CASE("powers of distinct variables map to the power of their product") {
  for (int d = 1; d <= 4; ++d)
    for (int n = 1; n <= 4; ++n) {
      CAPTURE(d);
      CAPTURE(n);
      auto img = hdn_apply(power_of_variables(d, n));
      REQUIRE(img.size() == 1);
      Groups prod(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < d; ++i)
          prod[static_cast<std::size_t>(k)].push_back(static_cast<std::uint16_t>(i));
      SymBasisElement want(d, std::move(prod));
      CHECK(img.begin()->first == want);
      CHECK(img.begin()->second == 1);
    }
}

TEST_CASE("symmetrization coefficients are a probability distribution") {
  for (const auto& b : sym_basis(2, 2, 3)) {
    Rat total(0);
    for (const auto& [k, c] : hdn_apply(b)) {
      CHECK(c > 0);
      total += c;
    }
    CHECK(total == 1);
  }
  for (const auto& b : sym_basis(3, 2, 2)) {
    Rat total(0);
    for (const auto& [k, c] : hdn_apply(b)) total += c;
    CHECK(total == 1);
  }
}

TEST_CASE("dim-2 fast path agrees with the reference expansion") {
  for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
    CAPTURE(d);
    CAPTURE(n);
    auto m = hdn_matrix(2, d, n);
    std::map<SymBasisElement, std::int32_t> row_of;
    for (std::size_t i = 0; i < m.codomain_basis.size(); ++i)
      row_of.emplace(m.codomain_basis[i], static_cast<std::int32_t>(i));
    for (std::size_t j = 0; j < m.domain_basis.size(); ++j) {
      std::vector<std::pair<std::int32_t, Rat>> want;
      for (const auto& [k, c] : hdn_apply(m.domain_basis[j])) want.emplace_back(row_of.at(k), c);
      std::sort(want.begin(), want.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      CHECK(m.columns[j] == want);
    }
  }
}

TEST_CASE("symmetrization preserves the torus weight") {
  for (const auto& b : sym_basis(3, 2, 3)) {
    auto w = content(b);
    for (const auto& [k, c] : hdn_apply(b)) CHECK(content(k) == w);
  }
}

TEST_CASE("dim V = 2 gives square isomorphisms (hermite)") {
  for (int d = 1; d <= 4; ++d)
    for (int n = 1; n <= 4; ++n) {
      CAPTURE(d);
      CAPTURE(n);
      auto m = hdn_matrix(2, d, n);
      auto r = rank_report(m);
      Int dim = binomial(static_cast<std::uint64_t>(n + d), static_cast<std::uint64_t>(d));
      CHECK(Int(r.domain_dim) == dim);
      CHECK(Int(r.codomain_dim) == dim);
      CHECK(r.rank == r.domain_dim);
      CHECK(r.injective);
      CHECK(r.surjective);
    }
}

TEST_CASE("weight-zero restriction at (2,2) is half the complement matrix") {
  auto m = weight_zero_matrix(2, 2);
  REQUIRE(m.domain_basis.size() == 3);
  REQUIRE(m.codomain_basis.size() == 3);
  CHECK(m.weight_zero);
  CHECK(m.dimv == 4);
  CHECK(m.domain_basis[0].label() == "(x1 x2)(x3 x4)");
  CHECK(m.domain_basis[1].label() == "(x1 x3)(x2 x4)");
  CHECK(m.domain_basis[2].label() == "(x1 x4)(x2 x3)");
  CHECK(m.codomain_basis == m.domain_basis);
  for (std::size_t j = 0; j < 3; ++j) {
    REQUIRE(m.columns[j].size() == 2);
    for (const auto& [row, val] : m.columns[j]) {
      CHECK(row != static_cast<std::int32_t>(j));
      CHECK(val == Rat(1, 2));
    }
  }
  CHECK(m.to_triplet_text() ==
        "symmetrization-map dimv=4 d=2 n=2 weight_zero=1\n"
        "domain 3\n"
        "0 (x1 x2)(x3 x4)\n"
        "1 (x1 x3)(x2 x4)\n"
        "2 (x1 x4)(x2 x3)\n"
        "codomain 3\n"
        "0 (x1 x2)(x3 x4)\n"
        "1 (x1 x3)(x2 x4)\n"
        "2 (x1 x4)(x2 x3)\n"
        "entries 6\n"
        "1 0 1/2\n"
        "2 0 1/2\n"
        "0 1 1/2\n"
        "2 1 1/2\n"
        "0 2 1/2\n"
        "1 2 1/2\n");
}

TEST_CASE("weight-zero dimensions and exact ranks") {
  struct Row {
    int d, n;
    std::int64_t dom, cod, rank;
  };
  for (auto [d, n, dom, cod, rank] : std::vector<Row>{
           {2, 2, 3, 3, 3}, {2, 3, 10, 15, 10}, {3, 2, 15, 10, 10}, {3, 3, 280, 280, 280}}) {
    CAPTURE(d);
    CAPTURE(n);
    auto m = weight_zero_matrix(d, n);
    auto r = rank_report(m);
    CHECK(r.domain_dim == dom);
    CHECK(r.codomain_dim == cod);
    CHECK(r.rank == rank);
    CHECK(r.injective == (rank == dom));
    CHECK(r.surjective == (rank == cod));
    CHECK_FALSE(r.method.empty());
  }
}

TEST_CASE("weight-zero restriction is the multilinear block of the full map") {
  auto full = hdn_matrix(4, 2, 2);
  auto wz = weight_zero_matrix(2, 2);
  std::map<SymBasisElement, std::size_t> full_col, full_row;
  for (std::size_t j = 0; j < full.domain_basis.size(); ++j) full_col.emplace(full.domain_basis[j], j);
  for (std::size_t i = 0; i < full.codomain_basis.size(); ++i) full_row.emplace(full.codomain_basis[i], i);
  for (std::size_t j = 0; j < wz.domain_basis.size(); ++j) {
    auto jt = full_col.find(wz.domain_basis[j]);
    REQUIRE(jt != full_col.end());
    const auto& col = full.columns[jt->second];
    // The image of a weight-zero element stays weight zero, so the full
    // column, re-indexed, must equal the restricted column entry for entry.
    REQUIRE(col.size() == wz.columns[j].size());
    for (std::size_t k = 0; k < col.size(); ++k) {
      CHECK(full.codomain_basis[static_cast<std::size_t>(col[k].first)] ==
            wz.codomain_basis[static_cast<std::size_t>(wz.columns[j][k].first)]);
      CHECK(col[k].second == wz.columns[j][k].second);
    }
  }
}

TEST_CASE("weight-zero caps refuse oversized bases") {
  CHECK_THROWS_AS(weight_zero_matrix(4, 4), ResourceLimitError);  // 2627625 partitions
}

TEST_CASE("eval_p on explicit data") {
  using V = std::vector<Rat>;
  std::vector<std::vector<V>> standard = {{V{1, 0}, V{0, 1}}, {V{1, 0}, V{0, 1}}};
  CHECK(eval_p(standard) == -2);

  // d = 1, n = 2 in one variable: sum over S2 of v_{s(1)} v_{s(2)} = 2 v1 v2.
  std::vector<std::vector<V>> line = {{V{2}, V{3}}};
  CHECK(eval_p(line) == 12);

  // Multilinearity in each slot: scaling one vector scales the value.
  std::vector<std::vector<V>> scaled = standard;
  for (auto& x : scaled[0][0]) x *= 3;
  CHECK(eval_p(scaled) == -6);
}

TEST_CASE("eval_p symmetries") {
  using V = std::vector<Rat>;
  std::vector<std::vector<V>> data = {{V{1, 2}, V{3, -1}}, {V{0, 1}, V{2, 5}}};
  Rat base = eval_p(data);

  auto swapped_groups = data;
  std::swap(swapped_groups[0], swapped_groups[1]);
  CHECK(eval_p(swapped_groups) == base);

  auto swapped_within = data;
  std::swap(swapped_within[1][0], swapped_within[1][1]);
  CHECK(eval_p(swapped_within) == base);

  // SL2 acts trivially: each determinant factor is invariant.
  auto sheared = data;
  for (auto& group : sheared)
    for (auto& v : group) v = {v[0] + v[1], v[1]};
  CHECK(eval_p(sheared) == base);

  // diag(2, 1) multiplies every det factor by 2, hence the sum by 2^n.
  auto stretched = data;
  for (auto& group : stretched)
    for (auto& v : group) v[0] *= 2;
  CHECK(eval_p(stretched) == 4 * base);
}

TEST_CASE("eval_p validates its input") {
  using V = std::vector<Rat>;
  // vector dimension must equal the group count
  CHECK_THROWS_AS(eval_p({{V{1, 0}, V{0, 1}}}), ValidationError);
  // groups must share one size
  CHECK_THROWS_AS(eval_p({{V{1, 0}, V{0, 1}}, {V{1, 0}}}), ValidationError);
  // odd tuple length needs the explicit opt-in
  std::vector<std::vector<V>> odd = {{V{1, 1}, V{0, 1}, V{1, 0}}, {V{1, 0}, V{0, 1}, V{1, 2}}};
  CHECK_THROWS_AS(eval_p(odd), ValidationError);
  CHECK_NOTHROW(eval_p(odd, true));
}

TEST_CASE("p on the standard power equals the column sign difference") {
  CHECK(p_on_power(1, true) == 1);
  CHECK(p_on_power(2) == -2);
  CHECK(p_on_power(3, true) == 0);
  CHECK(p_on_power(4) == 576);
  CHECK(p_on_power(5, true) == 0);
  for (int n = 2; n <= 5; ++n) CHECK(p_on_power(n, true) == col_difference(n));
  CHECK_THROWS_AS(p_on_power(3), ValidationError);
  CHECK_THROWS_AS(p_on_power(6, true), ResourceLimitError);
}

TEST_CASE("weight-zero power basis at n = 2") {
  auto basis = weight_zero_power_basis(2);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].label() == "(x1^2)(x2^2)");
  CHECK(basis[1].label() == "(x1 x2)(x1 x2)");
  CHECK(weight_zero_power_basis(4).size() == 465);
}

TEST_CASE("pstar coordinates at n = 2 and n = 4") {
  auto p2 = pstar_coefficients(2);
  REQUIRE(p2.size() == 2);
  CHECK(p2[0].first.label() == "(x1^2)(x2^2)");
  CHECK(p2[0].second == 1);
  CHECK(p2[1].first.label() == "(x1 x2)(x1 x2)");
  CHECK(p2[1].second == -2);

  auto p4 = pstar_coefficients(4);
  REQUIRE(p4.size() == 465);
  auto basis = weight_zero_power_basis(4);
  Int latin_coeff = 0, pure_coeff = 0;
  for (std::size_t k = 0; k < p4.size(); ++k) {
    CHECK(p4[k].first == basis[k]);  // canonical order, full support listing
    auto label = p4[k].first.label();
    if (label == "(x1 x2 x3 x4)(x1 x2 x3 x4)(x1 x2 x3 x4)(x1 x2 x3 x4)") latin_coeff = p4[k].second;
    if (label == "(x1^4)(x2^4)(x3^4)(x4^4)") pure_coeff = p4[k].second;
  }
  CHECK(pure_coeff == 1);     // normalization
  CHECK(latin_coeff == 576);  // the column sign difference again

  CHECK_THROWS_AS(pstar_coefficients(3), ValidationError);
  CHECK_THROWS_AS(pstar_coefficients(6), ResourceLimitError);
}

TEST_CASE("exact rank: certified full rank and bareiss fallback") {
  auto id3 = dense_to_sparse({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto r = exact_rank(id3);
  CHECK(r.rank == 3);
  CHECK(r.method == "modp-certified-full");

  auto sing = dense_to_sparse({{1, 2}, {2, 4}});
  r = exact_rank(sing);
  CHECK(r.rank == 1);
  CHECK(r.method == "bareiss");

  auto zero = dense_to_sparse({{0, 0}, {0, 0}});
  CHECK(exact_rank(zero).rank == 0);

  // 5x5 of rank 3 built as a product of a 5x3 and a 3x5 block.
  std::vector<std::vector<long>> a(5, std::vector<long>(5, 0));
  long left[5][3] = {{1, 2, 0}, {0, 1, 1}, {3, 0, 2}, {1, 1, 1}, {2, 5, 7}};
  long right[3][5] = {{1, 0, 2, 1, 3}, {0, 1, 1, 4, 1}, {2, 2, 0, 1, 5}};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 3; ++k) a[i][j] += left[i][k] * right[k][j];
  auto prod = dense_to_sparse(a);
  CHECK(rank_bareiss(prod) == 3);
  CHECK(rank_mod_p(prod) == 3);
  CHECK(exact_rank(prod).rank == 3);

  // Rectangular full-rank: certificate path again.
  auto rect = dense_to_sparse({{1, 0}, {0, 1}, {1, 1}});
  CHECK(exact_rank(rect).rank == 2);
  CHECK(exact_rank(rect).method == "modp-certified-full");

  CHECK_THROWS_AS(rank_bareiss(id3, 2), ResourceLimitError);
}
