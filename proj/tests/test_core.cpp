#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>
#include <vector>

#include "atlas/arith.hpp"
#include "atlas/errors.hpp"
#include "atlas/permutation.hpp"
#include "atlas/poly.hpp"

using namespace atlas;

namespace {

std::vector<Permutation> symmetric_group(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i;
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

int inversion_sign(const Permutation& p) {
  int inv = 0;
  for (int i = 0; i < p.n(); ++i)
    for (int j = i + 1; j < p.n(); ++j)
      if (p(i) > p(j)) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

// Drops every term with an exponent >= 2; reference for the multilinear mode.
SparsePoly multilinear_filter(const SparsePoly& p) {
  SparsePoly out(p.space());
  for (const auto& [m, c] : p.terms())
    if (m.all_exponents_at_most_one()) out.add_term(m, c);
  return out;
}

}  // namespace

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(20) == Int("2432902008176640000"));
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(6, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(52, 26) == Int("495918532948104"));
}

TEST_CASE("fnv1a64 is stable and input sensitive") {
  CHECK(fnv1a64(std::string("")) == 0xcbf29ce484222325ull);
  CHECK(fnv1a64(std::string("a")) != fnv1a64(std::string("b")));
  CHECK(fnv1a64(std::string("atlas")) == fnv1a64(std::string("atlas")));
}

TEST_CASE("permutation validates bijectivity") {
  CHECK_NOTHROW(Permutation({0, 1, 2}));
  CHECK_THROWS_AS(Permutation({0, 0}), ValidationError);
  CHECK_THROWS_AS(Permutation({0, 2}), ValidationError);
  CHECK_THROWS_AS(Permutation({-1, 0}), ValidationError);
  CHECK(Permutation::identity(4) == Permutation({0, 1, 2, 3}));
}

TEST_CASE("permutation sign matches inversion counting on all of S1..S6") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& p : symmetric_group(n)) CHECK(p.sign() == inversion_sign(p));
}

TEST_CASE("sign is a homomorphism and inverse preserves it (all of S4 x S4)") {
  auto s4 = symmetric_group(4);
  for (const auto& a : s4) {
    CHECK(a.compose(a.inverse()) == Permutation::identity(4));
    CHECK(a.inverse().sign() == a.sign());
    for (const auto& b : s4) CHECK(a.compose(b).sign() == a.sign() * b.sign());
  }
}

TEST_CASE("compose applies the right factor first") {
  Permutation a({1, 2, 0});
  Permutation b({1, 0, 2});
  // (a.compose(b))(i) == a(b(i))
  CHECK(a.compose(b) == Permutation({2, 1, 0}));
  CHECK(b.compose(a) == Permutation({0, 2, 1}));
}

TEST_CASE("variable spaces name and index coordinates") {
  auto pl = VariableSpace::plain(3);
  CHECK(pl.count() == 3);
  CHECK(pl.variable_name(0) == "x[1]");
  CHECK(pl.variable_name(2) == "x[3]");

  auto mx = VariableSpace::matrix(2);
  CHECK(mx.count() == 4);
  CHECK(mx.matrix_dim() == 2);
  CHECK(mx.entry_index(1, 1) == 0);
  CHECK(mx.entry_index(2, 1) == 2);
  CHECK(mx.variable_name(mx.entry_index(2, 1)) == "g[2][1]");
  CHECK(pl == VariableSpace::plain(3));
  CHECK_FALSE(pl == mx);
}

TEST_CASE("multi-index degree, sum, and factorial weight") {
  MultiIndex m({2, 1, 0, 3});
  CHECK(m.degree() == 6);
  CHECK(m.variable_count() == 4);
  CHECK(m.factorial_weight() == 12);  // 2! 1! 0! 3!
  CHECK_FALSE(m.all_exponents_at_most_one());
  CHECK(MultiIndex({1, 0, 1, 1}).all_exponents_at_most_one());
  CHECK(m.plus(MultiIndex({0, 1, 1, 0})) == MultiIndex({2, 2, 1, 3}));
  CHECK(MultiIndex::zero(4).degree() == 0);
  CHECK(MultiIndex::lex_less(MultiIndex({0, 1}), MultiIndex({1, 0})));
}

TEST_CASE("sparse polynomials drop zero coefficients") {
  SparsePoly p(VariableSpace::plain(2));
  MultiIndex m({1, 1});
  p.add_term(m, Rat(3));
  p.add_term(m, Rat(-3));
  CHECK(p.is_zero());
  CHECK(p.term_count() == 0);
  p.add_term(m, Rat(1, 2));
  CHECK(p.coefficient(m) == Rat(1, 2));
  CHECK(p.coefficient(MultiIndex({2, 0})) == 0);
}

TEST_CASE("det2 expansion, canonical text, and homogeneous degree") {
  auto d2 = det_poly(2);
  CHECK(d2.term_count() == 2);
  CHECK(d2.coefficient(MultiIndex({1, 0, 0, 1})) == 1);
  CHECK(d2.coefficient(MultiIndex({0, 1, 1, 0})) == -1);
  CHECK(d2.canonical_text() == "1 * g[1][1] g[2][2]\n-1 * g[1][2] g[2][1]\n");
  CHECK(perm_poly(2).canonical_text() == "1 * g[1][1] g[2][2]\n1 * g[1][2] g[2][1]\n");
  CHECK(SparsePoly(VariableSpace::plain(2)).canonical_text() == "0\n");
  CHECK(d2.homogeneous_degree() == 2);
  CHECK(det_poly(3).homogeneous_degree() == 3);
  CHECK(SparsePoly(VariableSpace::plain(1)).homogeneous_degree() == 0);
  CHECK_FALSE((d2 + poly_pow(d2, 2)).homogeneous_degree().has_value());
}

TEST_CASE("det and perm evaluate correctly on a rational matrix") {
  // [[2,0,1],[1,1,0],[0,3,1]]: det = 5, perm = 5 (coincidence of this matrix).
  std::vector<Rat> a = {2, 0, 1, 1, 1, 0, 0, 3, 1};
  CHECK(det_poly(3).eval(a) == 5);
  CHECK(perm_poly(3).eval(a) == 5);

  // Swapping two rows negates det and fixes perm.
  std::vector<Rat> b = {1, 1, 0, 2, 0, 1, 0, 3, 1};
  CHECK(det_poly(3).eval(b) == -5);
  CHECK(perm_poly(3).eval(b) == 5);

  // A repeated row kills det but not perm.
  std::vector<Rat> c = {2, 0, 1, 2, 0, 1, 0, 3, 1};
  CHECK(det_poly(3).eval(c) == 0);
  CHECK(perm_poly(3).eval(c) != 0);

  std::vector<std::complex<double>> az(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) az[i] = a[i].get_d();
  CHECK(std::abs(det_poly(3).eval(az) - std::complex<double>(5.0)) < 1e-12);
}

TEST_CASE("all_entries_monomial is the full multilinear product") {
  auto m = all_entries_monomial(3);
  CHECK(m.term_count() == 1);
  auto [mi, c] = m.sorted_terms().front();
  CHECK(c == 1);
  CHECK(mi == MultiIndex({1, 1, 1, 1, 1, 1, 1, 1, 1}));
}

TEST_CASE("poly_pow is iterated multiplication") {
  auto d2 = det_poly(2);
  auto p2 = perm_poly(2);
  CHECK(poly_pow(d2, 0).canonical_text() == "1\n");  // the constant 1
  CHECK(poly_pow(d2, 1).canonical_text() == d2.canonical_text());
  CHECK(poly_pow(d2, 2).canonical_text() == (d2 * d2).canonical_text());
  CHECK(poly_pow(d2, 3).canonical_text() == (d2 * d2 * d2).canonical_text());
  CHECK(poly_pow(p2, 2).canonical_text() == (p2 * p2).canonical_text());
  CHECK(poly_pow(d2, 2).term_count() == 3);
  CHECK(poly_pow(det_poly(3), 3).term_count() == 54);
}

TEST_CASE("multilinear mode equals power-then-filter") {
  for (int n = 2; n <= 3; ++n) {
    for (unsigned k = 1; k <= static_cast<unsigned>(n); ++k) {
      auto full = multilinear_filter(poly_pow(det_poly(n), k));
      auto fast = poly_pow(det_poly(n), k, true);
      CHECK(fast.canonical_text() == full.canonical_text());
      auto fullp = multilinear_filter(poly_pow(perm_poly(n), k));
      auto fastp = poly_pow(perm_poly(n), k, true);
      CHECK(fastp.canonical_text() == fullp.canonical_text());
    }
  }
  // det2^2 keeps exactly the cross term, with coefficient -2.
  auto ml = poly_pow(det_poly(2), 2, true);
  CHECK(ml.term_count() == 1);
  CHECK(ml.coefficient(MultiIndex({1, 1, 1, 1})) == -2);
}

TEST_CASE("apolar pairing is diagonal with factorial weights") {
  auto space = VariableSpace::plain(3);
  MultiIndex m1({2, 1, 0}), m2({1, 1, 1}), m3({0, 1, 2});
  auto mono = [&](const MultiIndex& m) { return SparsePoly::monomial(space, m, Rat(1)); };
  CHECK(apolar_pair(mono(m1), mono(m1)) == 2);   // 2! 1! 0!
  CHECK(apolar_pair(mono(m2), mono(m2)) == 1);
  CHECK(apolar_pair(mono(m3), mono(m3)) == 2);
  CHECK(apolar_pair(mono(m1), mono(m2)) == 0);
  CHECK(apolar_pair(mono(m1), mono(m3)) == 0);
}

TEST_CASE("apolar pairing is symmetric and bilinear") {
  auto space = VariableSpace::plain(2);
  SparsePoly q(space), r(space);
  q.add_term(MultiIndex({3, 0}), Rat(2));
  q.add_term(MultiIndex({1, 2}), Rat(-1, 3));
  r.add_term(MultiIndex({3, 0}), Rat(1, 2));
  r.add_term(MultiIndex({2, 1}), Rat(5));
  r.add_term(MultiIndex({1, 2}), Rat(7));
  CHECK(apolar_pair(q, r) == apolar_pair(r, q));
  CHECK(apolar_pair(q, r) == Rat(2) * Rat(1, 2) * 6 + Rat(-1, 3) * Rat(7) * 2);

  // <Q, Q> recomputed from the term list.
  Rat self(0);
  for (const auto& [m, c] : q.terms()) self += c * c * Rat(m.factorial_weight());
  CHECK(apolar_pair(q, q) == self);
}

TEST_CASE("apolar pairing validates degree and space") {
  auto d2 = det_poly(2);
  CHECK_THROWS_AS(apolar_pair(d2, poly_pow(d2, 2)), ValidationError);
  CHECK_THROWS_AS(apolar_pair(d2, SparsePoly::monomial(VariableSpace::plain(4),
                                                       MultiIndex({1, 1, 0, 0}), Rat(1))),
                  ValidationError);
  SparsePoly inhom(VariableSpace::matrix(2));
  inhom.add_term(MultiIndex({1, 1, 0, 0}), Rat(1));
  inhom.add_term(MultiIndex({1, 1, 1, 0}), Rat(1));
  CHECK_THROWS_AS(apolar_pair(inhom, inhom), ValidationError);
}

TEST_CASE("frozen pairings of powers against det powers") {
  auto pair_n = [](int n) {
    auto dn = poly_pow(det_poly(n), static_cast<unsigned>(n));
    return std::pair<Rat, Rat>{
        apolar_pair(poly_pow(perm_poly(n), static_cast<unsigned>(n)), dn),
        apolar_pair(all_entries_monomial(n), dn)};
  };
  auto [pd2, gd2] = pair_n(2);
  CHECK(pd2 == 4);
  CHECK(gd2 == -2);
  auto [pd3, gd3] = pair_n(3);
  CHECK(pd3 == 0);
  CHECK(gd3 == 0);
  auto [pd4, gd4] = pair_n(4);
  CHECK(pd4 == 331776);
  CHECK(gd4 == 576);
  CHECK(poly_pow(det_poly(4), 4).term_count() == 10147);
}
