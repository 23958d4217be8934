#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "atlas/arith.hpp"

namespace atlas {

// Names the coordinates a polynomial lives on: either k plain variables
// x[1..k], or the n^2 entries g[i][j] of an n x n matrix, flattened row-major
// so that g[i][j] (1-based) sits at index (i-1)*n + (j-1).
class VariableSpace {
 public:
  enum class Kind { kPlain, kMatrix };

  static VariableSpace plain(int k);
  static VariableSpace matrix(int n);

  Kind kind() const { return kind_; }
  int count() const { return count_; }
  // Matrix spaces only.
  int matrix_dim() const;
  int entry_index(int i, int j) const;  // 1-based (i, j)

  std::string variable_name(int flat_index) const;

  bool operator==(const VariableSpace&) const = default;

 private:
  VariableSpace(Kind kind, int count, int dim) : kind_(kind), count_(count), dim_(dim) {}
  Kind kind_;
  int count_;
  int dim_;
};

// Exponent vector of one monomial.  Degree is cached at construction and the
// object is immutable, so the cache cannot go stale.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<std::uint32_t> exponents);
  static MultiIndex zero(int variable_count);

  int variable_count() const { return static_cast<int>(e_.size()); }
  std::uint32_t operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint32_t>& exponents() const { return e_; }
  int degree() const { return degree_; }

  MultiIndex plus(const MultiIndex& o) const;
  bool all_exponents_at_most_one() const;
  // Product of exponent factorials; the diagonal weight of the apolar form.
  Int factorial_weight() const;

  bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
  // Lexicographic on the exponent vector, first variable most significant.
  static bool lex_less(const MultiIndex& a, const MultiIndex& b) { return a.e_ < b.e_; }

 private:
  std::vector<std::uint32_t> e_;
  int degree_;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& m) const {
    return static_cast<std::size_t>(
        fnv1a64(m.exponents().data(), m.exponents().size() * sizeof(std::uint32_t)));
  }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariant: no stored coefficient is zero.
class SparsePoly {
 public:
  explicit SparsePoly(VariableSpace space) : space_(std::move(space)) {}
  static SparsePoly monomial(VariableSpace space, MultiIndex m, Rat coeff);

  const VariableSpace& space() const { return space_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rat coefficient(const MultiIndex& m) const;
  void add_term(const MultiIndex& m, const Rat& coeff);

  // Common degree of all terms if the polynomial is homogeneous (the zero
  // polynomial reports degree 0), std::nullopt otherwise.
  std::optional<int> homogeneous_degree() const;

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;

  Rat eval(const std::vector<Rat>& point) const;
  std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

  // Terms sorted by descending lexicographic order on exponent vectors.
  std::vector<std::pair<MultiIndex, Rat>> sorted_terms() const;

  // One term per line, "coeff * g[1][1]^2 g[2][3]", in sorted_terms() order;
  // the zero polynomial prints "0".  Equal polynomials print identical text.
  std::string canonical_text() const;

  const std::unordered_map<MultiIndex, Rat, MultiIndexHash>& terms() const { return terms_; }

 private:
  VariableSpace space_;
  std::unordered_map<MultiIndex, Rat, MultiIndexHash> terms_;
};

// det and perm of the generic n x n matrix as degree-n polynomials on
// VariableSpace::matrix(n).
SparsePoly det_poly(int n);
SparsePoly perm_poly(int n);
// The single monomial prod_{i,j} g[i][j].
SparsePoly all_entries_monomial(int n);

// P^k.  With multilinear_only, terms acquiring any exponent >= 2 are dropped
// after every intermediate product; they can never re-enter the multilinear
// stratum because exponents only grow under multiplication.
SparsePoly poly_pow(const SparsePoly& p, unsigned k, bool multilinear_only = false);

// Apolarity pairing <Q, R> = sum_m Q_m R_m m! over a shared monomial basis.
// Requires both arguments homogeneous of the same degree on the same space.
Rat apolar_pair(const SparsePoly& q, const SparsePoly& r);

}  // namespace atlas
