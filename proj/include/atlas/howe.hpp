#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "atlas/arith.hpp"
#include "atlas/rank.hpp"

namespace atlas {

// One basis monomial of S^d(S^n V), dim V = dimv: an outer multiset of d
// inner monomials, each an inner multiset of n variable indices (0-based).
// Stored with every inner list sorted ascending and the outer list sorted
// lexicographically ascending; that nested order is the canonical basis
// order used everywhere in this module.
class SymBasisElement {
 public:
  SymBasisElement(int dimv, std::vector<std::vector<std::uint16_t>> groups);

  int dimv() const { return dimv_; }
  int d() const { return static_cast<int>(groups_.size()); }
  int n() const { return groups_.empty() ? 0 : static_cast<int>(groups_.front().size()); }
  const std::vector<std::vector<std::uint16_t>>& groups() const { return groups_; }

  std::string label() const;  // "(x1^2)(x1 x2)"

  bool operator==(const SymBasisElement& o) const {
    return dimv_ == o.dimv_ && groups_ == o.groups_;
  }
  bool operator<(const SymBasisElement& o) const { return groups_ < o.groups_; }

 private:
  int dimv_;
  std::vector<std::vector<std::uint16_t>> groups_;
};

// A linear map between two symmetric-power spaces, held exactly.
// columns[j] lists (row, value) with strictly increasing rows; column j is
// the image of domain_basis[j] expanded over codomain_basis.
struct ExactLinearMap {
  int dimv = 0, d = 0, n = 0;
  bool weight_zero = false;
  std::vector<SymBasisElement> domain_basis;
  std::vector<SymBasisElement> codomain_basis;
  std::vector<std::vector<std::pair<std::int32_t, Rat>>> columns;

  // Header, both labelled bases, then "row col value" triplets in column
  // order.  Equal maps serialize identically.
  std::string to_triplet_text() const;
};

struct RankReport {
  std::int64_t domain_dim = 0;
  std::int64_t codomain_dim = 0;
  std::int64_t rank = 0;
  bool injective = false;
  bool surjective = false;
  std::string method;
};

struct HoweLimits {
  std::int64_t basis_cap = 1'000'000;  // largest basis that may be enumerated
  std::int64_t word_cap = 10'000'000;  // largest word expansion per matrix
  std::int64_t dense_rank_cap = 2000;
};

// Degree-n monomials on dimv variables as sorted index lists, lexicographic
// ascending (x1^n first).
std::vector<std::vector<std::uint16_t>> inner_monomials(int dimv, int n);

Int sym_basis_count(int dimv, int d, int n);
std::vector<SymBasisElement> sym_basis(int dimv, int d, int n, const HoweLimits& limits = {});

// Reference regroup-and-average symmetrization of one basis element: expand
// each inner monomial into all distinct letter words, collect slot k of every
// word into the k-th output factor, average over all word choices.
std::map<SymBasisElement, Rat> hdn_apply(const SymBasisElement& b, const HoweLimits& limits = {});

// Full matrix S^d(S^n V) -> S^n(S^d V) on canonical bases.  dimv == 2 runs a
// shared-prefix dynamic program over slot occupancy profiles; other dims use
// the reference expansion column by column.
ExactLinearMap hdn_matrix(int dimv, int d, int n, const HoweLimits& limits = {});

// Restriction to the multilinear weight (1,...,1) on dn variables: domain
// basis is the set partitions of {0,...,dn-1} into d blocks of size n,
// codomain into n blocks of size d.
ExactLinearMap weight_zero_matrix(int d, int n, const HoweLimits& limits = {});

RankReport rank_report(const ExactLinearMap& map, const HoweLimits& limits = {});

// Exact value of sum over (sigma_1,...,sigma_d) in S_n^d of
// prod_{k=1}^n det(v^1_{sigma_1(k)}, ..., v^d_{sigma_d(k)}), where
// groups[i] holds the n vectors v^i_* of group i, each in Q^d.
// Odd n is refused unless allow_odd (the sum is then identically zero on
// symmetric inputs but remains well defined pointwise).
Rat eval_p(const std::vector<std::vector<std::vector<Rat>>>& groups, bool allow_odd = false);

// The same sum at d = n with every group the standard basis (e_1, ..., e_n):
// nonvanishing terms biject with Latin squares and the value equals the
// column-sign difference of the order-n census.
Int p_on_power(int n, bool allow_odd = false);

// Weight-zero basis of S^n(S^n C^n): multisets of n degree-n monomials on n
// variables whose exponents total (n, ..., n).  Canonical order.
std::vector<SymBasisElement> weight_zero_power_basis(int n, const HoweLimits& limits = {});

// Integer coordinates of the invariant that pairs S^n(S^n C^n) against the
// determinant orbit, normalized so the coefficient of (x1^n)...(xn^n) is 1.
// Supported on the weight-zero basis; returned in canonical basis order.
std::vector<std::pair<SymBasisElement, Int>> pstar_coefficients(int n,
                                                                const HoweLimits& limits = {});

}  // namespace atlas
