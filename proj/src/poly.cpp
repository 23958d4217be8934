#include "atlas/poly.hpp"

#include <algorithm>
#include <sstream>

#include "atlas/errors.hpp"
#include "atlas/permutation.hpp"

namespace atlas {

/**************************** VariableSpace *********************************/

VariableSpace VariableSpace::plain(int k) {
  if (k < 0) throw ValidationError("plain space needs k >= 0");
  return VariableSpace(Kind::kPlain, k, 0);
}

VariableSpace VariableSpace::matrix(int n) {
  if (n < 0) throw ValidationError("matrix space needs n >= 0");
  return VariableSpace(Kind::kMatrix, n * n, n);
}

int VariableSpace::matrix_dim() const {
  if (kind_ != Kind::kMatrix) throw ValidationError("not a matrix space");
  return dim_;
}

int VariableSpace::entry_index(int i, int j) const {
  if (kind_ != Kind::kMatrix) throw ValidationError("not a matrix space");
  if (i < 1 || i > dim_ || j < 1 || j > dim_) throw ValidationError("matrix entry out of range");
  return (i - 1) * dim_ + (j - 1);
}

std::string VariableSpace::variable_name(int flat_index) const {
  if (flat_index < 0 || flat_index >= count_) throw ValidationError("variable index out of range");
  if (kind_ == Kind::kPlain) return "x[" + std::to_string(flat_index + 1) + "]";
  return "g[" + std::to_string(flat_index / dim_ + 1) + "][" +
         std::to_string(flat_index % dim_ + 1) + "]";
}

/***************************** MultiIndex ***********************************/

MultiIndex::MultiIndex(std::vector<std::uint32_t> exponents) : e_(std::move(exponents)) {
  long long d = 0;
  for (auto v : e_) d += v;
  if (d > (1 << 30)) throw ValidationError("monomial degree out of range");
  degree_ = static_cast<int>(d);
}

MultiIndex MultiIndex::zero(int variable_count) {
  if (variable_count < 0) throw ValidationError("variable count must be nonnegative");
  return MultiIndex(std::vector<std::uint32_t>(static_cast<std::size_t>(variable_count), 0));
}

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
  if (e_.size() != o.e_.size()) throw ValidationError("multi-index size mismatch");
  std::vector<std::uint32_t> r(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) r[i] = e_[i] + o.e_[i];
  return MultiIndex(std::move(r));
}

bool MultiIndex::all_exponents_at_most_one() const {
  return std::all_of(e_.begin(), e_.end(), [](std::uint32_t v) { return v <= 1; });
}

Int MultiIndex::factorial_weight() const {
  Int w = 1;
  for (auto v : e_)
    if (v > 1) w *= factorial(v);
  return w;
}

/***************************** SparsePoly ***********************************/

SparsePoly SparsePoly::monomial(VariableSpace space, MultiIndex m, Rat coeff) {
  if (m.variable_count() != space.count())
    throw ValidationError("multi-index does not match variable space");
  SparsePoly p(std::move(space));
  p.add_term(m, coeff);
  return p;
}

Rat SparsePoly::coefficient(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

void SparsePoly::add_term(const MultiIndex& m, const Rat& coeff) {
  if (m.variable_count() != space_.count())
    throw ValidationError("multi-index does not match variable space");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<int> SparsePoly::homogeneous_degree() const {
  if (terms_.empty()) return 0;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return std::nullopt;
  return d;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  if (!(space_ == o.space_)) throw ValidationError("variable space mismatch");
  SparsePoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
  if (!(space_ == o.space_)) throw ValidationError("variable space mismatch");
  SparsePoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  if (!(space_ == o.space_)) throw ValidationError("variable space mismatch");
  SparsePoly r(space_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma.plus(mb), ca * cb);
  return r;
}

Rat SparsePoly::eval(const std::vector<Rat>& point) const {
  if (static_cast<int>(point.size()) != space_.count())
    throw ValidationError("evaluation point has wrong dimension");
  Rat acc = 0;
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < m.variable_count(); ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[static_cast<std::size_t>(i)];
    acc += t;
  }
  return acc;
}

std::complex<double> SparsePoly::eval(const std::vector<std::complex<double>>& point) const {
  if (static_cast<int>(point.size()) != space_.count())
    throw ValidationError("evaluation point has wrong dimension");
  std::complex<double> acc = 0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> t = c.get_d();
    for (int i = 0; i < m.variable_count(); ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[static_cast<std::size_t>(i)];
    acc += t;
  }
  return acc;
}

std::vector<std::pair<MultiIndex, Rat>> SparsePoly::sorted_terms() const {
  std::vector<std::pair<MultiIndex, Rat>> v(terms_.begin(), terms_.end());
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return MultiIndex::lex_less(b.first, a.first); });
  return v;
}

std::string SparsePoly::canonical_text() const {
  if (terms_.empty()) return "0\n";
  std::ostringstream out;
  for (const auto& [m, c] : sorted_terms()) {
    out << c.get_str();
    if (m.degree() > 0) {
      out << " *";
      for (int i = 0; i < m.variable_count(); ++i) {
        if (m[i] == 0) continue;
        out << ' ' << space_.variable_name(i);
        if (m[i] > 1) out << '^' << m[i];
      }
    }
    out << '\n';
  }
  return out.str();
}

/************************* det, perm, powers, apolarity *********************/

namespace {

// Shared expansion over S_n; det uses the sign, perm does not.
SparsePoly expand_over_sn(int n, bool signed_terms) {
  if (n < 1) throw ValidationError("matrix dimension must be >= 1");
  VariableSpace space = VariableSpace::matrix(n);
  SparsePoly p(space);
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i;
  do {
    std::vector<std::uint32_t> e(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i)
      e[static_cast<std::size_t>(space.entry_index(i + 1, img[static_cast<std::size_t>(i)] + 1))] +=
          1;
    int sign = signed_terms ? Permutation(img).sign() : 1;
    p.add_term(MultiIndex(std::move(e)), Rat(sign));
  } while (std::next_permutation(img.begin(), img.end()));
  return p;
}

}  // namespace

SparsePoly det_poly(int n) { return expand_over_sn(n, true); }
SparsePoly perm_poly(int n) { return expand_over_sn(n, false); }

SparsePoly all_entries_monomial(int n) {
  if (n < 1) throw ValidationError("matrix dimension must be >= 1");
  VariableSpace space = VariableSpace::matrix(n);
  std::vector<std::uint32_t> e(static_cast<std::size_t>(n * n), 1);
  return SparsePoly::monomial(space, MultiIndex(std::move(e)), Rat(1));
}

SparsePoly poly_pow(const SparsePoly& p, unsigned k, bool multilinear_only) {
  SparsePoly acc = SparsePoly::monomial(p.space(), MultiIndex::zero(p.space().count()), Rat(1));
  for (unsigned step = 0; step < k; ++step) {
    SparsePoly next(p.space());
    for (const auto& [ma, ca] : acc.terms())
      for (const auto& [mb, cb] : p.terms()) {
        MultiIndex m = ma.plus(mb);
        if (multilinear_only && !m.all_exponents_at_most_one()) continue;
        next.add_term(m, ca * cb);
      }
    acc = std::move(next);
  }
  return acc;
}

Rat apolar_pair(const SparsePoly& q, const SparsePoly& r) {
  if (!(q.space() == r.space())) throw ValidationError("apolar pairing needs one variable space");
  auto dq = q.homogeneous_degree();
  auto dr = r.homogeneous_degree();
  if (!dq || !dr) throw ValidationError("apolar pairing needs homogeneous arguments");
  if (!q.is_zero() && !r.is_zero() && *dq != *dr)
    throw ValidationError("apolar pairing needs equal degrees");
  // Iterate over the smaller support.
  const SparsePoly& small = q.term_count() <= r.term_count() ? q : r;
  const SparsePoly& big = q.term_count() <= r.term_count() ? r : q;
  Rat acc = 0;
  for (const auto& [m, c] : small.terms()) {
    Rat other = big.coefficient(m);
    if (other == 0) continue;
    acc += c * other * Rat(m.factorial_weight());
  }
  return acc;
}

}  // namespace atlas
