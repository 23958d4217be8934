#include "atlas/permutation.hpp"

#include <numeric>
#include <string>

#include "atlas/errors.hpp"

namespace atlas {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : images_) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw ValidationError("permutation images must be a bijection of {0,...,n-1}");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  if (n < 0) throw ValidationError("permutation size must be nonnegative");
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

int Permutation::sign() const {
  // Parity via cycle decomposition: sign = (-1)^(n - #cycles).
  const int n = this->n();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int cycles = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    ++cycles;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = images_[static_cast<std::size_t>(j)])
      seen[static_cast<std::size_t>(j)] = 1;
  }
  return ((n - cycles) % 2 == 0) ? 1 : -1;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (n() != other.n()) throw ValidationError("composition requires equal sizes");
  std::vector<int> im(images_.size());
  for (int i = 0; i < n(); ++i) im[static_cast<std::size_t>(i)] = (*this)(other(i));
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (int i = 0; i < n(); ++i) im[static_cast<std::size_t>((*this)(i))] = i;
  return Permutation(std::move(im));
}

}  // namespace atlas
