#pragma once

#include <compare>
#include <vector>

namespace atlas {

// A bijection of {0, ..., n-1}; images()[i] is the image of i.
// Construction validates bijectivity, so instances are always well formed.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  // +1 for even, -1 for odd.
  int sign() const;

  // (this.compose(other))(i) == this(other(i)).
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

}  // namespace atlas
