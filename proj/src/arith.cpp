#include "atlas/arith.hpp"

#include <string>

namespace atlas {

Int factorial(std::uint64_t k) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

Int binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

}  // namespace atlas
