#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace atlas {

using Int = mpz_class;  // arbitrary-precision integer
using Rat = mpq_class;  // exact rational, kept canonicalized

Int factorial(std::uint64_t k);
Int binomial(std::uint64_t n, std::uint64_t k);

// 64-bit FNV-1a, used for record digests and cache keys.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(const std::string& s);

}  // namespace atlas
