#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "atlas/arith.hpp"
#include "atlas/howe.hpp"

namespace atlas {

struct ComplexMatrix {
  int n = 0;
  std::vector<std::complex<double>> a;  // row-major

  std::complex<double>& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  const std::complex<double>& at(int i, int j) const {
    return a[static_cast<std::size_t>(i * n + j)];
  }

  // max_ij |(U^H U - I)_ij|
  double unitarity_defect() const;
  std::complex<double> determinant() const;  // LU with partial pivoting
};

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t s_;
};

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);  // state expanded via SplitMix64
  std::uint64_t next();
  double uniform01();  // in (0, 1]
  double normal();     // standard normal (Box-Muller, pair cached)

 private:
  std::uint64_t s_[4];
  bool have_cached_ = false;
  double cached_ = 0.0;
};

// The stream of sample chunk c for a run seeded with `seed`; depends only on
// (seed, c), never on which thread processes the chunk.
Xoshiro256pp chunk_stream(std::uint64_t seed, std::uint64_t chunk_index);

// Haar-distributed element of SU(n): complex Ginibre matrix, modified
// Gram-Schmidt with one reorthogonalization pass (positive diagonal makes
// the factorization unique, so Q is Haar on U(n)), then a det^(-1/n) phase.
ComplexMatrix haar_su(int n, Xoshiro256pp& rng);

// Ryser's formula with Gray-code subset updates; n <= 20.
std::complex<double> permanent(const ComplexMatrix& m);

struct MCOptions {
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 17;
  std::uint64_t chunk_size = 8192;
  int threads = 1;  // 0 means hardware concurrency
};

struct MCEstimate {
  std::complex<double> mean{0.0, 0.0};
  double stderr_re = 0.0, stderr_im = 0.0;
  std::uint64_t samples = 0, seed = 0, chunk_size = 0;

  double stderr_total() const;
};

// Deterministic chunked driver: per-chunk Welford moments, combined in chunk
// order, so results are bit-identical for every thread count.  f receives a
// Haar sample and writes n_outputs values.
std::vector<MCEstimate> mc_run(
    int n, std::size_t n_outputs,
    const std::function<void(const ComplexMatrix&, std::complex<double>*)>& f,
    const MCOptions& opts);

MCEstimate mc_perm_power(int n, const MCOptions& opts);     // E[perm(g)^n]
MCEstimate mc_entry_product(int n, const MCOptions& opts);  // E[prod_ij g_ij]

// Monte-Carlo coordinates of the projection of (perm)^n onto the weight-zero
// invariant direction: one estimate per weight_zero_power_basis(n) element,
// the expectation of prod_beta c_beta(g) with c_beta the coefficient word sum.
struct ProjectionEstimate {
  std::vector<SymBasisElement> basis;
  std::vector<MCEstimate> coefficients;
};
ProjectionEstimate mc_projection_power(int n, const MCOptions& opts);  // n <= 2

struct RatioReport {
  MCEstimate perm_power;
  MCEstimate entry_product;
  double ratio = 0.0;  // of the real means
  double sigma = 0.0;  // first-order propagated standard error
  Rat exact_ratio;     // apolar pairing ratio against det^n
  bool within_3sigma = false;
};
// Runs the two integrals on derived, distinct sub-seeds and checks the ratio
// against the exact pairing ratio.  n even, 2 <= n <= 4.
RatioReport ratio_consistency(int n, const MCOptions& opts);

}  // namespace atlas
