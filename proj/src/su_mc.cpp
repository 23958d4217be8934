#include "atlas/su_mc.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <thread>

#include "atlas/errors.hpp"
#include "atlas/poly.hpp"

namespace atlas {

/***************************** dense complex ops ****************************/

double ComplexMatrix::unitarity_defect() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::complex<double> s = 0.0;
      for (int k = 0; k < n; ++k) s += std::conj(at(k, i)) * at(k, j);
      if (i == j) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

std::complex<double> ComplexMatrix::determinant() const {
  std::vector<std::complex<double>> lu = a;
  auto e = [&](int i, int j) -> std::complex<double>& {
    return lu[static_cast<std::size_t>(i * n + j)];
  };
  std::complex<double> det = 1.0;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(e(r, c)) > std::abs(e(pivot, c))) pivot = r;
    if (std::abs(e(pivot, c)) == 0.0) return 0.0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(e(pivot, j), e(c, j));
      det = -det;
    }
    det *= e(c, c);
    for (int r = c + 1; r < n; ++r) {
      const std::complex<double> f = e(r, c) / e(c, c);
      for (int j = c + 1; j < n; ++j) e(r, j) -= f * e(c, j);
    }
  }
  return det;
}

/***************************** random streams *******************************/

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {
inline std::uint64_t rotl64(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
  SplitMix64 sm(seed);
  for (auto& w : s_) w = sm.next();
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is absorbing
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl64(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl64(s_[3], 45);
  return result;
}

double Xoshiro256pp::uniform01() {
  return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

double Xoshiro256pp::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(a);
  have_cached_ = true;
  return r * std::cos(a);
}

Xoshiro256pp chunk_stream(std::uint64_t seed, std::uint64_t chunk_index) {
  return Xoshiro256pp(seed + 0x9E3779B97F4A7C15ULL * (chunk_index + 1));
}

/***************************** Haar sampling ********************************/

ComplexMatrix haar_su(int n, Xoshiro256pp& rng) {
  if (n < 1 || n > 20) throw ValidationError("haar_su supports 1 <= n <= 20");
  if (n == 1) return ComplexMatrix{1, {std::complex<double>(1.0, 0.0)}};
  for (;;) {
    ComplexMatrix q;
    q.n = n;
    q.a.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (auto& z : q.a) z = std::complex<double>(rng.normal(), rng.normal());

    bool degenerate = false;
    for (int j = 0; j < n && !degenerate; ++j) {
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < j; ++i) {
          std::complex<double> proj = 0.0;
          for (int r = 0; r < n; ++r) proj += std::conj(q.at(r, i)) * q.at(r, j);
          for (int r = 0; r < n; ++r) q.at(r, j) -= proj * q.at(r, i);
        }
      }
      double nrm = 0.0;
      for (int r = 0; r < n; ++r) nrm += std::norm(q.at(r, j));
      nrm = std::sqrt(nrm);
      if (nrm < 1e-10) {
        degenerate = true;  // probability zero; redraw the whole matrix
        break;
      }
      for (int r = 0; r < n; ++r) q.at(r, j) /= nrm;
    }
    if (degenerate) continue;

    const std::complex<double> det = q.determinant();
    const double theta = std::arg(det);
    const std::complex<double> phase = std::polar(1.0, -theta / static_cast<double>(n));
    for (auto& z : q.a) z *= phase;
    return q;
  }
}

/***************************** permanent ************************************/

std::complex<double> permanent(const ComplexMatrix& m) {
  const int n = m.n;
  if (n < 1 || n > 20) throw ValidationError("permanent supports 1 <= n <= 20");
  std::vector<std::complex<double>> rowsum(static_cast<std::size_t>(n), 0.0);
  std::complex<double> total = 0.0;
  int size = 0;
  const std::uint32_t top = 1u << n;
  for (std::uint32_t k = 1; k < top; ++k) {
    // Gray-code order: subset g(k) = k ^ (k >> 1) differs from g(k-1) in bit
    // ctz(k); track the running subset through single column updates.
    const int j = std::countr_zero(k);
    const std::uint32_t gray = k ^ (k >> 1);
    if ((gray >> j) & 1) {
      for (int i = 0; i < n; ++i) rowsum[static_cast<std::size_t>(i)] += m.at(i, j);
      ++size;
    } else {
      for (int i = 0; i < n; ++i) rowsum[static_cast<std::size_t>(i)] -= m.at(i, j);
      --size;
    }
    std::complex<double> prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= rowsum[static_cast<std::size_t>(i)];
    if ((n - size) & 1)
      total -= prod;
    else
      total += prod;
  }
  return total;
}

/***************************** MC driver ************************************/

double MCEstimate::stderr_total() const { return std::hypot(stderr_re, stderr_im); }

namespace {

struct ChunkMoments {
  std::uint64_t count = 0;
  std::vector<double> mean_re, mean_im, m2_re, m2_im;

  explicit ChunkMoments(std::size_t outputs = 0)
      : mean_re(outputs, 0.0), mean_im(outputs, 0.0), m2_re(outputs, 0.0), m2_im(outputs, 0.0) {}

  void update(const std::complex<double>* vals, std::size_t outputs) {
    ++count;
    const double c = static_cast<double>(count);
    for (std::size_t j = 0; j < outputs; ++j) {
      const double dre = vals[j].real() - mean_re[j];
      mean_re[j] += dre / c;
      m2_re[j] += dre * (vals[j].real() - mean_re[j]);
      const double dim = vals[j].imag() - mean_im[j];
      mean_im[j] += dim / c;
      m2_im[j] += dim * (vals[j].imag() - mean_im[j]);
    }
  }

  // Chan's pairwise combination; applied left-to-right in chunk order.
  void absorb(const ChunkMoments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double ca = static_cast<double>(count), cb = static_cast<double>(o.count);
    const double tot = ca + cb;
    for (std::size_t j = 0; j < mean_re.size(); ++j) {
      const double dre = o.mean_re[j] - mean_re[j];
      mean_re[j] += dre * cb / tot;
      m2_re[j] += o.m2_re[j] + dre * dre * ca * cb / tot;
      const double dim = o.mean_im[j] - mean_im[j];
      mean_im[j] += dim * cb / tot;
      m2_im[j] += o.m2_im[j] + dim * dim * ca * cb / tot;
    }
    count += o.count;
  }
};

}  // namespace

std::vector<MCEstimate> mc_run(
    int n, std::size_t n_outputs,
    const std::function<void(const ComplexMatrix&, std::complex<double>*)>& f,
    const MCOptions& opts) {
  if (opts.samples < 2) throw ValidationError("need at least 2 samples for a standard error");
  if (opts.chunk_size < 1) throw ValidationError("chunk_size must be >= 1");
  if (n_outputs < 1) throw ValidationError("need at least one output");

  const std::uint64_t n_chunks = (opts.samples + opts.chunk_size - 1) / opts.chunk_size;
  std::vector<ChunkMoments> partials(static_cast<std::size_t>(n_chunks), ChunkMoments(n_outputs));

  auto run_chunk = [&](std::uint64_t c) {
    Xoshiro256pp rng = chunk_stream(opts.seed, c);
    const std::uint64_t begin = c * opts.chunk_size;
    const std::uint64_t end = std::min(begin + opts.chunk_size, opts.samples);
    ChunkMoments& acc = partials[static_cast<std::size_t>(c)];
    std::vector<std::complex<double>> vals(n_outputs);
    for (std::uint64_t s = begin; s < end; ++s) {
      const ComplexMatrix g = haar_su(n, rng);
      f(g, vals.data());
      acc.update(vals.data(), n_outputs);
    }
  };

  int threads = opts.threads;
  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n_chunks));
  if (threads == 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    auto work = [&]() {
      for (;;) {
        const std::uint64_t c = next.fetch_add(1);
        if (c >= n_chunks) break;
        run_chunk(c);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  ChunkMoments total(n_outputs);
  for (const auto& p : partials) total.absorb(p);

  std::vector<MCEstimate> out(n_outputs);
  const double cnt = static_cast<double>(total.count);
  for (std::size_t j = 0; j < n_outputs; ++j) {
    MCEstimate& e = out[j];
    e.mean = {total.mean_re[j], total.mean_im[j]};
    e.stderr_re = std::sqrt(total.m2_re[j] / (cnt * (cnt - 1.0)));
    e.stderr_im = std::sqrt(total.m2_im[j] / (cnt * (cnt - 1.0)));
    e.samples = total.count;
    e.seed = opts.seed;
    e.chunk_size = opts.chunk_size;
  }
  return out;
}

/***************************** integrands ***********************************/

MCEstimate mc_perm_power(int n, const MCOptions& opts) {
  if (n < 1 || n > 20) throw ValidationError("mc_perm_power supports 1 <= n <= 20");
  auto f = [n](const ComplexMatrix& g, std::complex<double>* vals) {
    const std::complex<double> p = permanent(g);
    std::complex<double> acc = 1.0;
    for (int i = 0; i < n; ++i) acc *= p;
    vals[0] = acc;
  };
  return mc_run(n, 1, f, opts)[0];
}

MCEstimate mc_entry_product(int n, const MCOptions& opts) {
  if (n < 1 || n > 20) throw ValidationError("mc_entry_product supports 1 <= n <= 20");
  auto f = [](const ComplexMatrix& g, std::complex<double>* vals) {
    std::complex<double> acc = 1.0;
    for (const auto& z : g.a) acc *= z;
    vals[0] = acc;
  };
  return mc_run(n, 1, f, opts)[0];
}

ProjectionEstimate mc_projection_power(int n, const MCOptions& opts) {
  if (n < 1) throw ValidationError("mc_projection_power needs n >= 1");
  if (n > 2)
    throw ResourceLimitError("mc_projection_power beyond n = 2 exceeds the per-sample budget");
  ProjectionEstimate pe;
  pe.basis = weight_zero_power_basis(n);

  // For each basis element, precompute the distinct letter words of every
  // group; c_beta(g) = sum over words of prod_j g[word_j][j].
  std::vector<std::vector<std::vector<std::vector<std::uint16_t>>>> words;
  words.reserve(pe.basis.size());
  for (const auto& b : pe.basis) {
    std::vector<std::vector<std::vector<std::uint16_t>>> group_words;
    for (const auto& g : b.groups()) {
      std::vector<std::vector<std::uint16_t>> ws;
      std::vector<std::uint16_t> w = g;
      do {
        ws.push_back(w);
      } while (std::next_permutation(w.begin(), w.end()));
      group_words.push_back(std::move(ws));
    }
    words.push_back(std::move(group_words));
  }

  auto f = [&words, n](const ComplexMatrix& g, std::complex<double>* vals) {
    for (std::size_t e = 0; e < words.size(); ++e) {
      std::complex<double> prod = 1.0;
      for (const auto& ws : words[e]) {
        std::complex<double> coeff = 0.0;
        for (const auto& w : ws) {
          std::complex<double> term = 1.0;
          for (int j = 0; j < n; ++j) term *= g.at(w[static_cast<std::size_t>(j)], j);
          coeff += term;
        }
        prod *= coeff;
      }
      vals[e] = prod;
    }
  };
  pe.coefficients = mc_run(n, pe.basis.size(), f, opts);
  return pe;
}

RatioReport ratio_consistency(int n, const MCOptions& opts) {
  if (n < 2 || n > 4 || n % 2 == 1)
    throw ValidationError("ratio_consistency supports even n in {2, 4}");
  MCOptions o1 = opts, o2 = opts;
  o1.seed = SplitMix64(opts.seed).next();
  o2.seed = SplitMix64(o1.seed).next();

  RatioReport r;
  r.perm_power = mc_perm_power(n, o1);
  r.entry_product = mc_entry_product(n, o2);

  const double pm = r.perm_power.mean.real(), em = r.entry_product.mean.real();
  r.ratio = pm / em;
  r.sigma = std::sqrt(std::pow(r.perm_power.stderr_re / em, 2) +
                      std::pow(pm * r.entry_product.stderr_re / (em * em), 2));

  const SparsePoly dn = poly_pow(det_poly(n), static_cast<unsigned>(n));
  const Rat top = apolar_pair(poly_pow(perm_poly(n), static_cast<unsigned>(n)), dn);
  const Rat bottom = apolar_pair(all_entries_monomial(n), dn);
  if (bottom == 0) throw InconsistencyError("entry-product pairing vanished for even n");
  r.exact_ratio = top / bottom;
  r.within_3sigma = std::abs(r.ratio - r.exact_ratio.get_d()) <= 3.0 * r.sigma;
  return r;
}

}  // namespace atlas
