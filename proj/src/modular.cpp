#include "modular.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>

namespace aspe::detail {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Primes below 2^62, largest first. Shoup multiplication needs p < 2^63.
constexpr u64 kPrimeCeiling = u64{1} << 62;
constexpr std::size_t kBitsPerPrime = 61;  // floor(log2 p) for every prime in the list

u64 nth_prime(std::size_t index) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard lock(mu);
  u64 candidate = primes.empty() ? kPrimeCeiling - 1 : primes.back() - 2;
  mpz_class z;
  while (primes.size() <= index) {
    z = static_cast<unsigned long>(candidate);
    if (mpz_probab_prime_p(z.get_mpz_t(), 30) > 0) primes.push_back(candidate);
    candidate -= 2;
  }
  return primes[index];
}

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 base, u64 exp, u64 p) {
  u64 result = 1;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

// Multiplication by a fixed factor f with precomputed floor(f * 2^64 / p).
struct ShoupFactor {
  u64 f;
  u64 pre;

  ShoupFactor(u64 factor, u64 p) : f(factor), pre(static_cast<u64>((static_cast<u128>(factor) << 64) / p)) {}

  u64 times(u64 b, u64 p) const {
    const u64 q = static_cast<u64>((static_cast<u128>(pre) * b) >> 64);
    const u64 r = f * b - q * p;
    return r >= p ? r - p : r;
  }
};

u64 reduce(const mpz_class& x, u64 p) {
  const u64 r = mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p));
  return r;
}

// dst -= f * src over Z/p.
void subtract_multiple(u64* __restrict dst, const u64* __restrict src, std::size_t len, ShoupFactor f, u64 p) {
  for (std::size_t j = 0; j < len; ++j) {
    const u64 t = f.times(src[j], p);
    dst[j] = dst[j] >= t ? dst[j] - t : dst[j] + p - t;
  }
}

// Gauss-Jordan inverse of an n x n matrix over Z/p. Returns det(A) mod p;
// inverse is filled only when that is nonzero.
u64 invert_mod_p(const std::vector<u64>& a, std::size_t n, u64 p, std::vector<u64>& inverse) {
  const std::size_t width = 2 * n;
  std::vector<u64> w(n * width, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i * width + j] = a[i * n + j];
    w[i * width + n + i] = 1;
  }

  u64 det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && w[piv * width + k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < width; ++j) std::swap(w[piv * width + j], w[k * width + j]);
      det = det == 0 ? 0 : p - det;
    }
    u64* row_k = &w[k * width];
    det = mul_mod(det, row_k[k], p);
    // Columns of row k that can be nonzero: the rest of the left block and
    // the occupied stretch of the right block (about k + 1 columns).
    std::size_t right_lo = width;
    std::size_t right_hi = width;
    for (std::size_t j = n; j < width; ++j) {
      if (row_k[j] != 0) {
        right_lo = std::min(right_lo, j);
        right_hi = j + 1;
      }
    }
    const ShoupFactor scale(inv_mod(row_k[k], p), p);
    for (std::size_t j = k; j < n; ++j) row_k[j] = scale.times(row_k[j], p);
    for (std::size_t j = right_lo; j < right_hi; ++j) row_k[j] = scale.times(row_k[j], p);

    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      u64* row_i = &w[i * width];
      if (row_i[k] == 0) continue;
      const ShoupFactor f(row_i[k], p);
      subtract_multiple(row_i + k, row_k + k, n - k, f, p);
      subtract_multiple(row_i + right_lo, row_k + right_lo, right_hi - right_lo, f, p);
    }
  }

  inverse.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inverse[i * n + j] = w[i * width + n + j];
  }
  return det;
}

// Incremental Chinese remaindering of many values over a shared modulus.
class CrtAccumulator {
 public:
  explicit CrtAccumulator(std::size_t count) : values_(count) {}

  void add(u64 p, const std::vector<u64>& residues) {
    if (modulus_ == 1) {
      for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = static_cast<unsigned long>(residues[i]);
    } else {
      const u64 m_inv = inv_mod(reduce(modulus_, p), p);
      const ShoupFactor scale(m_inv, p);
      for (std::size_t i = 0; i < values_.size(); ++i) {
        const u64 current = reduce(values_[i], p);
        const u64 diff = residues[i] >= current ? residues[i] - current : residues[i] + p - current;
        const u64 t = scale.times(diff, p);
        if (t != 0) mpz_addmul_ui(values_[i].get_mpz_t(), modulus_.get_mpz_t(), static_cast<unsigned long>(t));
      }
    }
    modulus_ *= static_cast<unsigned long>(p);
  }

  // Values mapped into the symmetric range (-modulus/2, modulus/2].
  std::vector<mpz_class> symmetric() && {
    const mpz_class half = modulus_ / 2;
    for (auto& v : values_) {
      if (v > half) v -= modulus_;
    }
    return std::move(values_);
  }

 private:
  std::vector<mpz_class> values_;
  mpz_class modulus_ = 1;
};

// Bits of 2 * Hadamard bound: |det|, |adj_ij| <= prod_k max(1, ||row_k||).
std::size_t bound_bits(const std::vector<mpz_class>& a, std::size_t n) {
  std::size_t bits = 2;
  mpz_class norm2;
  for (std::size_t i = 0; i < n; ++i) {
    norm2 = 0;
    for (std::size_t j = 0; j < n; ++j) mpz_addmul(norm2.get_mpz_t(), a[i * n + j].get_mpz_t(), a[i * n + j].get_mpz_t());
    if (norm2 > 1) bits += (mpz_sizeinbase(norm2.get_mpz_t(), 2) + 1) / 2;
  }
  return bits;
}

}  // namespace

std::optional<IntegerInverse> invert_multimodular(const std::vector<mpz_class>& a, std::size_t n) {
  if (n == 0) return IntegerInverse{1, {}};
  const std::size_t needed_bits = bound_bits(a, n);

  CrtAccumulator det_crt(1);
  CrtAccumulator adj_crt(n * n);
  std::size_t all_bits = 0;
  std::size_t good_bits = 0;
  std::optional<bool> singular;

  std::vector<u64> a_mod(n * n);
  std::vector<u64> inverse;
  for (std::size_t idx = 0;; ++idx) {
    if (all_bits >= needed_bits && !singular) {
      mpz_class det = std::move(det_crt).symmetric().front();
      singular = det == 0;
      if (*singular) return std::nullopt;
    }
    if (singular && good_bits >= needed_bits) break;

    const u64 p = nth_prime(idx);
    for (std::size_t i = 0; i < n * n; ++i) a_mod[i] = reduce(a[i], p);
    const u64 det_p = invert_mod_p(a_mod, n, p, inverse);
    if (!singular) {
      det_crt.add(p, {det_p});
      all_bits += kBitsPerPrime;
    }
    if (det_p == 0) continue;

    const ShoupFactor scale(det_p, p);
    for (auto& x : inverse) x = scale.times(x, p);
    adj_crt.add(p, inverse);
    good_bits += kBitsPerPrime;
  }

  IntegerInverse out;
  out.adjugate = std::move(adj_crt).symmetric();
  // det * A^-1 = adj gives det = sum_j a_0j * adj_j0.
  for (std::size_t j = 0; j < n; ++j) mpz_addmul(out.det.get_mpz_t(), a[j].get_mpz_t(), out.adjugate[j * n].get_mpz_t());
  return out;
}

}  // namespace aspe::detail
