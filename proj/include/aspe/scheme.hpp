#pragma once

// The affine-shifted ASPE scheme under attack.
//
// A plaintext m of dimension d is padded to the row vector
//
//   (s_1 - 2 m_1, ..., s_d - 2 m_d, s_{d+1} + ||m||^2, w, z)
//
// of length eta = d + 1 + c + epsilon, where s and w are fixed secrets and z
// is a fresh nonce, and the ciphertext is that row times M^-1. Decryption
// multiplies back by M and reads m_j = (s_j - pad_j) / 2.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aspe/linalg.hpp"
#include "aspe/rng.hpp"

namespace aspe {

struct SchemeParams {
  std::size_t d = 0;
  std::size_t c = 5;
  std::size_t epsilon = 5;

  std::size_t eta() const noexcept { return d + 1 + c + epsilon; }

  /// Throws kInvalidParams unless d, c, epsilon are all >= 1.
  void validate() const;

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

/// The finite fixed-point grid {k / 2^frac_bits : |k| <= bound * 2^frac_bits}
/// from which every secret, nonce, and random message entry is drawn.
struct SamplingDomain {
  std::int64_t bound = 1000;
  unsigned frac_bits = 16;

  /// Throws kInvalidParams when bound < 1 or the grid does not fit in 62 bits.
  void validate() const;

  /// bound * 2^frac_bits
  std::int64_t max_numerator() const noexcept { return bound << frac_bits; }

  Scalar value(std::int64_t numerator) const;

  friend bool operator==(const SamplingDomain&, const SamplingDomain&) = default;
};

std::int64_t sample_numerator(const SamplingDomain& domain, Rng& rng);
Scalar sample_scalar(const SamplingDomain& domain, Rng& rng);
Vector sample_vector(std::size_t size, const SamplingDomain& domain, Rng& rng);

class Plaintext {
 public:
  Plaintext() = default;
  explicit Plaintext(Vector values) : values_(std::move(values)) {}

  const Vector& values() const noexcept { return values_; }
  std::size_t dim() const noexcept { return values_.size(); }

  friend bool operator==(const Plaintext&, const Plaintext&) = default;

 private:
  Vector values_;
};

class Ciphertext {
 public:
  Ciphertext() = default;
  explicit Ciphertext(Vector values) : values_(std::move(values)) {}

  const Vector& values() const noexcept { return values_; }
  std::size_t dim() const noexcept { return values_.size(); }

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;

 private:
  Vector values_;
};

using MultiMessage = std::vector<Plaintext>;

class SecretKey {
 public:
  /// Validates shapes against params and checks m * m_inv == I exactly.
  /// Throws kDimensionMismatch or kIntegrityError.
  static SecretKey from_parts(SchemeParams params, SamplingDomain domain, Vector s, Matrix m,
                              Matrix m_inv, Vector w);

  const SchemeParams& params() const noexcept { return params_; }
  const SamplingDomain& domain() const noexcept { return domain_; }
  const Vector& s() const noexcept { return s_; }
  const Matrix& m() const noexcept { return m_; }
  /// Canonical form of the cached inverse; built on each call.
  Matrix m_inv() const { return scaled_m_inv_.to_matrix(); }
  const Vector& w() const noexcept { return w_; }

  /// row * M^-1
  Vector apply_inverse(const Vector& row) const { return scaled_m_inv_.left_multiply(row); }
  /// row * M
  Vector apply_forward(const Vector& row) const { return scaled_m_.left_multiply(row); }

  friend bool operator==(const SecretKey& lhs, const SecretKey& rhs) {
    return lhs.params_ == rhs.params_ && lhs.domain_ == rhs.domain_ && lhs.s_ == rhs.s_ &&
           lhs.m_ == rhs.m_ && lhs.m_inv() == rhs.m_inv() && lhs.w_ == rhs.w_;
  }

 private:
  friend SecretKey keygen(const SchemeParams&, const SamplingDomain&, Rng&, int);

  SecretKey(SchemeParams params, SamplingDomain domain, Vector s, Matrix m, ScaledMatrix m_inv, Vector w);

  SchemeParams params_;
  SamplingDomain domain_;
  Vector s_;
  Matrix m_;
  Vector w_;
  ScaledMatrix scaled_m_;
  ScaledMatrix scaled_m_inv_;
};

inline constexpr int kDefaultKeygenAttempts = 16;

/// Samples s, M, w from the domain, resampling M wholesale until it is
/// invertible. Throws kKeygenExhausted after max_attempts singular draws.
SecretKey keygen(const SchemeParams& params, const SamplingDomain& domain, Rng& rng,
                 int max_attempts = kDefaultKeygenAttempts);

/// The pre-encryption row (s - 2m, s_{d+1} + ||m||^2, w, nonce).
Vector make_pad(const SecretKey& key, const Plaintext& m, const Vector& nonce);

/// Encrypts with a fresh nonce drawn from the key's sampling domain.
Ciphertext encrypt(const SecretKey& key, const Plaintext& m, Rng& rng);

/// Encrypts with a caller-supplied nonce of length epsilon.
Ciphertext encrypt_with_nonce(const SecretKey& key, const Plaintext& m, const Vector& nonce);

std::vector<Ciphertext> encrypt_multi(const SecretKey& key, std::span<const Plaintext> messages, Rng& rng);

/// ct * M, i.e. the pad that produced ct.
Vector recover_pad(const SecretKey& key, const Ciphertext& ct);

Plaintext decrypt(const SecretKey& key, const Ciphertext& ct);

}  // namespace aspe
