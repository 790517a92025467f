#include "aspe/scheme.hpp"

#include <string>

#include "aspe/error.hpp"

namespace aspe {

namespace {

void expect_size(std::string_view what, std::size_t actual, std::size_t expected) {
  if (actual != expected) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " has dimension " +
                                                   std::to_string(actual) + ", expected " +
                                                   std::to_string(expected));
  }
}

}  // namespace

void SchemeParams::validate() const {
  if (d < 1 || c < 1 || epsilon < 1) {
    throw Error(ErrorCode::kInvalidParams, "d, c and epsilon must all be at least 1");
  }
}

void SamplingDomain::validate() const {
  if (bound < 1) throw Error(ErrorCode::kInvalidParams, "sampling bound must be at least 1");
  if (frac_bits > 61 || bound > (std::int64_t{1} << (61 - frac_bits))) {
    throw Error(ErrorCode::kInvalidParams, "sampling grid bound * 2^frac_bits exceeds 2^61");
  }
}

Scalar SamplingDomain::value(std::int64_t numerator) const {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, frac_bits);
  return make_scalar(Integer(static_cast<long>(numerator)), den);
}

std::int64_t sample_numerator(const SamplingDomain& domain, Rng& rng) {
  const std::int64_t k = domain.max_numerator();
  return rng.uniform_int(-k, k);
}

Scalar sample_scalar(const SamplingDomain& domain, Rng& rng) {
  return domain.value(sample_numerator(domain, rng));
}

Vector sample_vector(std::size_t size, const SamplingDomain& domain, Rng& rng) {
  Vector v(size);
  for (std::size_t i = 0; i < size; ++i) v[i] = sample_scalar(domain, rng);
  return v;
}

// ---------------------------------------------------------------------------
// SecretKey

SecretKey::SecretKey(SchemeParams params, SamplingDomain domain, Vector s, Matrix m, ScaledMatrix m_inv, Vector w)
    : params_(params),
      domain_(domain),
      s_(std::move(s)),
      m_(std::move(m)),
      w_(std::move(w)),
      scaled_m_(m_),
      scaled_m_inv_(std::move(m_inv)) {}

SecretKey SecretKey::from_parts(SchemeParams params, SamplingDomain domain, Vector s, Matrix m,
                                Matrix m_inv, Vector w) {
  params.validate();
  domain.validate();
  const std::size_t eta = params.eta();
  expect_size("s", s.size(), params.d + 1);
  expect_size("w", w.size(), params.c);
  expect_size("m rows", m.rows(), eta);
  expect_size("m cols", m.cols(), eta);
  expect_size("m_inv rows", m_inv.rows(), eta);
  expect_size("m_inv cols", m_inv.cols(), eta);

  SecretKey key(params, domain, std::move(s), std::move(m), ScaledMatrix(m_inv), std::move(w));
  for (std::size_t i = 0; i < eta; ++i) {
    if (key.apply_inverse(key.m_.row(i)) != Vector::unit(eta, i)) {
      throw Error(ErrorCode::kIntegrityError, "m * m_inv differs from the identity in row " + std::to_string(i));
    }
  }
  return key;
}

SecretKey keygen(const SchemeParams& params, const SamplingDomain& domain, Rng& rng, int max_attempts) {
  params.validate();
  domain.validate();
  const std::size_t eta = params.eta();

  Vector s = sample_vector(params.d + 1, domain, rng);
  Vector w = sample_vector(params.c, domain, rng);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Matrix m(eta, eta);
    for (std::size_t r = 0; r < eta; ++r) {
      for (std::size_t c = 0; c < eta; ++c) m(r, c) = sample_scalar(domain, rng);
    }
    try {
      ScaledMatrix m_inv = mat_invert_scaled(m);
      return SecretKey(params, domain, std::move(s), std::move(m), std::move(m_inv), std::move(w));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotInvertible) throw;
    }
  }
  throw Error(ErrorCode::kKeygenExhausted,
              "no invertible matrix after " + std::to_string(max_attempts) + " draws; sampling domain too small");
}

// ---------------------------------------------------------------------------
// Encryption

Vector make_pad(const SecretKey& key, const Plaintext& m, const Vector& nonce) {
  const SchemeParams& p = key.params();
  expect_size("plaintext", m.dim(), p.d);
  expect_size("nonce", nonce.size(), p.epsilon);

  Vector pad(p.eta());
  const Vector& x = m.values();
  for (std::size_t j = 0; j < p.d; ++j) pad[j] = key.s()[j] - 2 * x[j];
  pad[p.d] = key.s()[p.d] + squared_norm(x);
  for (std::size_t j = 0; j < p.c; ++j) pad[p.d + 1 + j] = key.w()[j];
  for (std::size_t j = 0; j < p.epsilon; ++j) pad[p.d + 1 + p.c + j] = nonce[j];
  return pad;
}

Ciphertext encrypt_with_nonce(const SecretKey& key, const Plaintext& m, const Vector& nonce) {
  return Ciphertext(key.apply_inverse(make_pad(key, m, nonce)));
}

Ciphertext encrypt(const SecretKey& key, const Plaintext& m, Rng& rng) {
  expect_size("plaintext", m.dim(), key.params().d);
  return encrypt_with_nonce(key, m, sample_vector(key.params().epsilon, key.domain(), rng));
}

std::vector<Ciphertext> encrypt_multi(const SecretKey& key, std::span<const Plaintext> messages, Rng& rng) {
  std::vector<Ciphertext> out;
  out.reserve(messages.size());
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (messages[i].dim() != key.params().d) {
      throw Error(ErrorCode::kDimensionMismatch, "message " + std::to_string(i) + " has dimension " +
                                                     std::to_string(messages[i].dim()) + ", expected " +
                                                     std::to_string(key.params().d));
    }
    out.push_back(encrypt(key, messages[i], rng));
  }
  return out;
}

Vector recover_pad(const SecretKey& key, const Ciphertext& ct) {
  expect_size("ciphertext", ct.dim(), key.params().eta());
  return key.apply_forward(ct.values());
}

Plaintext decrypt(const SecretKey& key, const Ciphertext& ct) {
  const Vector pad = recover_pad(key, ct);
  const std::size_t d = key.params().d;
  Vector m(d);
  for (std::size_t j = 0; j < d; ++j) m[j] = (key.s()[j] - pad[j]) / 2;
  return Plaintext(std::move(m));
}

}  // namespace aspe
