#include <set>
#include <string>
#include <vector>

#include "aspe/error.hpp"
#include "aspe/scheme.hpp"
#include "aspe/serialize.hpp"
#include "doctest.h"

using namespace aspe;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected aspe::Error");
  return ErrorCode::kIoError;
}

Scalar q(const char* s) { return scalar_from_string(s); }

Vector vec(std::initializer_list<const char*> xs) {
  Vector v(xs.size());
  std::size_t i = 0;
  for (const char* x : xs) v[i++] = q(x);
  return v;
}

bool on_grid(const Scalar& x, const SamplingDomain& dom) {
  const Scalar scaled = x * Scalar(Integer(1) << dom.frac_bits);
  return scaled.get_den() == 1 && abs(scaled.get_num()) <= dom.max_numerator();
}

// d = 1, c = 1, epsilon = 1 with hand-picked secrets. Expected values come
// from tests/oracle/worked_instance.py (adjugate inverse, Python fractions).
struct WorkedInstance {
  SchemeParams params{1, 1, 1};
  Matrix m{{2, 1, 0, 1}, {1, 3, 1, 0}, {0, 1, 4, 1}, {1, 0, 1, 5}};
  Vector s = vec({"3/2", "-1"});
  Vector w = vec({"5"});
  Plaintext m0{vec({"7/4"})};
  Vector z0 = vec({"2"});
  Plaintext m1{vec({"-1/2"})};
  Vector z1 = vec({"-3"});

  Matrix expected_inverse() const {
    return Matrix::from_rows(std::vector<Vector>{
        vec({"13/18", "-5/18", "1/9", "-1/6"}),
        vec({"-5/18", "17/36", "-5/36", "1/12"}),
        vec({"1/9", "-5/36", "11/36", "-1/12"}),
        vec({"-1/6", "1/12", "-1/12", "1/4"}),
    });
  }

  SecretKey key() const { return SecretKey::from_parts(params, SamplingDomain{}, s, m, mat_invert(m), w); }
};

}  // namespace

TEST_SUITE("params") {
  TEST_CASE("eta = d + 1 + c + epsilon") {
    CHECK(SchemeParams{8, 5, 5}.eta() == 19);
    CHECK(SchemeParams{128, 5, 5}.eta() == 139);
  }

  TEST_CASE("zero-sized parameters are invalid") {
    CHECK(code_of([] { SchemeParams{0, 5, 5}.validate(); }) == ErrorCode::kInvalidParams);
    CHECK(code_of([] { SchemeParams{8, 0, 5}.validate(); }) == ErrorCode::kInvalidParams);
    CHECK(code_of([] { SchemeParams{8, 5, 0}.validate(); }) == ErrorCode::kInvalidParams);
  }

  TEST_CASE("sampling domain limits") {
    CHECK_NOTHROW(SamplingDomain{}.validate());
    CHECK(code_of([] { SamplingDomain{0, 16}.validate(); }) == ErrorCode::kInvalidParams);
    CHECK(code_of([] { SamplingDomain{1 << 20, 60}.validate(); }) == ErrorCode::kInvalidParams);
  }
}

TEST_SUITE("keygen") {
  TEST_CASE("d=8, c=eps=5 key shapes") {
    Rng rng(1);
    const SecretKey key = keygen({8, 5, 5}, SamplingDomain{}, rng);
    CHECK(key.m().rows() == 19);
    CHECK(key.m().cols() == 19);
    CHECK(key.s().size() == 9);
    CHECK(key.w().size() == 5);
    CHECK(key.m() * key.m_inv() == Matrix::identity(19));
  }

  TEST_CASE("all secrets lie on the sampling grid") {
    Rng rng(2);
    const SamplingDomain dom{50, 4};
    const SecretKey key = keygen({3, 2, 2}, dom, rng);
    for (const auto& x : key.s()) CHECK(on_grid(x, dom));
    for (const auto& x : key.w()) CHECK(on_grid(x, dom));
    for (std::size_t r = 0; r < key.m().rows(); ++r) {
      for (std::size_t c = 0; c < key.m().cols(); ++c) CHECK(on_grid(key.m()(r, c), dom));
    }
  }

  TEST_CASE("fixed seed gives byte-identical keys") {
    Rng a(42);
    Rng b(42);
    const std::string ka = key_to_json(keygen({2, 1, 1}, SamplingDomain{}, a)).dump();
    const std::string kb = key_to_json(keygen({2, 1, 1}, SamplingDomain{}, b)).dump();
    CHECK(ka == kb);
    Rng c(43);
    CHECK(key_to_json(keygen({2, 1, 1}, SamplingDomain{}, c)).dump() != ka);
  }

  TEST_CASE("a tiny domain exhausts the retry budget") {
    // Over {-1, 0, 1} a 4x4 draw is singular often enough to find a seed whose
    // only permitted draw fails.
    int exhausted = 0;
    int succeeded = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Rng rng(seed);
      try {
        keygen({1, 1, 1}, SamplingDomain{1, 0}, rng, 1);
        ++succeeded;
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kKeygenExhausted);
        ++exhausted;
      }
    }
    CHECK(exhausted > 0);
    CHECK(succeeded > 0);
  }
}

TEST_SUITE("encrypt") {
  TEST_CASE("identity matrix and zero shift expose the pad") {
    const SchemeParams p{3, 2, 2};
    const Vector w = vec({"5/2", "-7"});
    const SecretKey key = SecretKey::from_parts(p, SamplingDomain{}, Vector::zeros(4), Matrix::identity(p.eta()),
                                                Matrix::identity(p.eta()), w);
    const Ciphertext ct = encrypt_with_nonce(key, Plaintext(Vector::zeros(3)), Vector::zeros(2));
    CHECK(ct.values() == vec({"0", "0", "0", "0", "5/2", "-7", "0", "0"}));
  }

  TEST_CASE("worked instance matches the adjugate oracle") {
    const WorkedInstance wi;
    CHECK(mat_invert(wi.m) == wi.expected_inverse());
    const SecretKey key = wi.key();
    CHECK(make_pad(key, wi.m0, wi.z0) == vec({"-2", "33/16", "5", "2"}));
    CHECK(make_pad(key, wi.m1, wi.z1) == vec({"5/2", "-3/4", "5", "-3"}));
    const Ciphertext c0 = encrypt_with_nonce(key, wi.m0, wi.z0);
    const Ciphertext c1 = encrypt_with_nonce(key, wi.m1, wi.z1);
    CHECK(c0.values() == vec({"-517/288", "577/576", "491/576", "113/192"}));
    CHECK(c1.values() == vec({"221/72", "-287/144", "311/144", "-79/48"}));
    CHECK(decrypt(key, c0) == wi.m0);
    CHECK(decrypt(key, c1) == wi.m1);
  }

  TEST_CASE("fresh nonces make repeated encryptions differ") {
    Rng key_rng(9);
    const SecretKey key = keygen({4, 2, 2}, SamplingDomain{}, key_rng);
    const Plaintext m(vec({"1", "2", "3", "4"}));
    Rng rng(10);
    const Ciphertext a = encrypt(key, m, rng);
    const Ciphertext b = encrypt(key, m, rng);
    CHECK(a != b);
    CHECK(decrypt(key, a) == m);
    CHECK(decrypt(key, b) == m);
  }

  TEST_CASE("nonces are pairwise distinct across 200 encryptions") {
    Rng key_rng(12);
    const SchemeParams p{2, 1, 2};
    const SecretKey key = keygen(p, SamplingDomain{}, key_rng);
    Rng rng(13);
    std::set<std::string> nonces;
    for (int i = 0; i < 200; ++i) {
      const Vector pad = recover_pad(key, encrypt(key, Plaintext(Vector::zeros(2)), rng));
      nonces.insert(vector_to_json(pad.slice(p.d + 1 + p.c, p.epsilon)).dump());
    }
    CHECK(nonces.size() == 200);
  }

  TEST_CASE("encrypt_multi") {
    Rng key_rng(14);
    const SchemeParams p{8, 5, 5};
    const SecretKey key = keygen(p, SamplingDomain{}, key_rng);
    Rng rng(15);

    const std::vector<Plaintext> zeros(p.eta() + 1, Plaintext(Vector::zeros(8)));
    const auto cts = encrypt_multi(key, zeros, rng);
    REQUIRE(cts.size() == 20);
    for (const auto& ct : cts) CHECK(ct.dim() == 19);

    CHECK(encrypt_multi(key, std::vector<Plaintext>{}, rng).empty());

    Rng msg_rng(16);
    std::vector<Plaintext> distinct;
    for (int i = 0; i < 3; ++i) distinct.emplace_back(sample_vector(8, key.domain(), msg_rng));
    const auto three = encrypt_multi(key, distinct, rng);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(decrypt(key, three[i]) == distinct[i]);
      for (std::size_t j = i + 1; j < 3; ++j) CHECK(three[i] != three[j]);
    }
  }

  TEST_CASE("same seeds give the same ciphertexts") {
    Rng k1(20);
    Rng k2(20);
    const SecretKey a = keygen({3, 1, 1}, SamplingDomain{}, k1);
    const SecretKey b = keygen({3, 1, 1}, SamplingDomain{}, k2);
    Rng n1(21);
    Rng n2(21);
    const Plaintext m(vec({"1/2", "0", "-3"}));
    CHECK(encrypt(a, m, n1) == encrypt(b, m, n2));
  }

  TEST_CASE("dimension errors") {
    Rng rng(22);
    const SecretKey key = keygen({3, 1, 1}, SamplingDomain{}, rng);
    CHECK(code_of([&] { encrypt(key, Plaintext(Vector::zeros(2)), rng); }) == ErrorCode::kDimensionMismatch);
    CHECK(code_of([&] { decrypt(key, Ciphertext(Vector::zeros(5))); }) == ErrorCode::kDimensionMismatch);
    CHECK(code_of([&] { encrypt_with_nonce(key, Plaintext(Vector::zeros(3)), Vector::zeros(2)); }) ==
          ErrorCode::kDimensionMismatch);
    const std::vector<Plaintext> mixed{Plaintext(Vector::zeros(3)), Plaintext(Vector::zeros(4))};
    CHECK(code_of([&] { encrypt_multi(key, mixed, rng); }) == ErrorCode::kDimensionMismatch);
  }
}

TEST_SUITE("decrypt") {
  TEST_CASE("round trip over random keys and plaintexts") {
    Rng rng(31);
    for (const std::size_t d : {1u, 2u, 8u, 32u}) {
      const SchemeParams p{d, 5, 5};
      for (int k = 0; k < 3; ++k) {
        const SecretKey key = keygen(p, SamplingDomain{}, rng);
        for (int i = 0; i < 10; ++i) {
          const Plaintext m(sample_vector(d, key.domain(), rng));
          CAPTURE(d);
          CHECK(decrypt(key, encrypt(key, m, rng)) == m);
        }
      }
    }
  }

  TEST_CASE("zero plaintext round trips") {
    Rng rng(32);
    const SecretKey key = keygen({8, 5, 5}, SamplingDomain{}, rng);
    const Plaintext zero(Vector::zeros(8));
    CHECK(decrypt(key, encrypt(key, zero, rng)) == zero);
  }

  TEST_CASE("ciphertext differences cancel s and w") {
    Rng rng(33);
    const SchemeParams p{6, 3, 2};
    const SecretKey key = keygen(p, SamplingDomain{}, rng);
    for (int i = 0; i < 10; ++i) {
      const Plaintext a(sample_vector(p.d, key.domain(), rng));
      const Plaintext b(sample_vector(p.d, key.domain(), rng));
      const Vector diff_pad = recover_pad(key, Ciphertext(encrypt(key, a, rng).values() - encrypt(key, b, rng).values()));
      CHECK(diff_pad.slice(p.d + 1, p.c).is_zero());
      // The data slots carry -2 (a - b) and the norm slot ||a||^2 - ||b||^2.
      CHECK(diff_pad.slice(0, p.d) == (a.values() - b.values()) * Scalar(-2));
      CHECK(diff_pad[p.d] == squared_norm(a.values()) - squared_norm(b.values()));
    }
  }
}
