#pragma once

// Multi-modular inversion of integer matrices.
//
// The matrix is inverted modulo a run of word-sized primes and the
// determinant and adjugate are lifted back to Z by Chinese remaindering,
// with enough primes to cover twice the Hadamard bound. Unlucky primes
// (those dividing the determinant) are skipped for the adjugate.

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace aspe::detail {

struct IntegerInverse {
  mpz_class det;
  std::vector<mpz_class> adjugate;  // row-major n x n, adjugate = det * A^-1
};

/// std::nullopt when the matrix is singular.
std::optional<IntegerInverse> invert_multimodular(const std::vector<mpz_class>& a, std::size_t n);

}  // namespace aspe::detail
