#pragma once

// Ciphertext-only distinguisher.
//
// Consecutive ciphertext differences cancel s and w. When every plaintext is
// the same, a difference is (0, ..., 0, z_i - z_j) * M^-1 and so lies in the
// epsilon-dimensional row space of the last epsilon rows of M^-1. Distinct
// random plaintexts push the differences out of that subspace. The attack
// seeds a basis with epsilon differences, queries the next 2*epsilon, and
// guesses 0 ("all equal") when at least epsilon of them were already in span.
//
// Inputs are ciphertexts and public parameters only.

#include <cstddef>
#include <span>
#include <vector>

#include "aspe/scheme.hpp"
#include "aspe/serialize.hpp"

namespace aspe {

struct DifferenceSet {
  std::vector<Vector> deltas;  // deltas[i] = c[i+1] - c[i]
};

struct AttackResult {
  int guess = 0;
  std::size_t in_span_cnt = 0;
  std::size_t not_in_span_cnt = 0;
  std::size_t basis_final_rank = 0;

  friend bool operator==(const AttackResult&, const AttackResult&) = default;
};

/// Throws kTooFewCiphertexts for fewer than two inputs, kDimensionMismatch
/// for ragged inputs.
DifferenceSet diff_ciphertexts(std::span<const Ciphertext> cts);

/// 3 * epsilon + 1: enough for the epsilon seed differences and 2 * epsilon queries.
std::size_t min_ciphertexts(const SchemeParams& params);

/// Throws kTooFewCiphertexts, kInvalidParams (d + 1 <= epsilon), or
/// kDimensionMismatch.
AttackResult run_attack(std::span<const Ciphertext> cts, const SchemeParams& params);

Json attack_result_to_json(const AttackResult& r);

}  // namespace aspe
