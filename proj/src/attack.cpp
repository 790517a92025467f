#include "aspe/attack.hpp"

#include <string>

#include "aspe/error.hpp"

namespace aspe {

DifferenceSet diff_ciphertexts(std::span<const Ciphertext> cts) {
  if (cts.size() < 2) {
    throw Error(ErrorCode::kTooFewCiphertexts, "need at least 2 ciphertexts, got " + std::to_string(cts.size()));
  }
  DifferenceSet out;
  out.deltas.reserve(cts.size() - 1);
  for (std::size_t i = 0; i + 1 < cts.size(); ++i) {
    if (cts[i + 1].dim() != cts[0].dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "ciphertext " + std::to_string(i + 1) + " has dimension " +
                                                     std::to_string(cts[i + 1].dim()) + ", expected " +
                                                     std::to_string(cts[0].dim()));
    }
    out.deltas.push_back(cts[i + 1].values() - cts[i].values());
  }
  return out;
}

std::size_t min_ciphertexts(const SchemeParams& params) { return 3 * params.epsilon + 1; }

AttackResult run_attack(std::span<const Ciphertext> cts, const SchemeParams& params) {
  params.validate();
  if (params.d + 1 <= params.epsilon) {
    throw Error(ErrorCode::kInvalidParams, "attack requires d + 1 > epsilon (d = " + std::to_string(params.d) +
                                               ", epsilon = " + std::to_string(params.epsilon) + ")");
  }
  const std::size_t needed = min_ciphertexts(params);
  if (cts.size() < needed) {
    throw Error(ErrorCode::kTooFewCiphertexts,
                "need at least " + std::to_string(needed) + " ciphertexts, got " + std::to_string(cts.size()));
  }
  for (std::size_t i = 0; i < cts.size(); ++i) {
    if (cts[i].dim() != params.eta()) {
      throw Error(ErrorCode::kDimensionMismatch, "ciphertext " + std::to_string(i) + " has dimension " +
                                                     std::to_string(cts[i].dim()) + ", expected eta = " +
                                                     std::to_string(params.eta()));
    }
  }

  // Only the first 3 * epsilon differences are ever inspected.
  const DifferenceSet diffs = diff_ciphertexts(cts.first(needed));
  const std::size_t eps = params.epsilon;

  // The seed differences go in unconditionally; a seed that is dependent on
  // the ones before it adds nothing to the span.
  Basis beta(params.eta());
  for (std::size_t i = 0; i < eps; ++i) {
    if (!beta.contains(diffs.deltas[i])) beta.insert(diffs.deltas[i]);
  }

  AttackResult result;
  for (std::size_t i = eps; i < 3 * eps; ++i) {
    if (beta.contains(diffs.deltas[i])) {
      ++result.in_span_cnt;
    } else {
      ++result.not_in_span_cnt;
      beta.insert(diffs.deltas[i]);
    }
  }
  result.guess = result.in_span_cnt >= eps ? 0 : 1;
  result.basis_final_rank = beta.rank();
  return result;
}

Json attack_result_to_json(const AttackResult& r) {
  Json j;
  j["guess"] = r.guess;
  j["in_span_cnt"] = r.in_span_cnt;
  j["not_in_span_cnt"] = r.not_in_span_cnt;
  j["basis_final_rank"] = r.basis_final_rank;
  return j;
}

}  // namespace aspe
