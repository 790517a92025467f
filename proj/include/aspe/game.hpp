#pragma once

// Ciphertext-only indistinguishability game.
//
// The adversary submits two multi-messages (all zeros, and pairwise-distinct
// random vectors). The verifier draws a fresh key and a bit b, encrypts the
// chosen multi-message, and hands only the ciphertexts and public parameters
// to the adversary, whose guess b' is scored against b.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aspe/attack.hpp"
#include "aspe/scheme.hpp"
#include "aspe/serialize.hpp"

namespace aspe {

struct GameConfig {
  SchemeParams params;
  SamplingDomain domain;
  std::size_t n = 0;  // multi-message size; 0 means eta + 1

  std::size_t message_count() const { return n == 0 ? params.eta() + 1 : n; }
};

struct ChallengeMessages {
  MultiMessage a;  // n zero vectors
  MultiMessage b;  // n pairwise-distinct random vectors
};

/// Throws kInvalidParams when n < 3 * epsilon + 1 or when the domain is too
/// small to produce n distinct vectors.
ChallengeMessages build_challenge_messages(const SchemeParams& params, std::size_t n,
                                           const SamplingDomain& domain, Rng& rng);

/// One row of the per-trial CSV.
struct TrialRecord {
  std::uint64_t trial_id = 0;
  std::uint64_t seed = 0;
  SchemeParams params;
  int b = 0;
  int b_prime = 0;
  AttackResult attack;
  double attack_seconds = 0.0;

  bool correct() const noexcept { return b == b_prime; }
};

struct GameTranscript {
  TrialRecord record;
  std::size_t n = 0;
  ChallengeMessages messages;
  std::vector<Ciphertext> ciphertexts;  // adversary view
  std::optional<SecretKey> audit_key;   // never passed to the attack
};

/// Stream tags for the per-trial random streams.
enum class Stream : std::uint64_t { kKey = 1, kBit = 2, kMessages = 3, kNonces = 4 };

/// Seed of trial `trial_id` in a batch rooted at master_seed.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_id);

GameTranscript run_trial(const GameConfig& config, std::uint64_t trial_id, std::uint64_t seed);

struct BatchStats {
  std::size_t trials = 0;
  std::size_t correct = 0;
  std::size_t zero_bits = 0;  // trials with b = 0
  double accuracy = 0.0;
  double advantage = 0.0;  // |2 * accuracy - 1|
  double mean_seconds = 0.0;
  double min_seconds = 0.0;
  double max_seconds = 0.0;
};

BatchStats summarize(std::span<const TrialRecord> records);

struct BatchResult {
  std::vector<TrialRecord> records;  // ordered by trial_id
  BatchStats stats;
};

/// Called once per finished trial. With workers > 1 it runs on worker
/// threads, concurrently with itself.
using TranscriptSink = std::function<void(const GameTranscript&)>;

/// Runs trials 0..trials-1 with seeds trial_seed(master_seed, id). Results
/// do not depend on the worker count.
BatchResult run_batch(const GameConfig& config, std::size_t trials, std::uint64_t master_seed,
                      std::size_t workers = 1, const TranscriptSink& sink = {});

/// Per-trial CSV. attack_seconds cells are left empty unless with_timing,
/// which keeps the default output byte-stable.
std::string records_to_csv(std::span<const TrialRecord> records, bool with_timing);

Json batch_summary_json(const GameConfig& config, std::uint64_t master_seed, const BatchStats& stats,
                        bool with_timing);

Json transcript_to_json(const GameTranscript& t);

}  // namespace aspe
