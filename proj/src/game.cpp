#include "aspe/game.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "aspe/error.hpp"

namespace aspe {

namespace {

constexpr int kDistinctRetries = 64;

Rng stream(std::uint64_t seed, Stream s) { return Rng(seed, static_cast<std::uint64_t>(s)); }

}  // namespace

ChallengeMessages build_challenge_messages(const SchemeParams& params, std::size_t n,
                                           const SamplingDomain& domain, Rng& rng) {
  params.validate();
  domain.validate();
  if (n < 3 * params.epsilon + 1) {
    throw Error(ErrorCode::kInvalidParams, "multi-message size " + std::to_string(n) + " is below 3*epsilon+1 = " +
                                               std::to_string(3 * params.epsilon + 1));
  }

  ChallengeMessages out;
  out.a.assign(n, Plaintext(Vector::zeros(params.d)));
  out.b.reserve(n);

  std::set<std::vector<std::int64_t>> seen;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> numerators(params.d);
    int attempt = 0;
    do {
      if (attempt++ == kDistinctRetries) {
        throw Error(ErrorCode::kInvalidParams, "sampling domain too small for " + std::to_string(n) +
                                                   " distinct messages");
      }
      for (auto& k : numerators) k = sample_numerator(domain, rng);
    } while (!seen.insert(numerators).second);

    Vector v(params.d);
    for (std::size_t j = 0; j < params.d; ++j) v[j] = domain.value(numerators[j]);
    out.b.emplace_back(std::move(v));
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_id) {
  return derive_seed(master_seed, trial_id);
}

GameTranscript run_trial(const GameConfig& config, std::uint64_t trial_id, std::uint64_t seed) {
  const SchemeParams& params = config.params;
  GameTranscript t;
  t.n = config.message_count();
  t.record.trial_id = trial_id;
  t.record.seed = seed;
  t.record.params = params;

  // Adversary: choose the two multi-messages.
  Rng message_rng = stream(seed, Stream::kMessages);
  t.messages = build_challenge_messages(params, t.n, config.domain, message_rng);

  // Verifier: fresh key, secret bit, encryption of the chosen multi-message.
  Rng key_rng = stream(seed, Stream::kKey);
  Rng bit_rng = stream(seed, Stream::kBit);
  Rng nonce_rng = stream(seed, Stream::kNonces);
  SecretKey key = keygen(params, config.domain, key_rng);
  t.record.b = bit_rng.bit();
  t.ciphertexts = encrypt_multi(key, t.record.b == 0 ? t.messages.a : t.messages.b, nonce_rng);
  t.audit_key.emplace(std::move(key));

  // Adversary: ciphertexts and public parameters only.
  const auto start = std::chrono::steady_clock::now();
  t.record.attack = run_attack(t.ciphertexts, params);
  const auto stop = std::chrono::steady_clock::now();
  t.record.attack_seconds = std::chrono::duration<double>(stop - start).count();
  t.record.b_prime = t.record.attack.guess;
  return t;
}

BatchStats summarize(std::span<const TrialRecord> records) {
  BatchStats s;
  s.trials = records.size();
  if (records.empty()) return s;
  double total = 0.0;
  s.min_seconds = records.front().attack_seconds;
  s.max_seconds = records.front().attack_seconds;
  for (const auto& r : records) {
    s.correct += r.correct() ? 1 : 0;
    s.zero_bits += r.b == 0 ? 1 : 0;
    total += r.attack_seconds;
    s.min_seconds = std::min(s.min_seconds, r.attack_seconds);
    s.max_seconds = std::max(s.max_seconds, r.attack_seconds);
  }
  s.accuracy = static_cast<double>(s.correct) / static_cast<double>(s.trials);
  s.advantage = std::abs(2.0 * s.accuracy - 1.0);
  s.mean_seconds = total / static_cast<double>(s.trials);
  return s;
}

BatchResult run_batch(const GameConfig& config, std::size_t trials, std::uint64_t master_seed,
                      std::size_t workers, const TranscriptSink& sink) {
  if (trials < 1) throw Error(ErrorCode::kInvalidParams, "trials must be at least 1");
  config.params.validate();
  if (config.params.d + 1 <= config.params.epsilon) {
    throw Error(ErrorCode::kInvalidParams, "the game requires d + 1 > epsilon");
  }
  workers = std::clamp<std::size_t>(workers, 1, trials);

  BatchResult result;
  result.records.resize(trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t id = next.fetch_add(1);
      if (id >= trials) return;
      try {
        GameTranscript t = run_trial(config, id, trial_seed(master_seed, id));
        if (sink) sink(t);
        result.records[id] = t.record;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(trials);
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  result.stats = summarize(result.records);
  return result;
}

std::string records_to_csv(std::span<const TrialRecord> records, bool with_timing) {
  std::ostringstream out;
  out << "trial_id,seed,d,c,epsilon,b,b_prime,correct,in_span_cnt,not_in_span_cnt,attack_seconds\n";
  for (const auto& r : records) {
    out << r.trial_id << ',' << r.seed << ',' << r.params.d << ',' << r.params.c << ',' << r.params.epsilon << ','
        << r.b << ',' << r.b_prime << ',' << (r.correct() ? 1 : 0) << ',' << r.attack.in_span_cnt << ','
        << r.attack.not_in_span_cnt << ',';
    if (with_timing) out << r.attack_seconds;
    out << '\n';
  }
  return out.str();
}

Json batch_summary_json(const GameConfig& config, std::uint64_t master_seed, const BatchStats& stats,
                        bool with_timing) {
  Json j;
  j["params"] = {{"d", config.params.d}, {"c", config.params.c}, {"epsilon", config.params.epsilon},
                 {"eta", config.params.eta()}};
  j["domain"] = {{"bound", config.domain.bound}, {"frac_bits", config.domain.frac_bits}};
  j["n"] = config.message_count();
  j["master_seed"] = master_seed;
  j["trials"] = stats.trials;
  j["correct"] = stats.correct;
  j["zero_bits"] = stats.zero_bits;
  j["accuracy"] = stats.accuracy;
  j["advantage"] = stats.advantage;
  if (with_timing) {
    j["attack_seconds"] = {{"mean", stats.mean_seconds}, {"min", stats.min_seconds}, {"max", stats.max_seconds}};
  }
  return j;
}

Json transcript_to_json(const GameTranscript& t) {
  const TrialRecord& r = t.record;
  Json j;
  j["trial_id"] = r.trial_id;
  j["seed"] = r.seed;
  j["params"] = {{"d", r.params.d}, {"c", r.params.c}, {"epsilon", r.params.epsilon}};
  j["n"] = t.n;
  j["b"] = r.b;
  j["multi_message_a"] = plaintexts_to_json(r.params.d, t.messages.a);
  j["multi_message_b"] = plaintexts_to_json(r.params.d, t.messages.b);
  j["ciphertexts"] = ciphertexts_to_json(r.params.eta(), t.ciphertexts);
  j["adversary_guess"] = r.b_prime;
  j["attack"] = attack_result_to_json(r.attack);
  j["attack_seconds"] = r.attack_seconds;
  if (t.audit_key) j["audit"] = {{"key", key_to_json(*t.audit_key)}};
  return j;
}

}  // namespace aspe
