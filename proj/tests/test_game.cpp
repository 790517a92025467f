#include <algorithm>
#include <mutex>
#include <set>
#include <string>

#include "aspe/error.hpp"
#include "aspe/game.hpp"
#include "doctest.h"

using namespace aspe;

namespace {

const GameConfig kD8{{8, 5, 5}, SamplingDomain{}, 0};

bool all_pairwise_distinct(const MultiMessage& mm) {
  for (std::size_t i = 0; i < mm.size(); ++i) {
    for (std::size_t j = i + 1; j < mm.size(); ++j) {
      if (mm[i] == mm[j]) return false;
    }
  }
  return true;
}

// First trial id under `master` whose verifier bit equals `bit`.
std::uint64_t find_trial_with_bit(std::uint64_t master, int bit) {
  for (std::uint64_t id = 0;; ++id) {
    Rng rng(trial_seed(master, id), static_cast<std::uint64_t>(Stream::kBit));
    if (rng.bit() == bit) return id;
  }
}

}  // namespace

TEST_SUITE("challenge messages") {
  TEST_CASE("d=8 default size eta+1") {
    Rng rng(1);
    const ChallengeMessages ch = build_challenge_messages(kD8.params, kD8.message_count(), kD8.domain, rng);
    REQUIRE(ch.a.size() == 20);
    REQUIRE(ch.b.size() == 20);
    for (const auto& m : ch.a) CHECK(m.values().is_zero());
    for (const auto& m : ch.b) CHECK(m.dim() == 8);
    CHECK(all_pairwise_distinct(ch.b));
  }

  TEST_CASE("minimal size 3*epsilon+1 is accepted, one less is not") {
    Rng rng(2);
    CHECK(build_challenge_messages(kD8.params, 16, kD8.domain, rng).b.size() == 16);
    CHECK_THROWS_AS(build_challenge_messages(kD8.params, 15, kD8.domain, rng), Error);
  }

  TEST_CASE("no duplicate rows in 100 seeded generations") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(seed);
      CHECK(all_pairwise_distinct(build_challenge_messages({2, 1, 1}, 30, SamplingDomain{}, rng).b));
    }
  }

  TEST_CASE("a domain with too few points cannot supply distinct messages") {
    Rng rng(3);
    // d = 1 over {-1, 0, 1}: only three distinct vectors exist.
    try {
      build_challenge_messages({1, 1, 1}, 4, SamplingDomain{1, 0}, rng);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidParams);
    }
  }
}

TEST_SUITE("trials") {
  TEST_CASE("b = 0 trial: adversary sees zero-message ciphertexts and answers 0") {
    const std::uint64_t id = find_trial_with_bit(5, 0);
    const GameTranscript t = run_trial(kD8, id, trial_seed(5, id));
    CHECK(t.record.b == 0);
    CHECK(t.record.b_prime == 0);
    REQUIRE(t.audit_key.has_value());
    for (const auto& ct : t.ciphertexts) CHECK(decrypt(*t.audit_key, ct).values().is_zero());
  }

  TEST_CASE("b = 1 trial: adversary answers 1") {
    const std::uint64_t id = find_trial_with_bit(5, 1);
    const GameTranscript t = run_trial(kD8, id, trial_seed(5, id));
    CHECK(t.record.b == 1);
    CHECK(t.record.b_prime == 1);
    REQUIRE(t.ciphertexts.size() == t.messages.b.size());
    for (std::size_t i = 0; i < t.ciphertexts.size(); ++i) {
      CHECK(decrypt(*t.audit_key, t.ciphertexts[i]) == t.messages.b[i]);
    }
  }

  TEST_CASE("same seed gives the same transcript") {
    const GameTranscript a = run_trial(kD8, 3, 99);
    const GameTranscript b = run_trial(kD8, 3, 99);
    Json ja = transcript_to_json(a);
    Json jb = transcript_to_json(b);
    ja.erase("attack_seconds");
    jb.erase("attack_seconds");
    CHECK(ja.dump() == jb.dump());
  }

  TEST_CASE("transcript keeps the key in the audit section only") {
    const Json j = transcript_to_json(run_trial({{2, 1, 1}, SamplingDomain{}, 0}, 0, 1));
    CHECK(j.contains("audit"));
    CHECK(j["audit"].contains("key"));
    CHECK_FALSE(j.contains("key"));
    CHECK(j["ciphertexts"]["vectors"].size() == 6);
  }
}

TEST_SUITE("batch") {
  TEST_CASE("advantage definition and perfect accuracy at d=8") {
    const BatchResult r = run_batch(kD8, 24, 7);
    CHECK(r.stats.trials == 24);
    CHECK(r.stats.correct == 24);
    CHECK(r.stats.accuracy == 1.0);
    CHECK(r.stats.advantage == std::abs(2.0 * r.stats.accuracy - 1.0));
    CHECK(r.stats.min_seconds <= r.stats.mean_seconds);
    CHECK(r.stats.mean_seconds <= r.stats.max_seconds);
    for (std::size_t i = 0; i < r.records.size(); ++i) CHECK(r.records[i].trial_id == i);
  }

  TEST_CASE("single trial gives accuracy 0 or 1") {
    const BatchStats s = run_batch(kD8, 1, 8).stats;
    CHECK((s.accuracy == 0.0 || s.accuracy == 1.0));
  }

  TEST_CASE("summary arithmetic on hand-made records") {
    std::vector<TrialRecord> recs(4);
    for (std::size_t i = 0; i < 4; ++i) {
      recs[i].b = static_cast<int>(i % 2);
      recs[i].b_prime = i == 3 ? 0 : recs[i].b;
      recs[i].attack_seconds = static_cast<double>(i + 1);
    }
    const BatchStats s = summarize(recs);
    CHECK(s.correct == 3);
    CHECK(s.zero_bits == 2);
    CHECK(s.accuracy == 0.75);
    CHECK(s.advantage == 0.5);
    CHECK(s.mean_seconds == 2.5);
    CHECK(s.min_seconds == 1.0);
    CHECK(s.max_seconds == 4.0);
  }

  TEST_CASE("worker count does not change the records") {
    const BatchResult one = run_batch(kD8, 12, 11, 1);
    const BatchResult four = run_batch(kD8, 12, 11, 4);
    CHECK(records_to_csv(one.records, false) == records_to_csv(four.records, false));
  }

  TEST_CASE("permuting trial seeds permutes records and keeps accuracy") {
    std::vector<std::uint64_t> seeds{101, 102, 103, 104, 105, 106};
    auto run = [&](const std::vector<std::uint64_t>& ss) {
      std::vector<TrialRecord> recs;
      for (std::size_t i = 0; i < ss.size(); ++i) recs.push_back(run_trial(kD8, i, ss[i]).record);
      return recs;
    };
    const auto forward = run(seeds);
    std::reverse(seeds.begin(), seeds.end());
    const auto backward = run(seeds);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const auto& f = forward[i];
      const auto& b = backward[seeds.size() - 1 - i];
      CHECK(f.seed == b.seed);
      CHECK(f.b == b.b);
      CHECK(f.b_prime == b.b_prime);
      CHECK(f.attack == b.attack);
    }
    CHECK(summarize(forward).accuracy == summarize(backward).accuracy);
  }

  TEST_CASE("transcript sink sees every trial once") {
    std::mutex mu;
    std::set<std::uint64_t> seen;
    run_batch(kD8, 6, 12, 3, [&](const GameTranscript& t) {
      std::lock_guard lock(mu);
      seen.insert(t.record.trial_id);
    });
    CHECK(seen == std::set<std::uint64_t>{0, 1, 2, 3, 4, 5});
  }

  TEST_CASE("CSV layout") {
    TrialRecord r;
    r.trial_id = 3;
    r.seed = 42;
    r.params = {8, 5, 5};
    r.b = 1;
    r.b_prime = 1;
    r.attack = {1, 0, 10, 15};
    r.attack_seconds = 0.5;
    const std::vector<TrialRecord> rs{r};
    const std::string header =
        "trial_id,seed,d,c,epsilon,b,b_prime,correct,in_span_cnt,not_in_span_cnt,attack_seconds\n";
    CHECK(records_to_csv(rs, false) == header + "3,42,8,5,5,1,1,1,0,10,\n");
    CHECK(records_to_csv(rs, true) == header + "3,42,8,5,5,1,1,1,0,10,0.5\n");
  }

  TEST_CASE("invalid batch requests") {
    CHECK_THROWS_AS(run_batch(kD8, 0, 1), Error);
    CHECK_THROWS_AS(run_batch({{4, 5, 5}, SamplingDomain{}, 0}, 1, 1), Error);
  }
}
