// aspe_coa: key generation, encryption, decryption, the ciphertext-only
// attack, and the indistinguishability game from the command line.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 data or
// integrity error.

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aspe/attack.hpp"
#include "aspe/error.hpp"
#include "aspe/game.hpp"
#include "aspe/scheme.hpp"
#include "aspe/serialize.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct RunConfig {
  std::size_t d = 0;
  std::size_t c = 5;
  std::size_t epsilon = 5;
  std::size_t trials = 512;
  std::size_t bench_trials = 16;
  std::uint64_t seed = 0;
  std::int64_t bound = 1000;
  unsigned frac_bits = 16;
  std::size_t n = 0;
  std::size_t workers = 1;
  std::string out;
  std::string key;
  std::string in;
  std::string summary;
  std::string audit_dir;
  std::vector<std::size_t> d_list{8, 16, 32, 64, 128};
  bool timing = false;

  aspe::SchemeParams params() const { return {d, c, epsilon}; }
  aspe::SamplingDomain domain() const { return {bound, frac_bits}; }
  aspe::GameConfig game(std::size_t dim) const { return {{dim, c, epsilon}, domain(), n}; }
};

void add_params(CLI::App* cmd, RunConfig& cfg, bool d_required) {
  auto* d = cmd->add_option("--d", cfg.d, "Plaintext dimension");
  if (d_required) d->required();
  cmd->add_option("--c", cfg.c, "Length of the secret vector w")->capture_default_str();
  cmd->add_option("--epsilon", cfg.epsilon, "Length of the nonce vector z")->capture_default_str();
}

void add_domain(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--bound", cfg.bound, "Sampling grid bound B")->capture_default_str();
  cmd->add_option("--frac-bits", cfg.frac_bits, "Sampling grid fractional bits f")->capture_default_str();
}

void emit_json(const std::string& path, const aspe::Json& j) {
  if (path.empty()) {
    std::cout << j.dump() << "\n";
  } else {
    aspe::write_json_file(path, j);
  }
}

void cmd_keygen(const RunConfig& cfg) {
  aspe::Rng rng(cfg.seed, static_cast<std::uint64_t>(aspe::Stream::kKey));
  const aspe::SecretKey key = aspe::keygen(cfg.params(), cfg.domain(), rng);
  aspe::write_json_file(cfg.out, aspe::key_to_json(key));
  std::cout << "eta=" << key.params().eta() << "\n";
}

void cmd_encrypt(const RunConfig& cfg) {
  const aspe::SecretKey key = aspe::key_from_json(aspe::read_json_file(cfg.key));
  const aspe::PlaintextFile input = aspe::plaintexts_from_json(aspe::read_json_file(cfg.in));
  if (input.d != key.params().d) {
    throw aspe::Error(aspe::ErrorCode::kDimensionMismatch, "message file has d = " + std::to_string(input.d) +
                                                               ", key has d = " + std::to_string(key.params().d));
  }
  aspe::Rng rng(cfg.seed, static_cast<std::uint64_t>(aspe::Stream::kNonces));
  const auto cts = aspe::encrypt_multi(key, input.messages, rng);
  emit_json(cfg.out, aspe::ciphertexts_to_json(key.params().eta(), cts));
}

void cmd_decrypt(const RunConfig& cfg) {
  const aspe::SecretKey key = aspe::key_from_json(aspe::read_json_file(cfg.key));
  const aspe::CiphertextFile input = aspe::ciphertexts_from_json(aspe::read_json_file(cfg.in));
  if (input.eta != key.params().eta()) {
    throw aspe::Error(aspe::ErrorCode::kDimensionMismatch, "ciphertext file has eta = " +
                                                               std::to_string(input.eta) + ", key has eta = " +
                                                               std::to_string(key.params().eta()));
  }
  std::vector<aspe::Plaintext> messages;
  messages.reserve(input.ciphertexts.size());
  for (const auto& ct : input.ciphertexts) messages.push_back(aspe::decrypt(key, ct));
  emit_json(cfg.out, aspe::plaintexts_to_json(key.params().d, messages));
}

// Reads ciphertexts and public parameters only.
void cmd_attack(const RunConfig& cfg) {
  const aspe::CiphertextFile input = aspe::ciphertexts_from_json(aspe::read_json_file(cfg.in));
  aspe::SchemeParams params = cfg.params();
  if (params.d == 0) {
    if (input.eta < 1 + params.c + params.epsilon + 1) {
      throw aspe::Error(aspe::ErrorCode::kInvalidParams,
                        "eta = " + std::to_string(input.eta) + " is too small for c and epsilon");
    }
    params.d = input.eta - 1 - params.c - params.epsilon;
  }
  if (params.eta() != input.eta) {
    throw aspe::Error(aspe::ErrorCode::kInvalidParams, "d + 1 + c + epsilon = " + std::to_string(params.eta()) +
                                                           " but the file has eta = " + std::to_string(input.eta));
  }
  emit_json(cfg.out, aspe::attack_result_to_json(aspe::run_attack(input.ciphertexts, params)));
}

void cmd_game(const RunConfig& cfg) {
  const aspe::GameConfig game = cfg.game(cfg.d);
  aspe::TranscriptSink sink;
  if (!cfg.audit_dir.empty()) {
    std::filesystem::create_directories(cfg.audit_dir);
    sink = [dir = std::filesystem::path(cfg.audit_dir)](const aspe::GameTranscript& t) {
      aspe::write_json_file(dir / ("trial_" + std::to_string(t.record.trial_id) + ".json"),
                            aspe::transcript_to_json(t));
    };
  }
  const aspe::BatchResult batch = aspe::run_batch(game, cfg.trials, cfg.seed, cfg.workers, sink);
  const std::string csv = aspe::records_to_csv(batch.records, cfg.timing);
  const aspe::Json summary = aspe::batch_summary_json(game, cfg.seed, batch.stats, cfg.timing);

  if (!cfg.summary.empty()) aspe::write_json_file(cfg.summary, summary);
  if (cfg.out.empty()) {
    std::cout << csv;
    std::cerr << summary.dump() << "\n";
  } else {
    aspe::write_text_file(cfg.out, csv);
    std::cout << summary.dump() << "\n";
  }
}

void cmd_bench(const RunConfig& cfg) {
  std::ostringstream csv;
  csv << "d,eta,trials,accuracy,mean_attack_seconds,min_attack_seconds,max_attack_seconds\n";
  std::cout << std::setw(5) << "d" << std::setw(6) << "eta" << std::setw(8) << "trials" << std::setw(10)
            << "accuracy" << std::setw(16) << "mean_attack_s" << std::setw(12) << "min_s" << std::setw(12)
            << "max_s" << "\n";
  for (const std::size_t d : cfg.d_list) {
    const aspe::GameConfig game = cfg.game(d);
    const aspe::BatchStats s = aspe::run_batch(game, cfg.bench_trials, cfg.seed, cfg.workers).stats;
    std::cout << std::setw(5) << d << std::setw(6) << game.params.eta() << std::setw(8) << s.trials
              << std::setw(10) << std::fixed << std::setprecision(4) << s.accuracy << std::setw(16)
              << std::setprecision(6) << s.mean_seconds << std::setw(12) << s.min_seconds << std::setw(12)
              << s.max_seconds << "\n"
              << std::defaultfloat;
    csv << d << ',' << game.params.eta() << ',' << s.trials << ',' << s.accuracy << ',' << s.mean_seconds << ','
        << s.min_seconds << ',' << s.max_seconds << '\n';
  }
  if (!cfg.out.empty()) aspe::write_text_file(cfg.out, csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine-shifted ASPE scheme and its ciphertext-only distinguisher"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* keygen = app.add_subcommand("keygen", "Generate a secret key");
  add_params(keygen, cfg, true);
  add_domain(keygen, cfg);
  keygen->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  keygen->add_option("--out", cfg.out, "Key file to write")->required();

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a plaintext file");
  encrypt->add_option("--key", cfg.key, "Key file")->required();
  encrypt->add_option("--in", cfg.in, "Plaintext file {d, vectors}")->required();
  encrypt->add_option("--out", cfg.out, "Ciphertext file (default: stdout)");
  encrypt->add_option("--seed", cfg.seed, "Nonce seed")->capture_default_str();

  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a ciphertext file");
  decrypt->add_option("--key", cfg.key, "Key file")->required();
  decrypt->add_option("--in", cfg.in, "Ciphertext file {eta, vectors}")->required();
  decrypt->add_option("--out", cfg.out, "Plaintext file (default: stdout)");

  auto* attack = app.add_subcommand("attack", "Run the distinguisher on a ciphertext file");
  add_params(attack, cfg, false);
  attack->add_option("--in", cfg.in, "Ciphertext file {eta, vectors}")->required();
  attack->add_option("--out", cfg.out, "Result file (default: stdout)");

  auto* game = app.add_subcommand("game", "Play the indistinguishability game repeatedly");
  add_params(game, cfg, true);
  add_domain(game, cfg);
  game->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str()->check(CLI::PositiveNumber);
  game->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  game->add_option("--n", cfg.n, "Multi-message size (default: eta + 1)");
  game->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  game->add_option("--out", cfg.out, "Per-trial CSV (default: stdout, summary to stderr)");
  game->add_option("--summary", cfg.summary, "Summary JSON file");
  game->add_option("--audit-dir", cfg.audit_dir, "Directory for full per-trial transcripts");
  game->add_flag("--timing", cfg.timing, "Record attack wall-clock times in the outputs");

  auto* bench = app.add_subcommand("bench", "Mean attack time per dimension");
  add_params(bench, cfg, false);
  add_domain(bench, cfg);
  bench->add_option("--d-list", cfg.d_list, "Dimensions to measure")->delimiter(',')->capture_default_str();
  bench->add_option("--trials", cfg.bench_trials, "Trials per dimension")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  bench->add_option("--n", cfg.n, "Multi-message size (default: eta + 1)");
  bench->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--out", cfg.out, "CSV copy of the table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*keygen) cmd_keygen(cfg);
    if (*encrypt) cmd_encrypt(cfg);
    if (*decrypt) cmd_decrypt(cfg);
    if (*attack) cmd_attack(cfg);
    if (*game) cmd_game(cfg);
    if (*bench) cmd_bench(cfg);
  } catch (const aspe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case aspe::ErrorCode::kInvalidParams:
      case aspe::ErrorCode::kKeygenExhausted:
        return kExitUsage;
      default:
        return kExitData;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
