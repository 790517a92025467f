#pragma once

// JSON documents for keys, ciphertexts, and plaintexts. Every scalar is a
// "p/q" string; plain integer strings are accepted on input.
//
//   key:         {params:{d,c,epsilon}, domain:{bound,frac_bits}, s, w, m, m_inv}
//   ciphertexts: {eta, vectors:[[...], ...]}
//   plaintexts:  {d, vectors:[[...], ...]}

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "aspe/scheme.hpp"
#include "json.hpp"

namespace aspe {

using Json = nlohmann::ordered_json;

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& path);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& path);

Json key_to_json(const SecretKey& key);
/// Throws kParseError (with the offending field path) or kIntegrityError.
SecretKey key_from_json(const Json& j);

Json ciphertexts_to_json(std::size_t eta, std::span<const Ciphertext> cts);

struct CiphertextFile {
  std::size_t eta = 0;
  std::vector<Ciphertext> ciphertexts;
};
CiphertextFile ciphertexts_from_json(const Json& j);

Json plaintexts_to_json(std::size_t d, std::span<const Plaintext> messages);

struct PlaintextFile {
  std::size_t d = 0;
  std::vector<Plaintext> messages;
};
PlaintextFile plaintexts_from_json(const Json& j);

/// Throws kIoError or kParseError.
Json read_json_file(const std::filesystem::path& path);
/// Writes j.dump() plus a trailing newline. Throws kIoError.
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace aspe
