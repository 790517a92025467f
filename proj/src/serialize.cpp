#include "aspe/serialize.hpp"

#include <fstream>
#include <sstream>

#include "aspe/error.hpp"

namespace aspe {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::kParseError, path + ": " + why);
}

const Json& field(const Json& j, const char* name, const std::string& path) {
  if (!j.is_object()) parse_fail(path, "expected an object");
  const auto it = j.find(name);
  if (it == j.end()) parse_fail(path + "." + name, "missing field");
  return *it;
}

std::uint64_t count_field(const Json& j, const char* name, const std::string& path) {
  const Json& v = field(j, name, path);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    parse_fail(path + "." + name, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

Scalar scalar_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) parse_fail(path, "expected a \"p/q\" string");
  try {
    return scalar_from_string(j.get_ref<const std::string&>());
  } catch (const Error& e) {
    parse_fail(path, e.what());
  }
}

std::vector<Vector> rows_from_json(const Json& j, const std::string& path, std::size_t width) {
  if (!j.is_array()) parse_fail(path, "expected an array of rows");
  std::vector<Vector> rows;
  rows.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    Vector row = vector_from_json(j[i], row_path);
    if (row.size() != width) {
      throw Error(ErrorCode::kDimensionMismatch, row_path + ": row has dimension " + std::to_string(row.size()) +
                                                     ", expected " + std::to_string(width));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_string(x));
  return out;
}

Vector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = scalar_from_json(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) parse_fail(path, "expected a non-empty array of rows");
  const std::size_t width = j.front().is_array() ? j.front().size() : 0;
  const auto rows = rows_from_json(j, path, width);
  return Matrix::from_rows(rows);
}

Json key_to_json(const SecretKey& key) {
  Json j;
  j["params"] = {{"d", key.params().d}, {"c", key.params().c}, {"epsilon", key.params().epsilon}};
  j["domain"] = {{"bound", key.domain().bound}, {"frac_bits", key.domain().frac_bits}};
  j["s"] = vector_to_json(key.s());
  j["w"] = vector_to_json(key.w());
  j["m"] = matrix_to_json(key.m());
  j["m_inv"] = matrix_to_json(key.m_inv());
  return j;
}

SecretKey key_from_json(const Json& j) {
  const Json& params_json = field(j, "params", "key");
  SchemeParams params;
  params.d = count_field(params_json, "d", "key.params");
  params.c = count_field(params_json, "c", "key.params");
  params.epsilon = count_field(params_json, "epsilon", "key.params");

  const Json& domain_json = field(j, "domain", "key");
  SamplingDomain domain;
  const Json& bound = field(domain_json, "bound", "key.domain");
  if (!bound.is_number_integer()) parse_fail("key.domain.bound", "expected an integer");
  domain.bound = bound.get<std::int64_t>();
  domain.frac_bits = static_cast<unsigned>(count_field(domain_json, "frac_bits", "key.domain"));

  return SecretKey::from_parts(params, domain, vector_from_json(field(j, "s", "key"), "key.s"),
                               matrix_from_json(field(j, "m", "key"), "key.m"),
                               matrix_from_json(field(j, "m_inv", "key"), "key.m_inv"),
                               vector_from_json(field(j, "w", "key"), "key.w"));
}

Json ciphertexts_to_json(std::size_t eta, std::span<const Ciphertext> cts) {
  Json j;
  j["eta"] = eta;
  j["vectors"] = Json::array();
  for (const auto& ct : cts) {
    if (ct.dim() != eta) throw Error(ErrorCode::kDimensionMismatch, "ciphertext dimension differs from eta");
    j["vectors"].push_back(vector_to_json(ct.values()));
  }
  return j;
}

CiphertextFile ciphertexts_from_json(const Json& j) {
  CiphertextFile out;
  out.eta = count_field(j, "eta", "ciphertexts");
  for (auto& row : rows_from_json(field(j, "vectors", "ciphertexts"), "ciphertexts.vectors", out.eta)) {
    out.ciphertexts.emplace_back(std::move(row));
  }
  return out;
}

Json plaintexts_to_json(std::size_t d, std::span<const Plaintext> messages) {
  Json j;
  j["d"] = d;
  j["vectors"] = Json::array();
  for (const auto& m : messages) {
    if (m.dim() != d) throw Error(ErrorCode::kDimensionMismatch, "plaintext dimension differs from d");
    j["vectors"].push_back(vector_to_json(m.values()));
  }
  return j;
}

PlaintextFile plaintexts_from_json(const Json& j) {
  PlaintextFile out;
  out.d = count_field(j, "d", "plaintexts");
  for (auto& row : rows_from_json(field(j, "vectors", "plaintexts"), "plaintexts.vectors", out.d)) {
    out.messages.emplace_back(std::move(row));
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, j.dump() + "\n");
}

}  // namespace aspe
