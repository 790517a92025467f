// Python bindings. Scalars cross the boundary as fractions.Fraction; vectors
// as lists of Fraction. Inputs also accept int and "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "aspe/attack.hpp"
#include "aspe/error.hpp"
#include "aspe/game.hpp"
#include "aspe/linalg.hpp"
#include "aspe/rng.hpp"
#include "aspe/scheme.hpp"
#include "aspe/serialize.hpp"

namespace py = pybind11;
using namespace aspe;

namespace {

py::object fraction_type() {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls;
}

py::object scalar_to_py(const Scalar& x) {
  return fraction_type()(py::int_(py::str(x.get_num().get_str())), py::int_(py::str(x.get_den().get_str())));
}

Scalar scalar_from_py(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return scalar_from_string(h.cast<std::string>());
  return scalar_from_string(py::str(h).cast<std::string>());
}

py::list vector_to_py(const Vector& v) {
  py::list out;
  for (const auto& x : v) out.append(scalar_to_py(x));
  return out;
}

Vector vector_from_py(const py::iterable& items) {
  std::vector<Scalar> entries;
  for (const auto& h : items) entries.push_back(scalar_from_py(h));
  return Vector(std::move(entries));
}

py::list matrix_to_py(const Matrix& m) {
  py::list out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.append(vector_to_py(m.row(r)));
  return out;
}

Matrix matrix_from_py(const py::iterable& rows) {
  std::vector<Vector> vs;
  for (const auto& r : rows) vs.push_back(vector_from_py(py::reinterpret_borrow<py::iterable>(r)));
  return Matrix::from_rows(vs);
}

template <class T>
std::vector<T> wrap_all(const py::iterable& items) {
  std::vector<T> out;
  for (const auto& h : items) out.emplace_back(vector_from_py(py::reinterpret_borrow<py::iterable>(h)));
  return out;
}

template <class T>
py::list unwrap_all(const std::vector<T>& items) {
  py::list out;
  for (const auto& x : items) out.append(vector_to_py(x.values()));
  return out;
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact affine-shifted ASPE scheme and its ciphertext-only distinguisher";

  // The module attribute keeps the type alive for the translator.
  static PyObject* error_type = py::exception<Error>(m, "AspeError").ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type)(e.what());
      exc.attr("code") = error_code_name(e.code());
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<SchemeParams>(m, "SchemeParams")
      .def(py::init([](std::size_t d, std::size_t c, std::size_t epsilon) { return SchemeParams{d, c, epsilon}; }),
           py::arg("d"), py::arg("c") = 5, py::arg("epsilon") = 5)
      .def_readwrite("d", &SchemeParams::d)
      .def_readwrite("c", &SchemeParams::c)
      .def_readwrite("epsilon", &SchemeParams::epsilon)
      .def_property_readonly("eta", &SchemeParams::eta)
      .def("validate", &SchemeParams::validate)
      .def(py::self == py::self)
      .def("__repr__", [](const SchemeParams& p) {
        return "SchemeParams(d=" + std::to_string(p.d) + ", c=" + std::to_string(p.c) +
               ", epsilon=" + std::to_string(p.epsilon) + ")";
      });

  py::class_<SamplingDomain>(m, "SamplingDomain")
      .def(py::init([](std::int64_t bound, unsigned frac_bits) { return SamplingDomain{bound, frac_bits}; }),
           py::arg("bound") = 1000, py::arg("frac_bits") = 16)
      .def_readwrite("bound", &SamplingDomain::bound)
      .def_readwrite("frac_bits", &SamplingDomain::frac_bits)
      .def("validate", &SamplingDomain::validate)
      .def("value", [](const SamplingDomain& d, std::int64_t k) { return scalar_to_py(d.value(k)); });

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream") = 0)
      .def("next", &Rng::next)
      .def("uniform_int", &Rng::uniform_int, py::arg("lo"), py::arg("hi"))
      .def("bit", &Rng::bit);
  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));

  m.def("sample_vector", [](std::size_t size, const SamplingDomain& domain, Rng& rng) {
    return vector_to_py(sample_vector(size, domain, rng));
  }, py::arg("size"), py::arg("domain"), py::arg("rng"));

  // Linear algebra on lists of lists.
  m.def("mat_invert", [](const py::iterable& rows) { return matrix_to_py(mat_invert(matrix_from_py(rows))); },
        py::arg("m"));
  m.def("rank", [](const py::iterable& rows) { return rank(matrix_from_py(rows)); }, py::arg("m"));
  m.def("in_span", [](const py::iterable& basis, const py::iterable& v) {
    const Vector target = vector_from_py(v);
    Basis b(target.size());
    for (const auto& row : basis) b.insert(vector_from_py(py::reinterpret_borrow<py::iterable>(row)));
    return b.contains(target);
  }, py::arg("basis"), py::arg("v"), "True iff v lies in the span of the (independent) basis rows.");

  py::class_<SecretKey>(m, "SecretKey")
      .def_static("from_parts", [](const SchemeParams& params, const SamplingDomain& domain, const py::iterable& s,
                                   const py::iterable& mm, const py::iterable& m_inv, const py::iterable& w) {
        return SecretKey::from_parts(params, domain, vector_from_py(s), matrix_from_py(mm), matrix_from_py(m_inv),
                                     vector_from_py(w));
      }, py::arg("params"), py::arg("domain"), py::arg("s"), py::arg("m"), py::arg("m_inv"), py::arg("w"))
      .def_static("from_json", [](const std::string& text) { return key_from_json(Json::parse(text)); })
      .def("to_json", [](const SecretKey& k) { return dump(key_to_json(k)); })
      .def_property_readonly("params", &SecretKey::params)
      .def_property_readonly("domain", &SecretKey::domain)
      .def_property_readonly("s", [](const SecretKey& k) { return vector_to_py(k.s()); })
      .def_property_readonly("w", [](const SecretKey& k) { return vector_to_py(k.w()); })
      .def_property_readonly("m", [](const SecretKey& k) { return matrix_to_py(k.m()); })
      .def_property_readonly("m_inv", [](const SecretKey& k) { return matrix_to_py(k.m_inv()); })
      .def(py::self == py::self);

  m.def("keygen", &keygen, py::arg("params"), py::arg("domain"), py::arg("rng"),
        py::arg("max_attempts") = kDefaultKeygenAttempts, py::call_guard<py::gil_scoped_release>());
  m.def("encrypt", [](const SecretKey& key, const py::iterable& msg, Rng& rng) {
    return vector_to_py(encrypt(key, Plaintext(vector_from_py(msg)), rng).values());
  }, py::arg("key"), py::arg("message"), py::arg("rng"));
  m.def("encrypt_with_nonce", [](const SecretKey& key, const py::iterable& msg, const py::iterable& nonce) {
    return vector_to_py(encrypt_with_nonce(key, Plaintext(vector_from_py(msg)), vector_from_py(nonce)).values());
  }, py::arg("key"), py::arg("message"), py::arg("nonce"));
  m.def("encrypt_multi", [](const SecretKey& key, const py::iterable& msgs, Rng& rng) {
    return unwrap_all(encrypt_multi(key, wrap_all<Plaintext>(msgs), rng));
  }, py::arg("key"), py::arg("messages"), py::arg("rng"));
  m.def("decrypt", [](const SecretKey& key, const py::iterable& ct) {
    return vector_to_py(decrypt(key, Ciphertext(vector_from_py(ct))).values());
  }, py::arg("key"), py::arg("ciphertext"));

  py::class_<AttackResult>(m, "AttackResult")
      .def_readonly("guess", &AttackResult::guess)
      .def_readonly("in_span_cnt", &AttackResult::in_span_cnt)
      .def_readonly("not_in_span_cnt", &AttackResult::not_in_span_cnt)
      .def_readonly("basis_final_rank", &AttackResult::basis_final_rank)
      .def("to_json", [](const AttackResult& r) { return dump(attack_result_to_json(r)); })
      .def(py::self == py::self);

  m.def("diff_ciphertexts", [](const py::iterable& cts) {
    py::list out;
    for (const auto& d : diff_ciphertexts(wrap_all<Ciphertext>(cts)).deltas) out.append(vector_to_py(d));
    return out;
  }, py::arg("ciphertexts"));
  m.def("run_attack", [](const py::iterable& cts, const SchemeParams& params) {
    const auto wrapped = wrap_all<Ciphertext>(cts);
    py::gil_scoped_release release;
    return run_attack(wrapped, params);
  }, py::arg("ciphertexts"), py::arg("params"));

  py::class_<GameConfig>(m, "GameConfig")
      .def(py::init([](const SchemeParams& params, const SamplingDomain& domain, std::size_t n) {
        return GameConfig{params, domain, n};
      }), py::arg("params"), py::arg("domain") = SamplingDomain{}, py::arg("n") = 0)
      .def_readwrite("params", &GameConfig::params)
      .def_readwrite("domain", &GameConfig::domain)
      .def_readwrite("n", &GameConfig::n)
      .def_property_readonly("message_count", &GameConfig::message_count);

  py::class_<TrialRecord>(m, "TrialRecord")
      .def_readonly("trial_id", &TrialRecord::trial_id)
      .def_readonly("seed", &TrialRecord::seed)
      .def_readonly("params", &TrialRecord::params)
      .def_readonly("b", &TrialRecord::b)
      .def_readonly("b_prime", &TrialRecord::b_prime)
      .def_readonly("attack", &TrialRecord::attack)
      .def_readonly("attack_seconds", &TrialRecord::attack_seconds)
      .def_property_readonly("correct", &TrialRecord::correct);

  py::class_<BatchStats>(m, "BatchStats")
      .def_readonly("trials", &BatchStats::trials)
      .def_readonly("correct", &BatchStats::correct)
      .def_readonly("zero_bits", &BatchStats::zero_bits)
      .def_readonly("accuracy", &BatchStats::accuracy)
      .def_readonly("advantage", &BatchStats::advantage)
      .def_readonly("mean_seconds", &BatchStats::mean_seconds)
      .def_readonly("min_seconds", &BatchStats::min_seconds)
      .def_readonly("max_seconds", &BatchStats::max_seconds);

  py::class_<BatchResult>(m, "BatchResult")
      .def_readonly("records", &BatchResult::records)
      .def_readonly("stats", &BatchResult::stats)
      .def("to_csv", [](const BatchResult& b, bool with_timing) { return records_to_csv(b.records, with_timing); },
           py::arg("with_timing") = false);

  m.def("trial_seed", &trial_seed, py::arg("master_seed"), py::arg("trial_id"));
  m.def("run_trial", [](const GameConfig& config, std::uint64_t trial_id, std::uint64_t seed) {
    return run_trial(config, trial_id, seed).record;
  }, py::arg("config"), py::arg("trial_id"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("run_batch", [](const GameConfig& config, std::size_t trials, std::uint64_t master_seed, std::size_t workers) {
    return run_batch(config, trials, master_seed, workers);
  }, py::arg("config"), py::arg("trials"), py::arg("master_seed") = 0, py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
}
