#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "powsum/arith.hpp"
#include "powsum/powersum.hpp"
#include "powsum/verify.hpp"

namespace py = pybind11;

// Python int <-> Natural through the decimal representation.
namespace pybind11::detail {
template <>
struct type_caster<powsum::Natural> {
    PYBIND11_TYPE_CASTER(powsum::Natural, const_name("int"));

    bool load(handle src, bool) {
        if (!src || !PyLong_Check(src.ptr())) return false;
        const auto text = py::str(src).cast<std::string>();
        if (!text.empty() && text[0] == '-') {
            throw py::value_error("expected a nonnegative integer, got " + text);
        }
        value = powsum::parse_natural(text);
        return true;
    }

    static handle cast(const powsum::Natural& src, return_value_policy, handle) {
        return PyLong_FromString(src.str().c_str(), nullptr, 10);
    }
};
}  // namespace pybind11::detail

namespace {

using powsum::Modulus;
using powsum::Natural;
using powsum::PrimePower;

Modulus modulus(const Natural& k) { return Modulus::from_natural(k); }

PrimePower prime_power(std::uint64_t q, unsigned a) { return PrimePower(q, a); }

py::dict breakdown_to_dict(const powsum::PeriodBreakdown& breakdown) {
    py::list parts;
    for (const auto& part : breakdown.per_prime) {
        parts.append(py::make_tuple(part.prime_power.prime(), part.prime_power.exponent(),
                                    std::string(powsum::to_string(part.branch)), part.period));
    }
    py::dict out;
    out["modulus"] = breakdown.modulus.value();
    out["combined"] = breakdown.combined;
    out["per_prime"] = parts;
    return out;
}

}  // namespace

PYBIND11_MODULE(powsum, m) {
    m.doc() = "Power sums S_n(m) = 1^n + ... + m^n modulo k";

    m.def("mod_pow",
          [](const Natural& base, const Natural& exp, const Natural& k) {
              return powsum::mod_pow(base, exp, modulus(k)).value();
          },
          py::arg("base"), py::arg("exp"), py::arg("k"));

    m.def("is_prime", &powsum::is_prime, py::arg("n"));

    m.def("factorize",
          [](const Natural& k) {
              std::vector<std::tuple<std::uint64_t, unsigned>> out;
              for (const auto& p : powsum::factorize(modulus(k))) out.emplace_back(p.prime(), p.exponent());
              return out;
          },
          py::arg("k"), "Prime factorization as a sorted list of (q, a).");

    m.def("crt_combine",
          [](const std::vector<std::tuple<std::uint64_t, std::uint64_t, unsigned>>& parts) {
              std::vector<powsum::CrtPart> crt;
              for (const auto& [r, q, a] : parts) {
                  const PrimePower p(q, a);
                  crt.push_back({powsum::Residue(r, p.modulus()), p});
              }
              const auto x = powsum::crt_combine(crt);
              return std::make_tuple(x.value(), x.modulus().value());
          },
          py::arg("parts"), "Combine (r, q, a) triples; returns (x, modulus).");

    m.def("nu", &powsum::nu, py::arg("q"), py::arg("n"));
    m.def("phi_prime_power",
          [](std::uint64_t q, unsigned a) { return powsum::phi_prime_power(prime_power(q, a)); },
          py::arg("q"), py::arg("a"));
    m.def("divisors", py::overload_cast<const Natural&>(&powsum::divisors), py::arg("p"));

    m.def("naive_sum",
          [](const Natural& n, const Natural& count, const Natural& k, const Natural& oracle_limit) {
              return powsum::naive_sum(n, count, modulus(k), oracle_limit).value();
          },
          py::arg("n"), py::arg("m"), py::arg("k"),
          py::arg("oracle_limit") = Natural(powsum::kDefaultOracleLimit));

    m.def("eval",
          [](const Natural& n, const Natural& count, const Natural& k) {
              return powsum::eval(n, count, modulus(k)).value();
          },
          py::arg("n"), py::arg("m"), py::arg("k"), "S_n(m) mod k for arbitrarily large n and m.");

    m.def("prime_power_congruence",
          [](const Natural& n, std::uint64_t q, unsigned a) {
              const auto c = powsum::prime_power_congruence(n, prime_power(q, a));
              return std::make_tuple(std::string(powsum::to_string(c.tag)), c.value.value());
          },
          py::arg("n"), py::arg("q"), py::arg("a"));

    m.def("valuation_lower_bound", &powsum::valuation_lower_bound, py::arg("n"), py::arg("q"),
          py::arg("j"));

    m.def("period_prime_power",
          [](const Natural& n, std::uint64_t q, unsigned a) {
              return powsum::period_prime_power(n, prime_power(q, a));
          },
          py::arg("n"), py::arg("q"), py::arg("a"));

    m.def("period",
          [](const Natural& n, const Natural& k) { return breakdown_to_dict(powsum::period(n, modulus(k))); },
          py::arg("n"), py::arg("k"));

    m.def("row_period", [](const Natural& k) { return powsum::row_period(modulus(k)); }, py::arg("k"));

    m.def("minimal_period_bruteforce",
          [](const Natural& n, const Natural& k, std::uint64_t budget) {
              return powsum::verify::minimal_period_bruteforce(n, modulus(k), budget);
          },
          py::arg("n"), py::arg("k"), py::arg("budget") = powsum::verify::kDefaultBudget);

    m.def("verify",
          [](const std::string& suite, const std::string& format, std::optional<std::uint64_t> k_max,
             std::optional<std::uint64_t> n_max) {
              powsum::verify::SuiteOptions options;
              if (k_max) options.period_k_max = options.row_k_max = *k_max;
              if (n_max) {
                  options.congruence_n_max = options.lemma_n_max = options.power_n_max = *n_max;
                  options.block_n_max = options.period_n_max = *n_max;
              }
              py::gil_scoped_release release;
              const auto report = powsum::verify::run_suite(powsum::verify::parse_suite(suite), options);
              return std::make_tuple(report.all_passed(), powsum::verify::emit_report(report, format));
          },
          py::arg("suite") = "all", py::arg("format") = "json", py::arg("k_max") = std::nullopt,
          py::arg("n_max") = std::nullopt,
          "Run a certification suite; returns (all_passed, serialized report).");
}
