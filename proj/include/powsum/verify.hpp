#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "powsum/arith.hpp"
#include "powsum/natural.hpp"

namespace powsum::verify {

/// Parameter name -> decimal value. Ordered so serialization is stable.
using Params = std::map<std::string, std::string>;

enum class Status { Pass, Fail };

std::string_view to_string(Status status) noexcept;

/// One checked cell of a sweep. theorem_id is one of
/// T1, T2.1, T2.2, L2.2, C2.3, C2.5, T2.4, T3.1, T3.2, LCM.
struct VerificationRecord {
    std::string theorem_id;
    Params params;
    Status status = Status::Pass;
    std::string expected;
    std::string actual;
    std::optional<Params> counterexample;  // present iff status == Fail

    friend bool operator==(const VerificationRecord&, const VerificationRecord&) = default;
};

struct Tally {
    std::uint64_t pass = 0;
    std::uint64_t fail = 0;

    friend bool operator==(const Tally&, const Tally&) = default;
};

struct VerificationReport {
    std::vector<VerificationRecord> records;
    std::map<std::string, Tally> summary;
    std::map<std::string, std::string> grid;
    std::uint64_t wall_time_ms = 0;

    /// Appends a record and updates the summary tally.
    void add(VerificationRecord record);
    /// Appends all records of other; grid entries of other are copied in.
    void merge(const VerificationReport& other);

    std::uint64_t failures() const noexcept;
    bool all_passed() const noexcept { return failures() == 0; }

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Builds a record; a failing record carries its params as the counterexample.
VerificationRecord make_record(std::string theorem_id, Params params, std::string expected,
                               std::string actual, bool passed);

// Congruence sweeps. For every prime power q^a <= prime_power_max and
// n in [1, n_max]:
//   T1    (a = 1)        S_n(p) mod p == p-1 if (p-1) | n else 0
//   T2.1  (q = 2)        prime_power_congruence == S_n(2^a) mod 2^a
//   T2.2  (q odd)        prime_power_congruence == S_n(q^a) mod q^a
//   C2.3  (a >= 2)       S_n(q^a) mod q^(a-1) == 0
VerificationReport check_congruence_theorems(std::uint64_t prime_power_max, std::uint64_t n_max);

/// L2.2 with exact binomials: for n <= n_max, every i <= min(i_max, nu_q(n)),
/// j in [1, j_max] and k in [1, n], q^(i+j) | C(n,k) q^(jk), and q^(i+j+1)
/// divides it when k >= 2. Throws std::invalid_argument unless q is an odd prime.
VerificationReport check_lemma_binomial(std::uint64_t q, std::uint64_t i_max, std::uint64_t j_max,
                                        std::uint64_t n_max);

/// C2.5: (t + q^j)^n == t^n mod q^(i+j) for t in [1, t_max]. Throws
/// std::invalid_argument when q^i does not divide n or q is not an odd prime.
VerificationReport check_power_congruence(std::uint64_t q, std::uint64_t i, std::uint64_t j,
                                          const Natural& n, std::uint64_t t_max);

/// check_power_congruence over i <= i_max, j in [1, j_max] and every n <= n_max
/// with q^i | n.
VerificationReport check_power_congruence_grid(std::uint64_t q, std::uint64_t i_max,
                                               std::uint64_t j_max, std::uint64_t n_max,
                                               std::uint64_t t_max);

/// Multiplication by any unit g permutes {1, ..., q-1}; one record per g.
VerificationReport check_generator_permutation(std::uint64_t q);

/// T2.4 with exact integer sums: for n <= n_max with (q-1) not dividing n and
/// j in [1, j_max], q^(nu_q(n) + j) | S_n(q^j).
VerificationReport check_generator_block(std::uint64_t q, std::uint64_t j_max, std::uint64_t n_max);

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

/// Smallest divisor d of row_period(k) with S_n(m + d) == S_n(m) mod k for
/// all m in [0, row_period(k)]. Throws std::length_error when row_period(k)
/// exceeds budget.
std::uint64_t minimal_period_bruteforce(const Natural& n, Modulus k,
                                        std::uint64_t budget = kDefaultBudget);

/// T3.2 (prime power k) and LCM (composite k, and k = 1):
/// period(n, k).combined == minimal_period_bruteforce(n, k) for k <= k_max, n <= n_max.
VerificationReport check_period_formulas(std::uint64_t k_max, std::uint64_t n_max,
                                         std::uint64_t budget = kDefaultBudget);

/// T3.1 for one k: P = row_period(k) is a period for every n <= n_window
/// (0 selects max(50, largest prime factor of k)), and each P / q_i is broken
/// by a witness (n, m). Witness search starts at n = q_i - 1.
VerificationReport check_row_period(Modulus k, std::uint64_t n_window = 0,
                                    std::uint64_t budget = kDefaultBudget);

enum class ReportFormat { Json, Csv, Text };

/// Throws std::invalid_argument for anything but json, csv or text.
ReportFormat parse_report_format(std::string_view name);

std::string emit_report(const VerificationReport& report, ReportFormat format);
std::string emit_report(const VerificationReport& report, std::string_view format);

/// Inverse of emit_report(report, ReportFormat::Json).
VerificationReport parse_report_json(std::string_view json);

enum class Suite { All, Congruence, Lemma, Power, Generator, Periods, RowPeriod };

/// Throws std::invalid_argument for an unknown selector.
Suite parse_suite(std::string_view name);

/// Default grids for the desk-scale certification run.
struct SuiteOptions {
    std::uint64_t prime_power_max = 4096;
    std::uint64_t congruence_n_max = 100;

    std::vector<std::uint64_t> lemma_primes{3, 5, 7};
    std::uint64_t lemma_i_max = 64;
    std::uint64_t lemma_j_max = 3;
    std::uint64_t lemma_n_max = 60;

    std::vector<std::uint64_t> power_primes{3, 5, 7, 11};
    std::uint64_t power_i_max = 2;
    std::uint64_t power_j_max = 3;
    std::uint64_t power_n_max = 500;
    std::uint64_t power_t_max = 50;

    std::vector<std::uint64_t> generator_primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                                                53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    std::vector<std::uint64_t> block_primes{3, 5, 7, 11, 13};
    std::uint64_t block_j_max = 3;
    std::uint64_t block_n_max = 300;

    std::uint64_t period_k_max = 200;
    std::uint64_t period_n_max = 50;

    std::uint64_t row_k_max = 60;
    std::uint64_t row_n_window = 0;

    std::uint64_t budget = kDefaultBudget;
};

VerificationReport run_suite(Suite suite, const SuiteOptions& options = {});

}  // namespace powsum::verify
