#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "powsum/arith.hpp"
#include "powsum/natural.hpp"

namespace powsum {

// Power sums S_n(m) = 1^n + 2^n + ... + m^n, with S_n(0) = 0. Every
// operation rejects n == 0 with std::domain_error.

inline constexpr std::uint64_t kDefaultOracleLimit = 10'000'000;

/// Direct summation, O(m log n). Throws std::out_of_range when m exceeds
/// oracle_limit; use eval for large m.
Residue naive_sum(const Natural& n, const Natural& m, Modulus k,
                  const Natural& oracle_limit = kDefaultOracleLimit);

/// S_n(0), S_n(1), ..., S_n(count) mod k by running summation.
std::vector<std::uint64_t> naive_prefix_sums(const Natural& n, std::uint64_t count, Modulus k);

enum class CongruenceTag { PhiCase, ZeroCase };

std::string_view to_string(CongruenceTag tag) noexcept;

struct CongruenceCase {
    CongruenceTag tag;
    Residue value;  // phi(q^a) mod q^a for PhiCase, 0 for ZeroCase
};

/// S_n(q^a) mod q^a in closed form:
///   q odd:        phi(q^a) if (q-1) | n, else 0
///   q = 2, a = 1: 1 for every n
///   q = 2, a > 1: phi(2^a) if n = 1 or n even, else 0
CongruenceCase prime_power_congruence(const Natural& n, const PrimePower& p);

/// An exponent e with q^e | S_n(q^j), guaranteed for every n >= 1:
///   q odd, (q-1) does not divide n: nu_q(n) + j
///   q odd, (q-1) | n:               j - 1 (exact in this branch)
///   q = 2, j = 1:                   0
///   q = 2, j > 1:                   j for odd n > 1, j - 1 otherwise
/// Throws std::domain_error for j == 0 and std::invalid_argument if q is not prime.
std::uint64_t valuation_lower_bound(const Natural& n, std::uint64_t q, std::uint64_t j);

enum class PeriodBranch {
    TwoBase,         // k = 2: period 4 for all n
    TwoEvenOrOne,    // 2^a, a >= 2, n = 1 or n even: 2^(a+1)
    TwoOdd,          // 2^a, a >= 2, n odd > 1: 2^a
    UnitExponent,    // q odd, (q-1) | n: q^(a+1)
    ValuationDrop,   // q odd, (q-1) does not divide n, nu_q(n) = i <= a-2: q^(a-i)
    Floor,           // q odd, (q-1) does not divide n, q^(a-1) | n: q
};

std::string_view to_string(PeriodBranch branch) noexcept;

struct PrimePowerPeriod {
    PrimePower prime_power;
    PeriodBranch branch;
    Natural period;
};

struct PeriodBreakdown {
    Modulus modulus;
    std::vector<PrimePowerPeriod> per_prime;
    Natural combined;  // lcm of per_prime periods, 1 when k == 1
};

PrimePowerPeriod classify_period(const Natural& n, const PrimePower& p);

/// Exact minimal period of (S_n(m) mod q^a)_m.
Natural period_prime_power(const Natural& n, const PrimePower& p);

PeriodBreakdown period(const Natural& n, Modulus k);

/// Minimal period in m of the whole family (S_n(m) mod k)_n: prod q^(a+1).
Natural row_period(Modulus k);

struct EvalTerm {
    PrimePower prime_power;
    Natural period;
    Natural reduced_m;  // m mod period
    Residue partial;    // S_n(reduced_m) mod q^a
};

struct EvalTrace {
    Residue result;
    std::vector<EvalTerm> terms;
};

/// S_n(m) mod k for unbounded n and m. Each prime-power component reduces
/// m modulo its exact period, so the cost is bounded by the prime powers of
/// k and independent of m.
Residue eval(const Natural& n, const Natural& m, Modulus k);
EvalTrace eval_explained(const Natural& n, const Natural& m, Modulus k);

}  // namespace powsum
