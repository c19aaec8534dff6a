#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "powsum/natural.hpp"

namespace powsum {

/// A modulus k with 1 <= k <= 2^64 - 1.
class Modulus {
public:
    /// Throws std::invalid_argument when k == 0.
    explicit Modulus(std::uint64_t k);

    /// Throws std::invalid_argument when k == 0 and std::out_of_range past 2^64 - 1.
    static Modulus from_natural(const Natural& k);

    std::uint64_t value() const noexcept { return k_; }

    friend bool operator==(Modulus, Modulus) = default;

private:
    std::uint64_t k_;
};

/// Canonical residue class: 0 <= value < modulus.
class Residue {
public:
    /// Reduces value into [0, k).
    Residue(std::uint64_t value, Modulus modulus) noexcept
        : value_(value % modulus.value()), modulus_(modulus) {}

    std::uint64_t value() const noexcept { return value_; }
    Modulus modulus() const noexcept { return modulus_; }

    friend bool operator==(const Residue&, const Residue&) = default;

private:
    std::uint64_t value_;
    Modulus modulus_;
};

/// q^a with q prime and a >= 1, q^a <= 2^64 - 1.
class PrimePower {
public:
    /// Throws std::invalid_argument if q is not prime or a == 0, and
    /// std::out_of_range if q^a overflows 64 bits.
    PrimePower(std::uint64_t q, unsigned a);

    std::uint64_t prime() const noexcept { return q_; }
    unsigned exponent() const noexcept { return a_; }
    /// q^a.
    std::uint64_t value() const noexcept { return value_; }
    Modulus modulus() const noexcept { return Modulus(value_); }

    friend bool operator==(const PrimePower&, const PrimePower&) = default;

private:
    std::uint64_t q_;
    unsigned a_;
    std::uint64_t value_;
};

/// Prime factorization, sorted ascending by prime; empty for k == 1.
using Factorization = std::vector<PrimePower>;

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t k) noexcept;
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t k) noexcept;

/// base^exp mod k by square-and-multiply. The base is reduced first; the
/// exponent is never reduced, so the result is correct for any base.
Residue mod_pow(const Natural& base, const Natural& exp, Modulus k);
Residue mod_pow(std::uint64_t base, std::uint64_t exp, Modulus k) noexcept;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Trial division to 2^16, then Pollard-Brent rho on the remaining cofactor.
Factorization factorize(std::uint64_t k);
Factorization factorize(Modulus k);

/// Product of q^a over the parts (1 for an empty list).
std::uint64_t factorization_product(std::span<const PrimePower> parts);

struct CrtPart {
    Residue residue;
    PrimePower prime_power;
};

/// Unique x mod prod(q^a) with x == r_i mod q_i^a_i. Throws
/// std::invalid_argument if two parts share a prime or a residue's modulus
/// differs from its prime power.
Residue crt_combine(std::span<const CrtPart> parts);

/// Largest e with q^e | n. Throws std::domain_error for n == 0 and
/// std::invalid_argument for q < 2.
std::uint64_t nu(std::uint64_t q, const Natural& n);

/// phi(q^a) = q^(a-1) (q - 1).
std::uint64_t phi_prime_power(const PrimePower& p) noexcept;

/// All positive divisors of p, ascending. Throws std::invalid_argument
/// for p == 0 and std::out_of_range when p exceeds 64 bits.
std::vector<std::uint64_t> divisors(std::uint64_t p);
std::vector<std::uint64_t> divisors(const Natural& p);

/// Exact q^e as a Natural.
Natural natural_pow(std::uint64_t q, std::uint64_t e);

}  // namespace powsum
