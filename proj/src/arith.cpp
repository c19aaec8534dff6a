#include "powsum/arith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace powsum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1u << 16;

u64 pow_mod_u64(u64 base, u64 exp, u64 k) noexcept {
    u64 result = 1 % k;
    base %= k;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, k);
        base = mul_mod(base, base, k);
        exp >>= 1;
    }
    return result;
}

bool miller_rabin_witness(u64 n, u64 d, unsigned s, u64 a) noexcept {
    u64 x = pow_mod_u64(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

// Pollard-Brent rho. Returns a nontrivial factor of the odd composite n.
u64 rho_split(u64 n) {
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, ys = 2, g = 1, q = 1;
        u64 r = 1;
        constexpr u64 batch = 128;
        auto step = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            u64 done = 0;
            do {
                ys = y;
                u64 lim = std::min(batch, r - done);
                for (u64 i = 0; i < lim; ++i) {
                    y = step(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                done += lim;
            } while (done < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void collect_prime_factors(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 f = rho_split(n);
    collect_prime_factors(f, out);
    collect_prime_factors(n / f, out);
}

// Extended Euclid: inverse of a modulo m, with gcd(a, m) == 1.
u64 inverse_mod(u64 a, u64 m) {
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 quotient = r / new_r;
        t -= quotient * new_t;
        std::swap(t, new_t);
        r -= quotient * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::invalid_argument("crt_combine: moduli are not coprime");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

}  // namespace

Modulus::Modulus(std::uint64_t k) : k_(k) {
    if (k == 0) throw std::invalid_argument("modulus must be at least 1");
}

Modulus Modulus::from_natural(const Natural& k) {
    if (k == 0) throw std::invalid_argument("modulus must be at least 1");
    if (!fits_u64(k)) throw std::out_of_range("modulus " + k.str() + " exceeds 2^64 - 1");
    return Modulus(static_cast<u64>(k));
}

PrimePower::PrimePower(std::uint64_t q, unsigned a) : q_(q), a_(a), value_(1) {
    if (!is_prime(q)) throw std::invalid_argument(std::to_string(q) + " is not prime");
    if (a == 0) throw std::invalid_argument("prime power exponent must be at least 1");
    for (unsigned i = 0; i < a; ++i) {
        if (value_ > std::numeric_limits<u64>::max() / q) {
            throw std::out_of_range(std::to_string(q) + "^" + std::to_string(a) +
                                    " exceeds 2^64 - 1");
        }
        value_ *= q;
    }
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t k) noexcept {
    u64 s = a + b;
    if (s < a || s >= k) s -= k;
    return s;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t k) noexcept {
    if (k <= (u64{1} << 32)) return (a * b) % k;
    return static_cast<u64>(static_cast<u128>(a) * b % k);
}

Residue mod_pow(std::uint64_t base, std::uint64_t exp, Modulus k) noexcept {
    return Residue(pow_mod_u64(base, exp, k.value()), k);
}

Residue mod_pow(const Natural& base, const Natural& exp, Modulus k) {
    const u64 m = k.value();
    const u64 b = static_cast<u64>(base % m);
    if (fits_u64(exp)) return mod_pow(b, static_cast<u64>(exp), k);
    u64 result = 1 % m;
    for (auto bit = static_cast<long>(boost::multiprecision::msb(exp)); bit >= 0; --bit) {
        result = mul_mod(result, result, m);
        if (boost::multiprecision::bit_test(exp, static_cast<unsigned>(bit))) {
            result = mul_mod(result, b, m);
        }
    }
    return Residue(result, k);
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are a deterministic witness set below 3.3 * 10^24.
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (miller_rabin_witness(n, d, s, a)) return false;
    }
    return true;
}

Factorization factorize(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("cannot factorize 0");
    std::vector<u64> primes;
    u64 rest = k;
    for (u64 p = 2; p < kTrialLimit && p * p <= rest; p += (p == 2 ? 1 : 2)) {
        while (rest % p == 0) {
            primes.push_back(p);
            rest /= p;
        }
    }
    collect_prime_factors(rest, primes);
    std::sort(primes.begin(), primes.end());

    Factorization parts;
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        parts.emplace_back(primes[i], static_cast<unsigned>(j - i));
        i = j;
    }
    return parts;
}

Factorization factorize(Modulus k) { return factorize(k.value()); }

std::uint64_t factorization_product(std::span<const PrimePower> parts) {
    u64 product = 1;
    for (const auto& p : parts) product *= p.value();
    return product;
}

Residue crt_combine(std::span<const CrtPart> parts) {
    u64 x = 0;
    u64 modulus = 1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& part = parts[i];
        const u64 m = part.prime_power.value();
        if (part.residue.modulus().value() != m) {
            throw std::invalid_argument("crt_combine: residue modulus does not match its prime power");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (parts[j].prime_power.prime() == part.prime_power.prime()) {
                throw std::invalid_argument("crt_combine: duplicate prime " +
                                            std::to_string(part.prime_power.prime()) +
                                            " in decomposition");
            }
        }
        if (modulus > std::numeric_limits<u64>::max() / m) {
            throw std::out_of_range("crt_combine: combined modulus exceeds 2^64 - 1");
        }
        // x' = x + modulus * ((r - x) * modulus^-1 mod m)
        const u64 r = part.residue.value();
        const u64 x_mod_m = x % m;
        const u64 diff = r >= x_mod_m ? r - x_mod_m : m - (x_mod_m - r);
        const u64 t = mul_mod(diff, inverse_mod(modulus % m, m), m);
        x = static_cast<u64>(static_cast<u128>(modulus) * t + x);
        modulus *= m;
    }
    return Residue(x, Modulus(modulus));
}

std::uint64_t nu(std::uint64_t q, const Natural& n) {
    if (q < 2) throw std::invalid_argument("valuation base must be at least 2");
    if (n == 0) throw std::domain_error("valuation of 0 is undefined");
    u64 e = 0;
    Natural rest = n;
    Natural quotient, remainder;
    for (;;) {
        boost::multiprecision::divide_qr(rest, Natural(q), quotient, remainder);
        if (remainder != 0) return e;
        rest = quotient;
        ++e;
    }
}

std::uint64_t phi_prime_power(const PrimePower& p) noexcept {
    return p.value() / p.prime() * (p.prime() - 1);
}

std::vector<std::uint64_t> divisors(std::uint64_t p) {
    if (p == 0) throw std::invalid_argument("divisors of 0 are unbounded");
    std::vector<u64> result{1};
    for (const auto& part : factorize(p)) {
        const std::size_t base_count = result.size();
        u64 power = 1;
        for (unsigned e = 0; e < part.exponent(); ++e) {
            power *= part.prime();
            for (std::size_t i = 0; i < base_count; ++i) result.push_back(result[i] * power);
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<std::uint64_t> divisors(const Natural& p) { return divisors(to_u64(p)); }

Natural natural_pow(std::uint64_t q, std::uint64_t e) {
    return boost::multiprecision::pow(Natural(q), static_cast<unsigned>(e));
}

}  // namespace powsum
