#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "powsum/arith.hpp"

using namespace powsum;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace {

// Independent helpers: plain trial division and repeated multiplication.
bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

u64 repeated_mul(u64 base, u64 exp, u64 k) {
    u128 r = 1 % k;
    for (u64 i = 0; i < exp; ++i) r = r * (base % k) % k;
    return static_cast<u64>(r);
}

}  // namespace

TEST_CASE("parse_natural round-trips decimal strings") {
    for (const char* text : {"0", "7", "18446744073709551616", "1000000000000000000000000000000"}) {
        CHECK(to_decimal(parse_natural(text)) == text);
    }
    CHECK_THROWS_AS(parse_natural(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_natural("-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_natural("1e5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_natural(" 3"), std::invalid_argument);
    CHECK(fits_u64(parse_natural("18446744073709551615")));
    CHECK_FALSE(fits_u64(parse_natural("18446744073709551616")));
    CHECK_THROWS_AS(to_u64(parse_natural("18446744073709551616")), std::out_of_range);
}

TEST_CASE("Modulus and PrimePower validate their invariants") {
    CHECK_THROWS_AS(Modulus(0), std::invalid_argument);
    CHECK_THROWS_AS(Modulus::from_natural(parse_natural("18446744073709551616")), std::out_of_range);
    CHECK(Modulus::from_natural(18446744073709551615ull).value() == 18446744073709551615ull);
    CHECK_THROWS_AS(PrimePower(9, 1), std::invalid_argument);
    CHECK_THROWS_AS(PrimePower(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(PrimePower(2, 64), std::out_of_range);
    CHECK(PrimePower(2, 63).value() == (u64{1} << 63));
    CHECK(Residue(10, Modulus(7)).value() == 3);
}

TEST_CASE("mod_pow examples") {
    CHECK(repeated_mul(2, 10, 1000) == 24);
    CHECK(mod_pow(Natural(2), Natural(10), Modulus(1000)).value() == 24);
    CHECK(mod_pow(Natural(5), Natural(0), Modulus(7)).value() == 1);
    CHECK(mod_pow(Natural(3), Natural(1), Modulus(7)).value() == 3);
    CHECK(mod_pow(Natural(5), Natural(0), Modulus(1)).value() == 0);
    CHECK(mod_pow(Natural(0), Natural(0), Modulus(7)).value() == 1);
}

TEST_CASE("mod_pow with exponents beyond 64 bits") {
    // Frozen from an independent big-integer implementation (Python pow).
    CHECK(mod_pow(Natural(2), boost::multiprecision::pow(Natural(10), 30), Modulus(1000003)).value() ==
          529274);
    CHECK(mod_pow(Natural(123456789), boost::multiprecision::pow(Natural(10), 40) + 7,
                  Modulus(18446744073709551557ull))
              .value() == 12960315354972306452ull);
    CHECK(mod_pow(Natural(3), boost::multiprecision::pow(Natural(2), 70), Modulus((u64{1} << 61) - 1))
              .value() == 311140005592228776ull);
}

TEST_CASE("mod_pow agrees with repeated multiplication") {
    std::mt19937_64 rng(7);
    std::vector<u64> moduli{1, 2, 3, 4, 97, 1000, 65536, 4294967295ull, 4294967296ull,
                            4294967297ull, 18446744073709551557ull, 18446744073709551615ull};
    for (int i = 0; i < 40; ++i) moduli.push_back(rng() % (u64{1} << 32) + 1);
    for (int i = 0; i < 10; ++i) moduli.push_back(rng() | 1);
    for (u64 k : moduli) {
        for (u64 a = 0; a <= 20; ++a) {
            for (u64 b = 0; b <= 64; ++b) {
                REQUIRE(mod_pow(a, b, Modulus(k)).value() == repeated_mul(a, b, k));
            }
        }
        const u64 big_base = rng();
        for (u64 b = 0; b <= 64; ++b) {
            REQUIRE(mod_pow(Natural(big_base), Natural(b), Modulus(k)).value() ==
                    repeated_mul(big_base, b, k));
        }
    }
}

TEST_CASE("is_prime matches trial division and rejects strong pseudoprimes") {
    for (u64 n = 0; n <= 100000; ++n) REQUIRE(is_prime(n) == trial_prime(n));
    CHECK_FALSE(is_prime(3215031751ull));
    CHECK_FALSE(is_prime(341550071728321ull));
    CHECK_FALSE(is_prime(3825123056546413051ull));
    CHECK(is_prime(18446744073709551557ull));
    CHECK(is_prime(4294967291ull));
    CHECK_FALSE(is_prime(18446744073709551615ull));
}

TEST_CASE("factorize examples") {
    const auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == PrimePower(2, 3));
    CHECK(f[1] == PrimePower(3, 2));
    CHECK(f[2] == PrimePower(5, 1));
    CHECK(factorize(1).empty());
    REQUIRE(trial_prime(9973));
    CHECK(factorize(9973) == Factorization{PrimePower(9973, 1)});
    CHECK(factorize(18446744073709551615ull) ==
          Factorization{PrimePower(3, 1), PrimePower(5, 1), PrimePower(17, 1), PrimePower(257, 1),
                        PrimePower(641, 1), PrimePower(65537, 1), PrimePower(6700417, 1)});
    CHECK(factorize(4294967291ull * 4294967279ull) ==
          Factorization{PrimePower(4294967279ull, 1), PrimePower(4294967291ull, 1)});
    CHECK(factorize(18446744073709551613ull) ==
          Factorization{PrimePower(13, 1), PrimePower(3889, 1), PrimePower(364870227143809ull, 1)});
    CHECK(factorize(u64{4294967291ull} * 4294967291ull) == Factorization{PrimePower(4294967291ull, 2)});
    CHECK_THROWS_AS(factorize(u64{0}), std::invalid_argument);
}

TEST_CASE("factorize inverts multiplication") {
    auto check = [](u64 k) {
        const auto parts = factorize(k);
        REQUIRE(factorization_product(parts) == k);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            REQUIRE(is_prime(parts[i].prime()));
            if (i > 0) REQUIRE(parts[i - 1].prime() < parts[i].prime());
        }
    };
    for (u64 k = 1; k <= 100000; ++k) check(k);
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 2000; ++i) check(rng() | 1u);
    for (int i = 0; i < 500; ++i) check(rng() >> (rng() % 40) | 1u);
}

TEST_CASE("crt_combine examples") {
    const PrimePower four(2, 2), three(3, 1);
    // Exhaustive search over 0..11.
    u64 expected = 12;
    for (u64 x = 0; x < 12; ++x) {
        if (x % 4 == 1 && x % 3 == 2) expected = x;
    }
    REQUIRE(expected == 5);
    const std::vector<CrtPart> parts{{Residue(1, four.modulus()), four}, {Residue(2, three.modulus()), three}};
    const Residue x = crt_combine(parts);
    CHECK(x.value() == 5);
    CHECK(x.modulus().value() == 12);

    const PrimePower nine(3, 2);
    const std::vector<CrtPart> single{{Residue(7, nine.modulus()), nine}};
    CHECK(crt_combine(single) == Residue(7, Modulus(9)));

    const Residue empty = crt_combine(std::span<const CrtPart>{});
    CHECK(empty.value() == 0);
    CHECK(empty.modulus().value() == 1);

    const std::vector<CrtPart> duplicate{{Residue(1, three.modulus()), three},
                                         {Residue(2, nine.modulus()), nine}};
    CHECK_THROWS_AS(crt_combine(duplicate), std::invalid_argument);

    const std::vector<CrtPart> mismatched{{Residue(1, Modulus(5)), three}};
    CHECK_THROWS_AS(crt_combine(mismatched), std::invalid_argument);
}

TEST_CASE("crt_combine inverts projection") {
    auto round_trip = [](u64 k, u64 x, const Factorization& parts) {
        std::vector<CrtPart> projected;
        for (const auto& p : parts) projected.push_back({Residue(x % p.value(), p.modulus()), p});
        return crt_combine(projected).value();
    };
    for (u64 k = 1; k <= 10000; ++k) {
        const auto parts = factorize(k);
        for (u64 x = 0; x < k; ++x) REQUIRE(round_trip(k, x, parts) == x);
    }
    std::mt19937_64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        const u64 k = rng() | 1u;
        const u64 x = rng() % k;
        REQUIRE(round_trip(k, x, factorize(k)) == x);
    }
}

TEST_CASE("nu examples and properties") {
    CHECK(nu(3, 54) == 3);
    CHECK(nu(5, 7) == 0);
    CHECK(nu(2, Natural(1) << 20) == 20);
    CHECK(nu(7, boost::multiprecision::pow(Natural(7), 90) * 6) == 90);
    CHECK_THROWS_AS(nu(3, 0), std::domain_error);
    for (u64 q : {2u, 3u, 5u, 7u, 11u, 101u}) {
        for (u64 n = 1; n <= 5000; ++n) {
            const u64 e = nu(q, n);
            const Natural qe = natural_pow(q, e);
            REQUIRE(n % qe == 0);
            REQUIRE(n % (qe * q) != 0);
        }
    }
}

TEST_CASE("phi_prime_power counts units") {
    CHECK(phi_prime_power(PrimePower(3, 2)) == 6);
    CHECK(phi_prime_power(PrimePower(2, 1)) == 1);
    CHECK(phi_prime_power(PrimePower(2, 3)) == 4);
    for (u64 q = 2; q <= 10000; ++q) {
        if (!trial_prime(q)) continue;
        u64 value = q;
        for (unsigned a = 1; value <= 10000; ++a, value *= q) {
            u64 units = 0;
            for (u64 x = 1; x <= value; ++x) units += std::gcd(x, value) == 1;
            REQUIRE(phi_prime_power(PrimePower(q, a)) == units);
        }
    }
}

TEST_CASE("divisors") {
    CHECK(divisors(u64{12}) == std::vector<u64>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(u64{1}) == std::vector<u64>{1});
    CHECK(divisors(u64{27}) == std::vector<u64>{1, 3, 9, 27});
    CHECK_THROWS_AS(divisors(u64{0}), std::invalid_argument);
    CHECK_THROWS_AS(divisors(parse_natural("18446744073709551616")), std::out_of_range);
    for (u64 p = 1; p <= 3000; ++p) {
        std::vector<u64> brute;
        for (u64 d = 1; d <= p; ++d) {
            if (p % d == 0) brute.push_back(d);
        }
        REQUIRE(divisors(p) == brute);
    }
}
