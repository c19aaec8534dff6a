#include "powsum/powersum.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/integer.hpp>

namespace powsum {

namespace {

using u64 = std::uint64_t;

// Windows up to this length use the multiplicative sieve; longer ones
// stream term by term.
constexpr u64 kSieveLimit = u64{1} << 22;
constexpr u64 kUnset = std::numeric_limits<u64>::max();

void require_positive_exponent(const Natural& n) {
    if (n == 0) throw std::domain_error("power sums are defined for n >= 1; got n = 0");
}

bool divides(u64 d, const Natural& n) { return n % d == 0; }

// i -> i^n mod q^a for i in [1, need]. Units use the exponent reduced mod
// phi(q^a); multiples of q vanish once n >= a.
class PowerTable {
public:
    PowerTable(const Natural& n, const PrimePower& p)
        : modulus_(p.value()), prime_(p.prime()) {
        const u64 phi = phi_prime_power(p);
        unit_exponent_ = static_cast<u64>(n % phi);
        prime_power_ = n >= p.exponent() ? 0 : mod_pow(Natural(prime_), n, p.modulus()).value();
        exponent_ = n;
    }

    u64 of_prime(u64 prime) const noexcept {
        if (prime == prime_) return prime_power_;
        return mod_pow(prime, unit_exponent_, Modulus(modulus_)).value();
    }

    u64 of(u64 i) const {
        if (i % prime_ != 0) return mod_pow(i, unit_exponent_, Modulus(modulus_)).value();
        if (prime_power_ == 0) return 0;
        return mod_pow(Natural(i), exponent_, Modulus(modulus_)).value();
    }

    u64 modulus() const noexcept { return modulus_; }

private:
    u64 modulus_;
    u64 prime_;
    u64 unit_exponent_ = 0;
    u64 prime_power_ = 0;
    Natural exponent_;
};

// Prefix sums S(upto_small) and S(upto_large) mod q^a, upto_small <= upto_large.
std::pair<u64, u64> window_sums(const PowerTable& table, u64 upto_small, u64 upto_large) {
    const u64 k = table.modulus();
    u64 acc = 0;
    u64 small = 0;
    if (upto_large <= kSieveLimit) {
        // Linear sieve: i^n is completely multiplicative.
        std::vector<u64> value(upto_large + 1, kUnset);
        std::vector<u64> primes;
        if (upto_large >= 1) value[1] = 1 % k;
        for (u64 i = 2; i <= upto_large; ++i) {
            if (value[i] == kUnset) {
                value[i] = table.of_prime(i);
                primes.push_back(i);
            }
            for (u64 p : primes) {
                const u64 composite = i * p;
                if (composite > upto_large) break;
                value[composite] = mul_mod(value[i], value[p], k);
                if (i % p == 0) break;
            }
        }
        for (u64 i = 1; i <= upto_large; ++i) {
            acc = add_mod(acc, value[i], k);
            if (i == upto_small) small = acc;
        }
    } else {
        for (u64 i = 1; i <= upto_large; ++i) {
            acc = add_mod(acc, table.of(i), k);
            if (i == upto_small) small = acc;
        }
    }
    return {small, acc};
}

// S_n(r) mod q^a for r < period. Terms repeat with period q^a, so
// S_n(c q^a + s) = c S_n(q^a) + S_n(s) mod q^a.
u64 prime_power_window(const Natural& n, const PrimePower& p, const Natural& r) {
    const u64 q_a = p.value();
    const Natural blocks_nat = r / q_a;
    const u64 tail = static_cast<u64>(r % q_a);
    const u64 blocks = static_cast<u64>(blocks_nat % q_a);
    const PowerTable table(n, p);
    if (blocks_nat == 0) return window_sums(table, tail, tail).second;
    const auto [tail_sum, block_sum] = window_sums(table, tail, q_a);
    return add_mod(mul_mod(blocks, block_sum, q_a), tail_sum, q_a);
}

}  // namespace

Residue naive_sum(const Natural& n, const Natural& m, Modulus k, const Natural& oracle_limit) {
    require_positive_exponent(n);
    if (m > oracle_limit) {
        throw std::out_of_range("naive_sum: m = " + m.str() + " exceeds the oracle limit " +
                                oracle_limit.str() + "; use eval for large m");
    }
    const u64 count = to_u64(m);
    const u64 modulus = k.value();
    u64 acc = 0;
    if (fits_u64(n)) {
        const u64 exponent = static_cast<u64>(n);
        for (u64 i = 1; i <= count; ++i) acc = add_mod(acc, mod_pow(i, exponent, k).value(), modulus);
    } else {
        for (u64 i = 1; i <= count; ++i) {
            acc = add_mod(acc, mod_pow(Natural(i), n, k).value(), modulus);
        }
    }
    return Residue(acc, k);
}

std::vector<std::uint64_t> naive_prefix_sums(const Natural& n, std::uint64_t count, Modulus k) {
    require_positive_exponent(n);
    std::vector<u64> sums(count + 1);
    sums[0] = 0;
    if (fits_u64(n)) {
        const u64 exponent = static_cast<u64>(n);
        for (u64 i = 1; i <= count; ++i) {
            sums[i] = add_mod(sums[i - 1], mod_pow(i, exponent, k).value(), k.value());
        }
    } else {
        for (u64 i = 1; i <= count; ++i) {
            sums[i] = add_mod(sums[i - 1], mod_pow(Natural(i), n, k).value(), k.value());
        }
    }
    return sums;
}

std::string_view to_string(CongruenceTag tag) noexcept {
    return tag == CongruenceTag::PhiCase ? "PhiCase" : "ZeroCase";
}

CongruenceCase prime_power_congruence(const Natural& n, const PrimePower& p) {
    require_positive_exponent(n);
    const u64 q = p.prime();
    bool phi_case;
    if (q != 2) {
        phi_case = divides(q - 1, n);
    } else if (p.exponent() == 1) {
        phi_case = true;
    } else {
        phi_case = n == 1 || divides(2, n);
    }
    if (phi_case) return {CongruenceTag::PhiCase, Residue(phi_prime_power(p), p.modulus())};
    return {CongruenceTag::ZeroCase, Residue(0, p.modulus())};
}

std::uint64_t valuation_lower_bound(const Natural& n, std::uint64_t q, std::uint64_t j) {
    require_positive_exponent(n);
    if (j == 0) throw std::domain_error("valuation_lower_bound requires j >= 1");
    if (!is_prime(q)) throw std::invalid_argument(std::to_string(q) + " is not prime");
    if (q != 2) {
        if (!divides(q - 1, n)) return nu(q, n) + j;
        return j - 1;
    }
    if (j == 1) return 0;
    const bool odd_above_one = n > 1 && !divides(2, n);
    return odd_above_one ? j : j - 1;
}

std::string_view to_string(PeriodBranch branch) noexcept {
    switch (branch) {
        case PeriodBranch::TwoBase: return "k = 2";
        case PeriodBranch::TwoEvenOrOne: return "n = 1 or n even";
        case PeriodBranch::TwoOdd: return "n odd > 1";
        case PeriodBranch::UnitExponent: return "q-1 | n";
        case PeriodBranch::ValuationDrop: return "nu_q(n) <= a-2";
        case PeriodBranch::Floor: return "q^(a-1) | n";
    }
    return "?";
}

PrimePowerPeriod classify_period(const Natural& n, const PrimePower& p) {
    require_positive_exponent(n);
    const u64 q = p.prime();
    const u64 a = p.exponent();
    if (q == 2) {
        if (a == 1) return {p, PeriodBranch::TwoBase, Natural(4)};
        if (n == 1 || divides(2, n)) return {p, PeriodBranch::TwoEvenOrOne, natural_pow(2, a + 1)};
        return {p, PeriodBranch::TwoOdd, natural_pow(2, a)};
    }
    if (divides(q - 1, n)) return {p, PeriodBranch::UnitExponent, natural_pow(q, a + 1)};
    const u64 i = nu(q, n);
    if (a >= 2 && i <= a - 2) return {p, PeriodBranch::ValuationDrop, natural_pow(q, a - i)};
    return {p, PeriodBranch::Floor, Natural(q)};
}

Natural period_prime_power(const Natural& n, const PrimePower& p) {
    return classify_period(n, p).period;
}

PeriodBreakdown period(const Natural& n, Modulus k) {
    require_positive_exponent(n);
    PeriodBreakdown breakdown{k, {}, Natural(1)};
    for (const auto& part : factorize(k)) {
        auto entry = classify_period(n, part);
        breakdown.combined = boost::multiprecision::lcm(breakdown.combined, entry.period);
        breakdown.per_prime.push_back(std::move(entry));
    }
    return breakdown;
}

Natural row_period(Modulus k) {
    Natural product = 1;
    for (const auto& part : factorize(k)) product *= natural_pow(part.prime(), part.exponent() + 1);
    return product;
}

EvalTrace eval_explained(const Natural& n, const Natural& m, Modulus k) {
    require_positive_exponent(n);
    EvalTrace trace{Residue(0, k), {}};
    std::vector<CrtPart> parts;
    for (const auto& part : factorize(k)) {
        Natural ell = period_prime_power(n, part);
        Natural reduced = m % ell;
        const Residue partial(prime_power_window(n, part, reduced), part.modulus());
        parts.push_back({partial, part});
        trace.terms.push_back({part, std::move(ell), std::move(reduced), partial});
    }
    trace.result = crt_combine(parts);
    return trace;
}

Residue eval(const Natural& n, const Natural& m, Modulus k) { return eval_explained(n, m, k).result; }

}  // namespace powsum
