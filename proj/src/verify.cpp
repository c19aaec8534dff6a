#include "powsum/verify.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "powsum/powersum.hpp"

namespace powsum::verify {

namespace {

using u64 = std::uint64_t;
using Clock = std::chrono::steady_clock;

std::string dec(u64 v) { return std::to_string(v); }

u64 elapsed_ms(Clock::time_point start) {
    return static_cast<u64>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

std::vector<PrimePower> prime_powers_up_to(u64 bound) {
    std::vector<PrimePower> result;
    for (u64 q = 2; q <= bound; ++q) {
        if (!is_prime(q)) continue;
        u64 value = q;
        for (unsigned a = 1; value <= bound; ++a) {
            result.emplace_back(q, a);
            if (value > bound / q) break;
            value *= q;
        }
    }
    return result;
}

void require_odd_prime(u64 q) {
    if (q == 2 || !is_prime(q)) {
        throw std::invalid_argument(std::to_string(q) + " is not an odd prime");
    }
}

u64 checked_pow(u64 q, u64 e) {
    const Natural value = natural_pow(q, e);
    if (!fits_u64(value)) {
        throw std::out_of_range(std::to_string(q) + "^" + std::to_string(e) + " exceeds 2^64 - 1");
    }
    return static_cast<u64>(value);
}

u64 checked_row_period(Modulus k, u64 budget) {
    const Natural row = row_period(k);
    if (row > budget) {
        throw std::length_error("row period " + row.str() + " of k = " + dec(k.value()) +
                                " exceeds the brute-force budget " + dec(budget));
    }
    return static_cast<u64>(row);
}

// First m in [0, span] with sums[m + shift] != sums[m], if any.
std::optional<u64> first_mismatch(const std::vector<u64>& sums, u64 shift, u64 span) {
    for (u64 m = 0; m <= span; ++m) {
        if (sums[m + shift] != sums[m]) return m;
    }
    return std::nullopt;
}

}  // namespace

VerificationRecord make_record(std::string theorem_id, Params params, std::string expected,
                               std::string actual, bool passed) {
    VerificationRecord record;
    record.theorem_id = std::move(theorem_id);
    record.status = passed ? Status::Pass : Status::Fail;
    record.expected = std::move(expected);
    record.actual = std::move(actual);
    if (!passed) record.counterexample = params;
    record.params = std::move(params);
    return record;
}

void VerificationReport::add(VerificationRecord record) {
    auto& tally = summary[record.theorem_id];
    if (record.status == Status::Pass) {
        ++tally.pass;
    } else {
        ++tally.fail;
    }
    records.push_back(std::move(record));
}

void VerificationReport::merge(const VerificationReport& other) {
    for (const auto& record : other.records) add(record);
    for (const auto& [key, value] : other.grid) grid[key] = value;
}

std::uint64_t VerificationReport::failures() const noexcept {
    u64 total = 0;
    for (const auto& [id, tally] : summary) total += tally.fail;
    return total;
}

VerificationReport check_congruence_theorems(std::uint64_t prime_power_max, std::uint64_t n_max) {
    const auto start = Clock::now();
    VerificationReport report;
    report.grid = {{"prime_power_max", dec(prime_power_max)}, {"n_max", dec(n_max)}};
    for (const auto& p : prime_powers_up_to(prime_power_max)) {
        const u64 q = p.prime();
        const u64 q_a = p.value();
        for (u64 n = 1; n <= n_max; ++n) {
            const Params params{{"q", dec(q)}, {"a", dec(p.exponent())}, {"n", dec(n)}};
            const u64 direct = naive_sum(n, q_a, p.modulus()).value();
            if (p.exponent() == 1) {
                const u64 classic = n % (q - 1) == 0 ? q - 1 : 0;
                report.add(make_record("T1", params, dec(classic), dec(direct), classic == direct));
            }
            const u64 closed = prime_power_congruence(n, p).value.value();
            report.add(make_record(q == 2 ? "T2.1" : "T2.2", params, dec(closed), dec(direct),
                                   closed == direct));
            if (p.exponent() >= 2) {
                const u64 lower = naive_sum(n, q_a, Modulus(q_a / q)).value();
                report.add(make_record("C2.3", params, "0", dec(lower), lower == 0));
            }
        }
    }
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

VerificationReport check_lemma_binomial(std::uint64_t q, std::uint64_t i_max, std::uint64_t j_max,
                                        std::uint64_t n_max) {
    require_odd_prime(q);
    const auto start = Clock::now();
    VerificationReport report;
    report.grid = {{"q", dec(q)}, {"i_max", dec(i_max)}, {"j_max", dec(j_max)}, {"n_max", dec(n_max)}};

    std::vector<Natural> row{Natural(1)};  // C(n, 0..n)
    for (u64 n = 1; n <= n_max; ++n) {
        std::vector<Natural> next(n + 1);
        next[0] = next[n] = 1;
        for (u64 k = 1; k < n; ++k) next[k] = row[k - 1] + row[k];
        row = std::move(next);

        const u64 i_top = std::min(i_max, nu(q, n));
        for (u64 i = 0; i <= i_top; ++i) {
            for (u64 j = 1; j <= j_max; ++j) {
                const Natural base_divisor = natural_pow(q, i + j);
                const Natural strong_divisor = base_divisor * q;
                std::optional<u64> failing_k;
                for (u64 k = 1; k <= n && !failing_k; ++k) {
                    const Natural term = row[k] * natural_pow(q, j * k);
                    const bool ok = term % base_divisor == 0 && (k < 2 || term % strong_divisor == 0);
                    if (!ok) failing_k = k;
                }
                Params params{{"q", dec(q)}, {"n", dec(n)}, {"i", dec(i)}, {"j", dec(j)}};
                if (failing_k) params["k"] = dec(*failing_k);
                report.add(make_record("L2.2", std::move(params), "divisible",
                                       failing_k ? "not divisible" : "divisible", !failing_k));
            }
        }
    }
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

VerificationReport check_power_congruence(std::uint64_t q, std::uint64_t i, std::uint64_t j,
                                          const Natural& n, std::uint64_t t_max) {
    require_odd_prime(q);
    if (n == 0 || n % natural_pow(q, i) != 0) {
        throw std::invalid_argument("check_power_congruence: " + dec(q) + "^" + dec(i) +
                                    " does not divide n = " + n.str());
    }
    const auto start = Clock::now();
    VerificationReport report;
    report.grid = {{"q", dec(q)}, {"i", dec(i)}, {"j", dec(j)}, {"n", n.str()}, {"t_max", dec(t_max)}};

    const Modulus modulus(checked_pow(q, i + j));
    const u64 shift = checked_pow(q, j);
    Params params{{"q", dec(q)}, {"i", dec(i)}, {"j", dec(j)}, {"n", n.str()}};
    for (u64 t = 1; t <= t_max; ++t) {
        const u64 lhs = mod_pow(Natural(t) + shift, n, modulus).value();
        const u64 rhs = mod_pow(Natural(t), n, modulus).value();
        if (lhs != rhs) {
            params["t"] = dec(t);
            report.add(make_record("C2.5", std::move(params), dec(rhs), dec(lhs), false));
            report.wall_time_ms = elapsed_ms(start);
            return report;
        }
    }
    params["t_max"] = dec(t_max);
    report.add(make_record("C2.5", std::move(params), "congruent", "congruent", true));
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

VerificationReport check_power_congruence_grid(std::uint64_t q, std::uint64_t i_max,
                                               std::uint64_t j_max, std::uint64_t n_max,
                                               std::uint64_t t_max) {
    require_odd_prime(q);
    const auto start = Clock::now();
    VerificationReport report;
    for (u64 i = 0; i <= i_max; ++i) {
        const u64 step = checked_pow(q, i);
        for (u64 j = 1; j <= j_max; ++j) {
            for (u64 n = step; n <= n_max; n += step) {
                report.merge(check_power_congruence(q, i, j, n, t_max));
            }
        }
    }
    report.grid = {{"q", dec(q)}, {"i_max", dec(i_max)}, {"j_max", dec(j_max)},
                   {"n_max", dec(n_max)}, {"t_max", dec(t_max)}};
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

VerificationReport check_generator_permutation(std::uint64_t q) {
    require_odd_prime(q);
    const auto start = Clock::now();
    VerificationReport report;
    report.grid = {{"q", dec(q)}};
    std::vector<char> seen(q);
    for (u64 g = 1; g < q; ++g) {
        std::fill(seen.begin(), seen.end(), 0);
        u64 distinct = 0;
        bool hit_zero = false;
        for (u64 x = 1; x < q; ++x) {
            const u64 image = mul_mod(g, x, q);
            if (image == 0) hit_zero = true;
            if (!seen[image]) {
                seen[image] = 1;
                ++distinct;
            }
        }
        const bool ok = !hit_zero && distinct == q - 1;
        report.add(make_record("T2.4", {{"q", dec(q)}, {"g", dec(g)}, {"check", "permutation"}},
                               dec(q - 1), dec(hit_zero ? 0 : distinct), ok));
    }
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

VerificationReport check_generator_block(std::uint64_t q, std::uint64_t j_max, std::uint64_t n_max) {
    require_odd_prime(q);
    const auto start = Clock::now();
    VerificationReport report;
    report.grid = {{"q", dec(q)}, {"j_max", dec(j_max)}, {"n_max", dec(n_max)}};
    if (j_max == 0) return report;

    const u64 width = checked_pow(q, j_max);
    std::vector<Natural> powers(width + 1, Natural(1));  // powers[t] = t^n
    std::vector<u64> block_ends;
    for (u64 j = 1, v = q; j <= j_max; ++j, v *= q) block_ends.push_back(v);

    for (u64 n = 1; n <= n_max; ++n) {
        for (u64 t = 1; t <= width; ++t) powers[t] *= t;
        if (n % (q - 1) == 0) continue;
        const u64 i = nu(q, n);
        Natural sum = 0;
        std::size_t next_end = 0;
        for (u64 t = 1; t <= width; ++t) {
            sum += powers[t];
            if (t != block_ends[next_end]) continue;
            const u64 j = next_end + 1;
            const u64 required = i + j;
            const u64 exact = nu(q, sum);
            report.add(make_record("T2.4", {{"q", dec(q)}, {"j", dec(j)}, {"n", dec(n)}},
                                   dec(required), dec(exact), exact >= required));
            ++next_end;
        }
    }
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

std::uint64_t minimal_period_bruteforce(const Natural& n, Modulus k, std::uint64_t budget) {
    const u64 row = checked_row_period(k, budget);
    const auto sums = naive_prefix_sums(n, 2 * row, k);
    for (u64 d : divisors(row)) {
        if (!first_mismatch(sums, d, row)) return d;
    }
    // row itself is always a period, so the loop returns.
    throw std::logic_error("row period of k = " + dec(k.value()) + " is not a period");
}

VerificationReport check_period_formulas(std::uint64_t k_max, std::uint64_t n_max,
                                         std::uint64_t budget) {
    const auto start = Clock::now();
    VerificationReport report;
    report.grid = {{"k_max", dec(k_max)}, {"n_max", dec(n_max)}};
    for (u64 k = 1; k <= k_max; ++k) {
        const Modulus modulus(k);
        const auto parts = factorize(modulus);
        const char* id = parts.size() == 1 ? "T3.2" : "LCM";
        for (u64 n = 1; n <= n_max; ++n) {
            const Natural formula = period(n, modulus).combined;
            const u64 brute = minimal_period_bruteforce(n, modulus, budget);
            report.add(make_record(id, {{"k", dec(k)}, {"n", dec(n)}}, formula.str(), dec(brute),
                                   formula == brute));
        }
    }
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

VerificationReport check_row_period(Modulus k, std::uint64_t n_window, std::uint64_t budget) {
    const auto start = Clock::now();
    const u64 row = checked_row_period(k, budget);
    const auto parts = factorize(k);
    if (n_window == 0) {
        n_window = std::max<u64>(50, parts.empty() ? 0 : parts.back().prime());
    }
    VerificationReport report;
    report.grid = {{"k", dec(k.value())}, {"n_window", dec(n_window)}};

    const std::string k_text = dec(k.value());
    for (u64 n = 1; n <= n_window; ++n) {
        const auto sums = naive_prefix_sums(n, 2 * row, k);
        const auto mismatch = first_mismatch(sums, row, row);
        Params params{{"k", k_text}, {"n", dec(n)}, {"period", dec(row)}};
        if (mismatch) params["m"] = dec(*mismatch);
        report.add(make_record("T3.1", std::move(params), "periodic",
                               mismatch ? "not periodic" : "periodic", !mismatch));
    }

    for (const auto& part : parts) {
        const u64 q = part.prime();
        const u64 divisor = row / q;
        std::vector<u64> candidates{q == 2 ? 1 : q - 1};
        for (u64 n = 1; n <= n_window; ++n) {
            if (n != candidates.front()) candidates.push_back(n);
        }
        Params params{{"k", k_text}, {"divisor", dec(divisor)}, {"q", dec(q)}};
        bool broken = false;
        for (u64 n : candidates) {
            const auto sums = naive_prefix_sums(n, row + divisor, k);
            if (const auto m = first_mismatch(sums, divisor, row)) {
                params["witness_n"] = dec(n);
                params["witness_m"] = dec(*m);
                broken = true;
                break;
            }
        }
        report.add(make_record("T3.1", std::move(params), "broken", broken ? "broken" : "not broken",
                               broken));
    }
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

Suite parse_suite(std::string_view name) {
    if (name == "all") return Suite::All;
    if (name == "congruence") return Suite::Congruence;
    if (name == "lemma") return Suite::Lemma;
    if (name == "power") return Suite::Power;
    if (name == "generator") return Suite::Generator;
    if (name == "periods") return Suite::Periods;
    if (name == "row-period") return Suite::RowPeriod;
    throw std::invalid_argument("unknown suite '" + std::string(name) +
                                "' (expected all, congruence, lemma, power, generator, periods, "
                                "row-period)");
}

namespace {

std::string join(const std::vector<std::uint64_t>& values) {
    std::string out;
    for (auto v : values) {
        if (!out.empty()) out += ' ';
        out += std::to_string(v);
    }
    return out;
}

}  // namespace

VerificationReport run_suite(Suite suite, const SuiteOptions& options) {
    const auto start = Clock::now();
    const auto wants = [suite](Suite s) { return suite == Suite::All || suite == s; };
    VerificationReport report;
    const auto absorb = [&report](VerificationReport part) {
        part.grid.clear();
        report.merge(part);
    };
    if (wants(Suite::Congruence)) {
        absorb(check_congruence_theorems(options.prime_power_max, options.congruence_n_max));
        report.grid["prime_power_max"] = dec(options.prime_power_max);
        report.grid["congruence_n_max"] = dec(options.congruence_n_max);
    }
    if (wants(Suite::Lemma)) {
        for (u64 q : options.lemma_primes) {
            absorb(check_lemma_binomial(q, options.lemma_i_max, options.lemma_j_max,
                                        options.lemma_n_max));
        }
        report.grid["lemma_primes"] = join(options.lemma_primes);
        report.grid["lemma_i_max"] = dec(options.lemma_i_max);
        report.grid["lemma_j_max"] = dec(options.lemma_j_max);
        report.grid["lemma_n_max"] = dec(options.lemma_n_max);
    }
    if (wants(Suite::Power)) {
        for (u64 q : options.power_primes) {
            absorb(check_power_congruence_grid(q, options.power_i_max, options.power_j_max,
                                               options.power_n_max, options.power_t_max));
        }
        report.grid["power_primes"] = join(options.power_primes);
        report.grid["power_i_max"] = dec(options.power_i_max);
        report.grid["power_j_max"] = dec(options.power_j_max);
        report.grid["power_n_max"] = dec(options.power_n_max);
        report.grid["power_t_max"] = dec(options.power_t_max);
    }
    if (wants(Suite::Generator)) {
        for (u64 q : options.generator_primes) absorb(check_generator_permutation(q));
        for (u64 q : options.block_primes) {
            absorb(check_generator_block(q, options.block_j_max, options.block_n_max));
        }
        report.grid["generator_primes"] = join(options.generator_primes);
        report.grid["block_primes"] = join(options.block_primes);
        report.grid["block_j_max"] = dec(options.block_j_max);
        report.grid["block_n_max"] = dec(options.block_n_max);
    }
    if (wants(Suite::Periods)) {
        absorb(check_period_formulas(options.period_k_max, options.period_n_max, options.budget));
        report.grid["period_k_max"] = dec(options.period_k_max);
        report.grid["period_n_max"] = dec(options.period_n_max);
    }
    if (wants(Suite::RowPeriod)) {
        for (u64 k = 1; k <= options.row_k_max; ++k) {
            absorb(check_row_period(Modulus(k), options.row_n_window, options.budget));
        }
        report.grid["row_k_max"] = dec(options.row_k_max);
        report.grid["row_n_window"] = dec(options.row_n_window);
    }
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

}  // namespace powsum::verify
