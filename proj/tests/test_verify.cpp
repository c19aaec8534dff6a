#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "powsum/powersum.hpp"
#include "powsum/verify.hpp"

using namespace powsum;
using namespace powsum::verify;
using u64 = std::uint64_t;

namespace {

const VerificationRecord* find_record(const VerificationReport& report, const std::string& id,
                                      const Params& subset) {
    for (const auto& r : report.records) {
        if (r.theorem_id != id) continue;
        const bool match = std::all_of(subset.begin(), subset.end(), [&](const auto& kv) {
            const auto it = r.params.find(kv.first);
            return it != r.params.end() && it->second == kv.second;
        });
        if (match) return &r;
    }
    return nullptr;
}

void check_report_invariants(const VerificationReport& report) {
    std::map<std::string, Tally> tally;
    for (const auto& r : report.records) {
        REQUIRE((r.status == Status::Fail) == r.counterexample.has_value());
        auto& t = tally[r.theorem_id];
        (r.status == Status::Pass ? t.pass : t.fail)++;
    }
    REQUIRE(tally == report.summary);
}

}  // namespace

TEST_CASE("check_congruence_theorems over primes below 100") {
    const auto report = check_congruence_theorems(100, 50);
    check_report_invariants(report);
    CHECK(report.all_passed());
    const auto* r = find_record(report, "T1", {{"q", "5"}, {"a", "1"}, {"n", "4"}});
    REQUIRE(r != nullptr);
    CHECK(r->expected == "4");
    CHECK(r->actual == "4");
}

TEST_CASE("check_congruence_theorems exercises the 2^2 base case") {
    const auto report = check_congruence_theorems(4, 10);
    CHECK(report.all_passed());
    for (u64 n = 1; n <= 10; ++n) {
        const auto* r = find_record(report, "T2.1", {{"q", "2"}, {"a", "2"}, {"n", std::to_string(n)}});
        REQUIRE(r != nullptr);
        u64 direct = 0;
        for (u64 i = 1; i <= 4; ++i) {
            u64 term = 1;
            for (u64 e = 0; e < n; ++e) term = term * i % 4;
            direct = (direct + term) % 4;
        }
        CHECK((direct == 2 || direct == 0));
        CHECK(r->actual == std::to_string(direct));
    }
}

TEST_CASE("check_congruence_theorems smallest instance") {
    const auto report = check_congruence_theorems(2, 1);
    CHECK(report.all_passed());
    REQUIRE(report.records.size() == 2);
    CHECK(report.records[0].theorem_id == "T1");
    CHECK(report.records[0].actual == "1");
    CHECK(prime_power_congruence(1, PrimePower(2, 1)).tag == CongruenceTag::PhiCase);
}

TEST_CASE("check_lemma_binomial") {
    // C(3,2) 3^2 = 27: divisible by 3^2 and by 3^3.
    CHECK(3 * 9 == 27);
    const auto report = check_lemma_binomial(3, 1, 2, 3);
    CHECK(report.all_passed());
    CHECK(find_record(report, "L2.2", {{"n", "3"}, {"i", "1"}, {"j", "1"}}) != nullptr);
    CHECK(find_record(report, "L2.2", {{"n", "3"}, {"i", "1"}, {"j", "2"}}) != nullptr);
    CHECK(check_lemma_binomial(5, 1, 1, 5).all_passed());
    CHECK(check_lemma_binomial(7, 64, 3, 60).all_passed());
    CHECK_THROWS_AS(check_lemma_binomial(2, 1, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(check_lemma_binomial(9, 1, 1, 5), std::invalid_argument);
}

TEST_CASE("check_power_congruence") {
    CHECK(125 % 9 == 8);
    CHECK(check_power_congruence(3, 1, 1, 3, 2).all_passed());
    CHECK(check_power_congruence(3, 0, 1, 1, 1).all_passed());
    CHECK(32768 % 25 == 18);
    CHECK(243 % 25 == 18);
    CHECK(check_power_congruence(5, 1, 1, 5, 3).all_passed());
    CHECK_THROWS_AS(check_power_congruence(3, 1, 1, 4, 5), std::invalid_argument);
    CHECK_THROWS_AS(check_power_congruence(4, 0, 1, 4, 5), std::invalid_argument);

    const auto grid = check_power_congruence_grid(5, 2, 2, 60, 10);
    check_report_invariants(grid);
    CHECK(grid.all_passed());
    // i = 0: 60 values of n, i = 1: 12, i = 2: 2; each for two j
    CHECK(grid.records.size() == (60 + 12 + 2) * 2);
}

TEST_CASE("check_generator_permutation") {
    auto image = [](u64 q, u64 g) {
        std::vector<u64> out;
        for (u64 x = 1; x < q; ++x) out.push_back(g * x % q);
        return out;
    };
    CHECK(image(5, 2) == std::vector<u64>{2, 4, 1, 3});
    CHECK(image(3, 1) == std::vector<u64>{1, 2});
    CHECK(image(7, 3) == std::vector<u64>{3, 6, 2, 5, 1, 4});
    for (u64 q : {3u, 5u, 7u, 101u, 997u}) {
        const auto report = check_generator_permutation(q);
        CHECK(report.all_passed());
        CHECK(report.records.size() == q - 1);
    }
}

TEST_CASE("check_generator_block") {
    CHECK(4425 % 25 == 0);  // S_5(5)
    auto report = check_generator_block(5, 1, 5);
    CHECK(report.all_passed());
    const auto* r = find_record(report, "T2.4", {{"j", "1"}, {"n", "5"}});
    REQUIRE(r != nullptr);
    CHECK(r->expected == "2");

    CHECK(2025 % 27 == 0);  // S_3(9)
    report = check_generator_block(3, 2, 3);
    CHECK(report.all_passed());
    r = find_record(report, "T2.4", {{"j", "2"}, {"n", "3"}});
    REQUIRE(r != nullptr);
    CHECK(r->expected == "3");
    CHECK(find_record(report, "T2.4", {{"j", "1"}, {"n", "1"}}) != nullptr);
    // (q-1) | n is outside the statement
    CHECK(find_record(report, "T2.4", {{"n", "2"}}) == nullptr);
}

TEST_CASE("minimal_period_bruteforce") {
    CHECK(minimal_period_bruteforce(3, Modulus(9)) == 3);
    CHECK(minimal_period_bruteforce(1, Modulus(1)) == 1);
    CHECK(minimal_period_bruteforce(4, Modulus(2)) == 4);
    CHECK_THROWS_AS(minimal_period_bruteforce(1, Modulus(1009)), std::length_error);
    CHECK(minimal_period_bruteforce(1, Modulus(1009), 2'000'000) == 1009);
    for (u64 k = 1; k <= 60; ++k) {
        const Natural row = row_period(Modulus(k));
        for (u64 n = 1; n <= 20; ++n) {
            REQUIRE(row % minimal_period_bruteforce(n, Modulus(k)) == 0);
        }
    }
}

TEST_CASE("check_period_formulas") {
    const auto report = check_period_formulas(30, 12);
    check_report_invariants(report);
    CHECK(report.all_passed());
    const auto* r = find_record(report, "LCM", {{"k", "12"}, {"n", "2"}});
    REQUIRE(r != nullptr);
    CHECK(r->expected == "72");
    CHECK(r->actual == "72");
    r = find_record(report, "LCM", {{"k", "1"}, {"n", "5"}});
    REQUIRE(r != nullptr);
    CHECK(r->actual == "1");
    r = find_record(report, "T3.2", {{"k", "27"}, {"n", "3"}});
    REQUIRE(r != nullptr);
    CHECK(r->expected == "9");
    CHECK(r->actual == "9");
}

TEST_CASE("check_row_period") {
    auto report = check_row_period(Modulus(2));
    CHECK(report.all_passed());
    const auto* r = find_record(report, "T3.1", {{"divisor", "2"}});
    REQUIRE(r != nullptr);
    CHECK(r->params.at("witness_n") == "1");
    CHECK(report.records.size() == 51);

    report = check_row_period(Modulus(1));
    CHECK(report.all_passed());
    CHECK(report.records.size() == 50);

    report = check_row_period(Modulus(6), 10);
    CHECK(report.all_passed());
    r = find_record(report, "T3.1", {{"divisor", "18"}});
    REQUIRE(r != nullptr);
    CHECK(r->params.at("witness_n") == "1");
    r = find_record(report, "T3.1", {{"divisor", "12"}});
    REQUIRE(r != nullptr);
    CHECK(r->params.at("witness_n") == "2");
    CHECK(r->status == Status::Pass);
}

TEST_CASE("emit_report formats") {
    VerificationReport empty;
    CHECK(emit_report(empty, "json") == R"({"records":[],"summary":{},"grid":{},"wall_time_ms":0})");

    VerificationReport one;
    one.add(make_record("T1", {{"q", "5"}, {"a", "1"}, {"n", "4"}}, "4", "4", true));
    CHECK(emit_report(one, "csv") == "theorem_id,params,status,expected,actual\nT1,a=1;n=4;q=5,pass,4,4\n");

    VerificationReport failing;
    failing.add(make_record("T3.2", {{"k", "12"}, {"n", "2"}}, "72", "36", false));
    const auto text = emit_report(failing, ReportFormat::Text);
    CHECK(text.find("FAIL T3.2") != std::string::npos);
    CHECK(text.find("counterexample: k=12;n=2") != std::string::npos);
    CHECK(failing.failures() == 1);
    CHECK_FALSE(failing.all_passed());

    CHECK_THROWS_AS(emit_report(one, "xml"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite("everything"), std::invalid_argument);
    CHECK(parse_suite("row-period") == Suite::RowPeriod);
}

TEST_CASE("csv fields with separators are quoted") {
    VerificationReport report;
    report.add(make_record("L2.2", {{"q", "3"}}, "a,b", "say \"hi\"", true));
    CHECK(emit_report(report, "csv") ==
          "theorem_id,params,status,expected,actual\nL2.2,q=3,pass,\"a,b\",\"say \"\"hi\"\"\"\n");
}

TEST_CASE("json reports round-trip") {
    auto report = run_suite(Suite::RowPeriod, [] {
        SuiteOptions o;
        o.row_k_max = 12;
        return o;
    }());
    report.add(make_record("T3.2", {{"k", "12"}, {"n", "2"}}, "72", "36", false));
    report.wall_time_ms = 1234;
    check_report_invariants(report);
    CHECK(parse_report_json(emit_report(report, ReportFormat::Json)) == report);
    CHECK(parse_report_json(emit_report(VerificationReport{}, ReportFormat::Json)) == VerificationReport{});
}

TEST_CASE("run_suite at small grids passes every theorem") {
    SuiteOptions o;
    o.prime_power_max = 64;
    o.congruence_n_max = 20;
    o.lemma_n_max = 20;
    o.power_n_max = 50;
    o.power_t_max = 5;
    o.block_n_max = 40;
    o.period_k_max = 30;
    o.period_n_max = 10;
    o.row_k_max = 20;
    const auto report = run_suite(Suite::All, o);
    check_report_invariants(report);
    CHECK(report.all_passed());
    const std::set<std::string> expected_ids{"T1", "T2.1", "T2.2", "L2.2", "C2.3",
                                             "C2.5", "T2.4", "T3.1", "T3.2", "LCM"};
    std::set<std::string> ids;
    for (const auto& [id, tally] : report.summary) ids.insert(id);
    CHECK(ids == expected_ids);
    CHECK(report.grid.at("period_k_max") == "30");
}
