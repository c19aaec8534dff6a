#include "powsum/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "powsum/arith.hpp"
#include "powsum/powersum.hpp"
#include "powsum/verify.hpp"

namespace powsum::cli {

namespace {

using u64 = std::uint64_t;
using Json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

struct Range {
    Natural first;
    Natural last;
};

// "a..b" or a single value "a".
Range parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const Natural v = parse_natural(text);
        return {v, v};
    }
    Range r{parse_natural(text.substr(0, dots)), parse_natural(text.substr(dots + 2))};
    if (r.first > r.last) throw std::invalid_argument("empty range '" + text + "'");
    return r;
}

Format parse_format(const std::string& name) {
    if (name == "text") return Format::Text;
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    throw std::invalid_argument("unknown format '" + name + "'");
}

Natural positive_exponent(const std::string& text) {
    Natural n = parse_natural(text);
    if (n == 0) throw std::domain_error("n must be at least 1");
    return n;
}

u64 parse_u64(const std::string& text) { return to_u64(parse_natural(text)); }

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string prime_power_label(const PrimePower& p) {
    return std::to_string(p.prime()) + "^" + std::to_string(p.exponent());
}

struct Globals {
    std::string format = "text";
    std::string oracle_limit;
    std::string budget;
    std::string out_path;
};

u64 resolve_budget(const Globals& globals) {
    if (!globals.budget.empty()) return parse_u64(globals.budget);
    if (const char* env = std::getenv("POWSUM_BUDGET"); env != nullptr && *env != '\0') {
        return parse_u64(env);
    }
    return verify::kDefaultBudget;
}

Natural resolve_oracle_limit(const Globals& globals) {
    if (!globals.oracle_limit.empty()) return parse_natural(globals.oracle_limit);
    return kDefaultOracleLimit;
}

struct EvalArgs {
    std::string n, m, k;
    bool explain = false;
    bool naive = false;
};

std::string cmd_eval(const EvalArgs& args, const Globals& globals) {
    const Natural n = positive_exponent(args.n);
    const Natural m = parse_natural(args.m);
    const Modulus k = Modulus::from_natural(parse_natural(args.k));
    const Format format = parse_format(globals.format);

    std::optional<EvalTrace> trace;
    Residue result(0, k);
    if (args.naive) {
        result = naive_sum(n, m, k, resolve_oracle_limit(globals));
    } else {
        trace = eval_explained(n, m, k);
        result = trace->result;
    }
    const bool explain = args.explain && trace.has_value();

    std::ostringstream out;
    switch (format) {
        case Format::Text:
            out << result.value() << '\n';
            if (explain) {
                for (const auto& term : trace->terms) {
                    out << "  " << prime_power_label(term.prime_power) << "  period " << term.period
                        << "  r " << term.reduced_m << "  partial " << term.partial.value() << '\n';
                }
            }
            break;
        case Format::Json: {
            Json j{{"n", args.n}, {"m", m.str()}, {"k", std::to_string(k.value())},
                   {"residue", std::to_string(result.value())}};
            if (explain) {
                Json terms = Json::array();
                for (const auto& term : trace->terms) {
                    terms.push_back({{"q", std::to_string(term.prime_power.prime())},
                                     {"a", std::to_string(term.prime_power.exponent())},
                                     {"period", term.period.str()},
                                     {"r", term.reduced_m.str()},
                                     {"partial", std::to_string(term.partial.value())}});
                }
                j["terms"] = std::move(terms);
            }
            out << j.dump() << '\n';
            break;
        }
        case Format::Csv:
            out << "n,m,k,residue\n" << n << ',' << m << ',' << k.value() << ',' << result.value() << '\n';
            break;
    }
    return out.str();
}

std::string cmd_period(const std::string& n_text, const std::string& k_text, const Globals& globals) {
    const Natural n = positive_exponent(n_text);
    const Modulus k = Modulus::from_natural(parse_natural(k_text));
    const auto breakdown = period(n, k);
    std::ostringstream out;
    switch (parse_format(globals.format)) {
        case Format::Text:
            out << "combined " << breakdown.combined << '\n';
            for (const auto& part : breakdown.per_prime) {
                out << "  " << prime_power_label(part.prime_power) << " (" << part.prime_power.value()
                    << ")  period " << part.period << "  [" << to_string(part.branch) << "]\n";
            }
            break;
        case Format::Json: {
            Json parts = Json::array();
            for (const auto& part : breakdown.per_prime) {
                parts.push_back({{"q", std::to_string(part.prime_power.prime())},
                                 {"a", std::to_string(part.prime_power.exponent())},
                                 {"branch", std::string(to_string(part.branch))},
                                 {"period", part.period.str()}});
            }
            out << Json{{"n", n.str()},
                        {"k", std::to_string(k.value())},
                        {"combined", breakdown.combined.str()},
                        {"per_prime", std::move(parts)}}
                       .dump()
                << '\n';
            break;
        }
        case Format::Csv:
            out << "q,a,period,branch\n";
            for (const auto& part : breakdown.per_prime) {
                out << part.prime_power.prime() << ',' << part.prime_power.exponent() << ','
                    << part.period << ',' << to_string(part.branch) << '\n';
            }
            out << "combined,," << breakdown.combined << ",\n";
            break;
    }
    return out.str();
}

std::string cmd_congruence(const std::string& n_text, const std::string& q_text,
                           const std::string& a_text, const Globals& globals) {
    const Natural n = positive_exponent(n_text);
    const u64 q = parse_u64(q_text);
    const u64 a = parse_u64(a_text);
    if (a == 0 || a > 64) throw std::invalid_argument("a must be in [1, 64]");
    const PrimePower p(q, static_cast<unsigned>(a));
    const auto result = prime_power_congruence(n, p);
    const u64 bound = valuation_lower_bound(n, q, a);
    std::ostringstream out;
    switch (parse_format(globals.format)) {
        case Format::Text:
            out << to_string(result.tag) << ' ' << result.value.value() << '\n'
                << "valuation bound: " << q << '^' << bound << " divides S_n(" << p.value() << ")\n";
            break;
        case Format::Json:
            out << Json{{"n", n.str()},
                        {"q", std::to_string(q)},
                        {"a", std::to_string(a)},
                        {"case", std::string(to_string(result.tag))},
                        {"residue", std::to_string(result.value.value())},
                        {"valuation_lower_bound", std::to_string(bound)}}
                       .dump()
                << '\n';
            break;
        case Format::Csv:
            out << "case,residue,valuation_lower_bound\n"
                << to_string(result.tag) << ',' << result.value.value() << ',' << bound << '\n';
            break;
    }
    return out.str();
}

struct TableArgs {
    std::string n_range, m_range, k;
    bool mark_period = false;
};

std::string cmd_table(const TableArgs& args, const Globals& globals) {
    const Range n_range = parse_range(args.n_range);
    const Range m_range = parse_range(args.m_range);
    const Modulus k = Modulus::from_natural(parse_natural(args.k));
    if (n_range.first == 0) throw std::domain_error("n must be at least 1");
    if (m_range.first == 0) throw std::invalid_argument("m range starts at 1");
    const Natural cells = (n_range.last - n_range.first + 1) * (m_range.last - m_range.first + 1);
    const u64 budget = resolve_budget(globals);
    if (cells > budget) {
        throw std::length_error("table has " + cells.str() + " cells, over the budget of " +
                                std::to_string(budget));
    }
    const Format format = parse_format(globals.format);
    const std::size_t width = std::to_string(k.value() - 1).size();

    std::ostringstream out;
    if (format == Format::Csv) {
        out << 'n';
        for (Natural m = m_range.first; m <= m_range.last; ++m) out << ",m=" << m;
        out << '\n';
    }
    Json rows = Json::array();
    for (Natural n = n_range.first; n <= n_range.last; ++n) {
        const Natural ell = period(n, k).combined;
        u64 acc = eval(n, m_range.first - 1, k).value();
        std::vector<u64> row;
        std::string line;
        for (Natural m = m_range.first; m <= m_range.last; ++m) {
            acc = add_mod(acc, mod_pow(m, n, k).value(), k.value());
            row.push_back(acc);
            if (!line.empty()) line += ' ';
            line += pad_left(std::to_string(acc), width);
            if (args.mark_period && m % ell == 0) line += " |";
        }
        if (format == Format::Text) {
            out << line << '\n';
        } else if (format == Format::Csv) {
            out << n;
            for (u64 v : row) out << ',' << v;
            out << '\n';
        } else {
            Json values = Json::array();
            for (u64 v : row) values.push_back(std::to_string(v));
            rows.push_back({{"n", n.str()}, {"period", ell.str()}, {"values", std::move(values)}});
        }
    }
    if (format == Format::Json) {
        out << Json{{"k", std::to_string(k.value())},
                    {"m_first", m_range.first.str()},
                    {"m_last", m_range.last.str()},
                    {"rows", std::move(rows)}}
                   .dump()
            << '\n';
    }
    return out.str();
}

struct VerifyArgs {
    std::string suite = "all";
    std::string k_max, n_max, prime_power_max, i_max, j_max, t_max, n_window;
    std::vector<std::string> primes;
};

std::pair<std::string, bool> cmd_verify(const VerifyArgs& args, const Globals& globals) {
    const verify::Suite suite = verify::parse_suite(args.suite);
    verify::SuiteOptions options;
    options.budget = resolve_budget(globals);
    if (!args.k_max.empty()) options.period_k_max = options.row_k_max = parse_u64(args.k_max);
    if (!args.n_max.empty()) {
        const u64 v = parse_u64(args.n_max);
        options.congruence_n_max = options.lemma_n_max = options.power_n_max = v;
        options.block_n_max = options.period_n_max = v;
    }
    if (!args.prime_power_max.empty()) options.prime_power_max = parse_u64(args.prime_power_max);
    if (!args.i_max.empty()) options.lemma_i_max = options.power_i_max = parse_u64(args.i_max);
    if (!args.j_max.empty()) {
        options.lemma_j_max = options.power_j_max = options.block_j_max = parse_u64(args.j_max);
    }
    if (!args.t_max.empty()) options.power_t_max = parse_u64(args.t_max);
    if (!args.n_window.empty()) options.row_n_window = parse_u64(args.n_window);
    if (!args.primes.empty()) {
        std::vector<u64> primes;
        for (const auto& text : args.primes) primes.push_back(parse_u64(text));
        options.lemma_primes = options.power_primes = primes;
        options.generator_primes = options.block_primes = primes;
    }
    const auto report = verify::run_suite(suite, options);
    return {verify::emit_report(report, globals.format), report.all_passed()};
}

int write_output(const std::string& text, const Globals& globals, std::ostream& out,
                 std::ostream& err) {
    if (globals.out_path.empty()) {
        out << text;
        return kExitOk;
    }
    std::ofstream file(globals.out_path, std::ios::binary);
    file << text;
    if (!file) {
        err << "error: cannot write " << globals.out_path << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Power sums S_n(m) = 1^n + ... + m^n modulo k", "powsum"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals globals;
    app.add_option("--format", globals.format, "Output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--oracle-limit", globals.oracle_limit, "Largest m accepted by direct summation");
    app.add_option("--budget", globals.budget,
                   "Brute-force budget (overrides POWSUM_BUDGET; default 1000000)");
    app.add_option("--out", globals.out_path, "Write the result to this file");

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "S_n(m) mod k for arbitrarily large n and m");
    eval_cmd->add_option("-n", eval_args.n, "Exponent n >= 1")->required();
    eval_cmd->add_option("-m", eval_args.m, "Upper summation limit m >= 0")->required();
    eval_cmd->add_option("-k", eval_args.k, "Modulus k >= 1")->required();
    eval_cmd->add_flag("--explain", eval_args.explain, "Show the per-prime-power reduction");
    eval_cmd->add_flag("--naive", eval_args.naive, "Sum directly (bounded by --oracle-limit)");

    std::string period_n, period_k;
    auto* period_cmd = app.add_subcommand("period", "Exact period of (S_n(m) mod k) in m");
    period_cmd->add_option("-n", period_n, "Exponent n >= 1")->required();
    period_cmd->add_option("-k", period_k, "Modulus k >= 1")->required();

    std::string cong_n, cong_q, cong_a;
    auto* cong_cmd = app.add_subcommand("congruence", "Closed form of S_n(q^a) mod q^a");
    cong_cmd->add_option("-n", cong_n, "Exponent n >= 1")->required();
    cong_cmd->add_option("-q", cong_q, "Prime q")->required();
    cong_cmd->add_option("-a", cong_a, "Exponent a >= 1")->required();

    TableArgs table_args;
    auto* table_cmd = app.add_subcommand("table", "Grid of S_n(m) mod k, rows n, columns m");
    table_cmd->add_option("-n", table_args.n_range, "Exponent range, e.g. 1..4")->required();
    table_cmd->add_option("-m", table_args.m_range, "Column range, e.g. 1..20")->required();
    table_cmd->add_option("-k", table_args.k, "Modulus k >= 1")->required();
    table_cmd->add_flag("--mark-period", table_args.mark_period, "Draw a rule after each period");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "Certify the congruence and period theorems");
    verify_cmd->add_option("--suite", verify_args.suite,
                           "all, congruence, lemma, power, generator, periods or row-period");
    verify_cmd->add_option("--k-max", verify_args.k_max, "Largest k for period sweeps");
    verify_cmd->add_option("--n-max", verify_args.n_max, "Largest n for every sweep");
    verify_cmd->add_option("--prime-power-max", verify_args.prime_power_max,
                           "Largest q^a for congruence sweeps");
    verify_cmd->add_option("--q", verify_args.primes, "Odd prime(s) for lemma/power/generator sweeps");
    verify_cmd->add_option("--i-max", verify_args.i_max, "Largest valuation i");
    verify_cmd->add_option("--j-max", verify_args.j_max, "Largest j");
    verify_cmd->add_option("--t-max", verify_args.t_max, "Largest t for the power congruence");
    verify_cmd->add_option("--n-window", verify_args.n_window, "Exponent window for row periods");

    std::vector<std::string> argv_storage{"powsum"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        std::string text;
        bool passed = true;
        if (*eval_cmd) {
            text = cmd_eval(eval_args, globals);
        } else if (*period_cmd) {
            text = cmd_period(period_n, period_k, globals);
        } else if (*cong_cmd) {
            text = cmd_congruence(cong_n, cong_q, cong_a, globals);
        } else if (*table_cmd) {
            text = cmd_table(table_args, globals);
        } else if (*verify_cmd) {
            std::tie(text, passed) = cmd_verify(verify_args, globals);
        }
        const int written = write_output(text, globals, out, err);
        if (written != kExitOk) return written;
        return passed ? kExitOk : kExitVerificationFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace powsum::cli
