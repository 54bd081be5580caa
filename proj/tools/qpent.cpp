// qpent: counting, schedule inspection, and identity verification for
// residue-restricted partitions, with text/json/csv output.
//
// Exit codes: 0 = success / all checks passed, 1 = a verification failed,
// 2 = usage error. The json document shape is identical for every
// subcommand: kind, params, passed, residuals, elapsed_ms (plus
// kind-specific payload fields); big integers are decimal strings.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qpent/identity.hpp"
#include "qpent/partition.hpp"
#include "qpent/series.hpp"

using nlohmann::ordered_json;
using namespace qpent;

namespace {

enum class output_format { text, json, csv };

const std::map<std::string, output_format> format_names{
    {"text", output_format::text}, {"json", output_format::json}, {"csv", output_format::csv}};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Spent verifying a claim that turned out false.
struct verification_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::int64_t default_ceiling = 5000;

void check_ceiling(std::int64_t value, std::int64_t ceiling, const std::string& flag) {
    if (value > ceiling)
        throw usage_error(flag + " = " + std::to_string(value) + " exceeds the safety ceiling " +
                          std::to_string(ceiling) + "; pass --limit to raise it");
}

std::vector<std::int64_t> parse_residue_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw usage_error("malformed residue list entry '" + token + "' in '" + text + "'");
        }
    }
    if (out.empty()) throw usage_error("empty residue list");
    return out;
}

std::int64_t oracle_bound_from_env() {
    const char* raw = std::getenv("PARTITION_ORACLE_BOUND");
    if (raw == nullptr) return default_oracle_bound;
    try {
        std::size_t used = 0;
        std::int64_t bound = std::stoll(raw, &used);
        if (used != std::string(raw).size() || bound < 1) throw std::invalid_argument(raw);
        return bound;
    } catch (const std::exception&) {
        throw usage_error(std::string("PARTITION_ORACLE_BOUND must be a positive integer, got '") +
                          raw + "'");
    }
}

std::string join(const std::vector<std::int64_t>& values, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += sep;
        out += std::to_string(values[i]);
    }
    return out;
}

std::string describe_restriction(std::int64_t n, const residue_restriction& r) {
    if (r.unrestricted())
        return "p(" + std::to_string(n) + ")";
    return "p(" + std::to_string(n) + " | parts !== " + join(r.forbidden, ",") + " (mod " +
           std::to_string(r.modulus) + "))";
}

ordered_json residual_entry(std::int64_t n, const integer& value) {
    return ordered_json{{"n", n}, {"value", value.get_str()}};
}

ordered_json report_doc(const std::string& kind, ordered_json params, bool passed,
                        ordered_json residuals, double elapsed_ms) {
    return ordered_json{{"kind", kind},
                       {"params", std::move(params)},
                       {"passed", passed},
                       {"residuals", std::move(residuals)},
                       {"elapsed_ms", elapsed_ms}};
}

void emit_json(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

ordered_json residuals_to_json(const std::map<std::int64_t, integer>& residuals) {
    ordered_json arr = ordered_json::array();
    for (const auto& [n, value] : residuals) arr.push_back(residual_entry(n, value));
    return arr;
}

// ---------------------------------------------------------------- count

struct count_args {
    std::int64_t n = 0;
    std::optional<std::int64_t> modulus;
    std::optional<std::string> forbid_raw;
    bool check = false;
    output_format format = output_format::text;
    std::int64_t limit = default_ceiling;
};

int run_count(const count_args& args) {
    if (args.forbid_raw && !args.modulus)
        throw usage_error("--forbid requires --modulus");
    check_ceiling(args.n, args.limit, "--n");

    residue_restriction r;
    if (args.modulus) {
        std::vector<std::int64_t> residues;
        if (args.forbid_raw) residues = parse_residue_list(*args.forbid_raw);
        if (*args.modulus < 1) throw usage_error("--modulus must be >= 1");
        r = residue_restriction(*args.modulus, residues);
    }

    detail::stopwatch timer;
    const integer count = r.unrestricted() ? pentagonal_recurrence_table(args.n).at(args.n)
                                           : count_restricted(r, args.n).at(args.n);
    std::optional<integer> oracle;
    if (args.check) {
        try {
            oracle = enumerate_restricted(args.n, r, oracle_bound_from_env());
        } catch (const oracle_bound_error& e) {
            throw usage_error(e.what());
        }
    }
    const bool passed = !oracle || *oracle == count;
    const double elapsed = timer.ms();

    switch (args.format) {
        case output_format::text:
            std::cout << describe_restriction(args.n, r) << " = " << count << "\n";
            if (oracle) {
                std::cout << "enumeration oracle: " << *oracle
                          << (passed ? " (agrees)" : " (MISMATCH)") << "\n";
            }
            break;
        case output_format::json: {
            ordered_json params{{"n", args.n}};
            if (args.modulus) {
                params["modulus"] = r.modulus;
                params["forbid"] = r.forbidden;
            }
            if (args.check) params["check"] = true;
            ordered_json doc = report_doc("count", std::move(params), passed,
                                          ordered_json::array({residual_entry(args.n, count)}),
                                          elapsed);
            if (oracle) doc["oracle"] = oracle->get_str();
            emit_json(doc);
            break;
        }
        case output_format::csv: {
            std::cout << "n,modulus,forbidden,count" << (oracle ? ",oracle" : "") << "\n";
            std::cout << args.n << "," << (args.modulus ? std::to_string(r.modulus) : "") << ","
                      << join(r.forbidden, ";") << "," << count;
            if (oracle) std::cout << "," << *oracle;
            std::cout << "\n";
            break;
        }
    }
    if (!passed)
        throw verification_failure("enumeration oracle disagrees with the count at n = " +
                                   std::to_string(args.n));
    return 0;
}

// ---------------------------------------------------------------- terms

struct terms_args {
    std::int64_t m = 1;
    output_format format = output_format::text;
};

int run_terms(const terms_args& args) {
    detail::stopwatch timer;
    const identity_schedule s = schedule_for(args.m);
    const double elapsed = timer.ms();

    switch (args.format) {
        case output_format::text:
            std::cout << "m = " << s.m << ", modulus = " << s.modulus << ", terms = "
                      << s.terms.size() << "\n";
            std::cout << " index  shift  sign  forbidden (mod " << s.modulus << ")\n";
            for (std::size_t i = 0; i < s.terms.size(); ++i) {
                const auto& t = s.terms[i];
                std::printf("%6zu %6lld %5c  %s\n", i, static_cast<long long>(t.shift),
                            t.sign > 0 ? '+' : '-', join(t.restriction.forbidden, ",").c_str());
            }
            break;
        case output_format::json: {
            ordered_json doc = report_doc("terms", ordered_json{{"m", args.m}}, true,
                                          ordered_json::array(), elapsed);
            doc["modulus"] = s.modulus;
            ordered_json terms = ordered_json::array();
            for (std::size_t i = 0; i < s.terms.size(); ++i) {
                const auto& t = s.terms[i];
                terms.push_back(ordered_json{{"index", i},
                                             {"shift", t.shift},
                                             {"sign", t.sign},
                                             {"forbidden", t.restriction.forbidden}});
            }
            doc["terms"] = std::move(terms);
            emit_json(doc);
            break;
        }
        case output_format::csv:
            std::cout << "index,shift,sign,modulus,forbidden\n";
            for (std::size_t i = 0; i < s.terms.size(); ++i) {
                const auto& t = s.terms[i];
                std::cout << i << "," << t.shift << "," << t.sign << "," << s.modulus << ","
                          << join(t.restriction.forbidden, ";") << "\n";
            }
            break;
    }
    return 0;
}

// ---------------------------------------------------------------- verify

struct verify_args {
    std::int64_t m = 1;
    std::int64_t max_n = 0;
    std::string method = "counting";
    std::optional<std::int64_t> corrupt_term;
    output_format format = output_format::text;
    std::int64_t limit = default_ceiling;
};

int run_verify(const verify_args& args) {
    check_ceiling(args.max_n, args.limit, "--max-n");
    const bool run_counting = args.method == "counting" || args.method == "both";
    const bool run_series = args.method == "series" || args.method == "both";
    if (args.corrupt_term && !run_counting)
        throw usage_error("--corrupt-term injects a fault into the counting route; "
                          "use --method counting or both");

    identity_schedule s = schedule_for(args.m);
    if (args.corrupt_term) {
        if (*args.corrupt_term < 0 ||
            *args.corrupt_term >= static_cast<std::int64_t>(s.terms.size()))
            throw usage_error("--corrupt-term index out of range for m = " + std::to_string(args.m));
        s.terms[static_cast<std::size_t>(*args.corrupt_term)].shift += 1;
    }

    detail::stopwatch timer;
    std::optional<verification_report> counting;
    std::optional<verification_report> product;
    if (run_counting) counting = verify_counting(s, 1, args.max_n);
    if (run_series) product = verify_product_identity(args.m, args.max_n);
    const double elapsed = timer.ms();
    const bool passed = (!counting || counting->passed) && (!product || product->passed);

    switch (args.format) {
        case output_format::text: {
            std::cout << "verify m=" << args.m << " max_n=" << args.max_n << " method="
                      << args.method << "\n";
            if (counting) {
                std::cout << "counting: " << (counting->passed ? "PASS" : "FAIL");
                if (counting->passed) {
                    std::cout << " (residual 0 for n = 1.." << args.max_n << "; residual(0) = "
                              << counting->residuals.at(0) << ")\n";
                } else {
                    std::cout << "\n";
                    for (const auto& [n, value] : counting->residuals)
                        if (n >= 1) std::cout << "  n=" << n << " residual=" << value << "\n";
                }
            }
            if (product) {
                std::cout << "series: " << (product->passed ? "PASS" : "FAIL")
                          << " (coefficients 0.." << args.max_n << ")\n";
                for (const auto& [e, value] : product->residuals)
                    std::cout << "  exponent=" << e << " difference=" << value << "\n";
            }
            std::cout << "result: " << (passed ? "PASS" : "FAIL") << "\n";
            break;
        }
        case output_format::json: {
            ordered_json residuals = ordered_json::array();
            if (counting)
                for (const auto& [n, value] : counting->residuals)
                    residuals.push_back(residual_entry(n, value));
            if (product)
                for (const auto& [e, value] : product->residuals)
                    residuals.push_back(residual_entry(e, value));
            emit_json(report_doc("verify",
                                 ordered_json{{"m", args.m},
                                              {"max_n", args.max_n},
                                              {"method", args.method}},
                                 passed, std::move(residuals), elapsed));
            break;
        }
        case output_format::csv: {
            std::cout << "method,n,residual\n";
            if (counting)
                for (const auto& [n, value] : counting->residuals)
                    std::cout << "counting," << n << "," << value << "\n";
            if (product)
                for (const auto& [e, value] : product->residuals)
                    std::cout << "series," << e << "," << value << "\n";
            break;
        }
    }
    if (!passed) {
        std::int64_t first_bad = -1;
        const auto& bad = counting && !counting->passed ? counting->residuals : product->residuals;
        for (const auto& [n, value] : bad)
            if (n >= 1) { first_bad = n; break; }
        throw verification_failure("identity fails first at n = " + std::to_string(first_bad));
    }
    return 0;
}

// ---------------------------------------------------------------- lemma

struct lemma_args {
    std::int64_t k = 1;
    std::int64_t order = 0;
    output_format format = output_format::text;
    std::int64_t limit = default_ceiling;
};

int run_lemma(const lemma_args& args) {
    check_ceiling(args.order, args.limit, "--order");
    const verification_report rep = verify_lemma(args.k, args.order);

    switch (args.format) {
        case output_format::text:
            std::cout << "lemma k=" << args.k << " order=" << args.order << "\n";
            if (rep.passed) {
                std::cout << "i = 1.." << 2 * args.k << ": sum side equals product side through q^"
                          << args.order << "\n";
            } else {
                for (const auto& [i, mismatches] : rep.residuals)
                    std::cout << "  i=" << i << " mismatched coefficients=" << mismatches << "\n";
            }
            std::cout << "result: " << (rep.passed ? "PASS" : "FAIL") << "\n";
            break;
        case output_format::json:
            emit_json(report_doc("lemma",
                                 ordered_json{{"k", args.k}, {"order", args.order}}, rep.passed,
                                 residuals_to_json(rep.residuals), rep.elapsed_ms));
            break;
        case output_format::csv:
            std::cout << "i,mismatched_coefficients\n";
            for (const auto& [i, mismatches] : rep.residuals)
                std::cout << i << "," << mismatches << "\n";
            break;
    }
    if (!rep.passed) throw verification_failure("triple product identity failed");
    return 0;
}

// ---------------------------------------------------------------- table

struct table_args {
    std::int64_t m = 1;
    std::int64_t from = 0;
    std::int64_t to = 0;
    output_format format = output_format::text;
    std::int64_t limit = default_ceiling;
};

int run_table(const table_args& args) {
    if (args.from < 0 || args.from > args.to)
        throw usage_error("need 0 <= --from <= --to");
    check_ceiling(args.to, args.limit, "--to");

    detail::stopwatch timer;
    const identity_schedule s = schedule_for(args.m);
    const schedule_tables tables(s, args.to);

    std::vector<std::vector<integer>> rows;  // per n: term values then residual
    bool passed = true;
    for (std::int64_t n = args.from; n <= args.to; ++n) {
        std::vector<integer> row;
        for (std::size_t t = 0; t < s.terms.size(); ++t) {
            const std::int64_t idx = n - s.terms[t].shift;
            row.push_back(idx < 0 ? integer(0) : tables.for_term(t).at(idx));
        }
        row.push_back(residual(n, s, tables));
        if (n >= 1 && row.back() != 0) passed = false;
        rows.push_back(std::move(row));
    }
    const double elapsed = timer.ms();

    switch (args.format) {
        case output_format::text: {
            std::cout << "table m=" << args.m << " modulus=" << s.modulus << " n=" << args.from
                      << ".." << args.to << "\n";
            std::cout << "columns: n";
            for (const auto& t : s.terms)
                std::cout << ", " << (t.sign > 0 ? '+' : '-') << "p(n-" << t.shift
                          << " | !== " << join(t.restriction.forbidden, ",") << ")";
            std::cout << ", residual\n";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                std::cout << (args.from + static_cast<std::int64_t>(i));
                for (const auto& v : rows[i]) std::cout << "  " << v;
                std::cout << "\n";
            }
            break;
        }
        case output_format::json: {
            ordered_json residuals = ordered_json::array();
            ordered_json json_rows = ordered_json::array();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const std::int64_t n = args.from + static_cast<std::int64_t>(i);
                ordered_json counts = ordered_json::array();
                for (std::size_t t = 0; t < s.terms.size(); ++t)
                    counts.push_back(rows[i][t].get_str());
                json_rows.push_back(ordered_json{{"n", n},
                                                 {"counts", std::move(counts)},
                                                 {"residual", rows[i].back().get_str()}});
                residuals.push_back(residual_entry(n, rows[i].back()));
            }
            ordered_json doc = report_doc("table",
                                          ordered_json{{"m", args.m},
                                                       {"from", args.from},
                                                       {"to", args.to}},
                                          passed, std::move(residuals), elapsed);
            doc["modulus"] = s.modulus;
            doc["rows"] = std::move(json_rows);
            emit_json(doc);
            break;
        }
        case output_format::csv: {
            std::cout << "n";
            for (std::size_t t = 0; t < s.terms.size(); ++t) std::cout << ",term" << t;
            std::cout << ",residual\n";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                std::cout << (args.from + static_cast<std::int64_t>(i));
                for (const auto& v : rows[i]) std::cout << "," << v;
                std::cout << "\n";
            }
            break;
        }
    }
    return 0;
}

CLI::Validator int_at_least(std::int64_t lo) {
    return CLI::Validator(
        [lo](std::string& input) -> std::string {
            try {
                std::size_t used = 0;
                const long long v = std::stoll(input, &used);
                if (used != input.size()) return "'" + input + "' is not an integer";
                if (v < lo) return "must be >= " + std::to_string(lo) + ", got " + input;
            } catch (const std::exception&) {
                return "'" + input + "' is not an integer";
            }
            return {};
        },
        "INT>=" + std::to_string(lo));
}

void add_format_option(CLI::App* cmd, output_format& target) {
    cmd->add_option("--format", target, "output format: text, json, or csv")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
}

void add_limit_option(CLI::App* cmd, std::int64_t& target) {
    cmd->add_option("--limit", target,
                    "safety ceiling for the sweep size (default " +
                        std::to_string(default_ceiling) + ")")
        ->check(int_at_least(1));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact partition counts and truncated pentagonal recurrence verification"};
    app.require_subcommand(1);

    count_args count;
    CLI::App* count_cmd = app.add_subcommand("count", "restricted or plain partition count p(n)");
    count_cmd->add_option("--n", count.n, "target integer n")->required()
        ->check(int_at_least(0));
    count_cmd->add_option("--modulus", count.modulus, "residue modulus M");
    count_cmd->add_option("--forbid", count.forbid_raw,
                          "comma-separated forbidden residues (unreduced ok; M means 0)");
    count_cmd->add_flag("--check", count.check,
                        "cross-check against the enumeration oracle "
                        "(bounded by PARTITION_ORACLE_BOUND, default 60)");
    add_format_option(count_cmd, count.format);
    add_limit_option(count_cmd, count.limit);

    terms_args terms;
    CLI::App* terms_cmd = app.add_subcommand("terms", "print the identity schedule for m");
    terms_cmd->add_option("--m", terms.m, "schedule parameter m >= 1")->required()
        ->check(int_at_least(1));
    add_format_option(terms_cmd, terms.format);

    verify_args verify;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "verify the identity for m over n = 1..max_n");
    verify_cmd->add_option("--m", verify.m, "schedule parameter m >= 1")->required()
        ->check(int_at_least(1));
    verify_cmd->add_option("--max-n", verify.max_n, "sweep bound")->required()
        ->check(int_at_least(0));
    verify_cmd->add_option("--method", verify.method, "counting, series, or both")
        ->transform(CLI::IsMember({"counting", "series", "both"}));
    verify_cmd->add_option("--corrupt-term", verify.corrupt_term)->group("");  // fault injection
    add_format_option(verify_cmd, verify.format);
    add_limit_option(verify_cmd, verify.limit);

    lemma_args lemma;
    CLI::App* lemma_cmd =
        app.add_subcommand("lemma", "verify the triple product identity for every i = 1..2k");
    lemma_cmd->add_option("--k", lemma.k, "parameter k >= 1")->required()
        ->check(int_at_least(1));
    lemma_cmd->add_option("--order", lemma.order, "truncation order")->required()
        ->check(int_at_least(0));
    add_format_option(lemma_cmd, lemma.format);
    add_limit_option(lemma_cmd, lemma.limit);

    table_args table;
    CLI::App* table_cmd =
        app.add_subcommand("table", "per-term counts and residual for each n in a range");
    table_cmd->add_option("--m", table.m, "schedule parameter m >= 1")->required()
        ->check(int_at_least(1));
    table_cmd->add_option("--from", table.from, "first n")->required()
        ->check(int_at_least(0));
    table_cmd->add_option("--to", table.to, "last n")->required()->check(int_at_least(0));
    add_format_option(table_cmd, table.format);
    add_limit_option(table_cmd, table.limit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (count_cmd->parsed()) return run_count(count);
        if (terms_cmd->parsed()) return run_terms(terms);
        if (verify_cmd->parsed()) return run_verify(verify);
        if (lemma_cmd->parsed()) return run_lemma(lemma);
        if (table_cmd->parsed()) return run_table(table);
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const verification_failure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
