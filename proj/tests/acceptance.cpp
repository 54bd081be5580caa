// Acceptance gate: one line per criterion, [PASS]/[FAIL] plus elapsed time.
// Criterion 10 exercises the command-line binary whose path is argv[1];
// the others drive the library directly. Exit status is the number of
// failed criteria, so 0 means the gate is green.
//
// Every check is exact integer equality; each criterion also carries a
// wall-clock budget and fails honestly when it runs over.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "qpent/identity.hpp"
#include "qpent/partition.hpp"
#include "qpent/series.hpp"

using namespace qpent;

namespace {

struct outcome {
    bool ok = true;
    std::vector<std::string> problems;

    void expect(bool condition, const std::string& message) {
        if (!condition) {
            ok = false;
            problems.push_back(message);
        }
    }
};

int failures = 0;

void run_criterion(int index, const std::string& label, double budget_s,
                   const std::function<void(outcome&)>& body) {
    outcome result;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(result);
    } catch (const std::exception& e) {
        result.expect(false, std::string("unexpected exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.expect(elapsed <= budget_s,
                  "over budget: " + std::to_string(elapsed) + " s > " +
                      std::to_string(budget_s) + " s");

    std::printf("[%s] %2d. %s (%.2f s)\n", result.ok ? "PASS" : "FAIL", index, label.c_str(),
                elapsed);
    if (!result.ok) {
        ++failures;
        for (const auto& p : result.problems) std::printf("       - %s\n", p.c_str());
    }
}

// ------------------------------------------------------------------ CLI driver

struct cli_result {
    int exit_code = -1;
    std::string out;
};

cli_result run_cli(const std::string& cli_path, const std::string& args,
                   const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + "'" + cli_path + "' " + args + " 2>/dev/null";
    cli_result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

std::string schema_problem(const nlohmann::json& doc, const std::string& kind) {
    static const std::regex decimal("^-?[0-9]+$");
    if (!doc.is_object()) return "document is not a json object";
    for (const char* key : {"kind", "params", "passed", "residuals", "elapsed_ms"})
        if (!doc.contains(key)) return std::string("missing field '") + key + "'";
    if (doc["kind"] != kind) return "kind is not '" + kind + "'";
    if (!doc["params"].is_object()) return "params is not an object";
    if (!doc["passed"].is_boolean()) return "passed is not a boolean";
    if (!doc["elapsed_ms"].is_number()) return "elapsed_ms is not a number";
    if (!doc["residuals"].is_array()) return "residuals is not an array";
    for (const auto& entry : doc["residuals"]) {
        if (!entry.is_object() || !entry.contains("n") || !entry.contains("value"))
            return "residual entry shape is wrong";
        if (!entry["n"].is_number_integer()) return "residual n is not an integer";
        if (!entry["value"].is_string() ||
            !std::regex_match(entry["value"].get<std::string>(), decimal))
            return "residual value is not a decimal string";
    }
    return "";
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

// Mirrors the randomized coverage used by the unit suite: modulus 2..30,
// each residue forbidden with probability 3/10.
residue_restriction random_restriction(std::mt19937& rng) {
    std::uniform_int_distribution<std::int64_t> modulus_dist(2, 30);
    std::uniform_int_distribution<int> coin(0, 9);
    const std::int64_t modulus = modulus_dist(rng);
    std::vector<std::int64_t> forbidden;
    for (std::int64_t r = 0; r < modulus; ++r)
        if (coin(rng) < 3) forbidden.push_back(r);
    return residue_restriction(modulus, forbidden);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";

    run_criterion(1, "worked example: plain and restricted counts, and their additivity", 1.0,
                  [](outcome& t) {
        const count_table plain = pentagonal_recurrence_table(29);
        t.expect(plain.at(27) == 3010, "p(27) != 3010");
        t.expect(plain.at(28) == 3718, "p(28) != 3718");
        t.expect(plain.at(29) == 4565, "p(29) != 4565");
        const integer a = count_restricted(residue_restriction(27, {0, 12, 15}), 29).at(29);
        const integer b = count_restricted(residue_restriction(27, {0, 6, 21}), 28).at(28);
        const integer c = count_restricted(residue_restriction(27, {0, 3, 24}), 27).at(27);
        t.expect(a == 4133, "restricted count at 29 != 4133");
        t.expect(b == 2701, "restricted count at 28 != 2701");
        t.expect(c == 1432, "restricted count at 27 != 1432");
        t.expect(a == b + c, "4133 != 2701 + 1432");
    });

    run_criterion(2, "three-term identity: residual 0 for every n in 2..1000", 10.0,
                  [](outcome& t) {
        const verification_report rep = verify_theorem1_equality(1000);
        t.expect(rep.passed, "sweep reported failure");
        t.expect(rep.residuals.empty(), "unexpected nonzero residuals");
    });

    run_criterion(3, "five-term identity (m=2): residual 0 for 7..500 and also for 1..6", 10.0,
                  [](outcome& t) {
        const identity_schedule s = schedule_for(2);
        const schedule_tables tables(s, 500);
        for (std::int64_t n = 1; n <= 6; ++n)
            t.expect(residual(n, s, tables) == 0,
                     "nonzero residual in the small range at n = " + std::to_string(n));
        for (std::int64_t n = 7; n <= 500; ++n)
            t.expect(residual(n, s, tables) == 0,
                     "nonzero residual at n = " + std::to_string(n));
        t.expect(verify_counting(2, 500).passed, "full sweep reported failure");
    });

    run_criterion(4, "general schedule sweep: m = 1..5, residual 0 on 1..300 and 1 at n = 0", 60.0,
                  [](outcome& t) {
        for (std::int64_t m = 1; m <= 5; ++m) {
            const verification_report rep = verify_counting(m, 300);
            t.expect(rep.passed, "m = " + std::to_string(m) + " reported failure");
            const std::map<std::int64_t, integer> expected{{0, 1}};
            t.expect(rep.residuals == expected,
                     "m = " + std::to_string(m) + " residual map is not exactly {0: 1}");
        }
    });

    run_criterion(5, "series route: product identity holds for m = 1..5 at order 300", 60.0,
                  [](outcome& t) {
        for (std::int64_t m = 1; m <= 5; ++m) {
            const verification_report rep = verify_product_identity(m, 300);
            t.expect(rep.passed && rep.residuals.empty(),
                     "coefficient mismatch for m = " + std::to_string(m));
        }
    });

    run_criterion(6, "pentagonal number theorem at order 2000", 30.0, [](outcome& t) {
        t.expect(pentagonal_series(2000) == euler_product(2000),
                 "series and product expansions disagree");
    });

    run_criterion(7, "triple product identity: k = 1..4, every offset, order 200", 30.0,
                  [](outcome& t) {
        for (std::int64_t k = 1; k <= 4; ++k) {
            const verification_report rep = verify_lemma(k, 200);
            t.expect(rep.passed && rep.residuals.empty(),
                     "mismatch for k = " + std::to_string(k));
        }
    });

    run_criterion(8, "three-way agreement on 100 random restrictions "
                     "(enumeration to 40, series to 200)", 60.0, [](outcome& t) {
        std::mt19937 rng(20250823);
        for (int trial = 0; trial < 100; ++trial) {
            const residue_restriction r = random_restriction(rng);
            const count_table dp = count_restricted(r, 200);
            const series gf = restricted_gf(r, 200);
            bool agree = true;
            for (std::int64_t n = 0; n <= 40 && agree; ++n)
                agree = enumerate_restricted(n, r) == dp.at(n);
            for (std::int64_t n = 0; n <= 200 && agree; ++n) agree = gf[n] == dp.at(n);
            t.expect(agree, "disagreement for modulus " + std::to_string(r.modulus) +
                                " forbidden size " + std::to_string(r.forbidden.size()) +
                                " (trial " + std::to_string(trial) + ")");
            if (!agree) break;
        }
    });

    run_criterion(9, "growth bound: p(n) <= p(n-1) + p(n-2) for 2 <= n <= 1000", 1.0,
                  [](outcome& t) {
        const count_table plain = pentagonal_recurrence_table(1000);
        for (std::int64_t n = 2; n <= 1000; ++n)
            t.expect(plain.at(n) <= plain.at(n - 1) + plain.at(n - 2),
                     "bound violated at n = " + std::to_string(n));
    });

    run_criterion(10, "command-line contract: schema, determinism, exit codes, forced failure",
                  5.0, [&cli_path](outcome& t) {
        if (cli_path.empty()) {
            t.expect(false, "no CLI path supplied as argv[1]");
            return;
        }

        // Schema-valid json and deterministic payloads for all five subcommands.
        const std::vector<std::pair<std::string, std::string>> fixtures{
            {"count", "count --n 29 --modulus 27 --forbid 0,12,15 --format json"},
            {"terms", "terms --m 2 --format json"},
            {"verify", "verify --m 1 --max-n 120 --format json"},
            {"lemma", "lemma --k 1 --order 120 --format json"},
            {"table", "table --m 1 --from 27 --to 30 --format json"},
        };
        for (const auto& [kind, args] : fixtures) {
            const cli_result first = run_cli(cli_path, args);
            const cli_result second = run_cli(cli_path, args);
            t.expect(first.exit_code == 0, kind + ": exit code != 0");
            nlohmann::json a, b;
            try {
                a = nlohmann::json::parse(first.out);
                b = nlohmann::json::parse(second.out);
            } catch (const std::exception&) {
                t.expect(false, kind + ": output is not parseable json");
                continue;
            }
            const std::string problem = schema_problem(a, kind);
            t.expect(problem.empty(), kind + ": " + problem);
            a.erase("elapsed_ms");
            b.erase("elapsed_ms");
            t.expect(a == b, kind + ": payload differs between identical runs");
            if (kind == "count" && a.contains("residuals") && !a["residuals"].empty())
                t.expect(a["residuals"][0]["value"] == "4133", "count: wrong value in json");
        }

        // Text and json renderings agree on the numbers.
        const cli_result text = run_cli(cli_path, "count --n 29 --modulus 27 --forbid 0,12,15");
        t.expect(text.exit_code == 0 && text.out.find("= 4133") != std::string::npos,
                 "text rendering does not show 4133");

        // csv renderings carry a header row.
        t.expect(first_line(run_cli(cli_path, "count --n 12 --format csv").out) ==
                     "n,modulus,forbidden,count",
                 "count csv header is wrong");
        t.expect(first_line(run_cli(cli_path, "verify --m 1 --max-n 30 --format csv").out) ==
                     "method,n,residual",
                 "verify csv header is wrong");
        t.expect(first_line(run_cli(cli_path, "table --m 1 --from 1 --to 3 --format csv").out) ==
                     "n,term0,term1,term2,residual",
                 "table csv header is wrong");

        // Forced failure through the fault-injection flag: exit 1, passed false.
        const cli_result forced =
            run_cli(cli_path, "verify --m 1 --max-n 40 --corrupt-term 1 --format json");
        t.expect(forced.exit_code == 1, "corrupted schedule did not exit 1");
        try {
            const nlohmann::json doc = nlohmann::json::parse(forced.out);
            t.expect(doc["passed"] == false, "corrupted schedule still reports passed");
            t.expect(doc["residuals"].size() > 1, "corrupted schedule lists no residuals");
        } catch (const std::exception&) {
            t.expect(false, "corrupted-schedule output is not parseable json");
        }

        // Usage errors exit 2.
        const std::vector<std::string> bad{
            "count --n 10 --forbid 0,3",          // forbid without modulus
            "count --n 10 --modulus 6 --forbid 0,,3",  // malformed list
            "verify --m 0 --max-n 50",            // m below 1
            "verify --m 1 --max-n 6000",          // over the safety ceiling
            "frobnicate",                          // unknown subcommand
            "count",                               // missing required option
        };
        for (const auto& args : bad)
            t.expect(run_cli(cli_path, args).exit_code == 2, "no usage error for: " + args);

        // The ceiling is adjustable.
        t.expect(run_cli(cli_path, "verify --m 1 --max-n 5200 --limit 6000 --format json")
                         .exit_code == 0,
                 "--limit did not raise the ceiling");

        // Oracle bound comes from the environment.
        t.expect(run_cli(cli_path, "count --n 20 --check", "PARTITION_ORACLE_BOUND=10 ")
                         .exit_code == 2,
                 "oracle bound from environment not enforced");
        t.expect(run_cli(cli_path, "count --n 20 --modulus 5 --forbid 0 --check",
                         "PARTITION_ORACLE_BOUND=25 ").exit_code == 0,
                 "oracle check under the bound should pass");
        t.expect(run_cli(cli_path, "count --n 20 --check", "PARTITION_ORACLE_BOUND=bad ")
                         .exit_code == 2,
                 "malformed oracle bound should be a usage error");
    });

    std::printf("acceptance: %d/10 criteria passed\n", 10 - failures);
    return failures;
}
