// cli.hpp -- the zerorate command-line interface; run_cli is the whole program

#pragma once

#include "zerorate/construction.hpp"
#include "zerorate/io.hpp"
#include "zerorate/lp.hpp"
#include "zerorate/propsuite.hpp"
#include "zerorate/radii.hpp"
#include "zerorate/thresholds.hpp"
#include "zerorate/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace zerorate {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2, exit_budget = 3 };

namespace detail {

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// ZR_BUDGET, when set, replaces every enumeration budget.
inline std::optional<std::uint64_t> env_budget()
{
    const char* raw = std::getenv("ZR_BUDGET");
    if (!raw || !*raw)
        return std::nullopt;
    try {
        std::size_t used = 0;
        const std::string s(raw);
        const auto v = std::stoull(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("ZR_BUDGET must be a nonnegative integer, got '") + raw + "'");
    }
}

inline SimplexPoint parse_weighting(const std::string& text)
{
    std::vector<Rational> entries;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        entries.push_back(parse_rational(item));
    if (entries.empty())
        throw std::invalid_argument("empty weighting");
    return SimplexPoint(entries);
}

inline std::string fraction_line(const Rational& r) { return to_fraction_string(r) + "\t" + to_decimal_string(r); }

inline void print_json(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump(2) << "\n"; }

} // namespace detail

/// Parses argv and runs one subcommand. Normal output goes to `out`, diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Zero-rate list-decoding and list-recovery toolkit"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "Worker threads for exhaustive searches")->check(CLI::Range(1u, 256u));

    // threshold
    int tq = 0, tell = 0, tL = 0;
    bool as_json = false, as_csv = false;
    auto* threshold = app.add_subcommand("threshold", "Exact zero-rate threshold p*(q, ell, L)");
    threshold->add_option("q", tq)->required();
    threshold->add_option("ell", tell)->required();
    threshold->add_option("L", tL)->required();
    auto* json_flag = threshold->add_flag("--json", as_json, "JSON output");
    threshold->add_flag("--csv", as_csv, "CSV output")->excludes(json_flag);

    // radius
    std::string radius_file, dump_lp;
    std::vector<std::size_t> list_rows;
    std::vector<std::string> omegas;
    int rell = 1;
    auto* radius = app.add_subcommand("radius", "Average, weighted, relaxed and Chebyshev radii of a list");
    radius->add_option("codefile", radius_file)->required();
    radius->add_option("--list", list_rows, "Comma-separated 0-based row indices (default: all rows)")->delimiter(',');
    radius->add_option("--ell", rell, "Size of the recovery sets")->capture_default_str();
    radius->add_option("--omega", omegas, "Weighting as comma-separated fractions; repeatable");
    radius->add_option("--dump-lp", dump_lp, "Write the relaxed-radius LP as TSV to this path");

    // construct
    int cq = 0, cell = 0, cL = 0, cm = 0;
    std::string construct_out;
    auto* construct = app.add_subcommand("construct", "Generate the balanced-column code");
    construct->add_option("q", cq)->required();
    construct->add_option("ell", cell)->required();
    construct->add_option("L", cL)->required();
    construct->add_option("m", cm)->required();
    construct->add_option("--out", construct_out, "Output path (default: stdout)");

    // tradeoff
    int oq = 0, oell = 0, oL = 0;
    std::vector<int> m_list{1, 2, 3};
    auto* tradeoff = app.add_subcommand("tradeoff", "Exact radius of the construction against p* as a CSV table");
    tradeoff->add_option("q", oq)->required();
    tradeoff->add_option("ell", oell)->required();
    tradeoff->add_option("L", oL)->required();
    tradeoff->add_option("--m-list", m_list, "Comma-separated m values")->delimiter(',')->capture_default_str();

    // verify
    std::string verify_file, verify_p, method = "ball";
    int vell = 0, vL = 0;
    auto* verify = app.add_subcommand("verify", "Decide (p, ell, L)-list-recoverability of a code");
    verify->add_option("codefile", verify_file)->required();
    verify->add_option("p", verify_p)->required();
    verify->add_option("ell", vell)->required();
    verify->add_option("L", vL)->required();
    verify->add_option("--method", method, "ball or radius")->check(CLI::IsMember({"ball", "radius"}))->capture_default_str();

    // propsuite
    std::uint64_t seed = 1;
    int trials = 50;
    auto* propsuite = app.add_subcommand("propsuite", "Seeded property checks");
    propsuite->add_option("--seed", seed)->capture_default_str();
    propsuite->add_option("--trials", trials)->check(CLI::Range(1, 100000))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        // Subcommand help requests also arrive here as CallForHelp from the subcommand.
        if (e.get_exit_code() == 0) {
            out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
            return exit_ok;
        }
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return exit_usage;
    }

    SearchOptions search;
    search.threads = threads;
    std::uint64_t construct_budget = kDefaultBlocklengthBudget;
    std::uint64_t pattern_budget = kDefaultPatternBudget;

    try {
        if (auto b = detail::env_budget()) {
            search.budget = *b;
            construct_budget = *b;
            pattern_budget = *b;
        }

        if (threshold->parsed()) {
            if (tq < 2 || tq > kMaxAlphabet || tell < 1 || tell >= tq || tL < 2)
                throw detail::UsageError("threshold needs 2 <= q <= 31, 1 <= ell < q, L >= 2");
            const auto comps = binomial(tL + tq - 1, tq - 1);
            if (!comps.fits_ulong_p() || comps.get_ui() > pattern_budget)
                throw BudgetExceeded("composition sum for p*", comps.fits_ulong_p() ? comps.get_ui() : UINT64_MAX,
                                     pattern_budget);
            const Rational p = zero_rate_threshold(tq, tell, tL);
            if (as_json) {
                nlohmann::ordered_json j{{"q", tq}, {"ell", tell}, {"L", tL}, {"p_star", rational_json(p)}};
                detail::print_json(out, j);
            } else if (as_csv) {
                out << "q,ell,L,p_star,p_star_decimal\n"
                    << tq << "," << tell << "," << tL << "," << to_fraction_string(p) << "," << to_decimal_string(p) << "\n";
            } else {
                out << detail::fraction_line(p) << "\n";
            }
            return exit_ok;
        }

        if (radius->parsed()) {
            const Codebook code = read_codebook_file(radius_file);
            std::vector<std::size_t> rows = list_rows;
            if (rows.empty())
                for (std::size_t i = 0; i < code.size(); ++i)
                    rows.push_back(i);
            for (auto i : rows)
                if (i >= code.size())
                    throw detail::UsageError("row index " + std::to_string(i) + " out of range (code has "
                                             + std::to_string(code.size()) + " rows)");
            const Codebook list = code.subset(rows);
            if (rell < 1 || rell >= list.q())
                throw detail::UsageError("--ell must satisfy 1 <= ell < q");
            const int L = static_cast<int>(list.size());
            if (L == 0)
                throw detail::UsageError("empty list");

            RadiusReport rep;
            rep.q = list.q();
            rep.ell = rell;
            rep.n = list.n();
            rep.L = L;
            rep.average = average_radius(list, rell);
            rep.weighted["uniform"] = rep.average;
            for (const auto& text : omegas) {
                const SimplexPoint w = detail::parse_weighting(text);
                if (static_cast<int>(w.size()) != L)
                    throw detail::UsageError("--omega " + text + " has " + std::to_string(w.size())
                                             + " entries, list has " + std::to_string(L) + " rows");
                rep.weighted[w.to_string()] = weighted_average_radius(list, w, rell);
            }

            std::vector<std::string> omitted;
            const LpProblem program = relaxed_radius_program(list, rell);
            if (!dump_lp.empty()) {
                std::ofstream f(dump_lp);
                if (!f)
                    throw std::runtime_error("cannot write " + dump_lp);
                dump_tsv(program, f);
            }
            const std::uint64_t tableau = static_cast<std::uint64_t>(program.num_rows() + 1)
                                        * (program.num_vars() + 2 * program.num_rows() + 1);
            std::optional<OmegaRadius> via_omega;
            if (tableau <= search.budget) {
                auto rr = relaxed_radius(list, rell);
                rep.relaxed = rr.value;
                rep.relaxed_center = rr.center;
                via_omega = relaxed_radius_via_omega(tuple_type(list), rell);
            } else {
                omitted.push_back("relaxed");
            }
            bool over_budget = false;
            try {
                auto cheb = chebyshev_radius_exact(list, rell, search);
                rep.chebyshev = cheb.radius;
                rep.chebyshev_center = cheb.center;
            } catch (const BudgetExceeded& e) {
                omitted.push_back("chebyshev");
                err << "budget: " << e.what() << "\n";
                over_budget = true;
            }
            over_budget = over_budget || !omitted.empty();

            auto j = radius_report_json(rep);
            if (via_omega) {
                j["relaxed_via_omega"] = via_omega->value;
                j["maximizing_omega"] = via_omega->omega;
            }
            if (!omitted.empty())
                j["omitted"] = omitted;
            detail::print_json(out, j);
            return over_budget ? exit_budget : exit_ok;
        }

        if (construct->parsed()) {
            SimplexCodeSpec spec{cq, cell, cL, cm};
            const Codebook code = generate(spec, construct_budget);
            if (construct_out.empty()) {
                write_codebook(code, out);
            } else {
                write_codebook_file(code, construct_out);
                out << "wrote " << code.size() << "x" << code.n() << " codebook to " << construct_out << "\n";
            }
            return exit_ok;
        }

        if (tradeoff->parsed()) {
            for (int m : m_list)
                if (m < 1)
                    throw detail::UsageError("--m-list entries must be >= 1");
            out << tradeoff_table(oq, oell, oL, m_list).to_csv();
            return exit_ok;
        }

        if (verify->parsed()) {
            const Codebook code = read_codebook_file(verify_file);
            const Rational p = parse_rational(verify_p);
            if (p < 0 || p > 1)
                throw detail::UsageError("p must lie in [0, 1]");
            const Verdict v = method == "ball" ? is_list_recoverable(code, p, vell, vL, search)
                                               : is_list_recoverable_via_radius(code, p, vell, vL, search);
            auto j = verdict_json(v);
            j["method"] = method;
            detail::print_json(out, j);
            return v.pass ? exit_ok : exit_failure;
        }

        if (propsuite->parsed()) {
            PropertySuiteOptions opts;
            opts.seed = seed;
            opts.trials = trials;
            opts.search = search;
            int failed = 0;
            const auto results = run_property_suite(opts);
            for (const auto& r : results) {
                out << (r.passed ? "PASS " : "FAIL ") << r.name << "  (" << r.detail << ")\n";
                failed += !r.passed;
            }
            out << "seed " << seed << ", trials " << trials << ": " << results.size() - static_cast<std::size_t>(failed)
                << " passed, " << failed << " failed\n";
            return failed ? exit_failure : exit_ok;
        }
    } catch (const BudgetExceeded& e) {
        err << "budget: " << e.what() << "\n";
        return exit_budget;
    } catch (const detail::UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_usage;
}

} // namespace zerorate
