// Command-line surface for the symmetric-distance code toolkit. Reports go
// to standard output as canonical JSON (sorted keys, exact values as
// integer or "num/den" strings); diagnostics go to standard error.
//
// Exit status: 0 = computed (including negative verdicts), 2 = usage error,
// 3 = resource guard, 4 = input corruption.

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symdist/symdist.hpp"

namespace {

using nlohmann::json;
using namespace symdist;

constexpr const char* kVersion = "0.1.0";

json make_report(const std::string& command, json inputs, json results) {
    return json{{"command", command},
                {"inputs", std::move(inputs)},
                {"results", std::move(results)},
                {"version", kVersion}};
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

json rational_str(const Rational& r) { return r.str(); }

json zero_report_json(const ZeroReport& report) {
    json zeros = json::array();
    for (const auto& [root, mult] : report.zeros)
        zeros.push_back(json{{"multiplicity", mult}, {"zero", root.get_str()}});
    return json{{"all_integral", report.all_integral},
                {"distinct", report.distinct},
                {"in_range", report.in_range},
                {"residual_degree", report.residual_degree},
                {"zeros", zeros}};
}

json profile_json(const DistanceProfile& profile) {
    json distances = json::array();
    for (unsigned long d : profile.distances) distances.push_back(d);
    return json{{"degree", profile.degree},
                {"distances", distances},
                {"metric", metric_name(profile.metric)},
                {"reflection", profile.reflection},
                {"symmetric", profile.symmetric}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- subcommand handlers ----

void cmd_bound(const std::string& space, unsigned long n, unsigned long s) {
    SchemeParams params = space == "johnson" ? johnson_scheme(n) : hamming_scheme(n);
    Int bound = space == "johnson" ? bound_johnson(n, s) : bound_hamming(n, s);
    Scheme scheme(params);
    json multiplicities = json::object();
    Int multiplicity_sum = 0;
    for (unsigned long i = s % 2; i <= s; i += 2) {
        Int m = scheme.multiplicity(i);
        multiplicities[std::to_string(i)] = m.get_str();
        multiplicity_sum += m;
    }
    json results{{"bound", bound.get_str()},
                 {"multiplicity_sum", multiplicity_sum.get_str()},
                 {"multiplicities", multiplicities},
                 {"scheme", params.str()}};
    emit(make_report("bound", json{{"n", n}, {"s", s}, {"space", space}}, results));
}

void analyze_code(const std::string& path, const Code& code, const std::string& metric_flag) {
    Metric metric;
    if (metric_flag == "hamming") {
        metric = Metric::hamming;
    } else if (metric_flag == "johnson") {
        metric = Metric::johnson;
    } else {
        metric = code.weight && code.length == 2 * *code.weight ? Metric::johnson
                                                                : Metric::hamming;
    }
    TightReport tight = check_tight(code, metric);
    json results{{"bound", tight.bound.get_str()},
                 {"gap", tight.gap.get_str()},
                 {"length", code.length},
                 {"profile", profile_json(tight.profile)},
                 {"verdict", tight_verdict_name(tight.verdict)},
                 {"weight", code.weight ? json(*code.weight) : json(nullptr)},
                 {"words", code.size()}};
    emit(make_report("analyze",
                     json{{"file", path}, {"format", "code"}, {"metric", metric_flag}}, results));
}

void analyze_hadamard(const std::string& path, const HadamardMatrix& h) {
    auto violations = h.orthogonality_violations();
    if (!violations.empty()) {
        std::string rows;
        for (std::size_t i = 0; i < violations.size() && i < 8; ++i) {
            if (!rows.empty()) rows += ", ";
            rows += "(" + std::to_string(violations[i].first) + "," +
                    std::to_string(violations[i].second) + ")";
        }
        throw input_error("hadamard: not a Hadamard matrix; non-orthogonal row pairs: " + rows);
    }
    json results{{"normalized", h.is_normalized()},
                 {"order", h.order},
                 {"valid", true}};
    if (h.is_normalized() && h.order >= 2 && h.order % 2 == 0) {
        Code code = hadamard_to_code(h);
        TightReport tight = check_tight(code, Metric::johnson);
        results["code"] = json{{"bound", tight.bound.get_str()},
                               {"profile", profile_json(tight.profile)},
                               {"verdict", tight_verdict_name(tight.verdict)},
                               {"words", code.size()}};
    }
    emit(make_report("analyze", json{{"file", path}, {"format", "hadamard"}}, results));
}

void cmd_analyze(const std::string& path, const std::string& metric_flag,
                 const std::string& format_flag) {
    std::string text = read_file(path);
    std::string format = format_flag;
    if (format == "auto") {
        format = "code";
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (line[0] == '+' || line[0] == '-') format = "hadamard";
            break;
        }
    }
    if (format == "hadamard") analyze_hadamard(path, load_hadamard_text(text));
    else analyze_code(path, load_code_text(text), metric_flag);
}

void cmd_certify(unsigned long n, unsigned long s) {
    Certificate cert = certify(n, s);
    json phi = json::array();
    for (const auto& c : cert.phi.coefficients()) phi.push_back(rational_str(c));
    json results{{"phi_coefficients", phi},
                 {"r", n - s},
                 {"verdict", verdict_name(cert.verdict)},
                 {"zero_report", zero_report_json(cert.zero_report)}};
    emit(make_report("certify", json{{"n", n}, {"s", s}}, results));
}

void cmd_sweep(const SweepSpec& spec) {
    SweepReport report = run_sweep(spec);
    json hits = json::array();
    for (const auto& [s, r] : report.hits) hits.push_back(json{{"r", r}, {"s", s}});
    json histogram = json::object();
    for (const auto& [i, count] : report.first_fail_histogram)
        histogram[std::to_string(i)] = count;
    json results{{"cells_examined", report.cells_examined},
                 {"first_fail_histogram", histogram},
                 {"hit_count", report.hits.size()},
                 {"hits", hits},
                 {"spec", report.spec_echo}};
    std::cerr << "sweep: " << report.cells_examined << " cells in " << report.wall_seconds
              << " s (jobs=" << spec.jobs << ")\n";
    // Scheduling knobs (jobs, checkpoint path) are deliberately not echoed:
    // the report must not depend on them.
    emit(make_report("sweep",
                     json{{"prefilter", spec.prefilter}, {"rule", r_rule_name(spec.rule)}},
                     results));
}

void cmd_rho(unsigned long s, unsigned long limit) {
    RhoResult result = rho(s, limit);
    json results{{"ceiling", result.ceiling},
                 {"found", result.found()},
                 {"value", result.found() ? json(*result.value) : json(nullptr)}};
    emit(make_report("rho", json{{"limit", limit}, {"s", s}}, results));
}

void cmd_construct(const std::string& family, unsigned long n, unsigned long anchor,
                   unsigned long order, const std::string& out_path) {
    std::string payload;
    if (family == "ekr") {
        payload = format_code(construct_ekr(n, anchor));
    } else {
        if (order < 1 || (order & (order - 1)) != 0)
            throw std::invalid_argument("construct: --order must be a power of two");
        unsigned k = 0;
        while ((1ul << k) < order) ++k;
        HadamardMatrix h = sylvester_hadamard(k);
        payload = family == "hadamard" ? format_hadamard(h) : format_code(hadamard_to_code(h));
    }
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw input_error("cannot write " + out_path);
        out << payload;
        std::cerr << "construct: wrote " << out_path << "\n";
    }
}

void cmd_verify(const std::string& suite, unsigned long max_n) {
    json results;
    if (suite == "psi-phi") {
        json failures = json::array();
        unsigned long checked = 0;
        for (unsigned long n = 2; n <= max_n; ++n)
            for (unsigned long s = 1; s + 1 <= n; ++s) {
                ++checked;
                if (!verify_psi_phi(n, s)) failures.push_back(json{{"n", n}, {"s", s}});
            }
        results = json{{"all_pass", failures.empty()}, {"checked", checked}, {"failures", failures}};
    } else if (suite == "rank") {
        json cases = json::array();
        bool all = true;
        auto run_case = [&](const std::string& name, const Code& code) {
            RankArgumentReport r = verify_rank_argument(code);
            all = all && r.ok;
            cases.push_back(json{{"expected", r.expected},
                                 {"name", name},
                                 {"ok", r.ok},
                                 {"rank", r.rank}});
        };
        run_case("hadamard-4", hadamard_to_code(sylvester_hadamard(2)));
        run_case("hadamard-8", hadamard_to_code(sylvester_hadamard(3)));
        run_case("ekr-2", construct_ekr(2));
        run_case("ekr-3", construct_ekr(3));
        results = json{{"all_pass", all}, {"cases", cases}};
    } else {  // identities
        bool telescoping = true;
        for (unsigned long n = 2; n <= max_n && telescoping; ++n)
            for (unsigned long s = 1; s + 1 <= n; ++s) {
                if (bound_scheme(johnson_scheme(n), s) != bound_johnson(n, s) ||
                    bound_scheme(hamming_scheme(n), s) != bound_hamming(n, s)) {
                    telescoping = false;
                    break;
                }
            }
        bool reflection = true;
        for (unsigned long r = 1; r <= 20 && reflection; ++r)
            for (unsigned long s = 1; s <= 20; ++s)
                if (!phi_reflection_check(PhiParams(r, s))) { reflection = false; break; }
        bool p2_expansion = true;
        for (unsigned long r = 1; r <= 40 && p2_expansion; ++r)
            for (unsigned long s = 2; s <= 40; ++s) {
                Rational lhs = Rational(16) * phi_coefficient(PhiParams(r, s), 2);
                Rational rr(r);
                Rational rhs = Rational(binomial(s, 2)) *
                               (Rational(4) * rr * rr + Rational(14) * rr + Rational(13) +
                                Rational(3) / Rational(2 * r + 1));
                if (lhs != rhs) { p2_expansion = false; break; }
            }
        bool valuation_bound = true;
        for (unsigned long n = 1; n <= 60 && valuation_bound; ++n)
            for (unsigned long m = 0; m <= n; ++m) {
                Rational b = binom_half(n, m);
                for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul}) {
                    long val = b.is_zero() ? 0 : padic_val(Int(p), b);
                    if (val > kummer_half_bound(Int(p), n, m)) { valuation_bound = false; break; }
                }
                if (!valuation_bound) break;
            }
        results = json{{"all_pass", telescoping && reflection && p2_expansion && valuation_bound},
                       {"p2_expansion", p2_expansion},
                       {"phi_reflection", reflection},
                       {"telescoping_bounds", telescoping},
                       {"valuation_bound", valuation_bound}};
    }
    emit(make_report("verify", json{{"max_n", max_n}, {"suite", suite}}, results));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact certificates, bounds and searches for binary codes with symmetric distances"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // bound
    auto* bound = app.add_subcommand("bound", "Symmetric-distance bound for a scheme");
    std::string bound_space;
    unsigned long bound_n = 0, bound_s = 0;
    bound->add_option("--space", bound_space, "johnson or hamming")
        ->required()
        ->check(CLI::IsMember({"johnson", "hamming"}));
    bound->add_option("--n", bound_n, "scheme parameter (J(2n,n) or H(n,2))")->required();
    bound->add_option("--s", bound_s, "degree")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Profile a code or Hadamard file");
    std::string analyze_file, analyze_metric = "auto", analyze_format = "auto";
    analyze->add_option("file", analyze_file, "input file")->required();
    analyze->add_option("--metric", analyze_metric, "auto, hamming or johnson")
        ->check(CLI::IsMember({"auto", "hamming", "johnson"}));
    analyze->add_option("--format", analyze_format, "auto, code or hadamard")
        ->check(CLI::IsMember({"auto", "code", "hadamard"}));

    // certify
    auto* certify_cmd = app.add_subcommand("certify", "Tightness certificate for (n, s)");
    unsigned long certify_n = 0, certify_s = 0;
    certify_cmd->add_option("--n", certify_n, "scheme parameter of J(2n,n)")->required();
    certify_cmd->add_option("--s", certify_s, "degree")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Integrality sweep over (s, r) cells");
    SweepSpec spec;
    std::string sweep_rule = "explicit";
    bool no_prefilter = false;
    sweep->add_option("--s-from", spec.s_from, "first s row")->required();
    sweep->add_option("--s-to", spec.s_to, "last s row")->required();
    sweep->add_option("--rule", sweep_rule, "explicit, quadratic or growth")
        ->check(CLI::IsMember({"explicit", "quadratic", "growth"}));
    sweep->add_option("--r-from", spec.r_from, "first r (explicit rule)");
    sweep->add_option("--r-to", spec.r_to, "last r (explicit rule)");
    sweep->add_flag("--no-prefilter", no_prefilter, "examine cells the p2 test would skip");
    sweep->add_option("--jobs", spec.jobs, "worker threads");
    sweep->add_option("--checkpoint", spec.checkpoint_path, "checkpoint file (resumable)");
    sweep->add_flag("--ack-long-run", spec.ack_long_run,
                    "acknowledge a sweep far beyond desk scale");

    // rho
    auto* rho_cmd = app.add_subcommand("rho", "Smallest n with no primes in (n, n+s-1]");
    unsigned long rho_s = 0, rho_limit = 0;
    rho_cmd->add_option("--s", rho_s, "gap length")->required();
    rho_cmd->add_option("--limit", rho_limit, "scan ceiling (required)")->required();

    // construct
    auto* construct = app.add_subcommand("construct", "Emit a known tight construction");
    std::string construct_family, construct_out;
    unsigned long construct_n = 0, construct_anchor = 1, construct_order = 0;
    construct->add_option("--family", construct_family, "ekr, hadamard or hadamard-code")
        ->required()
        ->check(CLI::IsMember({"ekr", "hadamard", "hadamard-code"}));
    construct->add_option("--n", construct_n, "family parameter (ekr)");
    construct->add_option("--anchor", construct_anchor, "anchored element, 1-based (ekr)");
    construct->add_option("--order", construct_order, "matrix order, power of two (hadamard)");
    construct->add_option("--out", construct_out, "output file (default: stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    std::string verify_suite;
    unsigned long verify_max_n = 0;
    verify->add_option("--suite", verify_suite, "psi-phi, rank or identities")
        ->required()
        ->check(CLI::IsMember({"psi-phi", "rank", "identities"}));
    verify->add_option("--max-n", verify_max_n, "grid ceiling (default per suite)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*bound) {
            cmd_bound(bound_space, bound_n, bound_s);
        } else if (*analyze) {
            cmd_analyze(analyze_file, analyze_metric, analyze_format);
        } else if (*certify_cmd) {
            cmd_certify(certify_n, certify_s);
        } else if (*sweep) {
            if (sweep->count("--rule")) {
                if (sweep_rule == "quadratic") spec.rule = RRule::quadratic;
                else if (sweep_rule == "growth") spec.rule = RRule::growth;
                else spec.rule = RRule::explicit_range;
            } else if (!sweep->count("--r-from") || !sweep->count("--r-to")) {
                throw std::invalid_argument("sweep: need --r-from/--r-to or a --rule");
            }
            spec.prefilter = !no_prefilter;
            cmd_sweep(spec);
        } else if (*rho_cmd) {
            cmd_rho(rho_s, rho_limit);
        } else if (*construct) {
            if (construct_family == "ekr" && construct->count("--n") == 0)
                throw std::invalid_argument("construct: --family ekr needs --n");
            if (construct_family != "ekr" && construct->count("--order") == 0)
                throw std::invalid_argument("construct: Hadamard families need --order");
            cmd_construct(construct_family, construct_n, construct_anchor, construct_order,
                          construct_out);
        } else if (*verify) {
            if (verify->count("--max-n") == 0) verify_max_n = verify_suite == "psi-phi" ? 12 : 30;
            cmd_verify(verify_suite, verify_max_n);
        }
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
