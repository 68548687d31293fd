#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef SYMDIST_CLI_PATH
#error "SYMDIST_CLI_PATH must point at the built binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult result;
    std::string command = std::string(SYMDIST_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.out.append(buffer.data(), got);
    int raw = pclose(pipe);
    result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return result;
}

fs::path temp_file(const std::string& name, const std::string& content) {
    fs::path p = fs::temp_directory_path() / ("symdist-cli-" + std::to_string(::getpid()) +
                                              "-" + name);
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

}  // namespace

TEST_CASE("cli bound") {
    RunResult r = run("bound --space johnson --n 3 --s 2");
    REQUIRE(r.status == 0);
    json report = json::parse(r.out);
    CHECK(report["command"] == "bound");
    CHECK(report["results"]["bound"] == "10");
    CHECK(report["results"]["multiplicities"]["0"] == "1");
    CHECK(report["results"]["multiplicities"]["2"] == "9");

    RunResult h = run("bound --space hamming --n 4 --s 2");
    REQUIRE(h.status == 0);
    CHECK(json::parse(h.out)["results"]["bound"] == "7");

    // Hamming allows s = n (the parity sum is 2^(n-1) there).
    RunResult hn = run("bound --space hamming --n 4 --s 4");
    REQUIRE(hn.status == 0);
    CHECK(json::parse(hn.out)["results"]["bound"] == "8");

    CHECK(run("bound --space johnson --n 3 --s 3").status == 2);
    CHECK(run("bound --space sphere --n 3 --s 2").status == 2);
}

TEST_CASE("cli reports round-trip byte-identically") {
    fs::path code_file = temp_file("roundtrip.code", run("construct --family ekr --n 2").out);
    for (const std::string& args :
         {std::string("bound --space johnson --n 5 --s 3"), std::string("certify --n 3 --s 2"),
          std::string("rho --s 8 --limit 1000000"),
          std::string("sweep --s-from 2 --s-to 6 --rule quadratic"),
          std::string("verify --suite identities --max-n 6"),
          std::string("analyze ") + code_file.string()}) {
        RunResult r = run(args);
        REQUIRE(r.status == 0);
        json parsed = json::parse(r.out);
        CHECK(parsed.dump(2) + "\n" == r.out);
        CHECK(parsed["version"] == "0.1.0");
    }
    fs::remove(code_file);
}

TEST_CASE("cli certify") {
    RunResult r = run("certify --n 3 --s 2");
    REQUIRE(r.status == 0);
    json report = json::parse(r.out);
    CHECK(report["results"]["verdict"] == "known_tight_family");
    CHECK(report["results"]["phi_coefficients"] == json::array({"2", "-3", "1"}));
    CHECK(report["results"]["zero_report"]["zeros"].size() == 2);

    CHECK(json::parse(run("certify --n 3 --s 1").out)["results"]["verdict"] ==
          "excluded_zero_test");
    // The zero test runs first and already rules (10, 5) out; the growth
    // exclusion only ever speaks when every zero is integral.
    CHECK(json::parse(run("certify --n 10 --s 5").out)["results"]["verdict"] ==
          "excluded_zero_test");
    CHECK(run("certify --n 3 --s 3").status == 2);
}

TEST_CASE("cli rho") {
    RunResult r = run("rho --s 8 --limit 1000000");
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["results"]["value"] == 89);

    RunResult missing = run("rho --s 50 --limit 1000");
    REQUIRE(missing.status == 0);  // negative verdicts still compute
    CHECK(json::parse(missing.out)["results"]["value"].is_null());

    CHECK(run("rho --s 8").status == 2);                      // --limit required
    CHECK(run("rho --s 2 --limit 2000000000").status == 3);   // above ceiling
}

TEST_CASE("cli construct and analyze") {
    RunResult ekr = run("construct --family ekr --n 3");
    REQUIRE(ekr.status == 0);
    int lines = 0;
    for (char c : ekr.out) lines += c == '\n';
    CHECK(lines == 10);

    fs::path code_file = temp_file("ekr.code", ekr.out);
    RunResult analyzed = run("analyze " + code_file.string());
    REQUIRE(analyzed.status == 0);
    json report = json::parse(analyzed.out);
    CHECK(report["results"]["verdict"] == "tight");
    CHECK(report["results"]["profile"]["distances"] == json::array({1, 2}));
    CHECK(report["results"]["profile"]["symmetric"] == true);
    fs::remove(code_file);

    RunResult hmat = run("construct --family hadamard --order 4");
    REQUIRE(hmat.status == 0);
    CHECK(hmat.out == "++++\n+-+-\n++--\n+--+\n");

    fs::path hfile = temp_file("h4.hadamard", hmat.out);
    RunResult hrep = run("analyze " + hfile.string());
    REQUIRE(hrep.status == 0);
    json hjson = json::parse(hrep.out);
    CHECK(hjson["results"]["valid"] == true);
    CHECK(hjson["results"]["normalized"] == true);
    CHECK(hjson["results"]["code"]["verdict"] == "tight");
    fs::remove(hfile);

    RunResult hcode = run("construct --family hadamard-code --order 8");
    REQUIRE(hcode.status == 0);
    fs::path hcfile = temp_file("h8.code", hcode.out);
    json hcrep = json::parse(run("analyze " + hcfile.string()).out);
    CHECK(hcrep["results"]["verdict"] == "tight");
    CHECK(hcrep["results"]["words"] == 7);
    fs::remove(hcfile);

    CHECK(run("construct --family hadamard --order 5").status == 2);
    CHECK(run("construct --family ekr").status == 2);
}

TEST_CASE("cli input corruption exits 4") {
    fs::path ragged = temp_file("ragged.code", "11\n101\n");
    CHECK(run("analyze " + ragged.string()).status == 4);
    fs::remove(ragged);

    fs::path invalid = temp_file("invalid.hadamard", "++++\n+-+-\n++--\n+---\n");
    CHECK(run("analyze " + invalid.string()).status == 4);
    fs::remove(invalid);

    CHECK(run("analyze /nonexistent/path.code").status == 4);

    // Metric mismatch is a usage error, not corruption.
    fs::path mixed = temp_file("mixed.code", "10\n01\n11\n");
    CHECK(run("analyze " + mixed.string() + " --metric johnson").status == 2);
    fs::remove(mixed);
}

TEST_CASE("cli analyzes valid but non-normalized hadamard matrices") {
    // Negating a row keeps orthogonality but breaks the all-ones first row.
    fs::path f = temp_file("denorm.hadamard", "----\n+-+-\n++--\n+--+\n");
    RunResult r = run("analyze " + f.string());
    REQUIRE(r.status == 0);
    json report = json::parse(r.out);
    CHECK(report["results"]["valid"] == true);
    CHECK(report["results"]["normalized"] == false);
    CHECK_FALSE(report["results"].contains("code"));
    fs::remove(f);
}

TEST_CASE("cli sweep") {
    RunResult r = run("sweep --s-from 1 --s-to 1 --r-from 1 --r-to 9");
    REQUIRE(r.status == 0);
    json report = json::parse(r.out);
    CHECK(report["results"]["hit_count"] == 5);
    CHECK(report["results"]["cells_examined"] == 9);

    // Determinism across jobs, via the canonical stdout bytes.
    RunResult j1 = run("sweep --s-from 2 --s-to 12 --rule quadratic --jobs 1");
    RunResult j4 = run("sweep --s-from 2 --s-to 12 --rule quadratic --jobs 4");
    REQUIRE(j1.status == 0);
    REQUIRE(j4.status == 0);
    CHECK(j1.out == j4.out);

    // Full ranges refuse without acknowledgment.
    CHECK(run("sweep --s-from 2 --s-to 285 --rule quadratic").status == 3);

    CHECK(run("sweep --s-from 2 --s-to 4").status == 2);  // no rule, no r range
}

TEST_CASE("cli verify suites") {
    json psi = json::parse(run("verify --suite psi-phi --max-n 8").out);
    CHECK(psi["results"]["all_pass"] == true);
    CHECK(psi["results"]["checked"] == 28);

    json rank = json::parse(run("verify --suite rank").out);
    CHECK(rank["results"]["all_pass"] == true);

    json identities = json::parse(run("verify --suite identities --max-n 12").out);
    CHECK(identities["results"]["all_pass"] == true);
}
