#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

// Runs the CLI with stderr discarded.
Run run(const std::string& args) {
    const std::string cmd = std::string(QHARM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

nlohmann::ordered_json json_of(const Run& r) { return nlohmann::ordered_json::parse(r.out); }

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run("verify hopf").code == 0);
    CHECK(run("rep integral --group suq2 --expr 1 --q 0.5").code == 0);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("verify hopf --q 1.5").code == 2);
    CHECK(run("verify hopf --output xml").code == 2);
    CHECK(run("algebra normal-order --group eq2 --expr 'z +* zs'").code == 2);
    CHECK(run("matel su --l 1 --i 1 --j 1").code == 2);
    CHECK(run("--config /nonexistent/qharm.cfg verify hopf").code == 2);
}

TEST_CASE("parse errors are reported as JSON with an offset") {
    const auto r = run("algebra normal-order --group eq2 --expr 'z +* zs'");
    const auto j = json_of(r);
    CHECK(j["error"]["kind"] == "parse");
    CHECK(j["error"]["offset"] == 3);
}

TEST_CASE("output is byte-identical across runs") {
    for (const char* a : {"verify hopf", "matel eq --p 1.3 --i 1 --j 0 --q 0.7",
                          "plancherel gram --q 0.7 --mmin -2 --mmax 2 --output csv",
                          "algebra coproduct --group suq2 --expr 'x u'"}) {
        CAPTURE(a);
        const auto r1 = run(a), r2 = run(a);
        CHECK(r1.code == 0);
        CHECK_FALSE(r1.out.empty());
        CHECK(r1.out == r2.out);
    }
}

TEST_CASE("JSON values") {
    const auto integral = json_of(run("rep integral --group suq2 --expr 1 --q 0.5"));
    CHECK(integral["value"][0] == 1.0);
    CHECK(integral["value"][1] == 0.0);
    const auto no = json_of(run("algebra normal-order --group suq2 --expr 'x xs - xs x'"));
    // x x* - x* x = (1 - q^2) u u*.
    REQUIRE(no["rows"].size() == 1);
    CHECK(no["rows"][0]["monomial"] == "u us");
    CHECK(no["rows"][0]["coeff"][0].get<double>() == doctest::Approx(1 - 0.7 * 0.7).epsilon(1e-15));
    const auto qn = json_of(run("qseries eval --fn q-number --m 3 --q 0.5"));
    // Symmetric [3] = q^-2 + 1 + q^2.
    CHECK(qn["value"].get<double>() == doctest::Approx(5.25).epsilon(1e-15));
}

TEST_CASE("CSV has a header row and comma separation") {
    const auto r = run("plancherel gram --q 0.7 --mmin -1 --mmax 1 --output csv");
    REQUIRE(r.code == 0);
    const auto nl = r.out.find('\n');
    REQUIRE(nl != std::string::npos);
    const std::string header = r.out.substr(0, nl);
    CHECK(header.find(',') != std::string::npos);
    CHECK(header.find('"') == std::string::npos);
    int rows = 0;
    for (char c : r.out) rows += c == '\n';
    CHECK(rows == 4);
}

TEST_CASE("config file precedence: defaults < file < flags") {
    const std::string path = "qharm_cli_test.cfg";
    {
        std::ofstream f(path);
        f << "# test\nq = 0.5\nwindow = 64\n";
    }
    const auto base = json_of(run("rep integral --group suq2 --expr 'x xs'"));
    const auto file = json_of(run("--config " + path + " rep integral --group suq2 --expr 'x xs'"));
    const auto flag = json_of(run("--config " + path + " --q 0.9 rep integral --group suq2 --expr 'x xs'"));
    const auto direct05 = json_of(run("--q 0.5 rep integral --group suq2 --expr 'x xs'"));
    const auto direct09 = json_of(run("--q 0.9 rep integral --group suq2 --expr 'x xs'"));
    CHECK(file["value"] == direct05["value"]);
    CHECK(flag["value"] == direct09["value"]);
    CHECK(base["value"] != file["value"]);
    {
        std::ofstream f(path);
        f << "nonsense = 1\n";
    }
    CHECK(run("--config " + path + " verify hopf").code == 2);
    std::remove(path.c_str());
}
