// End-to-end checks of the CLI surface: subcommands, exit codes, output
// formats and reproducibility. The binary path arrives as argv[1].

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (fgets(buf.data(), buf.size(), p)) r.out += buf.data();
    int status = pclose(p);
    r.code = WEXITSTATUS(status);
    return r;
}

} // namespace

TEST_CASE("info") {
    auto r = run("info --q 5");
    CHECK(r.code == 0);
    CHECK(r.out.find("lambda = 1.6180339887498") != std::string::npos);
    CHECK(r.out.find("x^2 - x - 1") != std::string::npos);
    CHECK(r.out.find("m = 3") != std::string::npos);
    CHECK(r.out.find("parity = odd") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("info").code == 2);              // missing --q
    CHECK(run("frobnicate --q 3").code == 2);  // unknown subcommand
    CHECK(run("zeta --q 3 --which Zomega --s 2").code == 2);
}

TEST_CASE("computational errors exit 1") {
    CHECK(run("info --q 2").code == 1);
    CHECK(run("zeta --q 3 --which Z --s 0.5").code == 1); // outside Re s > 1
    CHECK(run("zeta --q 5 --which Zcplus --s 2").code == 1); // odd q has no Zc
}

TEST_CASE("words and classes emit JSON lines") {
    auto r = run("words --q 3 --alphabet GQ --length 1 --max-exp 2");
    CHECK(r.code == 0);
    int lines = 0;
    std::istringstream is(r.out);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] == '{') ++lines;
    CHECK(lines == 4); // g2, g2^2, Qg2, Qg2^2

    auto c = run("classes --q 3 --group gamma --cutoff 7");
    CHECK(c.code == 0);
    CHECK(c.out.find("certified=1") != std::string::npos);
    CHECK(c.out.find("\"n\":1") != std::string::npos);
}

TEST_CASE("zeta CSV schema") {
    auto r = run("zeta --q 4 --which Zcminus --s 2 --s 2.5");
    CHECK(r.code == 0);
    CHECK(r.out.find("s_re,s_im,which,value_re,value_im,tail_estimate,X,certified") !=
          std::string::npos);
    CHECK(r.out.find("Zcminus") != std::string::npos);
}

TEST_CASE("det at the first odd zero is small") {
    auto r = run("det --q 3 --parity minus --s 0.5+9.5337i --dim 40");
    CHECK(r.code == 0);
    auto pos = r.out.find("abs = ");
    REQUIRE(pos != std::string::npos);
    double v = std::stod(r.out.substr(pos + 6));
    CHECK(v < 1e-4);
    CHECK(r.out.find("# heckezeta") != std::string::npos); // config header
}

TEST_CASE("scan with refinement emits the zeros schema") {
    auto r = run("scan --q 3 --parity minus --sigma 0.5 --t-min 9.3 --t-max 9.7 --step 0.05 "
                 "--dim 32 --refine");
    CHECK(r.code == 0);
    CHECK(r.out.find("s_re,s_im,winding,residual,stability") != std::string::npos);
    CHECK(r.out.find("9.5336") != std::string::npos);
}

TEST_CASE("maps dumps exact endpoints") {
    auto r = run("maps --q 4 --system FQ --eta 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"coeffs\"") != std::string::npos);
    CHECK(r.out.find("\"weight_c\": \"1/2\"") != std::string::npos);
}

TEST_CASE("verify algebra suite passes") {
    auto r = run("verify --suite algebra --q 3");
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("byte-identical reruns") {
    auto a = run("zeta --q 3 --which Z --s 2.5 --cutoff 200");
    auto b = run("zeta --q 3 --which Z --s 2.5 --cutoff 200");
    CHECK(a.out == b.out);
}

TEST_CASE("config file merges under flags; env var sets default precision") {
    {
        std::ofstream f("/tmp/hz_cfg.json");
        f << "{\"dim\": 24, \"precision\": \"extended\"}\n";
    }
    auto r = run("--config /tmp/hz_cfg.json det --q 3 --parity minus --s 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("precision=extended dim=24") != std::string::npos);
    // explicit flag wins over the config value
    auto r2 = run("--config /tmp/hz_cfg.json --precision double det --q 3 --parity minus --s 2");
    CHECK(r2.out.find("precision=double dim=24") != std::string::npos);

    std::string saved = g_cli;
    g_cli = "HECKEZETA_PRECISION=extended " + g_cli;
    auto r3 = run("det --q 3 --parity minus --s 2");
    g_cli = saved;
    CHECK(r3.out.find("precision=extended") != std::string::npos);
}

TEST_CASE("scan results are thread-count invariant") {
    std::string args = "scan --q 3 --parity minus --sigma 0.5 --t-min 2.0 --t-max 2.4 "
                       "--step 0.1 --dim 24";
    auto one = run("--threads 1 " + args);
    auto four = run("--threads 4 " + args);
    // headers differ in the threads field only; compare the data rows
    auto tail = [](const std::string& s) { return s.substr(s.find("t,det_re")); };
    CHECK(one.code == 0);
    CHECK(four.code == 0);
    CHECK(tail(one.out) == tail(four.out));
}

int main_impl(int argc, char** argv) {
    REQUIRE(argc > 1);
    g_cli = argv[1];
    return 0;
}

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
