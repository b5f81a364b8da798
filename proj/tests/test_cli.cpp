#include "zerorate/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

using namespace zerorate;
namespace fs = std::filesystem;

namespace {

struct Run
{
    int rc;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "zerorate");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("zerorate_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

std::string write_file(const std::string& name, const std::string& text)
{
    const auto p = scratch(name);
    std::ofstream(p) << text;
    return p.string();
}

struct BudgetEnv
{
    explicit BudgetEnv(const char* v) { ::setenv("ZR_BUDGET", v, 1); }
    ~BudgetEnv() { ::unsetenv("ZR_BUDGET"); }
};

// Runs the installed binary through the shell and returns its exit status.
int binary_exit(const std::string& args)
{
    const std::string cmd = std::string(ZR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("threshold command")
{
    CHECK(cli({"threshold", "2", "1", "2"}).out == "1/4\t0.250000000000\n");
    CHECK(cli({"threshold", "3", "1", "2"}).out == "1/3\t0.333333333333\n");
    CHECK(cli({"threshold", "3", "2", "3"}).out == "2/27\t0.074074074074\n");
    CHECK(cli({"threshold", "3", "1", "2", "--csv"}).out == "q,ell,L,p_star,p_star_decimal\n3,1,2,1/3,0.333333333333\n");
    auto j = nlohmann::json::parse(cli({"threshold", "4", "1", "3", "--json"}).out);
    CHECK(j["p_star"]["fraction"] == "7/16");
    CHECK(j["p_star"]["decimal"] == "0.437500000000");

    for (auto bad : std::vector<std::vector<std::string>>{{"threshold", "3", "3", "2"},
                                                          {"threshold", "1", "1", "2"},
                                                          {"threshold", "3", "1", "1"},
                                                          {"threshold", "3", "1"},
                                                          {"threshold", "x", "1", "2"},
                                                          {"threshold", "3", "1", "2", "--json", "--csv"}}) {
        auto r = cli(bad);
        CHECK(r.rc == exit_usage);
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }
    BudgetEnv tight("3");
    CHECK(cli({"threshold", "3", "1", "4"}).rc == exit_budget);
}

TEST_CASE("construct and tradeoff commands")
{
    auto r = cli({"construct", "3", "1", "2", "1"});
    CHECK(r.rc == exit_ok);
    CHECK(r.out == "3 6 3\n1 1 2 2 3 3\n2 3 1 3 1 2\n3 2 3 1 2 1\n");

    const auto path = scratch("code312.txt").string();
    r = cli({"construct", "3", "1", "2", "1", "--out", path});
    CHECK(r.out == "wrote 3x6 codebook to " + path + "\n");
    CHECK(read_codebook_file(path).n() == 6);

    CHECK(cli({"construct", "3", "3", "2", "1"}).rc == exit_usage);
    {
        BudgetEnv tight("50");
        CHECK(cli({"construct", "3", "1", "2", "2"}).rc == exit_budget);
    }

    auto t = cli({"tradeoff", "3", "1", "2", "--m-list", "1,2,3"});
    CHECK(t.rc == exit_ok);
    CHECK(t.out
          == "m,M,n,p_exact,p_star,c_over_m,residual\n"
             "1,3,6,1/2,1/3,1/9,1/18\n"
             "2,6,90,2/5,1/3,1/18,1/90\n"
             "3,9,1680,3/8,1/3,1/27,1/216\n");
    CHECK(cli({"tradeoff", "3", "1", "2"}).out == t.out);
    CHECK(cli({"tradeoff", "3", "1", "2", "--m-list", "0"}).rc == exit_usage);
}

TEST_CASE("verify command")
{
    const auto path = scratch("verify312.txt").string();
    cli({"construct", "3", "1", "2", "1", "--out", path});

    auto pass = cli({"verify", path, "1/3", "1", "2"});
    CHECK(pass.rc == exit_ok);
    auto jp = nlohmann::json::parse(pass.out);
    CHECK(jp["verdict"] == "PASS");
    CHECK(jp["witness_center"].is_null());

    auto fail = cli({"verify", path, "1/2", "1", "2"});
    CHECK(fail.rc == exit_failure);
    auto jf = nlohmann::json::parse(fail.out);
    CHECK(jf["verdict"] == "FAIL");
    CHECK(jf["captured_rows"].size() == 2);
    CHECK(jf["witness_center"].size() == 6);

    auto via_radius = cli({"verify", path, "1/2", "1", "2", "--method", "radius"});
    CHECK(via_radius.rc == exit_failure);
    CHECK(nlohmann::json::parse(via_radius.out)["min_radius"] == "1/2");

    CHECK(cli({"verify", path, "2", "1", "2"}).rc == exit_usage);
    CHECK(cli({"verify", path, "abc", "1", "2"}).rc == exit_usage);
    CHECK(cli({"verify", path, "1/2", "1", "2", "--method", "magic"}).rc == exit_usage);
    CHECK(cli({"verify", scratch("missing.txt").string(), "1/2", "1", "2"}).rc == exit_usage);

    const auto wide = write_file("wide.txt", "3 12 2\n1 1 1 1 1 1 1 1 1 1 1 1\n2 2 2 2 2 2 2 2 2 2 2 2\n");
    CHECK(cli({"verify", wide, "1/2", "1", "2", "--method", "radius"}).rc == exit_failure);
    BudgetEnv tight("1000");
    auto over = cli({"verify", wide, "1/2", "1", "2"});
    CHECK(over.rc == exit_budget);
    CHECK(over.err.find("tuple-radius") != std::string::npos);
    CHECK(cli({"verify", wide, "1/2", "1", "2", "--method", "radius"}).rc == exit_budget);
}

TEST_CASE("radius command")
{
    SECTION("identical rows")
    {
        const auto path = write_file("same.txt", "3 3 2\n1 2 3\n1 2 3\n");
        auto r = cli({"radius", path});
        CHECK(r.rc == exit_ok);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["average"]["fraction"] == "0");
        CHECK(j["chebyshev"]["fraction"] == "0");
        CHECK(std::abs(j["relaxed"].get<double>()) < 1e-9);
        CHECK(j["consistent"] == true);
    }
    SECTION("binary-style pair over three symbols")
    {
        const auto path = write_file("pair.txt", "3 2 3\n1 1\n3 3\n2 2\n");
        auto r = cli({"radius", path, "--list", "0,2", "--omega", "1/4,3/4"});
        CHECK(r.rc == exit_ok);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["L"] == 2);
        CHECK(j["chebyshev"]["fraction"] == "1/2");
        CHECK(j["average"]["fraction"] == "1/2");
        CHECK(j["weighted"]["(1/4,3/4)"]["fraction"] == "1/4");
        CHECK(j["weighted"]["uniform"]["fraction"] == "1/2");
        CHECK(j["relaxed"].get<double>() == Catch::Approx(0.5).margin(1e-8));
        CHECK(j["relaxed_via_omega"].get<double>() == Catch::Approx(0.5).margin(1e-8));
        CHECK_FALSE(j.contains("omitted"));

        CHECK(cli({"radius", path, "--list", "0,7"}).rc == exit_usage);
        CHECK(cli({"radius", path, "--omega", "1/2,1/2"}).rc == exit_usage);
        CHECK(cli({"radius", path, "--ell", "3"}).rc == exit_usage);
    }
    SECTION("sandwich holds on the report")
    {
        const auto path = scratch("r323.txt").string();
        cli({"construct", "3", "2", "3", "1", "--out", path});
        auto j = nlohmann::json::parse(cli({"radius", path, "--ell", "2"}).out);
        CHECK(j["consistent"] == true);
        CHECK(j["chebyshev_center"][0].size() == 2);
    }
    SECTION("LP dump")
    {
        const auto path = write_file("one.txt", "2 1 2\n1\n2\n");
        const auto lp = scratch("one.tsv").string();
        CHECK(cli({"radius", path, "--dump-lp", lp}).rc == exit_ok);
        std::ifstream in(lp);
        std::string first;
        std::getline(in, first);
        CHECK(first == "objective\t0\t0\t-1\t0\t0\t-");
    }
    SECTION("budget-limited fields are omitted")
    {
        const auto wide = write_file("wide_r.txt", "3 12 2\n1 1 1 1 1 1 1 1 1 1 1 1\n2 2 2 2 2 2 2 2 2 2 2 2\n");
        BudgetEnv tight("2000");
        auto r = cli({"radius", wide});
        CHECK(r.rc == exit_budget);
        auto j = nlohmann::json::parse(r.out);
        CHECK_FALSE(j.contains("chebyshev"));
        CHECK(j.contains("relaxed"));
        CHECK(j["omitted"] == nlohmann::json::array({"chebyshev"}));
        CHECK(j["average"]["fraction"] == "1/2");

        BudgetEnv tighter("100");
        auto bare = nlohmann::json::parse(cli({"radius", wide}).out);
        CHECK(bare["omitted"] == nlohmann::json::array({"relaxed", "chebyshev"}));
        CHECK(bare.contains("average"));
    }
    SECTION("parse failures")
    {
        CHECK(cli({"radius", write_file("bad.txt", "3 2 1\n1 9\n")}).rc == exit_usage);
        BudgetEnv junk("12k");
        CHECK(cli({"radius", write_file("ok.txt", "3 1 1\n1\n")}).rc == exit_usage);
    }
}

TEST_CASE("propsuite command is deterministic")
{
    auto a = cli({"propsuite", "--seed", "7", "--trials", "10"});
    CHECK(a.rc == exit_ok);
    CHECK(a.out.find("FAIL") == std::string::npos);
    CHECK(a.out.find("seed 7, trials 10: ") != std::string::npos);
    auto b = cli({"--threads", "3", "propsuite", "--seed", "7", "--trials", "10"});
    CHECK(a.out == b.out);
}

TEST_CASE("usage errors and help")
{
    CHECK(cli({}).rc == exit_usage);
    CHECK(cli({"frobnicate"}).rc == exit_usage);
    auto h = cli({"--help"});
    CHECK(h.rc == exit_ok);
    CHECK(h.out.find("threshold") != std::string::npos);
    auto sub = cli({"verify", "--help"});
    CHECK(sub.rc == exit_ok);
    CHECK(sub.out.find("--method") != std::string::npos);
    CHECK(cli({"--threads", "0", "threshold", "2", "1", "2"}).rc == exit_usage);
}

TEST_CASE("installed binary exit codes")
{
    const auto path = scratch("bin312.txt").string();
    REQUIRE(binary_exit("construct 3 1 2 1 --out " + path) == 0);
    CHECK(binary_exit("threshold 2 1 2") == 0);
    CHECK(binary_exit("verify " + path + " 1/3 1 2") == 0);
    CHECK(binary_exit("verify " + path + " 1/2 1 2") == 1);
    CHECK(binary_exit("threshold 3 5 2") == 2);
    CHECK(binary_exit("") == 2);
    const std::string env = "ZR_BUDGET=5 ";
    const int status = std::system((env + ZR_CLI_PATH + " construct 3 1 2 1 >/dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(status) == 3);
}
