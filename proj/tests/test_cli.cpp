#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct Result {
    int status;
    std::string out;
};

fs::path scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "onell_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Result cli(const std::string& args)
{
    const auto out = scratch() / "stdout.txt";
    const std::string cmd = std::string(ONELL_CLI) + " " + args + " > " + out.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    std::ifstream f(out);
    std::stringstream s;
    s << f.rdbuf();
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, s.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string path(const char* name) { return (scratch() / name).string(); }

} // namespace

TEST_CASE("run writes identical CSV for identical flags")
{
    REQUIRE(cli("run --preset dyn-default --n 300 --runs 3 --seed 7 --out " + path("a.csv")).status == 0);
    REQUIRE(cli("run --preset dyn-default --n 300 --runs 3 --seed 7 --jobs 2 --out " + path("b.csv")).status == 0);
    const auto a = slurp(path("a.csv"));
    CHECK(a == slurp(path("b.csv")));
    CHECK(std::count(a.begin(), a.end(), '\n') == 4);
    CHECK(a.rfind("algo,n,seed,alpha,beta,gamma,A,b,lambda1,lambda2,k,c,budget,evaluations,success,final_fitness\n", 0) == 0);
}

TEST_CASE("stats reproduces the printed summary")
{
    const auto run = cli("run --preset dyn-C --n 200 --runs 25 --seed 2 --out " + path("c.csv"));
    REQUIRE(run.status == 0);
    const auto stats = cli("stats " + path("c.csv"));
    REQUIRE(stats.status == 0);
    CHECK(run.out == stats.out);
}

TEST_CASE("configuration errors exit nonzero with a message")
{
    for (const char* args : {"run --n 1", "run --preset nope", "run --algo static --lambda1 3",
             "run --algo dyn --A 0.9", "run --algo switch --switch-target 5000 --n 100", "run --runs 0",
             "sweep --algo rls"}) {
        const auto r = cli(args);
        INFO(args);
        CHECK(r.status != 0);
        CHECK_FALSE(r.out.empty());
    }
    const auto unwritable = cli("run --runs 1 --out /nonexistent-dir/x.csv");
    CHECK(unwritable.status != 0);
    CHECK(unwritable.out.find("cannot write") != std::string::npos);
}

TEST_CASE("compare pairs by seed")
{
    REQUIRE(cli("run --preset dyn-default --n 200 --runs 30 --seed 5 --out " + path("d.csv")).status == 0);
    REQUIRE(cli("run --preset dyn-C --n 200 --runs 30 --seed 5 --out " + path("e.csv")).status == 0);
    REQUIRE(cli("run --preset dyn-C --n 200 --runs 30 --seed 6 --out " + path("f.csv")).status == 0);

    const auto self = cli("compare " + path("d.csv") + " " + path("d.csv"));
    CHECK(self.status == 0);
    CHECK(self.out.find("paired t-test: statistic 0, p 1,") != std::string::npos);
    CHECK(self.out.find("wilcoxon signed-rank: statistic 0, p 1,") != std::string::npos);

    CHECK(cli("compare " + path("d.csv") + " " + path("e.csv")).status == 0);
    const auto mismatch = cli("compare " + path("d.csv") + " " + path("f.csv"));
    CHECK(mismatch.status != 0);
    CHECK(mismatch.out.find("pairing error") != std::string::npos);
}

TEST_CASE("sweep toy grid")
{
    const auto r = cli("sweep --n 100 --runs 5 --a-count 3 --b-count 3 --a-min 1.1 --a-max 1.5 --b-min 0.5 "
                       "--b-max 0.9 --seed 1 --out " + path("s.csv"));
    REQUIRE(r.status == 0);
    const auto text = slurp(path("s.csv"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 10);
    CHECK(text.rfind("A,b,success_rate,mean_successful,success_count,runs\n", 0) == 0);
}

TEST_CASE("fixed-target with comparison")
{
    const auto r = cli("fixed-target --preset rls --n 200 --runs 20 --seed 3 --window 5 --against dyn-C "
                       "--out " + path("ft.csv") + " --against-out " + path("ft2.csv"));
    REQUIRE(r.status == 0);
    CHECK(r.out.find("crossing first-hit") != std::string::npos);
    CHECK(r.out.find("crossing gradient") != std::string::npos);
    const auto text = slurp(path("ft.csv"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 202);
    CHECK(text.rfind("target,avg_evals,hit_count,avg_lambda1,gradient\n", 0) == 0);
    CHECK(fs::exists(path("ft2.csv")));
}

TEST_CASE("tune writes an audit log")
{
    const auto r = cli("tune --space ab --n 200 --tuning-budget 400000 --seed 2 --out " + path("audit.csv"));
    REQUIRE(r.status == 0);
    CHECK(r.out.find("best A=") != std::string::npos);
    CHECK(r.out.find("success rate") != std::string::npos);
    CHECK(slurp(path("audit.csv")).rfind("iteration,config_id,A,b,instance,seed,evaluations,cost,censored\n", 0) == 0);
}

TEST_CASE("run with trace writes the fixed-target table")
{
    REQUIRE(cli("run --preset dyn-C --n 100 --runs 4 --seed 3 --trace --out " + path("t.csv")).status == 0);
    CHECK(fs::exists(path("t.csv.fixed-target.csv")));
}
