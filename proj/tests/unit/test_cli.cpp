#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "skacz/matrix.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(SKACZ_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Scratch {
    fs::path dir;
    Scratch()
    {
        dir = fs::temp_directory_path() / "skacz_cli_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
        std::ofstream(dir / "a.txt") << "2 3\n1 0 1\n0 2 0\n";
        std::ofstream(dir / "b.txt") << "2\n2\n";
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string p(const char* name) const { return (dir / name).string(); }
};

} // namespace

TEST_CASE("cli solve and oracle")
{
    Scratch s;
    const std::string io = "--matrix " + s.p("a.txt") + " --rhs " + s.p("b.txt");
    CHECK(run_cli("solve " + io + " --method ersk --max-iters 500 --seed 3 --out " + s.p("x.txt")) == 0);
    const auto x = skacz::read_vector_file(s.p("x.txt"));
    REQUIRE(x.size() == 3);
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(x[0] + x[2] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fs::exists(s.p("x.txt.log")));
    CHECK(slurp(s.p("x.txt.log")).rfind("# k residual", 0) == 0);

    CHECK(run_cli("oracle " + io + " --lambda 1 --out " + s.p("o.txt")) == 0);
    const auto o = skacz::read_vector_file(s.p("o.txt"));
    CHECK(o[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(o[2] == doctest::Approx(1.0).epsilon(1e-8));

    // Flags override the config file.
    std::ofstream(s.p("cfg.json")) << R"({"method": "rk", "max_iters": 40, "seed": 3})";
    CHECK(run_cli("solve --config " + s.p("cfg.json") + " " + io + " --out " + s.p("y1.txt")) == 0);
    CHECK(run_cli("solve " + io + " --method rk --max-iters 40 --seed 3 --out " + s.p("y2.txt")) == 0);
    CHECK(slurp(s.p("y1.txt")) == slurp(s.p("y2.txt")));
    CHECK(run_cli("solve --config " + s.p("cfg.json") + " " + io + " --method rsk --out " + s.p("y3.txt")) == 0);
    CHECK(slurp(s.p("y3.txt.log")) != slurp(s.p("y1.txt.log")));
}

TEST_CASE("cli exit codes")
{
    Scratch s;
    const std::string io = "--matrix " + s.p("a.txt") + " --rhs " + s.p("b.txt");
    CHECK(run_cli("") == 1);
    CHECK(run_cli("solve " + io) == 1);
    CHECK(run_cli("solve " + io + " --method nope --out " + s.p("x.txt")) == 1);
    CHECK(run_cli("solve --matrix " + s.p("missing.txt") + " --rhs " + s.p("b.txt") + " --out " + s.p("x.txt")) == 1);
    std::ofstream(s.p("bad.json")) << R"({"colour": 1})";
    CHECK(run_cli("solve --config " + s.p("bad.json") + " " + io + " --out " + s.p("x.txt")) == 1);

    // Inconsistent system: the oracle cannot reach the tolerance.
    std::ofstream(s.p("c.txt")) << "2 1\n1\n1\n";
    std::ofstream(s.p("d.txt")) << "1\n2\n";
    CHECK(run_cli("oracle --matrix " + s.p("c.txt") + " --rhs " + s.p("d.txt") +
                  " --lambda 0 --max-iters 1000 --out " + s.p("o.txt")) == 2);
}

TEST_CASE("cli experiment writes every statistic")
{
    Scratch s;
    const std::string args = "experiment --kind gaussian --m 40 --n 10 --s 2 --noise 0 --trials 3 "
                             "--methods rk,rsk --max-iters 200 --seed 1 --outdir " + s.p("out");
    CHECK(run_cli(args) == 0);
    std::size_t count = 0;
    for (const auto& e : fs::directory_iterator(s.p("out")))
        count += e.path().extension() == ".dat";
    CHECK(count == 20);
    CHECK(fs::exists(s.p("out/medianerr_rsk_n10_m40_s2_noise0.dat")));
    CHECK(run_cli("experiment --kind spiral --m 4 --n 4 --s 1 --trials 1 --outdir " + s.p("o2")) == 1);
}
