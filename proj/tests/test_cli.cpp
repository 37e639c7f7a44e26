#include "catchup/records.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run
{
    int code = 0;
    std::string out;
};

Run run(const std::string &args)
{
    const std::string cmd = std::string(CATCHUP_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    std::unique_ptr<FILE, int (*)(FILE *)> pipe(popen(cmd.c_str(), "r"), pclose);
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe.get()))
        r.out += buf.data();
    const int status = pclose(pipe.release());
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string strip_timestamp(const std::string &s)
{
    std::string out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto end = s.find('\n', pos);
        if (end == std::string::npos)
            end = s.size();
        const auto line = s.substr(pos, end - pos);
        if (line.find("timestamp") == std::string::npos)
            out += line + '\n';
        pos = end + 1;
    }
    return out;
}

fs::path temp_dir()
{
    auto dir = fs::temp_directory_path() / "catchup_cli_test";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("no arguments prints usage and exits 1")
{
    CHECK(run("").code == 1);
    CHECK(run("bogus").code == 1);
    CHECK(run("scan --no-such-flag").code == 1);
    CHECK(run("--help").code == 0);
}

TEST_CASE("scan lists the four valid reference cases")
{
    const auto path = temp_dir() / "reference.csv";
    catchup::save_records(path, fixtures::reference_fixture());
    const auto r = run("scan --input " + path.string() + " --target 4");
    CHECK(r.code == 0);
    CHECK(r.out.find("valid: 4") != std::string::npos);
    for (const char *id : {"77594,", "77833,", "80183,", "122915,"})
        CHECK(r.out.find(id) != std::string::npos);
    const auto only = run("scan --input " + path.string() + " --target 4 --year 2015 --region 1");
    CHECK(only.out.find("80183,2015,1,4 6 7,4,yes") != std::string::npos);
    CHECK(only.out.find("77594") == std::string::npos);
}

TEST_CASE("data errors exit 2")
{
    const auto path = temp_dir() / "broken.csv";
    {
        std::FILE *f = std::fopen(path.c_str(), "w");
        std::fputs("case_id,year,gender,region,g1,g2,g3,g4\n1,2015,1,1,1,x,1,1\n", f);
        std::fclose(f);
    }
    CHECK(run("scan --input " + path.string()).code == 2);
    const auto t1 = temp_dir() / "reference.csv";
    catchup::save_records(t1, fixtures::reference_fixture());
    CHECK(run("predict --input " + t1.string() + " --case 90001 --reps 3").code == 2);
}

TEST_CASE("gen then evaluate, twice, byte for byte")
{
    const auto pop = temp_dir() / "pop.csv";
    const auto g1 = run("gen --n 3000 --missing-rate 0.05 --noise 1.0 --seed 5 --out " + pop.string());
    REQUIRE(g1.code == 0);
    const auto bytes1 = catchup::load_records(pop);
    REQUIRE(run("gen --n 3000 --missing-rate 0.05 --noise 1.0 --seed 5 --out " + pop.string()).code == 0);
    CHECK(catchup::load_records(pop) == bytes1);

    for (const std::string args :
         {"eval-regression --input " + pop.string() + " --reps 5 --seed 3",
          "eval-hybrid --input " + pop.string() + " --reps 3 --seed 3 --k 20 --paper-normalization --format machine",
          "rescue-all --input " + pop.string() + " --reps 5 --seed 3 --engine hybrid"}) {
        const auto a = run(args);
        const auto b = run(args);
        CHECK(a.code == 0);
        CHECK(strip_timestamp(a.out) == strip_timestamp(b.out));
        CHECK(a.out.find("catchup") != std::string::npos);
    }
}
