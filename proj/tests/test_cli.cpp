// Drives the built `dicke` executable.

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

namespace {

int run(const std::string &args) {
    const std::string cmd = std::string(DICKE_CLI) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("sweep writes deterministic CSV") {
    const std::string args = "sweep --n-atoms 4,inf --backend all --lambda-steps 5 --measures s_vn,q_avg";
    REQUIRE(run(args + " --out cli_a.csv") == 0);
    REQUIRE(run(args + " --out cli_b.csv") == 0);
    const auto a = slurp("cli_a.csv");
    CHECK(a == slurp("cli_b.csv"));
    CHECK(a.rfind("lambda,lambda_rel,n_atoms,n_max,s_vn,", 0) == 0);
}

TEST_CASE("config file supplies defaults and flags override it") {
    {
        std::ofstream cfg("cli.ini");
        cfg << "n-atoms = 2\nlambda-steps = 3\nlambda-max = 1.0\nbackend = ed\nformat = json\n";
    }
    REQUIRE(run("sweep --config cli.ini --out cli_cfg.json") == 0);
    auto j = nlohmann::json::parse(slurp("cli_cfg.json"));
    CHECK(j.at("reports").size() == 3);
    CHECK(j.at("reports")[0].at("n_atoms") == 2);

    REQUIRE(run("sweep --config cli.ini --lambda-steps 4 --out cli_cfg.json") == 0);
    j = nlohmann::json::parse(slurp("cli_cfg.json"));
    CHECK(j.at("reports").size() == 4);
}

TEST_CASE("partial failures exit with 2 and are listed") {
    CHECK(run("sweep --n-atoms 8 --lambda-steps 4 --cutoff-limit 30 --format json --out cli_partial.json") == 2);
    const auto j = nlohmann::json::parse(slurp("cli_partial.json"));
    CHECK_FALSE(j.at("errors").empty());
    CHECK_FALSE(j.at("reports").empty());
}

TEST_CASE("bad input and unwritable output fail cleanly") {
    CHECK(run("sweep --lambda-steps 1") == 1);
    CHECK(run("sweep --backend qmc") == 1);
    CHECK(run("sweep --out /nonexistent-dir/x.csv") == 1);
    CHECK(run("") != 0);
}

TEST_CASE("fits and datasets") {
    REQUIRE(run("sweep --backend td --lambda-scale log --lambda-min 1e-6 --lambda-max 1e-3 --lambda-steps 10 "
                "--fit critical --format json --out cli_fit.json") == 0);
    const auto j = nlohmann::json::parse(slurp("cli_fit.json"));
    REQUIRE(j.at("fits").size() == 3);
    CHECK(std::abs(j.at("fits")[0].at("exponent").get<double>() - 0.5) < 2e-3);

    REQUIRE(run("sweep --backend td --measures T_eff,kappa --lambda-max 0.9 --lambda-steps 4 --dataset fig2 "
                "--out cli_fig2.csv") == 0);
    CHECK(slurp("cli_fig2.csv").rfind("lambda_rel,t_eff,kappa\n", 0) == 0);
}

TEST_CASE("dump-matrix") {
    REQUIRE(run("dump-matrix --n-atoms 1 --n-max 1 --lambda 0.5 --out cli_dump.txt") == 0);
    CHECK(slurp("cli_dump.txt") == "0 0 -0.5\n0 3 0.25\n1 1 0.5\n1 2 0.25\n2 1 0.25\n2 2 0.5\n3 0 0.25\n3 3 1.5\n");
}
