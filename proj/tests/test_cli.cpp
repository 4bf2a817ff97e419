#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "khess/cli.hpp"
#include "khess/barriers.hpp"
#include "khess/radial_profile.hpp"
#include "oracles.hpp"

using namespace khess;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "khess_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("threshold prints the radius")
{
    const Run r = run({"threshold", "--n", "2", "--k", "1", "--alpha", "2", "--M", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "a* = 2.0\n");
    CHECK(run({"threshold", "--n", "3", "--k", "1", "--alpha", "2", "--M", "1"}).out == "a* = 4.0\n");
}

TEST_CASE("solve writes the profile and report")
{
    const fs::path csv = scratch("solve.csv");
    const Run r = run({"solve", "--n", "2", "--k", "1", "--psi", "constant:M=2", "--R", "1", "--m", "0", "--csv",
                       csv.string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["converged"] == true);
    CHECK(j["c"].get<double>() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(j["profile_csv_path"] == csv.string());
    const RadialProfile p = RadialProfile::read_csv(csv.string(), 1.0);
    CHECK(p.u()(0) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("identical runs give identical output")
{
    const std::vector<std::string> a{"solve", "--n", "3", "--k", "2", "--psi", "exist:q=3", "--m", "2"};
    CHECK(run(a).out == run(a).out);
}

TEST_CASE("configuration errors exit with 2")
{
    CHECK(run({"solve", "--psi", "nosuch:M=1"}).code == 2);
    CHECK(run({"solve", "--bogus", "1"}).code == 2);
    CHECK(run({"solve", "--n", "3", "--k", "3"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"solve", "--config", scratch("missing.json").string()}).code == 2);
    std::ofstream(scratch("bad.json")) << "{ not json";
    CHECK(run({"--config", scratch("bad.json").string()}).code == 2);
}

TEST_CASE("failed certification exits with 1")
{
    CHECK(run({"barrier", "--type", "super", "--n", "3", "--k", "2"}).code == 0);
    CHECK(run({"barrier", "--type", "super", "--n", "3", "--k", "2", "--corrupt-B"}).code == 1);
}

TEST_CASE("a diverging limit exits with 3")
{
    const Run r = run({"limit", "--n", "3", "--k", "2", "--psi", "constant:M=2", "--m-max", "6"});
    CHECK(r.code == 3);
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "diverges");
}

TEST_CASE("config file supplies the command; explicit flags win")
{
    const fs::path cfg = scratch("cfg.json");
    std::ofstream(cfg) << R"({"command": "threshold", "n": 3, "k": 1, "alpha": 2.0, "M": 1})";
    CHECK(run({"--config", cfg.string()}).out == "a* = 4.0\n");
    CHECK(run({"--config", cfg.string(), "--M", "4"}).out == "a* = 1.0\n");
}

TEST_CASE("merge_config flattens keys ahead of explicit arguments")
{
    const nlohmann::json cfg = {{"command", "solve"}, {"m", 2}, {"psi", "constant:M=1"}, {"flag", true}};
    const auto args = merge_config(cfg, {"--m", "3"});
    REQUIRE(!args.empty());
    CHECK(args.front() == "solve");
    CHECK(args.back() == "3");
    CHECK(std::count(args.begin(), args.end(), "--flag") == 1);
}

TEST_CASE("verify and rates read a saved profile")
{
    const fs::path csv = scratch("verify.csv");
    REQUIRE(run({"solve", "--n", "3", "--k", "1", "--psi", "constant:M=2", "--csv", csv.string()}).code == 0);
    CHECK(run({"verify", "--n", "3", "--k", "1", "--psi", "constant:M=2", "--profile", csv.string()}).code == 0);
    CHECK(run({"verify", "--n", "3", "--k", "1", "--psi", "constant:M=3", "--profile", csv.string()}).code == 1);
    CHECK(run({"verify", "--n", "3", "--k", "1", "--psi", "constant:M=3", "--mode", "super", "--profile",
               csv.string()})
              .code == 0);
    // super-barrier sampled towards the boundary
    const fs::path sup = scratch("super.csv");
    {
        const SuperBarrier sb = make_super_barrier(1.0, 1.0, 3.0, Dim{3, 1});
        const Eigen::VectorXd r = oracle::clustered_nodes(1.0, 1e-7, 50, 300);
        Eigen::VectorXd u(r.size()), du(r.size());
        for (Eigen::Index i = 0; i < r.size(); ++i) {
            u(i) = sb.value(r(i));
            du(i) = sb.d1(r(i));
        }
        RadialProfile(1.0, r, u, du).write_csv(sup.string());
    }
    const Run r = run({"rates", "--n", "3", "--k", "1", "--q", "3", "--M", "1", "--R", "1", "--profile", sup.string()});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["exponent"].get<double>() == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("help exits cleanly")
{
    const Run r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("threshold") != std::string::npos);
}
