#include <gtest/gtest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dbv/cli.hpp"
#include "dbv/dbv.hpp"

namespace fs = std::filesystem;
using namespace dbv;

namespace {

struct CliRun
{
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args)
{
    args.insert(args.begin(), "dbvq");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir
{
  public:
    TempDir()
    {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("dbvq_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string file(const std::string &name, const std::string &content) const
    {
        const fs::path p = path_ / name;
        std::ofstream(p) << content;
        return p.string();
    }
    std::string path(const std::string &name) const { return (path_ / name).string(); }

  private:
    fs::path path_;
};

std::string slurp(const std::string &path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string example_file(const TempDir &dir, const std::string &kind)
{
    const CliRun r = run({"example", kind});
    EXPECT_EQ(r.code, 0) << r.err;
    return dir.file(kind + ".json", r.out);
}

const char *kBadSpec =
    R"({"kind":"finite","basis":[{"name":"1","degree":0},{"name":"a","degree":0},{"name":"b","degree":-1}],)"
    R"("unit":"1","product":[],"Q":[["b",{"a":"1/1"}]],"Delta":[["a",{"b":"1/1"}]]})";

} // namespace

TEST(Cli, ExampleParsesAndPassesAxioms)
{
    TempDir dir;
    for (const std::string kind : {"lg", "square-zero"}) {
        const std::string spec = example_file(dir, kind);
        const CliRun r = run({"check-axioms", spec});
        EXPECT_EQ(r.code, 0) << kind << r.err;
        const Json j = Json::parse(r.out);
        EXPECT_EQ(j["command"], "check-axioms");
        EXPECT_TRUE(j["axioms"].is_object() || j["axioms"].is_array());
    }
    const std::string random = dir.file("random.json", run({"example", "random-finite", "--dim", "5", "--seed", "3"}).out);
    EXPECT_EQ(run({"check-axioms", random}).code, 0);
}

TEST(Cli, AxiomViolationIsInputError)
{
    TempDir dir;
    const std::string spec = dir.file("bad.json", kBadSpec);
    const CliRun r = run({"homology", spec});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("Q-Delta-anticommute"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("witness: a"), std::string::npos) << r.err;
    EXPECT_EQ(run({"check-axioms", spec}).code, 1);
    EXPECT_EQ(run({"homology", spec, "--skip-axioms"}).code, 0);
}

TEST(Cli, MalformedInputs)
{
    TempDir dir;
    EXPECT_EQ(run({"homology", dir.file("empty.json", R"({"kind":"finite","basis":[],"unit":"1","product":[],"Q":[],"Delta":[]})")}).code, 2);
    EXPECT_EQ(run({"homology", dir.file("junk.json", "{not json")}).code, 2);
    EXPECT_EQ(run({"homology", dir.path("missing.json")}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    const std::string lg = example_file(dir, "lg");
    EXPECT_EQ(run({"solve-qme", lg, "--t-order", "0"}).code, 2);
    EXPECT_EQ(run({"verify", lg, lg, "--flavor", "sideways"}).code, 2);
    EXPECT_EQ(run({"homology", lg, "--min-degree", "3", "--max-degree", "1"}).code, 2);
    EXPECT_EQ(run({"example", "torus"}).code, 2);
    const CliRun help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("solve-qme"), std::string::npos);
}

TEST(Cli, SolveQmeOnLandauGinzburg)
{
    TempDir dir;
    const std::string spec = example_file(dir, "lg");
    const CliRun r = run({"solve-qme", spec, "-N", "3", "-R", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j["residual_zero"].get<bool>());
    const Json &gamma = j["solution"]["gamma"];
    ASSERT_EQ(gamma.size(), 2u);
    EXPECT_EQ(gamma[0]["monomial"]["t"], Json::array({1}));
    EXPECT_EQ(gamma[0]["vector"], Json({{"1", "1/1"}}));
    EXPECT_EQ(gamma[1]["monomial"]["t"], Json::array({2}));
    EXPECT_EQ(gamma[1]["vector"], Json({{"x", "1/1"}}));
}

TEST(Cli, SquareZeroNegativeOutcomes)
{
    TempDir dir;
    const std::string spec = example_file(dir, "square-zero");
    const CliRun d = run({"degeneration", spec});
    EXPECT_EQ(d.code, 1);
    const Json j = Json::parse(d.out);
    EXPECT_FALSE(j["degeneration"]["degenerate"].get<bool>());
    EXPECT_NE(d.out.find(R"("witness":{"b":"1/1"})"), std::string::npos) << d.out;
    EXPECT_EQ(run({"solve-qme", spec}).code, 1);
    EXPECT_EQ(run({"obstructions", spec, "-N", "2", "-R", "2"}).code, 1);
    EXPECT_EQ(run({"solve-classical", spec}).code, 0);
}

TEST(Cli, QDeltaOnLandauGinzburg)
{
    TempDir dir;
    const std::string spec = example_file(dir, "lg");
    const CliRun r = run({"qdelta", spec});
    EXPECT_EQ(r.code, 1);
    const Json j = Json::parse(r.out);
    EXPECT_FALSE(j["qdelta"]["holds"].get<bool>());
    bool found = false;
    for (const auto &c : j["qdelta"]["standard"]["comparisons"]) {
        if (c.contains("witness") && c["witness"] == Json({{"x^2", "3/1"}})) {
            found = true;
            EXPECT_EQ(c["witness_in"], "im Q cap ker Delta");
        }
    }
    EXPECT_TRUE(found) << r.out;
}

TEST(Cli, OutputIsDeterministic)
{
    TempDir dir;
    const std::string spec = example_file(dir, "lg");
    for (const std::string cmd : {"homology", "obstructions", "solve-qme", "qdelta"}) {
        const CliRun a = run({cmd, spec});
        const CliRun b = run({cmd, spec});
        EXPECT_EQ(a.out, b.out) << cmd;
        EXPECT_FALSE(a.out.empty());
    }
    EXPECT_EQ(run({"example", "random-finite", "--dim", "6", "--seed", "11"}).out,
              run({"example", "random-finite", "--dim", "6", "--seed", "11"}).out);
}

TEST(Cli, AgreesWithLibrary)
{
    TempDir dir;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const FiniteDimDBV alg = random_finite_dbv(4 + seed % 3, seed);
        const std::string spec = dir.file("r" + std::to_string(seed) + ".json", algebra_to_json(AnyAlgebra{alg}).dump());
        const auto dec = adapted_decomposition(alg);
        const CliRun h = run({"homology", spec});
        ASSERT_EQ(h.code, 0) << h.err;
        EXPECT_EQ(Json::parse(h.out)["homology"]["total"].get<std::size_t>(), dec.homology().size());
        const CliRun o = run({"obstructions", spec, "-N", "2", "-R", "2"});
        const ObstructionReport g = obstruction_grid(alg, dec, 2, 2);
        EXPECT_EQ(o.code, g.all_computed_vanish() ? 0 : 1) << seed;
        const CliRun d = run({"degeneration", spec});
        EXPECT_EQ(d.code, degeneration_check(alg, dec, kUnbounded).degenerate ? 0 : 1) << seed;
    }
}

TEST(Cli, VerifyRoundTripAndHashMismatch)
{
    TempDir dir;
    const std::string lg = example_file(dir, "lg");
    const std::string sq = example_file(dir, "square-zero");
    const std::string sol = dir.path("sol.json");
    ASSERT_EQ(run({"solve-qme", lg, "--out", sol}).code, 0);
    const CliRun ok = run({"verify", lg, sol});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_TRUE(Json::parse(ok.out)["accepted"].get<bool>());
    const CliRun bad = run({"verify", sq, sol});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("algebra"), std::string::npos);

    const std::string csol = dir.path("csol.json");
    ASSERT_EQ(run({"solve-classical", sq, "-N", "4", "--out", csol}).code, 0);
    EXPECT_EQ(run({"verify", sq, csol}).code, 0);
}

TEST(Cli, ObservableRequiresClosedInput)
{
    TempDir dir;
    const std::string lg = example_file(dir, "lg");
    EXPECT_EQ(run({"observable", lg, "--vector", R"({"eta":"1/1"})"}).code, 2);
    EXPECT_EQ(run({"observable", lg, "--vector", "{oops"}).code, 2);
    EXPECT_EQ(run({"observable", lg}).code, 2);
    EXPECT_EQ(run({"observable", lg, "--vector", R"({"nope":"1/1"})"}).code, 2);
    const CliRun r = run({"observable", lg, "--vector", R"({"x":"1/1"})", "-R", "3"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, BinaryHonoursWindowEnvironment)
{
    TempDir dir;
    const std::string spec = example_file(dir, "lg");
    const std::string bin = DBVQ_BINARY;
    const auto sh = [&](const std::string &env, const std::string &args, const std::string &out) {
        const std::string cmd = env + " \"" + bin + "\" " + args + " > \"" + out + "\" 2>/dev/null";
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };
    const std::string a = dir.path("a.json");
    const std::string b = dir.path("b.json");
    ASSERT_EQ(sh("DBVQ_WINDOW=-2:2:4", "homology \"" + spec + "\"", a), 0);
    ASSERT_EQ(sh("", "homology \"" + spec + "\" --min-degree -2 --max-degree 2 --x-degree 4", b), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    const std::string c = dir.path("c.json");
    ASSERT_EQ(sh("DBVQ_WINDOW=-2:2:7", "homology \"" + spec + "\" --x-degree 4", c), 0);
    EXPECT_EQ(slurp(a), slurp(c));
    EXPECT_EQ(sh("DBVQ_WINDOW=garbage", "homology \"" + spec + "\"", dir.path("d.json")), 2);
    EXPECT_EQ(sh("", "solve-qme \"" + spec + "\"", dir.path("e.json")), 0);
    EXPECT_EQ(slurp(dir.path("e.json")), run({"solve-qme", spec}).out);
}
