#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "waring7/cli.hpp"
#include "waring7/errors.hpp"
#include "waring7/json_io.hpp"

using namespace waring7;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv("WARING7_TOL");
    dir_ = fs::temp_directory_path() / ("waring7_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override {
    unsetenv("WARING7_TOL");
    fs::remove_all(dir_);
  }
  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateDecomposeVerify) {
  const CliRun g = run({"generate", "--kind", "random", "--seed", "3"});
  ASSERT_EQ(g.code, 0) << g.err;
  const std::string form = write("f.json", g.out);
  const CliRun d = run({"decompose", form, "--seed", "1", "--out", path("dec.json")});
  ASSERT_EQ(d.code, 0) << d.err;
  const Json dec = read_json_file(path("dec.json"));
  EXPECT_EQ(dec["terms"].size(), 7u);
  EXPECT_EQ(dec["degree"], 4);
  EXPECT_LE(dec["residual"].get<double>(), 1e-8);
  const CliRun v = run({"verify", form, path("dec.json")});
  EXPECT_EQ(v.code, 0) << v.err;
  EXPECT_TRUE(Json::parse(v.out)["pass"].get<bool>());
}

TEST_F(CliTest, FailureReasonOnStderr) {
  const CliRun g = run({"generate", "--kind", "pure-power", "--seed", "1"});
  ASSERT_EQ(g.code, 0);
  const CliRun d = run({"decompose", write("f.json", g.out), "--seed", "1"});
  EXPECT_EQ(d.code, 1);
  EXPECT_TRUE(d.out.empty());
  EXPECT_EQ(Json::parse(d.err)["failure"]["code"], "Q_ZERO");
}

TEST_F(CliTest, MalformedInputExitsTwo) {
  EXPECT_EQ(run({"decompose", write("bad.json", "{not json")}).code, 2);
  EXPECT_EQ(run({"decompose", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"decompose", write("cubic.json", R"({"side":"primal","nvars":3,"degree":3,"coeffs":[]})")}).code, 2);
  EXPECT_EQ(run({"generate", "--kind", "nonsense"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const CliRun g = run({"generate", "--kind", "random"});
  const std::string form = write("f.json", g.out);
  EXPECT_EQ(run({"decompose", form, "--frame", write("fr.json", R"({"rows":[[1,0,0],[0,1,0],[1,1,0]]})")}).code, 2);
}

TEST_F(CliTest, ToleranceFlagBeatsEnvironment) {
  const CliRun g = run({"generate", "--kind", "random", "--seed", "5"});
  const std::string form = write("f.json", g.out);
  ASSERT_EQ(run({"decompose", form, "--out", path("dec.json")}).code, 0);
  Json dec = read_json_file(path("dec.json"));
  dec["terms"][0]["coeff"][0] = dec["terms"][0]["coeff"][0].get<double>() + 1e-6;
  const std::string perturbed = write("p.json", dec.dump());

  EXPECT_EQ(run({"verify", form, perturbed}).code, 1);
  setenv("WARING7_TOL", "1e-3", 1);
  EXPECT_EQ(run({"verify", form, perturbed}).code, 0);
  EXPECT_EQ(run({"verify", form, perturbed, "--tol", "1e-12"}).code, 1);
  EXPECT_EQ(Json::parse(run({"verify", form, perturbed, "--tol", "1e-12"}).out)["tolerance"], 1e-12);
  setenv("WARING7_TOL", "abc", 1);
  EXPECT_EQ(run({"verify", form, perturbed}).code, 2);
}

TEST_F(CliTest, ResolveTolerances) {
  EXPECT_EQ(resolve_tolerances(std::nullopt, nullptr).verify, Tolerances{}.verify);
  EXPECT_EQ(resolve_tolerances(std::nullopt, "2e-7").verify, 2e-7);
  EXPECT_EQ(resolve_tolerances(1e-5, "2e-7").verify, 1e-5);
  EXPECT_THROW(resolve_tolerances(-1.0, nullptr), Error);
  EXPECT_THROW(resolve_tolerances(std::nullopt, "0"), Error);
}

TEST_F(CliTest, ProbeAndExperimentsAreByteIdentical) {
  const std::string form = write("f.json", run({"generate", "--kind", "random", "--seed", "9"}).out);
  const CliRun a = run({"probe", form, "--trials", "5", "--seed", "11"});
  const CliRun b = run({"probe", form, "--trials", "5", "--seed", "11"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"probe", form, "--trials", "5", "--seed", "12"}).out);
  const CliRun e1 = run({"experiments", "--check", "--seed", "4", "--frames", "5"});
  const CliRun e2 = run({"experiments", "--check", "--seed", "4", "--frames", "5"});
  EXPECT_EQ(e1.code, 0) << e1.err;
  EXPECT_EQ(e1.out, e2.out);
}

TEST_F(CliTest, PrettyAndChain) {
  const std::string form = write("f.json", run({"generate", "--kind", "random", "--seed", "2"}).out);
  const CliRun pretty = run({"--pretty", "decompose", form});
  const CliRun compact = run({"decompose", form});
  EXPECT_NE(pretty.out, compact.out);
  EXPECT_EQ(Json::parse(pretty.out), Json::parse(compact.out));
  EXPECT_EQ(run({"decompose", form, "--pretty"}).out, pretty.out);
  const CliRun chain = run({"chain", form});
  ASSERT_EQ(chain.code, 0) << chain.err;
  EXPECT_EQ(Json::parse(chain.out)["theta"].size(), 3u);
}

TEST_F(CliTest, SparseFormInput) {
  const std::string form = write("s.json", R"({"side":"primal","nvars":3,"degree":4,"terms":[
    {"exp":[4,0,0],"value":[1,0]},{"exp":[0,4,0],"value":[1,0]},{"exp":[0,0,4],"value":[1,0]},
    {"exp":[2,1,1],"value":[0.5,0.25]},{"exp":[1,3,0],"value":[-1,2]},{"exp":[0,2,2],"value":[3,0]}]})");
  const CliRun d = run({"decompose", form, "--seed", "4"});
  EXPECT_EQ(d.code, 0) << d.err;
}
