#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
};

// Runs the CLI with stdout captured and stderr discarded.
CliRun cli(const std::string& args) {
  const std::string cmd = std::string(HUMBERT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("humbert_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  fs::path dir;
};

}  // namespace

TEST_F(Cli, EvalPrintsSchema) {
  const CliRun r = cli("eval --function phi3 --params b=1,c=2 --x 1 --y 0 --method direct");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["value"]["re"].get<double>(), 1.718281828459045, 1e-15);
  EXPECT_EQ(j["function"], "phi3");
  EXPECT_EQ(j["method"], "direct");
  EXPECT_EQ(j["converged"], true);
  EXPECT_EQ(j["x"]["re"], 1.0);
  for (const char* key : {"params", "y", "terms", "est_error"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.size(), 9u);
}

TEST_F(Cli, EvalPlainAndComplex) {
  const CliRun r = cli("eval --function psi2 --params a=1,b=1,c=2 --x 0.5,0.25 --y 0 --format plain");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("value = "), std::string::npos);
  EXPECT_NE(r.out.find("converged = true"), std::string::npos);
}

TEST_F(Cli, EvalExitCodes) {
  EXPECT_EQ(cli("eval --function phi3 --params b=1,c=-2 --x 1 --y 0").code, 2);
  EXPECT_EQ(cli("eval --function phi3 --params b=1,c=2 --x 0 --y 1 --method series2f1").code, 2);
  EXPECT_EQ(cli("eval --function phi9 --params b=1,c=2 --x 1").code, 2);
  EXPECT_EQ(cli("eval --function phi3 --params b=1 --x 1").code, 2);
  EXPECT_EQ(cli("eval --function phi3 --params b=1,c=2 --x nope").code, 2);
  EXPECT_EQ(cli("eval --function phi3 --params b=1,c=2 --x 1 --rel-tol -1").code, 2);
  EXPECT_EQ(cli("eval --bogus").code, 2);
  const CliRun capped = cli("eval --function psi2 --params a=1,b=1,c=2 --x 3 --y 3 --max-terms 4");
  EXPECT_EQ(capped.code, 3);
  EXPECT_EQ(nlohmann::json::parse(capped.out)["converged"], false);
}

TEST_F(Cli, VerifyExitCodesAndDeterminism) {
  const auto good = write("good.json", R"({"function": "phi3",
    "representations": ["direct", "series2f1"], "params": {"b": [1, 2.5], "c": [1.5, 3.25]},
    "points": [[0.25, 0.5], [-1, 1], [2, 3], [0, 1]], "gate": 1e-8})");
  const fs::path a = dir / "a.json", b = dir / "b.json";
  EXPECT_EQ(cli("verify --spec " + good.string() + " --out " + a.string()).code, 0);
  EXPECT_EQ(cli("verify --spec " + good.string() + " --out " + b.string() + " --threads 3").code, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));

  const fs::path csv = dir / "a.csv";
  EXPECT_EQ(cli("verify --spec " + good.string() + " --format csv --out " + csv.string()).code, 0);
  EXPECT_EQ(slurp(csv).rfind("function,method_pair,a,b,c,x_re,x_im,y_re,y_im,rel_err,status\n", 0),
            0u);

  const auto tight = write("tight.json", R"({"function": "phi3",
    "representations": ["direct", "series2f1"], "params": {"b": [1], "c": [2]},
    "points": [[0.25, 1]], "gate": 1e-16})");
  EXPECT_EQ(cli("verify --spec " + tight.string()).code, 4);

  const auto bad = write("bad.json", R"({"function": "phi3"})");
  EXPECT_EQ(cli("verify --spec " + bad.string()).code, 2);
  EXPECT_EQ(cli("verify --spec " + (dir / "missing.json").string()).code, 1);
}

TEST_F(Cli, OracleAndIdentities) {
  const CliRun ok = cli("oracle --identity eq15 --params b=1/2,c=5/2 --deg 6");
  ASSERT_EQ(ok.code, 0);
  EXPECT_EQ(nlohmann::json::parse(ok.out)["equal"], true);
  const CliRun printed = cli("oracle --identity eq15-printed --params b=1,c=3 --deg 6");
  EXPECT_EQ(printed.code, 4);
  EXPECT_EQ(nlohmann::json::parse(printed.out)["equal"], false);
  EXPECT_EQ(cli("oracle --identity eq15 --params b=1,c=2 --deg 13").code, 2);
  EXPECT_EQ(cli("oracle --identity eq77 --params b=1").code, 2);
  const CliRun list = cli("identities");
  EXPECT_EQ(list.code, 0);
  for (const char* key : {"eq13", "eq14", "eq15", "eq16", "eq33", "eq34", "bc3f3"}) {
    EXPECT_NE(list.out.find(key), std::string::npos) << key;
  }
}
