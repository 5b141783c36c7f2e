#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int code = -1;
  std::string out;  // stdout and stderr
};

CmdResult run(const std::string& args) {
  const std::string cmd = std::string(IVMINE_CLI) + " " + args + " 2>&1";
  CmdResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          (std::string("ivmine_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string at(const std::string& name) const { return (dir / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }

  fs::path dir;
  const std::string iris = IVMINE_DATA_DIR "/iris.csv";
};

}  // namespace

TEST_F(Cli, UsageErrorsExitTwo) {
  for (const char* args : {"", "frobnicate", "encode --lang i", "encode --input x.csv --lang xx --out d",
                           "mine", "eval --trials 1"}) {
    const CmdResult r = run(args);
    EXPECT_EQ(r.code, 2) << args << "\n" << r.out;
    EXPECT_EQ(r.out.rfind("error:", 0), 0u) << args << "\n" << r.out;
  }
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, DataErrorsExitThree) {
  write("bad.csv", "a,b\n1,2\n3,oops\n");
  CmdResult r = run("encode --input " + at("bad.csv") + " --lang i --out " + at("o"));
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_NE(r.out.find("error:"), std::string::npos);
  EXPECT_NE(r.out.find("line 3"), std::string::npos);
  r = run("mine --input " + at("nothing"));
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST_F(Cli, EmptyInput) {
  write("empty.csv", "  \n");
  EXPECT_EQ(run("encode --input " + at("empty.csv") + " --lang i --out " + at("o")).code, 2);
  write("header.csv", "a,b\n");
  EXPECT_EQ(run("encode --input " + at("header.csv") + " --lang i --out " + at("o")).code, 2);
}

TEST_F(Cli, TwoIntervalExample) {
  // Two intervals ]0,2] and ]1,4] over thresholds 1..4.
  write("t.csv", "x\n1..2\n2..4\n0..5\n");
  write("t2.csv", "x\n1..2\n2..4\n");
  CmdResult r = run("encode --input " + at("t.csv") + " --lang i --bins 5 --out " + at("enc"));
  ASSERT_EQ(r.code, 0) << r.out;
  // Reuse the grid of the three-row file for the two-object dataset.
  r = run("encode --input " + at("t2.csv") + " --lang i --grids " + at("enc/t_i4") + " --name t2 --out " + at("enc"));
  ASSERT_EQ(r.code, 0) << r.out;
  r = run("mine --input " + at("enc/t2_i4") + " --min-support 1 --out " + at("c.tsv"));
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string concepts = slurp(dir / "c.tsv");
  std::size_t rows = 0;
  std::istringstream in(concepts);
  for (std::string line; std::getline(in, line);) rows += !line.empty() && line[0] != '#';
  EXPECT_EQ(rows, 3u) << concepts;
  EXPECT_NE(concepts.find("x intersects ]1, 2]"), std::string::npos) << concepts;

  r = run("mine --input " + at("enc/t2_i4") + " --min-support 3");
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_EQ(r.out.rfind("error:", 0), 0u);

  r = run("interpret --input " + at("enc/t2_i4") + " --items 0,4,5,6,7");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("x contains [1, 2]"), std::string::npos) << r.out;
  EXPECT_EQ(run("interpret --input " + at("enc/t2_i4") + " --items 1").code, 2);
  EXPECT_EQ(run("interpret --input " + at("enc/t2_i4") + " --items 99").code, 2);
}

TEST_F(Cli, EncodeIsDeterministic) {
  for (const char* sub : {"a", "b"}) {
    const CmdResult r = run("encode --input " + iris + " --lang ic --widen --seed 4 --out " + at(sub));
    ASSERT_EQ(r.code, 0) << r.out;
  }
  for (const char* ext : {".fimi", ".map", ".labels.csv", ".manifest"}) {
    const std::string a = slurp(dir / "a" / (std::string("iris_ic4") + ext));
    EXPECT_FALSE(a.empty()) << ext;
    EXPECT_EQ(a, slurp(dir / "b" / (std::string("iris_ic4") + ext))) << ext;
  }
}

TEST_F(Cli, MineEvalDistance) {
  ASSERT_EQ(run("encode --input " + iris + " --lang c --widen --out " + at("e")).code, 0);
  CmdResult r = run("mine --input " + at("e/iris_c4") + " --min-support 0.2 --out " + at("c.tsv"));
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string first = slurp(dir / "c.tsv");
  ASSERT_EQ(run("mine --input " + at("e/iris_c4") + " --min-support 30 --out " + at("c2.tsv")).code, 0);
  EXPECT_EQ(first, slurp(dir / "c2.tsv"));

  r = run("eval --input " + at("e/iris_c4") + " --concepts " + at("c.tsv") + " --trials 3 --out " + at("rep.tsv"));
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string rep = slurp(dir / "rep.tsv");
  EXPECT_NE(rep.find("ds_classes"), std::string::npos) << rep;
  EXPECT_NE(rep.find("F-measure"), std::string::npos) << rep;

  r = run("eval --csv " + iris + " --lang ori --trials 2 --seed 3");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, run("eval --csv " + iris + " --lang ori --trials 2 --seed 3").out);

  r = run("distance --input " + at("e/iris_c4") + " --out " + at("d.tsv"));
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string d = slurp(dir / "d.tsv");
  EXPECT_EQ(std::count(d.begin(), d.end(), '\n'), 151);
}

TEST_F(Cli, EvalNeedsLabels) {
  write("nolab.csv", "a,b\n1,2\n2,3\n3,1\n");
  ASSERT_EQ(run("encode --input " + at("nolab.csv") + " --lang i --out " + at("e")).code, 0);
  const CmdResult r = run("eval --input " + at("e/nolab_i4") + " --trials 1");
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("labels"), std::string::npos);
}

TEST_F(Cli, Simulate) {
  const CmdResult r = run("simulate --input " + iris + " --seed 2 --out " + at("s"));
  ASSERT_EQ(r.code, 0) << r.out;
  for (const char* f : {"irisO.csv", "irisOD.csv", "irisO_num4.manifest", "irisO_num8.fimi",
                        "irisOD_i4_0.1.fimi", "irisOD_i8_0.1-0.25.map"})
    EXPECT_TRUE(fs::exists(dir / "s" / f)) << f;
  const CmdResult again = run("simulate --input " + iris + " --seed 2 --out " + at("t"));
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(slurp(dir / "s" / "irisOD.csv"), slurp(dir / "t" / "irisOD.csv"));
  EXPECT_EQ(run("simulate --input " + iris + " --lang c --out " + at("u")).code, 2);
}
