#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SYMDESIGN_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("symdesign_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, Partitions) {
  const auto r = run("partitions --n 4 --d 2");
  ASSERT_EQ(r.code, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "n,partition,dim,multiplicity,content_sum");
  EXPECT_NE(l[1].find("(4)"), std::string::npos);
  EXPECT_NE(l[3].find("(2,2)"), std::string::npos);
}

TEST(Cli, UsageErrorsExit64) {
  EXPECT_EQ(run("gap-scan --m 5..3").code, 64);
  EXPECT_EQ(run("gap-scan --m abc").code, 64);
  EXPECT_EQ(run("bounds --name nope").code, 64);
  EXPECT_EQ(run("bounds --name knabe --m 2").code, 64);
  EXPECT_EQ(run("--no-such-flag partitions").code, 64);
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("counterexample --shape \"(2,1,1)\" --d 2").code, 64);
}

TEST(Cli, KnabeBoundExample) {
  const auto r = run("bounds --name knabe --m 2 --gap 0.375");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("-0.22916666666666"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"valid\": false"), std::string::npos) << r.out;
}

TEST(Cli, RepExport) {
  const auto r = run("rep --shape \"(2,1)\"");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"shape\""), std::string::npos);
}

TEST(Cli, GapScanIsDeterministic) {
  const auto a = run("gap-scan --m 2..3 --convention projections");
  const auto b = run("gap-scan --m 2..3 --convention projections --threads 1");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto l = lines(a.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "m_or_n,tuple,dim,gap,second_eig,unit_dim,threshold,bound,valid");
  EXPECT_EQ(l[1].rfind("2,\"proj:", 0), 0u);
  // Fields after the quoted tuple: dim, gap, ...
  std::istringstream rest(l[1].substr(l[1].rfind('"') + 2));
  std::string dim, gap;
  std::getline(rest, dim, ',');
  std::getline(rest, gap, ',');
  EXPECT_NEAR(std::stod(gap), 0.375, 1e-12);
  EXPECT_NE(l[1].find(",false"), std::string::npos);
}

TEST(Cli, ResumeCompletesAPartialScan) {
  const auto full = temp_file("full.csv");
  const auto part = temp_file("part.csv");
  ASSERT_EQ(run("gap-scan --m 2..3 --out " + full.string()).code, 0);
  const auto l = lines(slurp(full));
  ASSERT_EQ(l.size(), 5u);
  {
    std::ofstream out(part);
    for (std::size_t i = 0; i < 3; ++i) out << l[i] << '\n';
  }
  ASSERT_EQ(run("gap-scan --m 2..3 --resume --out " + part.string()).code, 0);
  EXPECT_EQ(slurp(part), slurp(full));
  std::filesystem::remove(full);
  std::filesystem::remove(part);
}

TEST(Cli, ConfigFile) {
  const auto cfg = temp_file("run.ini");
  {
    std::ofstream out(cfg);
    out << "n=5\nd=2\n";
  }
  const auto r = run("partitions --config " + cfg.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 4u);
  std::filesystem::remove(cfg);
}

TEST(Cli, FramePotentialTable) {
  const auto r = run("frame-potential --n 2..4 --samples 0");
  ASSERT_EQ(r.code, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "n,exact,paper_formula,mc_estimate,mc_stderr");
  EXPECT_EQ(l[1], "2,118,119,,");
  EXPECT_EQ(l[2], "3,544,544,,");
}

TEST(Cli, CounterexampleForOneDimensionalShape) {
  const auto r = run("counterexample --shape \"(3)\" --d 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"haar_commutant_dim\": 1"), std::string::npos) << r.out;
}

TEST(Cli, ConvergenceWithGivenGap) {
  const auto r = run("convergence --n 10 --k 2 --delta 0.1 --epsilon 0.001");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"steps\": 3041"), std::string::npos) << r.out;
}

TEST(Cli, VerifyQuickAndFaultInjection) {
  const auto ok = run("verify --quick");
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_EQ(ok.out.find("FAIL"), std::string::npos) << ok.out;
  const auto bad = run("verify --quick --inject-fault");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("FAIL yor/"), std::string::npos) << bad.out;
}
