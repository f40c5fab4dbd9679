#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "algtel/cli.hpp"

using namespace algtel;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Outcome run(const std::vector<std::string>& args, const std::string& env = "") {
  static int counter = 0;
  const auto errfile = std::filesystem::temp_directory_path() /
                       ("telescope_cli_err_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += quote(TELESCOPE_BIN);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>" + quote(errfile.string());
  Outcome r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(errfile);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  std::filesystem::remove(errfile);
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Text output without the timing lines, which differ between runs.
std::string strip_timings(const std::string& s) {
  std::string out;
  for (const auto& l : lines(s))
    if (l.rfind("timings:", 0) != 0) out += l + "\n";
  return out;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

const std::vector<std::string> kRef = {"--m", "y^3+y+x+t", "--f", "y/x^2"};

std::vector<std::string> with(std::vector<std::string> base, const std::vector<std::string>& extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  return base;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / (name + "_" + std::to_string(::getpid()));
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST(Cli, RefCurveBothApproachesVerified) {
  Outcome r = run(with(kRef, {"--approach", "both", "--verify"}));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count(r.out, "telescoper: (27*t^2 + 4)*Dt^2 + 81*t*Dt + 24\n"), 2u) << r.out;
  EXPECT_EQ(count(r.out, "verified: yes\n"), 2u);
  EXPECT_EQ(count(r.out, "approach: polyred\n"), 1u);
  EXPECT_EQ(count(r.out, "approach: hermite\n"), 1u);
  EXPECT_TRUE(r.err.empty()) << r.err;
}

TEST(Cli, RationalIntegrandHasOrderZero) {
  Outcome r = run({"--m", "y-1", "--f", "1/x^2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("telescoper: 1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("order: 0\n"), std::string::npos);
}

TEST(Cli, JsonRoundTripsToText) {
  for (const std::string& approach : {"polyred", "hermite", "both"}) {
    SCOPED_TRACE(approach);
    auto args = with(kRef, {"--approach", approach, "--certificate", "--verify"});
    Outcome text = run(args);
    Outcome json = run(with(args, {"--json"}));
    ASSERT_EQ(text.code, 0) << text.err;
    ASSERT_EQ(json.code, 0) << json.err;
    std::string rebuilt;
    auto ls = lines(json.out);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      auto j = nlohmann::ordered_json::parse(ls[i]);
      for (const char* key : {"telescoper", "order", "bound", "certificate", "verified", "basis", "timings"})
        EXPECT_TRUE(j.contains(key)) << key;
      rebuilt += cli::to_text(cli::from_json(j)) + (i + 1 < ls.size() ? "\n" : "");
    }
    EXPECT_EQ(strip_timings(rebuilt), strip_timings(text.out));
  }
}

TEST(Cli, CertificateParsesBackAndVerifies) {
  Outcome r = run(with(kRef, {"--approach", "both", "--certificate", "--json"}));
  ASSERT_EQ(r.code, 0) << r.err;
  FunctionField ff(parse_minpoly("y^3+y+x+t"));
  AlgElem f = parse_element("y/x^2", ff);
  for (const auto& l : lines(r.out)) {
    auto j = nlohmann::ordered_json::parse(l);
    EXPECT_TRUE(j.at("verified").is_null());
    Telescoper op = cli::telescoper_from_strings(j.at("telescoper").get<std::vector<std::string>>());
    AlgElem g = parse_element(j.at("certificate").get<std::string>(), ff);
    EXPECT_TRUE(verify_with_certificate(ff, f, op, g));
  }
}

TEST(Cli, InputErrorsExitTwo) {
  Outcome syntax = run({"--m", "y^3+y+x+", "--f", "y"});
  EXPECT_EQ(syntax.code, 2);
  EXPECT_NE(syntax.err.find("line 1, column"), std::string::npos) << syntax.err;
  EXPECT_TRUE(syntax.out.empty());

  Outcome no_y = run({"--m", "x + t", "--f", "1"});
  EXPECT_EQ(no_y.code, 2);

  Outcome not_regular = run(with(kRef, {"--approach", "hermite", "--regular-point", "0"}));
  EXPECT_EQ(not_regular.code, 2);
  EXPECT_NE(not_regular.err.find("not regular"), std::string::npos) << not_regular.err;

  Outcome bad_point = run(with(kRef, {"--approach", "hermite", "--regular-point", "1/0"}));
  EXPECT_EQ(bad_point.code, 2);

  Outcome approach = run(with(kRef, {"--approach", "zeilberger"}));
  EXPECT_EQ(approach.code, 2);

  Outcome zero_div = run({"--m", "y^2 - x", "--f", "1/(y - y)"});
  EXPECT_EQ(zero_div.code, 2);

  Outcome not_normal = run({"--m", "y^2 - x^3", "--f", "y/(x - 1)^2", "--basis", "standard"});
  EXPECT_EQ(not_normal.code, 2);

  Outcome missing_file = run({"--m", "y^2 - x^3", "--f", "y/(x - 1)^2", "--basis", "file"});
  EXPECT_EQ(missing_file.code, 2);
}

TEST(Cli, OrderCapExitsOne) {
  Outcome r = run(with(kRef, {"--max-order", "1"}));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--max-order"), std::string::npos) << r.err;
}

TEST(Cli, StandardBasisWhenIntegralAndNormal) {
  Outcome r = run({"--m", "y^2 - x*t - 1", "--f", "1/y", "--basis", "standard", "--certificate", "--verify"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("telescoper: 1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("basis (standard): 1, y\n"), std::string::npos) << r.out;
}

TEST(Cli, BasisFileIsVerifiedOnLoad) {
  auto good = temp_file("basis_good", "# integral basis of y^2 - x^3\n1\n\ny/x\n");
  Outcome ok = run({"--m", "y^2 - x^3", "--f", "y/(x - 1)^2", "--basis", "file", "--basis-file", good.string(), "--verify"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("verified: yes"), std::string::npos);
  auto bad = temp_file("basis_bad", "1\ny/x^2\n");
  Outcome rejected = run({"--m", "y^2 - x^3", "--f", "y/(x - 1)^2", "--basis", "file", "--basis-file", bad.string()});
  EXPECT_EQ(rejected.code, 2);
  EXPECT_NE(rejected.err.find("not integral"), std::string::npos) << rejected.err;
  auto short_file = temp_file("basis_short", "1\n");
  Outcome incomplete = run({"--m", "y^2 - x^3", "--f", "y", "--basis", "file", "--basis-file", short_file.string()});
  EXPECT_EQ(incomplete.code, 2);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
  std::filesystem::remove(short_file);
}

TEST(Cli, SeedAndDeterminism) {
  Outcome a = run(with(kRef, {"--seed", "3"}));
  Outcome b = run(kRef, "TELESCOPE_SEED=11");
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(strip_timings(a.out), strip_timings(b.out));
  Outcome bad = run(kRef, "TELESCOPE_SEED=abc");
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, ReducibleInputWarns) {
  Outcome r = run({"--m", "y^2 - x^2", "--f", "y/(x + 1)^2"});
  EXPECT_NE(r.err.find("could not certify"), std::string::npos) << r.err;
}
