// Copyright 2026 The sparselimit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun Cli(const std::string& args) {
  std::string cmd = std::string(SPARSELIMIT_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sparselimit_cli_" + name)).string();
}

std::string Slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(CliTest, MissingVocabIsUsageError) {
  EXPECT_EQ(Cli("limit --formula true").code, 2);
  EXPECT_EQ(Cli("sample --n 5 --beta 1 --seed 1").code, 2);
}

TEST(CliTest, ZeroSamplesIsUsageError) {
  EXPECT_EQ(Cli("mc --vocab graph --stat simple-fraction --beta 1 --n 100 --samples 0").code, 2);
}

TEST(CliTest, UnknownSubcommandAndBadGrid) {
  EXPECT_EQ(Cli("frobnicate").code, 2);
  EXPECT_EQ(Cli("").code, 2);
  EXPECT_EQ(Cli("sat-scan --beta 1:0:1 --n 10 --samples 2 --seed 1").code, 2);
  EXPECT_EQ(Cli("mc --vocab graph --stat sentence --beta 1 --n 10 --samples 2 --seed 1").code, 2);
}

TEST(CliTest, DomainErrorsExitOne) {
  EXPECT_EQ(Cli("limit --vocab nosuchvocab --formula true").code, 1);
  EXPECT_EQ(Cli("limit --vocab graph --formula 'exists x. F(x,x)'").code, 1);
  EXPECT_EQ(Cli("check --vocab graph --structure /nonexistent/file --formula true").code, 1);
}

TEST(CliTest, SampleAndCheck) {
  std::string path = Temp("sample.txt");
  CliRun s = Cli("sample --vocab graph --n 50 --beta 2 --seed 4 --out " + path);
  ASSERT_EQ(s.code, 0);
  std::string first = Slurp(path);
  auto manifest = nlohmann::json::parse(Slurp(path + ".manifest.json"));
  EXPECT_EQ(manifest["seed"], 4);
  EXPECT_EQ(manifest["subcommand"], "sample");
  ASSERT_EQ(Cli("sample --vocab graph --n 50 --beta 2 --seed 4 --out " + path).code, 0);
  EXPECT_EQ(Slurp(path), first);
  CliRun c = Cli("check --vocab graph --structure " + path + " --formula 'exists x. x = x'");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, "true\n");
  c = Cli("check --vocab graph --structure " + path + " --formula 'exists x. E(x,x)'");
  EXPECT_EQ(c.out, "false\n");
}

TEST(CliTest, SeedFromEnvironmentIsRecorded) {
  std::string path = Temp("env.csv");
  std::string cmd = "sat-scan --beta 1 --n 20 --samples 3 --out " + path;
  ASSERT_EQ(Cli(cmd).code, 0);
  auto m = nlohmann::json::parse(Slurp(path + ".manifest.json"));
  EXPECT_EQ(m["seed_source"], "generated");
  ::setenv("SPARSELIMIT_SEED", "77", 1);
  ASSERT_EQ(Cli(cmd).code, 0);
  m = nlohmann::json::parse(Slurp(path + ".manifest.json"));
  ::unsetenv("SPARSELIMIT_SEED");
  EXPECT_EQ(m["seed"], 77);
  EXPECT_EQ(m["seed_source"], "env");
}

TEST(CliTest, TreeTypesTable) {
  CliRun r = Cli("tree-types --vocab graph --k 1 --r 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "id,radius,signature,representative");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(CliTest, McCsvAndJson) {
  CliRun r = Cli("mc --vocab graph --stat simple-fraction --r 1 --beta 1 --n 200 --samples 20 "
              "--seed 2 --workers 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "statistic,n,beta,estimate,stderr,prediction,pass");
  CliRun j = Cli("mc --vocab graph --stat simple-fraction --r 1 --beta 1 --n 200 --samples 20 "
              "--seed 2 --format json");
  ASSERT_EQ(j.code, 0);
  auto doc = nlohmann::json::parse(j.out);
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_EQ(doc[0]["samples"], 20);
}

TEST(CliTest, ScansAreWorkerIndependent) {
  std::string args = "sat-scan --beta 2,6 --n 40 --samples 30 --seed 9";
  CliRun a = Cli(args + " --workers 1");
  CliRun b = Cli(args + " --workers 3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  CliRun c = Cli("cert-scan --beta 5 --n 30 --samples 10 --seed 9 --with-dpll");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out.substr(0, c.out.find('\n')), "l,beta,n,samples,p_cert,stderr,p_unsat");
}

TEST(CliTest, LimitTwoCycleGrid) {
  std::string terms = Temp("terms.csv");
  CliRun r = Cli("limit --vocab digraph --formula 'exists x. exists y. (E(x,y) and E(y,x))' "
              "--override-r 1 --beta-grid 0.5:2:0.5 --terms-out " + terms);
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "beta,value");
  int rows = 0;
  while (std::getline(in, line)) {
    double beta = std::stod(line.substr(0, line.find(',')));
    double value = std::stod(line.substr(line.find(',') + 1));
    EXPECT_NEAR(value, 1 - std::exp(-beta * beta / 2), 1e-6);
    ++rows;
  }
  EXPECT_EQ(rows, 4);
  std::string table = Slurp(terms);
  EXPECT_EQ(table.substr(0, table.find('\n')),
            "id,truth,expression,beta=0.5,beta=1,beta=1.5,beta=2");
}

}  // namespace
