// Copyright 2026 The Authors.
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "nnr/cli.hpp"
#include "nnr/matrix_io.hpp"
#include "test_util.hpp"

namespace nnr {
namespace {

namespace fs = std::filesystem;

const fs::path kData = NNR_DATA_DIR;

TEST(MatrixIo, ParsesSmallest) {
  const auto m = ParseMatrix<Rat>("nnr-matrix v1\ndims 1 1\nfield rat\n2\n");
  ASSERT_EQ(m.rows(), 1u);
  EXPECT_EQ(m(0, 0), Rat(2));
}

TEST(MatrixIo, ParsesQuadraticScalars) {
  const auto m = ParseMatrix<QS3>("nnr-matrix v1\ndims 1 2\nfield qs3\n1/2~1/6 -3\n");
  EXPECT_EQ(m(0, 0), QS3(Rat(1, 2), Rat(1, 6)));
  EXPECT_EQ(m(0, 1), QS3(-3));
  EXPECT_EQ(MatrixField(EmitMatrix(m)), "qs3");
}

TEST(MatrixIo, CanonicalEmission) {
  const std::string text = "# comment\nnnr-matrix v1\n\ndims 2 2\nfield rat\n2/4   0\n-6/3 7\n";
  EXPECT_EQ(EmitMatrix(ParseMatrix<Rat>(text)), "nnr-matrix v1\ndims 2 2\nfield rat\n1/2 0\n-2 7\n");
}

TEST(MatrixIo, RoundTripCorpus) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = testing::RandomSignedMatrix(rng, 1 + trial % 5, 1 + trial % 4);
    const std::string text = EmitMatrix(m);
    EXPECT_EQ(ParseMatrix<Rat>(text), m);
    EXPECT_EQ(EmitMatrix(ParseMatrix<Rat>(text)), text);
  }
  for (const auto& entry : fs::recursive_directory_iterator(kData)) {
    if (entry.path().extension() != ".mat") continue;
    const auto m = LoadMatrix<Rat>(entry.path().string());
    EXPECT_EQ(ParseMatrix<Rat>(EmitMatrix(m)), m) << entry.path();
  }
}

TEST(MatrixIo, RationalFileReadsAsQuadratic) {
  const auto m = ParseMatrix<QS3>("nnr-matrix v1\ndims 1 1\nfield rat\n3/7\n");
  EXPECT_EQ(m(0, 0), QS3(Rat(3, 7)));
  EXPECT_THROW(ParseMatrix<Rat>("nnr-matrix v1\ndims 1 1\nfield qs3\n1~1\n"), ParseError);
}

TEST(MatrixIo, ErrorsCarryPosition) {
  try {
    ParseMatrix<Rat>("nnr-matrix v1\ndims 2 2\nfield rat\n1 2\n3 x/4\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
    EXPECT_EQ(e.column(), 3u);
  }
  try {
    ParseMatrix<Rat>("nnr-matrix v1\ndims 2 2\nfield rat\n1 2 3\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(ParseMatrix<Rat>("nnr-matrix v2\ndims 1 1\nfield rat\n1\n"), ParseError);
  EXPECT_THROW(ParseMatrix<Rat>("nnr-matrix v1\ndims 1 1\nfield rat\n1\n2\n"), ParseError);
  EXPECT_THROW(ParseMatrix<Rat>("nnr-matrix v1\ndims 2 1\nfield rat\n1\n"), ParseError);
  EXPECT_THROW(ParseMatrix<Rat>("nnr-matrix v1\ndims 1 1\nfield rat\n1/0\n"), ParseError);
}

struct CliRun {
  int code;
  std::string out, err;
  std::map<std::string, std::string> report;
};

CliRun Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun run;
  run.code = CliDispatch(args, out, err);
  run.out = out.str();
  run.err = err.str();
  std::istringstream lines(run.out);
  std::string line;
  while (std::getline(lines, line)) {
    const auto colon = line.find(": ");
    if (colon != std::string::npos) run.report[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return run;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nnr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  std::string Write(const std::string& name, const Matrix<Rat>& m) const {
    SaveMatrix(Path(name), m);
    return Path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, DecideRankBoundNo) {
  const auto run = Invoke({"decide", "--matrix", (kData / "id3.mat").string(), "--rank", "2"});
  EXPECT_EQ(run.code, kExitNo);
  EXPECT_EQ(run.report.at("verdict"), "NO");
  EXPECT_EQ(run.report.at("provenance"), "exact-small-rank");
  EXPECT_EQ(run.report.at("command"), "decide");
  EXPECT_EQ(run.report.at("exit_code"), "1");
  EXPECT_TRUE(run.report.count("input_max_bits"));
}

TEST_F(CliTest, DecidePlantedYesWritesCertificate) {
  const auto m = LoadMatrix<Rat>((kData / "planted_5x5_r3.mat").string());
  const auto run = Invoke({"decide", "--matrix", (kData / "planted_5x5_r3.mat").string(), "--rank", "3",
                        "--out", Path("cert")});
  ASSERT_EQ(run.code, kExitOk) << run.out << run.err;
  const Factorization<Rat> f{LoadMatrix<Rat>(Path("cert/A.mat")), LoadMatrix<Rat>(Path("cert/W.mat"))};
  EXPECT_TRUE(VerifyFactorization(m, f));
  EXPECT_EQ(f.inner(), 3u);
}

TEST_F(CliTest, DecideIsReproducibleAndReadsSeedFromEnvironment) {
  const std::string matrix = (kData / "planted_5x5_r3.mat").string();
  Invoke({"decide", "--matrix", matrix, "--rank", "4", "--seed", "5", "--out", Path("a")});
  ::setenv("NNR_SEED", "5", 1);
  const auto env = Invoke({"decide", "--matrix", matrix, "--rank", "4", "--out", Path("b")});
  ::unsetenv("NNR_SEED");
  EXPECT_EQ(env.report.at("seed"), "5");
  for (const char* f : {"A.mat", "W.mat"}) {
    EXPECT_EQ(LoadMatrix<Rat>(Path(std::string("a/") + f)), LoadMatrix<Rat>(Path(std::string("b/") + f)));
  }
}

TEST_F(CliTest, StabilizeExample) {
  const fs::path ex = kData / "stabilize_example";
  const auto run = Invoke({"stabilize", "--matrix-a", (ex / "A.mat").string(), "--matrix-w",
                        (ex / "W.mat").string(), "--out-a", Path("A2.mat"), "--out-w", Path("W2.mat")});
  ASSERT_EQ(run.code, kExitOk) << run.err;
  EXPECT_EQ(run.report.at("stable"), "yes");
  EXPECT_EQ(LoadMatrix<Rat>(Path("A2.mat")), Matrix<Rat>(2, 2, {Rat(1), Rat(0), Rat(1), Rat(0)}));
  EXPECT_EQ(LoadMatrix<Rat>(Path("W2.mat")), Matrix<Rat>(2, 2, {Rat(1), Rat(1), Rat(0), Rat(0)}));

  EXPECT_EQ(Invoke({"check-stable", "--matrix-a", Path("A2.mat"), "--matrix-w", Path("W2.mat")}).code, kExitOk);
  EXPECT_EQ(Invoke({"check-stable", "--matrix-a", (ex / "A.mat").string(), "--matrix-w", (ex / "W.mat").string()}).code,
            kExitNo);
}

TEST_F(CliTest, StabilizeRejectsWrongProduct) {
  const fs::path ex = kData / "stabilize_example";
  const auto run = Invoke({"stabilize", "--matrix-a", (ex / "A.mat").string(), "--matrix-w",
                        (ex / "W.mat").string(), "--matrix", (kData / "id3.mat").string()});
  EXPECT_EQ(run.code, kExitNo);
  EXPECT_EQ(run.report.at("outcome"), "invalid");
}

TEST_F(CliTest, RecoverAndPredicate) {
  std::mt19937_64 rng(3);
  const auto f = testing::RandomStableFactorization(rng, 4, 5, 3, false);
  const auto m = Write("M.mat", f.product());
  const auto a = Write("A.mat", f.a);
  const auto w = Write("W.mat", f.w);
  auto run = Invoke({"recover", "--matrix", m, "--matrix-a", a, "--out", Path("W_rec.mat")});
  ASSERT_EQ(run.code, kExitOk) << run.err;
  EXPECT_EQ(LoadMatrix<Rat>(Path("W_rec.mat")), f.w);
  run = Invoke({"recover", "--matrix", m, "--matrix-w", w, "--out", Path("A_rec.mat")});
  ASSERT_EQ(run.code, kExitOk) << run.err;
  EXPECT_EQ(LoadMatrix<Rat>(Path("A_rec.mat")), f.a);
  EXPECT_EQ(Invoke({"recover", "--matrix", m}).code, kExitUsage);

  run = Invoke({"check-predicate", "--matrix", m, "--matrix-a", a, "--matrix-w", w, "--out-a", Path("A_x.mat"),
             "--out-w", Path("W_x.mat")});
  ASSERT_EQ(run.code, kExitOk) << run.err;
  EXPECT_EQ(run.report.at("outcome"), "PASS");
  EXPECT_EQ(LoadMatrix<Rat>(Path("A_x.mat")), f.a);
  EXPECT_EQ(LoadMatrix<Rat>(Path("W_x.mat")), f.w);
}

TEST_F(CliTest, CompileAndExport) {
  std::mt19937_64 rng(5);
  const auto m = Write("M.mat", testing::RandomMatrix(rng, 3, 3));
  auto run = Invoke({"compile", "--matrix", m, "--rank", "3", "--s", "2", "--t", "2", "--rows", "0,1", "--cols",
                  "0,1", "--out", Path("sys.poly")});
  ASSERT_EQ(run.code, kExitOk) << run.err;
  EXPECT_EQ(run.report.at("vars"), "12");
  const auto sys = LoadPolySystem<Rat>(Path("sys.poly"));
  EXPECT_EQ(sys.var_count, 12u);

  run = Invoke({"compile", "--matrix", m, "--rank", "2", "--mode", "take1", "--s", "1", "--t", "1"});
  ASSERT_EQ(run.code, kExitOk) << run.err;
  EXPECT_EQ(run.report.at("polys.detA"), "0");
  EXPECT_EQ(Invoke({"compile", "--matrix", m, "--rank", "2", "--mode", "take3"}).code, kExitUsage);

  const auto low = Write("L.mat", testing::RandomMatrix(rng, 4, 2) * testing::RandomMatrix(rng, 2, 4));
  run = Invoke({"export", "--matrix", low, "--rank", "2", "--out", Path("cells"), "--limit", "3"});
  ASSERT_EQ(run.code, kExitOk) << run.err;
  EXPECT_EQ(run.report.at("written"), "3");
  EXPECT_TRUE(fs::exists(dir_ / "cells" / "cells.txt"));
  EXPECT_EQ(LoadPolySystem<Rat>(Path("cells/cell_2.poly")).mode, CompileMode::kTake2);
}

TEST_F(CliTest, FragileGenAndVerify) {
  auto run = Invoke({"fragile", "gen", "--n", "4", "--params", "0,1/5,1/3,1/2", "--out", Path("f4")});
  ASSERT_EQ(run.code, kExitOk) << run.err;
  EXPECT_EQ(run.report.at("points"), "12");
  run = Invoke({"fragile", "verify", Path("f4"), "--rows", "0,1,2"});
  EXPECT_EQ(run.code, kExitOk) << run.out;
  EXPECT_EQ(run.report.at("certificate"), "triangle 2");
  run = Invoke({"fragile", "verify", Path("f4"), "--rows", "0,3,6,9"});
  EXPECT_EQ(run.code, kExitNo);
  EXPECT_EQ(run.report.at("certificate"), "none");
  run = Invoke({"fragile", "verify", Path("f4"), "--blocks", "2", "--rows", "0,1,2,12,13"});
  EXPECT_EQ(run.code, kExitOk) << run.out;
  EXPECT_EQ(run.report.at("certificate"), "block-diagonal inner 6");
  EXPECT_EQ(Invoke({"fragile", "gen", "--n", "3", "--params", "0,1/5", "--out", Path("bad")}).code, kExitUsage);
  EXPECT_EQ(Invoke({"fragile", "gen", "--params", "0,0", "--out", Path("dup")}).code, kExitNo);
}

TEST_F(CliTest, UsageAndIoErrors) {
  auto run = Invoke({"decide", "--matrix", (kData / "id3.mat").string(), "--rank", "2", "--bogus"});
  EXPECT_EQ(run.code, kExitUsage);
  EXPECT_NE(run.err.find("decide"), std::string::npos);
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"decide", "--matrix", Path("missing.mat"), "--rank", "2"}).code, kExitUsage);
  {
    std::ofstream bad(Path("bad.mat"));
    bad << "nnr-matrix v1\ndims 1 1\nfield rat\nnope\n";
  }
  run = Invoke({"decide", "--matrix", Path("bad.mat"), "--rank", "1"});
  EXPECT_EQ(run.code, kExitUsage);
  EXPECT_NE(run.err.find("line 4"), std::string::npos);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
}

TEST_F(CliTest, QuadraticInputs) {
  const auto run = Invoke({"fragile", "gen", "--n", "2", "--params", "0,0~1/3", "--out", Path("hex")});
  ASSERT_EQ(run.code, kExitOk) << run.err;
  const auto decide = Invoke({"decide", "--matrix", Path("hex/M.mat"), "--rank", "3", "--budget-seconds", "5"});
  EXPECT_EQ(decide.code, kExitUnknown);
  EXPECT_EQ(decide.report.at("field"), "qs3");
}

}  // namespace
}  // namespace nnr
