#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "gibbsmimo/errors.hpp"
#include "gibbsmimo/harness.hpp"

namespace gibbsmimo::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gibbsmimo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(Grid, Forms) {
  EXPECT_EQ(parse_db_grid("10"), (std::vector<double>{10.0}));
  EXPECT_EQ(parse_db_grid("6:2:14"), (std::vector<double>{6, 8, 10, 12, 14}));
  EXPECT_EQ(parse_db_grid("4, 8,12"), (std::vector<double>{4, 8, 12}));
  EXPECT_EQ(parse_db_grid("0:0.1:0.3").size(), 4u);
  EXPECT_EQ(parse_db_grid("14:-4:2"), (std::vector<double>{14, 10, 6, 2}));
  EXPECT_THROW(parse_db_grid(""), InvalidArgument);
  EXPECT_THROW(parse_db_grid("1:0:4"), InvalidArgument);
  EXPECT_THROW(parse_db_grid("4:1:2"), InvalidArgument);
  EXPECT_THROW(parse_db_grid("a:b"), InvalidArgument);
  EXPECT_THROW(parse_db_grid("3,x"), InvalidArgument);
}

TEST(Config, FlatKeyValue) {
  std::istringstream in("# experiment\nn = 10\n\nsnr_db=6:2:14  # grid\nfallback_alpha=1.5\n");
  const auto cfg = parse_config(in);
  ASSERT_EQ(cfg.size(), 3u);
  EXPECT_EQ(cfg.at("n"), "10");
  EXPECT_EQ(cfg.at("snr_db"), "6:2:14");
  EXPECT_EQ(cfg.at("fallback_alpha"), "1.5");
  std::istringstream bad("n 10\n");
  EXPECT_THROW(parse_config(bad), InvalidArgument);
  std::istringstream dashed("snr-db=4\n");
  EXPECT_THROW(parse_config(dashed), InvalidArgument);
}

TEST(Sha256, KnownDigests) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(AlphaCommand, GoldenTable) {
  const auto r = invoke({"alpha", "--n", "10", "--snr-db", "0,10"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "snr_db,snr_linear,l_value,c_value,beta,alpha_minus,alpha_plus,feasible\n"
            "0,1,2.302585092994046,0.8685889638065035,4.605170185988092,,,false\n"
            "10,10,2.302585092994046,8.685889638065035,4.605170185988092,1.0738125247814359,"
            "2.7445976571598893,true\n");
}

TEST(AlphaCommand, InvalidZeta) {
  EXPECT_EQ(invoke({"alpha", "--n", "10", "--zeta", "5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"alpha", "--n", "10", "--zeta", "-1"}).code, kExitUsage);
}

TEST(BoundCommand, GoldenAndMonotone) {
  const auto one = invoke({"bound", "--n", "1", "--snr-db", "4.771212547196624"});
  ASSERT_EQ(one.code, kExitOk);
  EXPECT_EQ(one.out, "snr_db,log10_pe_bound,vacuous_flag,snr_threshold_db\n"
                     "4.771212547196624,-0.30102999566398114,false,\n");

  const auto r = invoke({"bound", "--n", "8", "--snr-db", "0:1:20"});
  ASSERT_EQ(r.code, kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kBoundHeader);
  double previous = 1e300;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string db, bound;
    std::getline(ss, db, ',');
    std::getline(ss, bound, ',');
    EXPECT_LT(std::stod(bound), previous);
    previous = std::stod(bound);
    EXPECT_NE(line.find(",6.18976711428782"), std::string::npos);
  }
}

TEST(VerifyCommand, ExitCodes) {
  const auto pass = invoke({"verify", "gaussian-integral", "--a", "1", "--eta", "-0.25", "--n", "2",
                            "--samples", "1e5", "--seed", "3"});
  EXPECT_EQ(pass.code, kExitOk) << pass.out;
  EXPECT_NE(pass.out.find("closed_form: 0.8\n"), std::string::npos);
  EXPECT_NE(pass.out.find("z_score: "), std::string::npos);
  EXPECT_NE(pass.out.find("result: pass"), std::string::npos);

  EXPECT_EQ(invoke({"verify", "gaussian-integral", "--a", "1", "--eta", "1"}).code, kExitGuard);
  EXPECT_EQ(invoke({"verify", "inv-pi", "--n", "13"}).code, kExitGuard);
  EXPECT_EQ(invoke({"verify", "inv-pi", "--n", "6", "--trials", "2000"}).code, kExitOk);
  // The continuum approximation is far off at beta = 2 ln n.
  EXPECT_EQ(invoke({"verify", "saddle"}).code, kExitStatistical);
  EXPECT_EQ(invoke({"verify", "saddle", "--beta", "30"}).code, kExitStatistical);
  EXPECT_EQ(invoke({"verify", "saddle", "--n", "1000", "--beta", "40", "--tolerance", "0.5"}).code, kExitOk);
}

TEST(VerifyCommand, HeavyTailWarning) {
  const auto r = invoke({"verify", "gaussian-integral", "--a", "1", "--eta", "0.2", "--n", "2",
                         "--samples", "1000", "--seed", "1"});
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_NE(r.out.find("second_moment_finite: false"), std::string::npos);
}

TEST(UsageErrors, MapToTwo) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"nonsense"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--n", "abc"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--mode", "fast"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--detectors", "zf,qr"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--trials", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--alpha-policy", "fixed"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(SimulateCommand, GuardViolations) {
  EXPECT_EQ(invoke({"simulate", "--n", "30", "--detectors", "ml", "--trials", "1"}).code, kExitGuard);
  const auto r = invoke({"simulate", "--n", "10", "--snr-db", "0", "--trials", "2", "--iters", "2"});
  EXPECT_EQ(r.code, kExitGuard);
  EXPECT_NE(r.err.find("fallback"), std::string::npos);
  EXPECT_EQ(invoke({"simulate", "--n", "10", "--snr-db", "0", "--trials", "2", "--iters", "2",
                    "--fallback-alpha", "1.4"})
                .code,
            kExitOk);
}

TEST(SimulateCommand, CsvShape) {
  const auto r = invoke({"simulate", "--n", "4", "--snr-db", "8", "--trials", "20", "--iters", "3",
                         "--detectors", "gibbs,lmmse", "--alpha-policy", "fixed", "--alpha", "1.5",
                         "--workers", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], kSimulateHeader);
  EXPECT_EQ(lines[1].rfind("gibbs,8,1,", 0), 0u);
  EXPECT_EQ(lines[3].rfind("gibbs,8,3,", 0), 0u);
  EXPECT_EQ(lines[4].rfind("lmmse,8,terminal,", 0), 0u);
  EXPECT_NE(lines[4].find(",80,"), std::string::npos);  // bits = 4 * 20
}

TEST(SimulateCommand, ComplexityMode) {
  const auto r = invoke({"simulate", "--mode", "complexity", "--n", "10", "--snr-db", "10", "--trials", "5",
                         "--iters", "100", "--detectors", "gibbs", "--alpha-policy", "fixed", "--alpha", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, std::string(kComplexityHeader) + "\ngibbs,10,20110\n");
}

TEST_F(CliFiles, RerunsAreByteIdenticalAcrossWorkers) {
  const std::vector<std::string> base{"simulate", "--n", "6", "--snr-db", "6:3:12", "--trials", "150",
                                      "--iters", "8", "--detectors", "gibbs,zf,lmmse,ml,sphere",
                                      "--fallback-alpha", "1.4", "--seed", "42"};
  std::vector<std::string> paths;
  for (const char* workers : {"1", "3", "1"}) {
    auto args = base;
    const std::string out = (dir_ / ("run_" + std::to_string(paths.size()) + ".csv")).string();
    args.insert(args.end(), {"--workers", workers, "--out", out});
    ASSERT_EQ(invoke(args).code, kExitOk);
    paths.push_back(out);
  }
  const std::string first = slurp(paths[0]);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, slurp(paths[1]));
  EXPECT_EQ(first, slurp(paths[2]));

  const std::string manifest = slurp(paths[0] + ".manifest.json");
  EXPECT_NE(manifest.find("\"tool_version\""), std::string::npos);
  EXPECT_NE(manifest.find("\"wall_time_seconds\""), std::string::npos);
  EXPECT_NE(manifest.find("\"trials\": 150"), std::string::npos);
  EXPECT_NE(manifest.find(sha256_hex(first)), std::string::npos);
  EXPECT_LT(manifest.find("\"tool_version\""), manifest.find("\"parameters\""));
}

TEST_F(CliFiles, ConfigFileAndFlagOverride) {
  const fs::path cfg = dir_ / "run.cfg";
  std::ofstream(cfg) << "# small run\nn=5\nsnr_db=10\ntrials=30\niters=2\ndetectors=zf\nnoiseless=true\n";
  const auto from_file = invoke({"simulate", "--config", cfg.string(), "--workers", "1"});
  ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
  const std::string expected_prefix = std::string(kSimulateHeader) + "\nzf,10,terminal,0,0,";
  ASSERT_EQ(from_file.out.rfind(expected_prefix, 0), 0u) << from_file.out;
  const std::string tail = from_file.out.substr(expected_prefix.size());
  // Upper Wilson limit for zero errors is z^2 / (n + z^2).
  const double z2 = 1.959963984540054 * 1.959963984540054;
  EXPECT_NEAR(std::stod(tail), z2 / (150 + z2), 1e-15);
  EXPECT_NE(tail.find(",0,150,"), std::string::npos);

  const auto overridden = invoke({"simulate", "--config", cfg.string(), "--trials", "10"});
  ASSERT_EQ(overridden.code, kExitOk) << overridden.err;
  EXPECT_NE(overridden.out.find(",0,50,"), std::string::npos);

  std::ofstream(dir_ / "bad.cfg") << "no_such_flag=3\n";
  EXPECT_EQ(invoke({"simulate", "--config", (dir_ / "bad.cfg").string()}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--config", (dir_ / "missing.cfg").string()}).code, kExitUsage);
}

TEST_F(CliFiles, AlphaAndBoundManifests) {
  const auto out = (dir_ / "alpha.csv").string();
  ASSERT_EQ(invoke({"alpha", "--n", "50", "--snr-db", "12", "--out", out}).code, kExitOk);
  const std::string csv = slurp(out);
  EXPECT_NE(csv.find("2.633279800382838"), std::string::npos);
  EXPECT_NE(slurp(out + ".manifest.json").find(sha256_hex(csv)), std::string::npos);
}

TEST_F(CliFiles, PlotScripts) {
  const auto iter_csv = (dir_ / "iter.csv").string();
  ASSERT_EQ(invoke({"simulate", "--n", "4", "--snr-db", "8", "--trials", "20", "--iters", "4", "--detectors",
                    "gibbs,zf", "--alpha-policy", "fixed", "--alpha", "1.5", "--out", iter_csv})
                .code,
            kExitOk);
  const auto script_path = (dir_ / "iter.py").string();
  ASSERT_EQ(invoke({"plot", "--csv", iter_csv, "--out", script_path}).code, kExitOk);
  const std::string script = slurp(script_path);
  EXPECT_NE(script.find("import matplotlib"), std::string::npos);
  EXPECT_NE(script.find("ax.set_yscale(\"log\")"), std::string::npos);
  EXPECT_NE(script.find("ax.set_xlabel(\"iteration\")"), std::string::npos);
  EXPECT_NE(script.find("ax.plot([1, 2, 3, 4], "), std::string::npos);
  EXPECT_NE(script.find("ax.axhline("), std::string::npos);
  EXPECT_NE(script.find("iter.png"), std::string::npos);

  const auto snr_csv = (dir_ / "snr.csv").string();
  ASSERT_EQ(invoke({"simulate", "--mode", "ber-vs-snr", "--n", "4", "--snr-db", "4:4:12", "--trials", "20",
                    "--iters", "4", "--detectors", "gibbs,zf,lmmse", "--fallback-alpha", "1.4", "--out", snr_csv})
                .code,
            kExitOk);
  const auto r = invoke({"plot", "--csv", snr_csv});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("ax.set_xlabel(\"SNR [dB]\")"), std::string::npos);
  std::size_t curves = 0;
  for (auto pos = r.out.find("ax.plot(["); pos != std::string::npos; pos = r.out.find("ax.plot([", pos + 1))
    ++curves;
  EXPECT_EQ(curves, 3u);
  EXPECT_NE(r.out.find("label=\"lmmse\""), std::string::npos);
}

TEST_F(CliFiles, PlotRejectsEmptyAndMalformed) {
  const auto empty = (dir_ / "empty.csv").string();
  std::ofstream(empty) << kSimulateHeader << "\n";
  EXPECT_EQ(invoke({"plot", "--csv", empty}).code, kExitUsage);
  EXPECT_THROW(plot_script("", "x.png"), InvalidArgument);
  EXPECT_THROW(plot_script("a,b\n1,2\n", "x.png"), InvalidArgument);
  EXPECT_THROW(plot_script(std::string(kSimulateHeader) + "\ngibbs,10,1,zero,0,0,0,1,1\n", "x.png"),
               InvalidArgument);
  EXPECT_EQ(invoke({"plot", "--csv", (dir_ / "absent.csv").string()}).code, kExitUsage);
}

#ifdef GIBBSMIMO_TOOL_PATH
TEST(Executable, ExitStatusReachesShell) {
  const std::string tool = GIBBSMIMO_TOOL_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((tool + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("alpha --n 10 --snr-db 10"), 0);
  EXPECT_EQ(status("simulate --unknown"), 2);
  EXPECT_EQ(status("verify gaussian-integral --a 1 --eta 1"), 3);
  EXPECT_EQ(status("verify saddle"), 4);
}
#endif

}  // namespace
}  // namespace gibbsmimo::cli
