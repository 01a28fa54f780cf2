#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phi4/cli.hpp"

using namespace phi4;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "phi4");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve exit codes") {
  const auto ok = cli({"solve", "--lambda", "0.01", "--n", "41"});
  CHECK(ok.code == kExitOk);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["converged"] == true);
  CHECK(j["schema"] == 1);

  const auto neg = cli({"solve", "--lambda", "-1"});
  CHECK(neg.code == kExitUsage);
  CHECK(neg.err.find("lambda must be positive") != std::string::npos);

  const auto once = cli({"solve", "--lambda", "0.01", "--max-iter", "1"});
  CHECK(once.code == kExitFailed);
  CHECK(nlohmann::json::parse(once.out)["converged"] == false);

  CHECK(cli({"solve", "--lambda", "0.01", "--n", "40"}).code == kExitUsage);
  CHECK(cli({"solve", "--lambda", "0.01", "--closure", "nope"}).code == kExitUsage);
  CHECK(cli({"solve", "--lambda", "0.01", "--format", "xml"}).code == kExitUsage);
  CHECK(cli({"solve"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"solve", "--lambda", "0.08"}).code == kExitFailed);
}

TEST_CASE("solve formats") {
  const auto csv = cli({"solve", "--lambda", "0.01", "--n", "21", "--format", "csv"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out.rfind("n,sign,logmag,value,delta\n", 0) == 0);
  const auto table = cli({"--format", "table", "solve", "--lambda", "0.01", "--n", "21"});
  CHECK(table.code == kExitOk);
  CHECK(table.out.find("converged true") != std::string::npos);
  const auto warn = cli({"solve", "--lambda", "0.06", "--format", "table"});
  CHECK(warn.err.find("outside") != std::string::npos);
}

TEST_CASE("sweep output is deterministic") {
  const std::vector<std::string> args{"sweep", "--lambdas", "0.005,0.01,0.02,0.03"};
  const auto a = cli(args);
  const auto b = cli(args);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  std::istringstream in(a.out);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "lambda,iterations,final_distance,H2,H4,delta3,delta5,delta7,residual_max,status");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 4);

  const auto single = cli({"sweep", "--lambdas", "0.01"});
  CHECK(single.out.find("converged") != std::string::npos);
  const auto warned = cli({"sweep", "--lambdas", "0.01,0.06"});
  CHECK(warned.code == kExitOk);
  CHECK(warned.out.find(",warned\n") != std::string::npos);
  const auto failed = cli({"sweep", "--lambdas", "0.01,0.2"});
  CHECK(failed.code == kExitFailed);
  CHECK(failed.out.find(",error\n") != std::string::npos);
}

TEST_CASE("output files are written atomically") {
  const auto dir = std::filesystem::temp_directory_path() / "phi4_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "sweep.csv";
  const auto r = cli({"sweep", "--lambdas", "0.01", "--output", path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  CHECK(header.rfind("lambda,", 0) == 0);
  CHECK_FALSE(std::filesystem::exists(dir / "sweep.csv.tmp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify gating and constants") {
  const auto high = cli({"verify", "--lambda", "0.2", "--trials", "4"});
  CHECK(high.out.find("SKIPPED") != std::string::npos);
  CHECK(high.out.find("fixed_point") != std::string::npos);
  const auto k = cli({"verify", "--lambda", "0.045", "--emit-constants", "--trials",
                      "4", "--format", "json"});
  const auto j = nlohmann::json::parse(k.out);
  CHECK(j.contains("constants"));
  CHECK(j["constants"]["k_sup"].get<double>() == doctest::Approx(0.096).epsilon(5e-3));
}

TEST_CASE("other commands") {
  const auto env = cli({"envelopes", "--lambda", "0.05", "--n", "11"});
  CHECK(env.code == kExitOk);
  CHECK(nlohmann::json::parse(env.out)["levels"].size() == 6);
  const auto c = cli({"constants", "--lambda", "0.045"});
  CHECK(c.code == kExitOk);
  CHECK(nlohmann::json::parse(c.out)["k1"].get<double>() ==
        doctest::Approx(0.0249).epsilon(5e-3));
  const auto e = cli({"export", "--n-lo", "7", "--n-hi", "11"});
  CHECK(e.code == kExitOk);
  CHECK(e.out.rfind("n,f_L,f_B\n7,", 0) == 0);
  CHECK(cli({"export", "--n-lo", "5"}).code == kExitUsage);
}

TEST_CASE("seed from the environment") {
  const std::vector<std::string> args{"verify", "--lambda", "0.01", "--trials", "3",
                                      "--format", "json"};
  ::setenv("PHI4_SEED", "11", 1);
  const auto a = cli(args);
  ::setenv("PHI4_SEED", "12", 1);
  const auto b = cli(args);
  ::unsetenv("PHI4_SEED");
  const auto ja = nlohmann::json::parse(a.out);
  const auto jb = nlohmann::json::parse(b.out);
  CHECK(ja["seed"] == 11);
  CHECK(jb["seed"] == 12);
}
