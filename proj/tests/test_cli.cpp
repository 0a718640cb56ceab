#include "entrolab/cli.hpp"

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "entrolab/bounds.hpp"
#include "entrolab/certify.hpp"
#include "entrolab/format.hpp"
#include "entrolab/moments.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace entrolab;
using namespace entrolab::testing;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string point_sample_text(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) text += "7\n";
  return text;
}

}  // namespace

TEST_CASE("estimate emits the certificate as one-line json") {
  TempFile input("cli_est.tmp", point_sample_text(100));
  CliResult r = run({"estimate", "--input", input.path, "--alpha", "2",
                     "--h", "0", "--delta", "0.05"});
  REQUIRE(r.code == 0);
  nlohmann::json parsed = nlohmann::json::parse(r.out);
  EmpiricalMeasure emp = EmpiricalMeasure::from_samples(
      std::vector<std::int64_t>(100, 7));
  EntropyCertificate direct = certificate(emp, 2.0, 0.0, 0.05);
  CHECK(parsed["radius"].get<double>() == direct.radius);
  CHECK(parsed["estimate"].get<double>() == 0.0);
  CHECK(parsed["n"].get<int>() == 100);
  CHECK(!parsed.contains("candidates"));
}

TEST_CASE("estimate grid search reports its candidates") {
  TempFile input("cli_grid.tmp", point_sample_text(100));
  CliResult r = run({"estimate", "--input", input.path, "--alpha-grid",
                     "1.5,2,3", "--h-table", "0,0,0"});
  REQUIRE(r.code == 0);
  nlohmann::json parsed = nlohmann::json::parse(r.out);
  REQUIRE(parsed.contains("candidates"));
  CHECK(parsed["candidates"].size() == 3);
  double best = parsed["radius"].get<double>();
  for (const auto& cand : parsed["candidates"]) {
    CHECK(best <= cand[1].get<double>());
  }
}

TEST_CASE("estimate rejects contradictory or incomplete selections") {
  TempFile input("cli_bad.tmp", point_sample_text(100));
  CliResult both = run({"estimate", "--input", input.path, "--alpha", "2",
                        "--h", "0", "--alpha-grid", "2", "--h-table", "0"});
  CHECK(both.code == 2);
  CHECK(both.out.find("not") != std::string::npos);

  CliResult half = run({"estimate", "--input", input.path, "--alpha-grid",
                        "1.5,2"});
  CHECK(half.code == 2);
  CHECK(half.out.find("go together") != std::string::npos);

  CliResult neither = run({"estimate", "--input", input.path});
  CHECK(neither.code == 2);
  CHECK(neither.out.find("need --alpha and --h") != std::string::npos);

  CliResult uneven = run({"estimate", "--input", input.path, "--alpha-grid",
                          "1.5,2", "--h-table", "0"});
  CHECK(uneven.code == 2);
  CHECK(uneven.out.find("same length") != std::string::npos);

  CliResult missing = run({"estimate"});
  CHECK(missing.code == 2);
}

TEST_CASE("rates emits one csv row per bound per grid point") {
  CliResult r = run({"rates", "--family", "mixture", "--d", "10", "--D",
                     "1000", "--p", "0.95", "--n-grid", "100:1000:3"});
  REQUIRE(r.code == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 10);  // header + 3 n-points x 3 bounds
  CHECK(lines[0] == "family,bound,n,value,params");

  // log grid endpoints are pinned; the middle point rounds to 316
  CHECK(lines[1].find("mixture,OUR,100,") == 0);
  CHECK(lines[4].find("mixture,OUR,316,") == 0);
  CHECK(lines[7].find("mixture,OUR,1000,") == 0);

  // the OUR value prints exactly as the library computes it
  AnalyticDistribution m = MixtureOfUniforms(10, 1000, 0.95);
  std::string expect = format_g17(our_rate_bound(m, 1010, 100).value);
  CHECK(lines[1].find("," + expect + ",") != std::string::npos);
  // its alpha-range parameter contains a comma, so the field is quoted
  CHECK(lines[1].find("\"d=10;D=1000;p=") != std::string::npos);
  CHECK(lines[1].find("alpha-range=(1,64]\"") != std::string::npos);

  CHECK(lines[2].find("mixture,WY,100,") == 0);
  CHECK(lines[2].find(";C=2") != std::string::npos);
  std::string wy_expect = format_g17(wy_bound(10, 1000, 100, 2.0));
  CHECK(lines[2].find("," + wy_expect + ",") != std::string::npos);
  CHECK(lines[3].find("mixture,CT,100,") == 0);
}

TEST_CASE("rates handles the power-law family") {
  CliResult r = run({"rates", "--family", "zeta", "--q", "2", "--n-grid",
                     "1000:1000:1"});
  REQUIRE(r.code == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);  // header + OUR only
  CHECK(lines[1].find("zeta,OUR,1000,") == 0);
  CHECK(lines[1].find("q=2") != std::string::npos);

  CliResult wy = run({"rates", "--family", "zeta", "--q", "2", "--bounds",
                      "wy", "--n-grid", "1000:1000:1"});
  CHECK(wy.code == 2);
  CHECK(wy.out.find("finite support") != std::string::npos);

  CliResult huge = run({"rates", "--family", "zeta", "--q", "2", "--n-grid",
                        "10000000000000000:10000000000000000:1"});
  CHECK(huge.code == 3);
  nlohmann::json err = nlohmann::json::parse(huge.out);
  CHECK(err["exit_code"].get<int>() == 3);
  CHECK(err["error"].get<std::string>().find("too large") !=
        std::string::npos);
}

TEST_CASE("rates input validation") {
  CliResult fam = run({"rates", "--family", "poisson", "--n-grid", "10:10:1"});
  CHECK(fam.code == 2);
  CHECK(fam.out.find("unknown family") != std::string::npos);

  CliResult grid = run({"rates", "--family", "zeta", "--q", "2", "--n-grid",
                        "100:10:2"});
  CHECK(grid.code == 2);

  CliResult bound = run({"rates", "--family", "mixture", "--d", "1", "--D",
                         "1", "--p", "0.5", "--bounds", "xx", "--n-grid",
                         "10:10:1"});
  CHECK(bound.code == 2);
  CHECK(bound.out.find("unknown bound") != std::string::npos);
}

TEST_CASE("coverage reports a deterministic violation count") {
  std::vector<std::string> args{"coverage", "--family", "unif", "--k", "4",
                                "--n",      "200",      "--alpha",  "2",
                                "--delta",  "0.2",      "--trials", "20",
                                "--seed",   "5"};
  CliResult r = run(args);
  REQUIRE(r.code == 0);
  nlohmann::json parsed = nlohmann::json::parse(r.out);
  CHECK(parsed["trials"].get<int>() == 20);
  CHECK(parsed["delta"].get<double>() == 0.2);
  CHECK(parsed["seed"].get<int>() == 5);
  CHECK(parsed["violation_rate"].get<double>() ==
        parsed["violations"].get<double>() / 20.0);
  CHECK(parsed["radius_mean"].get<double>() > 0.0);
  CHECK(parsed["radius_stddev"].get<double>() >= 0.0);

  CliResult again = run(args);
  CHECK(again.out == r.out);

  CliResult other_seed = run({"coverage", "--family", "unif", "--k", "4",
                              "--n", "200", "--alpha", "2", "--trials", "20",
                              "--seed", "6"});
  REQUIRE(other_seed.code == 0);
  nlohmann::json other = nlohmann::json::parse(other_seed.out);
  CHECK(other["radius_mean"].get<double>() !=
        parsed["radius_mean"].get<double>());

  CliResult none = run({"coverage", "--family", "unif", "--k", "4", "--n",
                        "100", "--alpha", "2", "--trials", "0"});
  CHECK(none.code == 2);
  CHECK(none.out.find("--trials >= 1") != std::string::npos);
}

TEST_CASE("maxent emits the envelope around the exact search") {
  CliResult r = run({"maxent", "--k-list", "2,16", "--alpha-list", "1,2"});
  REQUIRE(r.code == 0);
  std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "K,alpha,lower,exact,upper");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 5);
    double lower = std::stod(fields[2]);
    double exact = std::stod(fields[3]);
    double upper = std::stod(fields[4]);
    CHECK(lower <= exact * (1.0 + 1e-9));
    CHECK(exact <= upper);
  }
  // spot check one cell against the direct call
  CHECK(lines[4].find(format_g17(max_alpha_entropy_exact(16, 2.0).value)) !=
        std::string::npos);
}

TEST_CASE("lowerbound reproduces the adversarial constructions") {
  CliResult noemp = run({"lowerbound", "--kind", "noemp", "--h", "1.25",
                         "--n", "1"});
  REQUIRE(noemp.code == 0);
  nlohmann::json nj = nlohmann::json::parse(noemp.out);
  NoEmpPair pair = no_emp_construction(1.25, 1);
  CHECK(nj["kind"] == "noemp");
  CHECK(nj["s"].get<std::int64_t>() == pair.s);
  CHECK(nj["kl"].get<double>() == pair.kl);
  CHECK(nj["entropy"].get<double>() == pair.entropy_mun);
  CHECK(nj["entropy_in_range"].get<bool>());
  CHECK(nj["risk_floor"].get<double>() == pair.risk_floor);

  CliResult minimax = run({"lowerbound", "--kind", "minimax", "--alpha", "2",
                           "--n", "55"});
  REQUIRE(minimax.code == 0);
  nlohmann::json mj = nlohmann::json::parse(minimax.out);
  MinimaxLower ml = minimax_lower_value(2.0, 55);
  CHECK(mj["h"].get<double>() == ml.h);
  CHECK(mj["bound"].get<double>() == ml.bound);
  CHECK(mj["birthday"].get<double>() == birthday_no_collision(55, 55 * 55));

  CliResult unknown = run({"lowerbound", "--kind", "maximin", "--n", "5"});
  CHECK(unknown.code == 2);
  CHECK(unknown.out.find("noemp or minimax") != std::string::npos);

  CliResult big = run({"lowerbound", "--kind", "minimax", "--alpha", "2",
                       "--n", "200000000"});
  CHECK(big.code == 2);
  CHECK(big.out.find("collision probe") != std::string::npos);

  CliResult incomplete = run({"lowerbound", "--kind", "noemp", "--n", "5"});
  CHECK(incomplete.code == 2);
  CHECK(incomplete.out.find("needs --h and --n") != std::string::npos);
}

TEST_CASE("config files supply defaults that flags override") {
  TempFile input("cli_cfg_samples.tmp", point_sample_text(100));
  TempFile config("cli_cfg.tmp", "alpha = 3\nh = 0.5\ndelta = 0.2\n");
  CliResult r = run({"--config", config.path, "estimate", "--input",
                     input.path, "--alpha", "2", "--h", "0"});
  REQUIRE(r.code == 0);
  nlohmann::json parsed = nlohmann::json::parse(r.out);
  CHECK(parsed["alpha"].get<double>() == 2.0);  // flag wins
  CHECK(parsed["h"].get<double>() == 0.0);      // flag wins
  CHECK(parsed["delta"].get<double>() == 0.2);  // config fills the gap

  TempFile broken("cli_cfg_bad.tmp", "alpha\n");
  CliResult bad = run({"--config", broken.path, "estimate", "--input",
                       input.path, "--alpha", "2", "--h", "0"});
  CHECK(bad.code == 2);
  CHECK(bad.out.find("expected key=value") != std::string::npos);

  CliResult dangling = run({"estimate", "--input", input.path, "--alpha", "2",
                            "--h", "0", "--config"});
  CHECK(dangling.code == 2);
  CHECK(dangling.out.find("--config needs a path") != std::string::npos);
}

TEST_CASE("--output writes the report to a file and keeps stdout quiet") {
  TempFile input("cli_out_samples.tmp", point_sample_text(100));
  std::string report_path = "cli_out_report.tmp";
  CliResult r = run({"estimate", "--input", input.path, "--alpha", "2", "--h",
                     "0", "--output", report_path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(report_path);
  REQUIRE(f.good());
  std::string line;
  std::getline(f, line);
  nlohmann::json parsed = nlohmann::json::parse(line);
  CHECK(parsed["n"].get<int>() == 100);
  f.close();
  std::remove(report_path.c_str());
}

TEST_CASE("help exits cleanly") {
  CliResult top = run({"--help"});
  CHECK(top.code == 0);
  CHECK(top.out.find("Usage") != std::string::npos);
  CHECK(top.out.find("estimate") != std::string::npos);

  CliResult sub = run({"estimate", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--alpha-grid") != std::string::npos);

  CliResult nothing = run({});
  CHECK(nothing.code == 2);
}

TEST_CASE("failures come back as json with the exit code") {
  CliResult r = run({"estimate", "--input", "missing_file.tmp", "--alpha",
                     "2", "--h", "0"});
  CHECK(r.code == 2);
  nlohmann::json parsed = nlohmann::json::parse(r.out);
  CHECK(parsed["exit_code"].get<int>() == 2);
  CHECK(parsed["error"].get<std::string>().find("cannot open") !=
        std::string::npos);
}
