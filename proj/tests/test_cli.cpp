#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ballbody/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace ballbody;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string fixture(const std::string& name) { return std::string(BALLBODY_FIXTURES) + "/" + name; }

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ballbody");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ballbody_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Runs the real executable so exit statuses go through the process boundary.
int run_binary(const std::string& args, std::string* out = nullptr) {
  const auto path = scratch("stdout.txt");
  const std::string cmd = std::string(BALLBODY_CLI_BINARY) + " " + args + " > " + path.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (out) *out = slurp(path);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("verify the half ball") {
  const Result r = invoke({"verify", "--suite", "all", "--body", fixture("ball_half.json"), "--resolution", "4096"});
  CHECK(r.code == kExitPass);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 10);
  for (const auto& rec : j) {
    CHECK(rec["pass"].get<bool>());
    CHECK(rec.contains("kind"));
    CHECK(rec.contains("body"));
    CHECK(rec.contains("slack"));
  }
  CHECK(j[1]["kind"] == "SANTALO_PRODUCT");
  CHECK(j[1]["near_equality"].get<bool>());
}

TEST_CASE("verify as CSV and selected kinds") {
  const Result r = invoke({"verify", "--suite", "HOLDER_LINK,ALEXANDROV", "--body", fixture("trig.json"), "--format",
                           "csv"});
  CHECK(r.code == kExitPass);
  std::istringstream lines(r.out);
  std::string header, a, b, extra;
  std::getline(lines, header);
  std::getline(lines, a);
  std::getline(lines, b);
  CHECK(header == "kind,body,lhs,rhs,slack,tol,pass,near_equality");
  CHECK(a.rfind("HOLDER_LINK,", 0) == 0);
  CHECK(b.rfind("ALEXANDROV,", 0) == 0);
  CHECK_FALSE(std::getline(lines, extra));
}

TEST_CASE("empty suite gives an empty array") {
  const Result r = invoke({"verify", "--suite", "", "--body", fixture("ball_half.json")});
  CHECK(r.code == kExitPass);
  CHECK(r.out == "[]\n");
}

TEST_CASE("negative tolerance makes every record fail") {
  const Result r = invoke({"verify", "--body", fixture("ball_half.json"), "--tolerance", "-1"});
  CHECK(r.code == kExitViolated);
  for (const auto& rec : nlohmann::json::parse(r.out)) CHECK_FALSE(rec["pass"].get<bool>());
}

TEST_CASE("functionals report") {
  const Result r = invoke({"functionals", "--body", fixture("ball_half.json")});
  CHECK(r.code == kExitPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["omega_c"].get<double>() == doctest::Approx(3.141592653589793).epsilon(1e-12));
  CHECK(r.out.find("\"omega_c\": 3.14159265358979") != std::string::npos);
  // Lens: structurally zero.
  const Result lens = invoke({"functionals", "--body", fixture("lens.json")});
  CHECK(lens.code == kExitPass);
  CHECK(std::abs(nlohmann::json::parse(lens.out)["omega_c"].get<double>()) < 1e-6);
  // Four dimensions needs a seed.
  CHECK(invoke({"functionals", "--body", fixture("ball4d.json")}).code == kExitUsage);
  const Result four = invoke({"functionals", "--body", fixture("ball4d.json"), "--seed", "3", "--resolution", "20000"});
  CHECK(four.code == kExitPass);
}

TEST_CASE("dual-check on the trig body") {
  const Result r = invoke({"dual-check", "--body", fixture("trig.json"), "--resolution", "1024"});
  CHECK(r.code == kExitPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["max_residual"].get<double>() < 1e-9);
  CHECK(j["nodes"].get<int>() == 1024);
  const Result csv = invoke({"dual-check", "--body", fixture("trig.json"), "--resolution", "64", "--format", "csv"});
  CHECK(csv.code == kExitPass);
  CHECK(csv.out.rfind("node,u1,u2,residual,smooth\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 65);
  CHECK(invoke({"dual-check", "--body", fixture("unit_ball.json")}).code == kExitUsage);
}

TEST_CASE("floating sweep of the half ball") {
  const Result r = invoke({"floating", "--body", fixture("ball_half.json"), "--deltas", "1e-2,3e-3,1e-3,3e-4,1e-4",
                           "--directions", "256"});
  CHECK(r.code == kExitPass);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "delta,deficit,ratio,directions,fit_estimate,target,rel_error");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
    REQUIRE(cells.size() == 7);
    CHECK(cells[4] == doctest::Approx(2.058).epsilon(0.05));
    CHECK(cells[6] < 0.05);
  }
  CHECK(rows == 5);

  const Result lens = invoke({"floating", "--body", fixture("lens.json"), "--format", "json", "--deltas",
                              "1e-2,3e-3,1e-3,1e-4"});
  CHECK(lens.code == kExitPass);
  CHECK(nlohmann::json::parse(lens.out)["verdict"] == "none");
  CHECK(invoke({"floating", "--body", fixture("ball_half.json"), "--deltas", "1e-2,1e-3"}).code == kExitUsage);
}

TEST_CASE("search and scan") {
  const Result ball = invoke({"search", "--family", "ball", "--dim", "3"});
  CHECK(ball.code == kExitPass);
  CHECK(nlohmann::json::parse(ball.out)["params"][0].get<double>() == doctest::Approx(0.75).epsilon(1e-6));
  const Result trig = invoke({"search", "--family", "trig2d", "--resolution", "512"});
  CHECK(trig.code == kExitPass);
  CHECK(invoke({"search", "--family", "cube"}).code == kExitUsage);

  for (int n = 2; n <= 6; ++n) {
    const Result s = invoke({"scan", "--dim", std::to_string(n), "--window", "0.4,0.6", "--steps", "401"});
    CHECK(s.code == kExitPass);
    const auto j = nlohmann::json::parse(s.out);
    CHECK(j["consistent"].get<bool>());
    CHECK((j["gain"].get<double>() > 0) == (n >= 4));
  }
}

TEST_CASE("exit codes for bad input") {
  const Result bad = invoke({"functionals", "--body", fixture("ball_bad.json")});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("principal radii") != std::string::npos);
  CHECK(bad.err.find("direction") != std::string::npos);

  const Result trig_bad = invoke({"verify", "--body", fixture("trig_bad.json")});
  CHECK(trig_bad.code == kExitUsage);

  const Result malformed = invoke({"functionals", "--body", fixture("malformed.json")});
  CHECK(malformed.code == kExitUsage);
  CHECK(malformed.err.find("line 4") != std::string::npos);
  CHECK(malformed.err.find("column") != std::string::npos);

  CHECK(invoke({"functionals", "--body", fixture("missing.json")}).code == kExitUsage);
  CHECK(invoke({"functionals", "--body", fixture("ball_half.json"), "--output", "/nonexistent/dir/x.json"}).code ==
        kExitUsage);
  CHECK(invoke({"functionals", "--body", fixture("ball_half.json"), "--bogus"}).code == kExitUsage);
  CHECK(invoke({"verify", "--body", fixture("ball_half.json"), "--resolution", "32"}).code == kExitUsage);
  CHECK(invoke({"verify", "--body", fixture("ball_half.json"), "--suite", "NOPE"}).code == kExitUsage);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitPass);
}

TEST_CASE("reports are deterministic and files are written") {
  const auto a = scratch("a.json");
  const auto b = scratch("b.json");
  const auto gp = scratch("a.dat");
  for (const auto& p : {a, b}) {
    const Result r = invoke({"verify", "--body", fixture("minkowski3d.json"), "--resolution", "64", "--output",
                             p.string(), "--emit-gnuplot", gp.string()});
    CHECK(r.code == kExitPass);
    CHECK(r.out.empty());
  }
  CHECK(slurp(a) == slurp(b));
  CHECK(nlohmann::json::parse(slurp(a)).size() == 10);
  const std::string data = slurp(gp);
  CHECK(data.rfind("# index slack tol\n", 0) == 0);
  CHECK(std::count(data.begin(), data.end(), '\n') == 11);

  const Result m1 = invoke({"functionals", "--body", fixture("ball4d.json"), "--seed", "9", "--resolution", "5000"});
  const Result m2 = invoke({"functionals", "--body", fixture("ball4d.json"), "--seed", "9", "--resolution", "5000"});
  CHECK(m1.out == m2.out);
}

TEST_CASE("exit statuses through the executable") {
  std::string out;
  CHECK(run_binary("verify --body " + fixture("ball_half.json") + " --resolution 256", &out) == 0);
  CHECK(run_binary("functionals --body " + fixture("ball_bad.json"), &out) == 2);
  CHECK(out.find("error:") != std::string::npos);
  CHECK(run_binary("verify --body " + fixture("ball_half.json") + " --tolerance -1", &out) == 1);
  CHECK(run_binary("functionals --body " + fixture("malformed.json"), &out) == 2);
}
