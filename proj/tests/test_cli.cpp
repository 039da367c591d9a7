#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = POTRED_CLI_PATH;

int run(const std::string& args) {
  std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("potred_cli_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// drops the trailing wall_ms field of every row
std::string strip_last_column(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.rfind(',');
    out << (pos == std::string::npos ? line : line.substr(0, pos)) << '\n';
  }
  return out.str();
}

fs::path write_infeasible_lp(const fs::path& dir) {
  fs::path p = dir / "infeasible.txt";
  std::ofstream out(p);
  out << "1 2 2\n0 0 1\n0 1 1\n-1\n1 1\n";
  return p;
}

}  // namespace

TEST_CASE("solve on a generated instance exits 0 and writes the log") {
  fs::path out = temp_dir("solve_ok");
  CHECK(run("solve --generate 3,10,1 --out " + out.string()) == 0);
  std::string log = slurp(out / "iterlog.csv");
  CHECK(log.rfind("k,gap,phi,delta_achieved,alpha,theta,norm_xi,", 0) == 0);
  CHECK(log.find('\n') != std::string::npos);
}

TEST_CASE("infeasible program yields the certificate exit code") {
  fs::path out = temp_dir("certificate");
  fs::path lp = write_infeasible_lp(out);
  CHECK(run("solve --mode infeasible --rho 10 --input " + lp.string() +
            " --out " + out.string()) == 2);
}

TEST_CASE("iteration cap yields the iteration-limit exit code") {
  fs::path out = temp_dir("itlimit");
  CHECK(run("solve --generate 3,10,2 --max-outer 3 --out " + out.string()) ==
        3);
}

TEST_CASE("input errors exit 4") {
  fs::path out = temp_dir("inputerr");
  CHECK(run("solve") == 4);                       // neither input nor generate
  CHECK(run("solve --input /nonexistent.mps") == 4);
  CHECK(run("solve --generate 3,10,1 --kappa 1.0") == 4);
  CHECK(run("solve --generate 3,10,1 --mode bogus") == 4);
  CHECK(run("solve --generate 3,10") == 4);       // malformed generate argument
  CHECK(run("solve --generate 3,10,1 --condition bogus") == 4);
  // feasible mode on a file with no interior point
  fs::path lp = write_infeasible_lp(out);
  CHECK(run("solve --input " + lp.string()) == 4);
}

TEST_CASE("experiment with no seeds writes a header-only summary") {
  fs::path out = temp_dir("exp_empty");
  CHECK(run("experiment --out " + out.string()) == 0);
  std::string csv = slurp(out / "summary.csv");
  CHECK(csv ==
        "instance,mode,condition,kappa,nu,status,outer_iters,total_cg_iters,"
        "final_gap,wall_ms\n");
}

TEST_CASE("experiment sweeps the grid") {
  fs::path out = temp_dir("exp_grid");
  CHECK(run("experiment --seeds 1,2 --kappa-grid 0.3,0.6 --m 3 --n 10 --out " +
            out.string()) == 0);
  std::string csv = slurp(out / "summary.csv");
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 1 + 2 * 2);  // header + seeds x kappas
  CHECK(csv.find("optimal") != std::string::npos);
}

TEST_CASE("validate passes and the fault injection trips it") {
  CHECK(run("validate --seeds 3 --samples 50") == 0);
  CHECK(run("validate --seeds 3 --samples 50 --break-lift") == 1);
  CHECK(run("validate --suite bogus") == 4);
  CHECK(run("validate --seeds 2 --samples 20 --suite scaling-bound") == 0);
}

TEST_CASE("repeated runs are byte-identical apart from timing") {
  fs::path a = temp_dir("det_a"), b = temp_dir("det_b");
  REQUIRE(run("solve --generate 3,12,9 --out " + a.string()) == 0);
  REQUIRE(run("solve --generate 3,12,9 --out " + b.string()) == 0);
  CHECK(slurp(a / "iterlog.csv") == slurp(b / "iterlog.csv"));

  fs::path c = temp_dir("det_c"), d = temp_dir("det_d");
  std::string args = "experiment --seeds 4,5 --kappa-grid 0.5 --m 3 --n 10";
  REQUIRE(run(args + " --out " + c.string()) == 0);
  REQUIRE(run(args + " --out " + d.string()) == 0);
  CHECK(strip_last_column(slurp(c / "summary.csv")) ==
        strip_last_column(slurp(d / "summary.csv")));
}
