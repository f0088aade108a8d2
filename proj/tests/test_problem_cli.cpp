#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dhred/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace dhred;

namespace {

const char* kRadialProblem =
    "# time-radial reduction\n"
    "n: 3\n"
    "y: x0\n"
    "z: sqrt(x1^2 + x2^2 + x3^2)\n"
    "rhat: 1\n"
    "qhat: 0\n"
    "shat: -1\n"
    "Rhat: 0\n"
    "Shat: -2/z\n";

const char* kLightConeCompat =
    "case: hyperbolic\n"
    "h: 2\n"
    "Phi: (w - v)^2\n"
    "Psi: (w - v)^2\n"
    "V: 4/(w - v)\n"
    "W: -4/(w - v)\n";

const char* kLightConeLemmas =
    "v: x0 - sqrt(x1^2 + x2^2 + x3^2)\n"
    "w: x0 + sqrt(x1^2 + x2^2 + x3^2)\n"
    "h: 2\n"
    "Phi: (w - v)^2\n";

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/dhred_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

struct CliRun {
  int exit_code;
  std::string output;
};

CliRun run_cli(const std::string& args) {
  const char* cli = std::getenv("DHRED_CLI");
  REQUIRE(cli != nullptr);
  std::string cmd = std::string(cli) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[512];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("problem file parsing") {
  ProblemFile pf = ProblemFile::parse_text(kRadialProblem, "radial");
  CHECK(pf.require("y") == "x0");
  CHECK(pf.require("Shat") == "-2/z");
  CHECK_FALSE(pf.has("phi"));
  CHECK_THROWS_WITH_AS(static_cast<void>(pf.require("phi")), "missing required key: phi",
                       ProblemError);

  CHECK_THROWS_AS(ProblemFile::parse_text("y x0\n", "bad"), ProblemError);
  try {
    ProblemFile::parse_text("y: x0\nbogus: 1\n", "bad");
  } catch (const ProblemError& ex) {
    CHECK(ex.line() == 2);
    CHECK(std::string(ex.what()).find("unknown key") != std::string::npos);
  }
  CHECK_THROWS_AS(ProblemFile::parse_text("y: x0\ny: x1\n", "dup"), ProblemError);
  CHECK_THROWS_AS(ProblemFile::parse_text("y:\n", "empty"), ProblemError);
  // comments and blank lines are fine
  CHECK(ProblemFile::parse_text("# nothing\n\n", "c").entries.empty());
}

TEST_CASE("reduce flow on the radial problem") {
  ProblemFile pf = ProblemFile::parse_text(kRadialProblem, "radial");
  RunOptions opt;
  RunResult rr = run_reduce(pf, opt);
  CHECK(rr.exit_code == 0);
  CHECK(rr.json["classification"]["tag"] == "hyperbolic");
  CHECK(rr.json["result"] == "pass");
  std::string red = rr.json["reduced_equation"]["text"];
  CHECK(red == "phi_yy - phi_zz - (2/z)*phi_z = F(phi)");
  CHECK(rr.text.find("RESULT: PASS") != std::string::npos);

  // the same problem through a catalog entry reference
  ProblemFile entry_pf = ProblemFile::parse_text("entry: time-radial\n", "entry");
  RunResult rr2 = run_reduce(entry_pf, opt);
  CHECK(rr2.exit_code == 0);
  CHECK(rr2.json["classification"]["tag"] == "hyperbolic");
}

TEST_CASE("reduce rejects an ansatz whose conditions do not close over (y, z)") {
  // s = -x1^2 - x2^2 is not a function of (x0, x1*x2)
  ProblemFile pf = ProblemFile::parse_text("y: x0\nz: x1*x2\n", "nonclosing");
  RunOptions opt;
  RunResult rr = run_reduce(pf, opt);
  CHECK(rr.exit_code == 1);
  bool s_failed = false;
  for (const auto& d : rr.json["dependence"])
    if (d["key"] == "s" && d["pass"] == false) s_failed = true;
  CHECK(s_failed);
}

TEST_CASE("reduce flow reports missing keys") {
  ProblemFile pf = ProblemFile::parse_text("", "empty");
  RunOptions opt;
  CHECK_THROWS_WITH_AS(run_reduce(pf, opt), "missing required key: y", ProblemError);
}

TEST_CASE("check-compat flow on light-cone data") {
  ProblemFile pf = ProblemFile::parse_text(kLightConeCompat, "lc");
  RunOptions opt;
  opt.compat_case = "hyperbolic";
  RunResult rr = run_check_compat(pf, opt);
  CHECK(rr.exit_code == 0);
  CHECK(rr.json["compat"]["pass"] == true);

  opt.compat_case = "first-order";
  CHECK_THROWS_AS(run_check_compat(pf, opt), ProblemError);  // case mismatch
}

TEST_CASE("lemmas flow on the light-cone pair") {
  ProblemFile pf = ProblemFile::parse_text(kLightConeLemmas, "lc");
  RunOptions opt;
  opt.kmax = 4;
  RunResult rr = run_lemmas(pf, opt);
  CHECK(rr.exit_code == 0);
  CHECK(rr.json["null_hessian_v"]["pass"] == true);
  CHECK(rr.json["null_hessian_w"]["pass"] == true);
  CHECK(rr.json["minor_sums"]["pass"] == true);
  CHECK(rr.json["minor_sums"]["residuals"].size() == 4);
}

TEST_CASE("lift flow") {
  std::string text = std::string(kRadialProblem) + "phi: (y - z)/z\nF: 0\n";
  ProblemFile pf = ProblemFile::parse_text(text, "lift");
  RunOptions opt;
  RunResult rr = run_lift(pf, opt);
  CHECK(rr.exit_code == 0);
  CHECK(rr.json["lift"]["pass"] == true);
}

TEST_CASE("in-process runs with one seed are byte-identical") {
  ProblemFile pf = ProblemFile::parse_text(kRadialProblem, "radial");
  RunOptions opt;
  opt.seed = 99;
  std::string a = run_reduce(pf, opt).json.dump(2);
  std::string b = run_reduce(pf, opt).json.dump(2);
  CHECK(a == b);
  opt.seed = 100;
  CHECK(a != run_reduce(pf, opt).json.dump(2));
}

TEST_CASE("CLI: catalog, reduce, exit codes, determinism") {
  CliRun cat = run_cli("catalog run --frame boosted");
  CHECK(cat.exit_code == 0);
  CHECK(cat.output.find("result: PASS") != std::string::npos);

  std::string problem = write_temp("radial.txt", kRadialProblem);
  CliRun red = run_cli("reduce --problem " + problem + " --out /tmp/dhred_test_a.json");
  CHECK(red.exit_code == 0);
  CliRun red2 = run_cli("reduce --problem " + problem + " --out /tmp/dhred_test_b.json");
  CHECK(red2.exit_code == 0);
  CHECK(slurp("/tmp/dhred_test_a.json") == slurp("/tmp/dhred_test_b.json"));
  CHECK_FALSE(slurp("/tmp/dhred_test_a.json").empty());

  // failing check: wrong shat
  std::string bad = write_temp("bad.txt",
                               "y: x0\nz: x3\nrhat: 1\nqhat: 0\nshat: 1\nRhat: 0\nShat: 0\n");
  CliRun fail = run_cli("reduce --problem " + bad);
  CHECK(fail.exit_code == 1);
  CHECK(fail.output.find("FAIL") != std::string::npos);

  // input errors
  CliRun missing = run_cli("reduce --problem /tmp/does_not_exist_dhred.txt");
  CHECK(missing.exit_code == 2);
  std::string syntax = write_temp("syntax.txt", "y: x0 +\nz: x3\n");
  CliRun syn = run_cli("reduce --problem " + syntax);
  CHECK(syn.exit_code == 2);
  CHECK(syn.output.find("syntax error") != std::string::npos);
  std::string empty = write_temp("empty.txt", "");
  CliRun emp = run_cli("reduce --problem " + empty);
  CHECK(emp.exit_code == 2);
  CHECK(emp.output.find("missing required key: y") != std::string::npos);

  CliRun compat = run_cli("check-compat --case hyperbolic --problem " +
                          write_temp("lc.txt", kLightConeCompat));
  CHECK(compat.exit_code == 0);

  CliRun lem = run_cli("lemmas --kmax 4 --problem " + write_temp("lcl.txt", kLightConeLemmas));
  CHECK(lem.exit_code == 0);

  // entry references resolve over the requested frame
  std::string entry = write_temp("entry.txt", "entry: 2\nphi: (y - z)/z\nF: 0\n");
  CliRun lift_boosted = run_cli("lift --frame boosted --problem " + entry);
  CHECK(lift_boosted.exit_code == 0);
  CliRun red_entry = run_cli("reduce --frame boosted --problem " + entry);
  CHECK(red_entry.exit_code == 0);
  CHECK(red_entry.output.find("hyperbolic") != std::string::npos);

  CliRun shifted = run_cli("catalog run --shift \"u^3 - u\"");
  CHECK(shifted.exit_code == 0);
}
