#include "dhred/parse.hpp"
#include "dhred/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int finish(const dhred::RunResult& result, const std::string& out_path) {
  std::cout << result.text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << result.json.dump(2) << "\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dhred: verify two-variable reductions of nonlinear wave equations"};
  app.require_subcommand(1);

  dhred::RunOptions opt;
  std::string problem_path;
  std::string out_path;

  auto add_common = [&](CLI::App* cmd, bool needs_problem) {
    if (needs_problem)
      cmd->add_option("--problem", problem_path, "problem file")->required();
    cmd->add_option("--seed", opt.seed, "sampling seed");
    cmd->add_option("--out", out_path, "write the JSON report to this file");
  };

  CLI::App* reduce = app.add_subcommand("reduce", "profile, verify and classify an ansatz");
  add_common(reduce, true);
  reduce->add_option("--frame", opt.frame, "frame for 'entry:' problems (standard|boosted)");
  reduce->add_option("--shift", opt.entry_shift,
                     "shift function (in u) for the null-shifted catalog entry");

  CLI::App* compat = app.add_subcommand("check-compat", "run compatibility checks for one case");
  add_common(compat, true);
  compat->add_option("--case", opt.compat_case,
                     "elliptic|hyperbolic|parabolic|first-order|one-variable");

  CLI::App* lemmas = app.add_subcommand("lemmas", "Hessian determinant and minor-sum identities");
  add_common(lemmas, true);
  lemmas->add_option("--kmax", opt.kmax, "largest minor order k to test")->check(CLI::Range(1, 16));

  CLI::App* cat = app.add_subcommand("catalog", "built-in reduction catalog");
  CLI::App* cat_run = cat->add_subcommand("run", "run every catalog entry");
  add_common(cat_run, false);
  cat_run->add_option("--frame", opt.frame, "standard|boosted");
  cat_run->add_option("--shift", opt.entry_shift,
                      "shift function (in u) for the null-shifted entry");
  cat->require_subcommand(1);

  CLI::App* lift = app.add_subcommand("lift", "compose a reduced solution with an ansatz");
  add_common(lift, true);
  lift->add_option("--frame", opt.frame, "frame for 'entry:' problems (standard|boosted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (reduce->parsed())
      return finish(dhred::run_reduce(dhred::ProblemFile::parse_file(problem_path), opt), out_path);
    if (compat->parsed())
      return finish(dhred::run_check_compat(dhred::ProblemFile::parse_file(problem_path), opt),
                    out_path);
    if (lemmas->parsed())
      return finish(dhred::run_lemmas(dhred::ProblemFile::parse_file(problem_path), opt), out_path);
    if (cat->parsed()) return finish(dhred::run_catalog_command(opt), out_path);
    if (lift->parsed())
      return finish(dhred::run_lift(dhred::ProblemFile::parse_file(problem_path), opt), out_path);
  } catch (const dhred::ProblemError& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return 2;
  } catch (const dhred::ParseError& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
