// Runs the acceptance grid and prints one PASS/FAIL line per criterion.
// Usage: acceptance --workdir DIR --cli PATH_TO_twistcvx_cli

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twistcvx/verify.hpp"

namespace fs = std::filesystem;
using namespace twistcvx;

namespace {

std::vector<fs::path> csv_files(const fs::path& root) {
  std::vector<fs::path> out;
  if (!fs::exists(root)) return out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file() && e.path().extension() == ".csv") out.push_back(fs::relative(e.path(), root));
  std::sort(out.begin(), out.end());
  return out;
}

int run(const std::string& cmd) {
  std::cout << "  $ " << cmd << std::endl;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

CheckResult reproducibility(const fs::path& cli, const fs::path& work) {
  CheckResult r;
  r.id = 11;
  r.name = "manifest_reproducibility";
  const auto t0 = std::chrono::steady_clock::now();
  const auto run1 = work / "run1", run2 = work / "run2";
  fs::remove_all(run1);
  fs::remove_all(run2);
  const int c1 = run(quote(cli) + " verify-su3 --out " + quote(run1) + " > " + quote(work / "run1.log") + " 2>&1");
  const int c2 = run(quote(cli) + " verify-su3 --manifest " + quote(run1 / "manifest.json") + " --out " + quote(run2) + " > " +
                     quote(work / "run2.log") + " 2>&1");
  const auto a = csv_files(run1), b = csv_files(run2);
  std::size_t identical = 0;
  std::string first_diff;
  for (const auto& f : a) {
    if (std::find(b.begin(), b.end(), f) != b.end() && read_text(run1 / f) == read_text(run2 / f))
      ++identical;
    else if (first_diff.empty())
      first_diff = f.string();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = c1 == 0 && c2 == 0 && !a.empty() && a == b && identical == a.size();
  r.message = std::to_string(identical) + "/" + std::to_string(a.size()) + " CSV files byte-identical; exit codes " +
              std::to_string(c1) + ", " + std::to_string(c2);
  if (!first_diff.empty()) r.message += "; first mismatch " + first_diff;
  return r;
}

void print(const CheckResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " " << r.name << " (" << secs << " s): " << r.message << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria runner"};
  fs::path workdir, cli;
  app.add_option("--workdir", workdir, "scratch directory")->required();
  app.add_option("--cli", cli, "twistcvx_cli executable")->required()->check(CLI::ExistingFile);
  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(workdir);
    VerifyConfig cfg;
    cfg.workers = default_workers();
    std::cout << "criteria 1-10: in-process grid, " << cfg.workers << " worker(s)" << std::endl;
    const auto rep = run_verify_su3(cfg, workdir / "inprocess", print);
    std::cout << "criterion 11: CLI rerun from manifest" << std::endl;
    const auto r11 = reproducibility(cli, workdir);
    print(r11);
    const bool ok = rep.all_passed() && r11.passed;
    std::cout << (ok ? "ALL PASS" : "SOME CRITERIA FAILED") << std::endl;
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
