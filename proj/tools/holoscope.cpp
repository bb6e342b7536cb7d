#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "holoscope/commands.hpp"

using namespace holoscope;

namespace {

struct Common {
  std::string json_out;
  std::size_t jobs = 1;
};

void emit(const CommandResult& res, const Common& c, std::int64_t ms) {
  const std::string line = res.to_json().dump();
  std::cout << line << '\n';
  if (!c.json_out.empty()) {
    std::ofstream f(c.json_out);
    if (!f) throw ParseError("cannot write '" + c.json_out + "'");
    f << line << '\n';
  }
  std::size_t failed = 0;
  for (const auto& ch : res.report.checks())
    if (!ch.pass) {
      ++failed;
      std::cerr << "FAIL " << ch.name << ": expected " << ch.expected << ", observed " << ch.observed << '\n';
    }
  std::cerr << res.report.command() << ": " << res.report.checks().size() - failed << "/" << res.report.checks().size()
            << " checks passed in " << ms << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holoscope: transitive and regular subgroups of holomorphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--json-out", common.json_out, "also write the JSON report to this path");
  app.add_option("--jobs", common.jobs, "worker threads for searches")->check(CLI::Range(1, 256));

  auto* construct = app.add_subcommand("construct", "build GL3(2) wr H inside Aff(F_2^{3r}) and check it");
  construct->set_help_flag("--help", "print this help message and exit");
  ConstructOptions copt;
  std::string group_out;
  bool no_scan = false;
  construct->add_option("--r", copt.r, "number of blocks (1..4)")->check(CLI::Range(1, 4));
  construct->add_option("--h", copt.h, "transitive soluble subgroup of S_r (1, C2, C3, S3, V4, C4, D4, A4, S4, ...)");
  construct->add_option("--group-out", group_out, "write the generators as a group spec file");
  construct->add_flag("--no-scan", no_scan, "skip the subspace scan at r = 2");

  auto* enum168 = app.add_subcommand("enumerate-168", "the transitive GL3(2) subgroups of Aff(F_2^3)");

  auto* scan = app.add_subcommand("conjecture-scan", "regular subgroups of Hol(N) for small N");
  ScanOptions sopt;
  scan->add_option("--max-order", sopt.max_order, "largest |N| (at most 16)")->check(CLI::Range(1, 16));
  scan->add_flag("--extended", sopt.extended, "include C2^4");

  auto* classify = app.add_subcommand("classify", "replay the elimination of simple composition factors");
  std::uint64_t bound = 2000;
  std::uint32_t mersenne_cap = 13;
  classify->add_option("--bound", bound, "bound on p^a for the fixed and Fermat families")->check(CLI::Range(8, 1 << 30));
  classify->add_option("--mersenne-cap", mersenne_cap, "largest Mersenne exponent a")->check(CLI::Range(3, 61));

  auto* admis = app.add_subcommand("admissibility", "admissibility report for a subgroup of N = F_p^n");
  std::string group_file, basis_file;
  admis->add_option("group", group_file, "group spec file")->required();
  admis->add_option("basis", basis_file, "basis file of the subgroup M")->required();

  auto* norm = app.add_subcommand("normalizer", "stabiliser of 0 in the normaliser of J");
  std::uint32_t norm_r = 1;
  norm->add_option("--r", norm_r, "number of blocks (1 or 2)")->check(CLI::Range(1, 2));

  auto* brace = app.add_subcommand("brace", "skew braces from the regular subgroups of Hol(N)");
  std::string brace_n = "C2^2";
  brace->add_option("--n", brace_n, "catalogue name of N");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto t0 = std::chrono::steady_clock::now();
    CommandResult res;
    if (*construct) {
      copt.scan_subspaces = !no_scan;
      res = cmd_construct(copt);
      if (!group_out.empty()) {
        std::ofstream f(group_out);
        if (!f) throw ParseError("cannot write '" + group_out + "'");
        f << *res.group_spec;
      }
    } else if (*enum168) {
      res = cmd_enumerate_168();
    } else if (*scan) {
      sopt.jobs = common.jobs;
      res = cmd_conjecture_scan(sopt);
    } else if (*classify) {
      res = cmd_classify(bound, mersenne_cap);
    } else if (*admis) {
      const auto spec = read_group_spec_file(group_file);
      res = cmd_admissibility(spec, read_basis_file(basis_file, spec.p, spec.n));
    } else if (*norm) {
      res = cmd_normalizer(norm_r);
    } else if (*brace) {
      res = cmd_brace(brace_n, common.jobs);
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    emit(res, common, ms);
    return res.report.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
