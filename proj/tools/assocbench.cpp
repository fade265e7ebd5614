// assocbench: generate benchmark inputs, time the associative-array
// operations across a sweep of sizes, and re-render saved reports.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "assocarray/bench.hpp"
#include "assocarray/io_formats.hpp"

namespace ab = assocarray::bench;

namespace {

std::vector<ab::Test> parse_tests(const std::string& list) {
  std::vector<ab::Test> tests;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "all") {
      auto every = ab::all_tests();
      tests.insert(tests.end(), every.begin(), every.end());
    } else {
      tests.push_back(ab::parse_test(item));
    }
  }
  return tests;
}

int run_gen(int n, std::uint64_t seed, const std::string& out_dir) {
  const auto data = assocarray::generate_bench(n, seed);
  assocarray::write_bench_files(data, out_dir);
  std::cerr << "wrote 6 files of " << data.size() << " elements to " << out_dir << "\n";
  return 0;
}

int run_run(ab::Config cfg, const std::string& tests, const std::string& out, const std::string& format,
            double guard, bool quiet) {
  cfg.tests = parse_tests(tests);
  const ab::Format fmt = ab::parse_format(format);
  ab::validate(cfg);

  const auto records = ab::run_benchmarks(cfg, [quiet](const ab::Record& r) {
    if (!quiet) {
      std::cerr << r.test << " n=" << r.n << " mean=" << r.mean_seconds << "s nnz_out=" << r.nnz_out << "\n";
    }
  });
  if (out.empty() || out == "-") {
    std::cout << ab::format_report(records, fmt);
  } else {
    ab::emit_report(records, out, fmt);
  }

  if (guard > 0) {
    const auto violations = ab::check_scaling(records, guard);
    for (const auto& v : violations) std::cerr << "scaling guard: " << v << "\n";
    if (!violations.empty()) return 3;
  }
  return 0;
}

int run_report(const std::string& in, const std::string& format) {
  const auto records = ab::read_report(in);
  std::cout << ab::format_report(records, ab::parse_format(format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Associative array benchmark harness"};
  app.require_subcommand(1);

  int gen_n = 10;
  std::uint64_t gen_seed = ab::Config{}.seed;
  std::string gen_dir = "bench_data";
  auto* gen = app.add_subcommand("gen", "Generate one benchmark dataset as six flat files");
  gen->add_option("--n", gen_n, "Size exponent (arrays hold 8*2^n elements)")->check(CLI::Range(5, 18));
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out-dir", gen_dir, "Output directory");

  ab::Config cfg;
  std::string tests = "all";
  std::string out = "-";
  std::string run_format = "csv";
  double guard = 8.0;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Time the benchmark tests over a range of n");
  run->add_option("--n-min", cfg.n_min, "Smallest exponent");
  run->add_option("--n-max", cfg.n_max, "Largest exponent");
  run->add_option("--reps", cfg.repetitions, "Timed repetitions per test and n");
  run->add_option("--seed", cfg.seed, "RNG seed");
  run->add_option("--tests", tests, "Comma list of ctor_num,ctor_str,add,matmul,ewise_mul or all");
  run->add_option("--out", out, "Report path ('-' for stdout)");
  run->add_option("--format", run_format, "csv or tsv");
  run->add_option("--matmul-cap", cfg.matmul_cap, "Largest n for matmul");
  run->add_option("--ewise-cap", cfg.ewise_cap, "Largest n for ewise_mul");
  run->add_option("--scaling-guard", guard,
                  "Fail when ctor/add mean time grows more than this factor per step of n (0 disables)");
  run->add_flag("--no-validate", [&cfg](std::int64_t) { cfg.validate = false; },
                "Skip invariant checks of produced arrays");
  run->add_flag("--quiet", quiet, "No per-record progress on stderr");

  std::string report_in;
  std::string report_format = "table";
  auto* report = app.add_subcommand("report", "Re-render a saved report");
  report->add_option("--in", report_in, "Report file (csv or tsv)")->required();
  report->add_option("--format", report_format, "csv, tsv or table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, std::cerr, std::cerr);
  }

  try {
    if (*gen) return run_gen(gen_n, gen_seed, gen_dir);
    if (*run) return run_run(cfg, tests, out, run_format, guard, quiet);
    if (*report) return run_report(report_in, report_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
