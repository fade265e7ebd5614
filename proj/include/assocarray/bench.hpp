#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assocarray/key.hpp"

namespace assocarray::bench {

enum class Test { ctor_num, ctor_str, add, matmul, ewise_mul };

std::string to_string(Test t);
/// Throws std::invalid_argument for unknown names.
Test parse_test(std::string_view name);
std::vector<Test> all_tests();

struct Config {
  int n_min = 5;
  int n_max = 18;
  int matmul_cap = 17;  // matmul runs only for n <= matmul_cap
  int ewise_cap = 13;   // ewise_mul runs only for n <= ewise_cap
  int repetitions = 10;
  std::uint64_t seed = 20220101;
  std::vector<Test> tests = all_tests();
  bool validate = true;  // check invariants of each produced array (untimed)
};

/// Throws std::invalid_argument describing the first problem.
void validate(const Config& cfg);

struct Record {
  std::string test;
  int n = 0;
  double mean_seconds = 0.0;
  std::vector<double> runs;
  index_t nnz_a = 0;    // first input (triple count for constructor tests)
  index_t nnz_b = 0;    // second input, 0 for constructor tests
  index_t nnz_out = 0;  // result
};

/**
 * Runs each selected test for every n in [n_min, n_max] (respecting the
 * per-test caps). Timing covers only the operation under test: data
 * generation, key conversion, construction of the binary-op inputs A and B
 * (all values 1), one warm-up call and result validation are excluded.
 * `progress`, when set, is called after each record completes.
 */
std::vector<Record> run_benchmarks(const Config& cfg,
                                   const std::function<void(const Record&)>& progress = {});

enum class Format { csv, tsv, table };

Format parse_format(std::string_view name);

/// Sorted by (test, n). Header: test,n,mean_seconds,runs,nnz_a,nnz_b,nnz_out;
/// per-run seconds are joined with ';' inside the runs column.
std::string format_report(std::vector<Record> records, Format format);

/// Throws std::invalid_argument on empty input, std::runtime_error on I/O failure.
void emit_report(const std::vector<Record>& records, const std::filesystem::path& path, Format format);

/// Reads CSV or TSV output of format_report (delimiter detected from the header).
std::vector<Record> parse_report(std::string_view text);
std::vector<Record> read_report(const std::filesystem::path& path);

/// Each consecutive-n pair of a guarded test whose mean time grows by more
/// than `max_ratio`. Tests guarded by default: ctor_num, ctor_str, add.
std::vector<std::string> check_scaling(const std::vector<Record>& records, double max_ratio = 8.0,
                                       const std::vector<Test>& guarded = {Test::ctor_num, Test::ctor_str,
                                                                           Test::add});

}  // namespace assocarray::bench
