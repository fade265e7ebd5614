#include "assocarray/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "assocarray/assoc.hpp"
#include "assocarray/io_formats.hpp"

namespace assocarray::bench {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<Key> to_keys(const std::vector<std::string>& items) {
  return std::vector<Key>(items.begin(), items.end());
}

void require_valid(const Assoc& a, const std::string& test, int n) {
  const auto problems = a.check_invariants();
  if (!problems.empty()) {
    throw std::runtime_error(test + " at n=" + std::to_string(n) + " produced an invalid array: " +
                             problems.front());
  }
}

template <typename Op>
Record time_op(const Config& cfg, Test test, int n, Op op) {
  Record rec;
  rec.test = to_string(test);
  rec.n = n;
  Assoc result = op();  // warm-up, not recorded
  rec.runs.reserve(static_cast<std::size_t>(cfg.repetitions));
  for (int r = 0; r < cfg.repetitions; ++r) {
    const auto t0 = Clock::now();
    result = op();
    const auto t1 = Clock::now();
    rec.runs.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  rec.mean_seconds = std::accumulate(rec.runs.begin(), rec.runs.end(), 0.0) /
                     static_cast<double>(rec.runs.size());
  rec.nnz_out = result.nnz();
  if (cfg.validate) require_valid(result, rec.test, n);
  return rec;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  while (true) {
    const auto cut = line.find(delim);
    out.push_back(line.substr(0, cut));
    if (cut == std::string_view::npos) break;
    line.remove_prefix(cut + 1);
  }
  return out;
}

index_t parse_count(std::string_view field) {
  auto v = parse_number(field);
  if (!v || *v < 0 || *v != static_cast<double>(static_cast<index_t>(*v))) {
    throw std::runtime_error("bad count field '" + std::string(field) + "'");
  }
  return static_cast<index_t>(*v);
}

constexpr const char* kColumns[] = {"test", "n", "mean_seconds", "runs", "nnz_a", "nnz_b", "nnz_out"};

}  // namespace

std::string to_string(Test t) {
  switch (t) {
    case Test::ctor_num: return "ctor_num";
    case Test::ctor_str: return "ctor_str";
    case Test::add: return "add";
    case Test::matmul: return "matmul";
    case Test::ewise_mul: return "ewise_mul";
  }
  return "?";
}

Test parse_test(std::string_view name) {
  for (Test t : all_tests()) {
    if (to_string(t) == name) return t;
  }
  throw std::invalid_argument("unknown benchmark test '" + std::string(name) +
                              "' (expected ctor_num, ctor_str, add, matmul, ewise_mul)");
}

std::vector<Test> all_tests() {
  return {Test::ctor_num, Test::ctor_str, Test::add, Test::matmul, Test::ewise_mul};
}

void validate(const Config& cfg) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (cfg.n_min < kBenchMinN || cfg.n_max > kBenchMaxN || cfg.n_min > cfg.n_max) {
    fail("need " + std::to_string(kBenchMinN) + " <= n_min <= n_max <= " + std::to_string(kBenchMaxN) +
         ", got n_min=" + std::to_string(cfg.n_min) + " n_max=" + std::to_string(cfg.n_max));
  }
  if (cfg.repetitions < 1) fail("repetitions must be at least 1");
  if (cfg.tests.empty()) fail("no benchmark tests selected");
  if (cfg.matmul_cap < kBenchMinN || cfg.matmul_cap > kBenchMaxN) fail("matmul cap outside [5, 18]");
  if (cfg.ewise_cap < kBenchMinN || cfg.ewise_cap > kBenchMaxN) fail("ewise_mul cap outside [5, 18]");
}

std::vector<Record> run_benchmarks(const Config& cfg, const std::function<void(const Record&)>& progress) {
  validate(cfg);
  std::vector<Test> tests = cfg.tests;
  std::sort(tests.begin(), tests.end());
  tests.erase(std::unique(tests.begin(), tests.end()), tests.end());

  auto wants = [&](Test t) { return std::find(tests.begin(), tests.end(), t) != tests.end(); };
  std::vector<Record> records;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const BenchDataset data = generate_bench(n, cfg.seed + static_cast<std::uint64_t>(n));
    const std::vector<Key> rows = to_keys(data.rows);
    const std::vector<Key> cols = to_keys(data.cols);
    const index_t count = static_cast<index_t>(data.size());
    auto emit = [&](Record rec) {
      if (progress) progress(rec);
      records.push_back(std::move(rec));
    };

    if (wants(Test::ctor_num)) {
      Record rec = time_op(cfg, Test::ctor_num, n, [&] {
        return Assoc::from_triples(rows, cols, std::span<const double>(data.num_vals));
      });
      rec.nnz_a = count;
      emit(std::move(rec));
    }
    if (wants(Test::ctor_str)) {
      Record rec = time_op(cfg, Test::ctor_str, n, [&] {
        return Assoc::from_triples(rows, cols, std::span<const std::string>(data.str_vals));
      });
      rec.nnz_a = count;
      emit(std::move(rec));
    }

    const bool binary = wants(Test::add) || (wants(Test::matmul) && n <= cfg.matmul_cap) ||
                        (wants(Test::ewise_mul) && n <= cfg.ewise_cap);
    if (!binary) continue;
    const std::vector<double> one{1.0};
    const Assoc a = Assoc::from_triples(rows, cols, std::span<const double>(one));
    const Assoc b = Assoc::from_triples(to_keys(data.rows2), to_keys(data.cols2), std::span<const double>(one));
    auto binary_record = [&](Test t, auto op) {
      Record rec = time_op(cfg, t, n, op);
      rec.nnz_a = a.nnz();
      rec.nnz_b = b.nnz();
      emit(std::move(rec));
    };
    if (wants(Test::add)) binary_record(Test::add, [&] { return add(a, b); });
    if (wants(Test::matmul) && n <= cfg.matmul_cap) {
      binary_record(Test::matmul, [&] { return array_product(a, b); });
    }
    if (wants(Test::ewise_mul) && n <= cfg.ewise_cap) {
      binary_record(Test::ewise_mul, [&] { return multiply_elementwise(a, b); });
    }
  }
  return records;
}

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "tsv") return Format::tsv;
  if (name == "table") return Format::table;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "' (expected csv, tsv, table)");
}

std::string format_report(std::vector<Record> records, Format format) {
  std::stable_sort(records.begin(), records.end(), [](const Record& x, const Record& y) {
    return std::tie(x.test, x.n) < std::tie(y.test, y.n);
  });
  auto runs_field = [](const Record& r) {
    std::string s;
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
      if (i) s += ';';
      s += format_number(r.runs[i]);
    }
    return s;
  };

  std::ostringstream out;
  if (format == Format::table) {
    out << std::left << std::setw(10) << "test" << std::right << std::setw(4) << "n" << std::setw(16)
        << "mean_seconds" << std::setw(6) << "reps" << std::setw(12) << "nnz_a" << std::setw(12) << "nnz_b"
        << std::setw(12) << "nnz_out" << '\n';
    for (const auto& r : records) {
      out << std::left << std::setw(10) << r.test << std::right << std::setw(4) << r.n << std::setw(16)
          << std::scientific << std::setprecision(4) << r.mean_seconds << std::setw(6) << r.runs.size()
          << std::setw(12) << r.nnz_a << std::setw(12) << r.nnz_b << std::setw(12) << r.nnz_out << '\n';
    }
    return out.str();
  }
  const char d = format == Format::csv ? ',' : '\t';
  for (std::size_t i = 0; i < std::size(kColumns); ++i) out << (i ? std::string(1, d) : "") << kColumns[i];
  out << '\n';
  for (const auto& r : records) {
    out << r.test << d << r.n << d << format_number(r.mean_seconds) << d << runs_field(r) << d << r.nnz_a
        << d << r.nnz_b << d << r.nnz_out << '\n';
  }
  return out.str();
}

void emit_report(const std::vector<Record>& records, const std::filesystem::path& path, Format format) {
  if (records.empty()) throw std::invalid_argument("no benchmark records to report");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << format_report(records, format);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::vector<Record> parse_report(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw std::runtime_error("empty report");
  const char d = lines[0].find('\t') != std::string_view::npos ? '\t' : ',';
  const auto header = split(lines[0], d);
  if (header.size() != std::size(kColumns) || !std::equal(header.begin(), header.end(), std::begin(kColumns))) {
    throw std::runtime_error("unrecognised report header");
  }
  std::vector<Record> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto f = split(line, d);
    if (f.size() != std::size(kColumns)) {
      throw std::runtime_error("report line " + std::to_string(i + 1) + ": expected " +
                               std::to_string(std::size(kColumns)) + " fields");
    }
    Record r;
    r.test = std::string(f[0]);
    r.n = static_cast<int>(parse_count(f[1]));
    auto mean = parse_number(f[2]);
    if (!mean) throw std::runtime_error("report line " + std::to_string(i + 1) + ": bad mean");
    r.mean_seconds = *mean;
    for (auto run : split(f[3], ';')) {
      auto v = parse_number(run);
      if (!v) throw std::runtime_error("report line " + std::to_string(i + 1) + ": bad run time");
      r.runs.push_back(*v);
    }
    r.nnz_a = parse_count(f[4]);
    r.nnz_b = parse_count(f[5]);
    r.nnz_out = parse_count(f[6]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Record> read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_report(buf.str());
}

std::vector<std::string> check_scaling(const std::vector<Record>& records, double max_ratio,
                                       const std::vector<Test>& guarded) {
  std::vector<std::string> violations;
  for (Test t : guarded) {
    const std::string name = to_string(t);
    std::vector<const Record*> series;
    for (const auto& r : records) {
      if (r.test == name) series.push_back(&r);
    }
    std::sort(series.begin(), series.end(), [](const Record* x, const Record* y) { return x->n < y->n; });
    for (std::size_t i = 1; i < series.size(); ++i) {
      const Record& prev = *series[i - 1];
      const Record& cur = *series[i];
      if (cur.n != prev.n + 1 || prev.mean_seconds <= 0.0) continue;
      const double ratio = cur.mean_seconds / prev.mean_seconds;
      if (ratio > max_ratio) {
        std::ostringstream msg;
        msg << name << ": mean time grew " << std::setprecision(3) << ratio << "x from n=" << prev.n
            << " to n=" << cur.n << " (limit " << max_ratio << "x)";
        violations.push_back(msg.str());
      }
    }
  }
  return violations;
}

}  // namespace assocarray::bench
