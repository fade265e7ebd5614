#include "assocarray/io_formats.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

namespace assocarray {

namespace {

void check_field(const std::string& field, char delimiter, const char* what) {
  if (field.find(delimiter) != std::string::npos || field.find('\n') != std::string::npos ||
      field.find('\r') != std::string::npos) {
    throw std::invalid_argument(std::string(what) + " '" + field +
                                "' contains the delimiter or a line break");
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

template <typename T, typename Fn>
void write_lines(const std::filesystem::path& path, const std::vector<T>& items, Fn render) {
  std::ofstream out = open_out(path);
  for (const auto& item : items) out << render(item) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;  // from_chars rejects a leading plus
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::size_t write_triples(const Assoc& a, const std::filesystem::path& path, char delimiter) {
  const Triples t = a.triples();
  std::vector<std::string> rows, cols, vals;
  rows.reserve(t.size());
  cols.reserve(t.size());
  vals.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    rows.push_back(t.rows[i].to_string());
    cols.push_back(t.cols[i].to_string());
    check_field(rows.back(), delimiter, "row key");
    check_field(cols.back(), delimiter, "column key");
  }
  if (t.is_numeric()) {
    for (double v : std::get<0>(t.vals)) vals.push_back(format_number(v));
  } else {
    for (const auto& v : std::get<1>(t.vals)) {
      check_field(v, delimiter, "value");
      vals.push_back(v);
    }
  }
  // Validate everything before touching the file.
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << rows[i] << delimiter << cols[i] << delimiter << vals[i] << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
  return t.size();
}

Assoc read_triples(const std::filesystem::path& path, char delimiter, const ValueOp& aggregate,
                   KeyParse keys) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<Key> rows, cols;
  std::vector<std::string> vals;
  rows.reserve(lines.size());
  cols.reserve(lines.size());
  vals.reserve(lines.size());

  auto to_key = [keys](std::string_view field) -> Key {
    if (keys == KeyParse::numeric) {
      if (auto num = parse_number(field)) return Key(*num);
    }
    return Key(field);
  };

  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string& line = lines[ln];
    const auto d1 = line.find(delimiter);
    const auto d2 = d1 == std::string::npos ? d1 : line.find(delimiter, d1 + 1);
    if (d1 == std::string::npos || d2 == std::string::npos ||
        line.find(delimiter, d2 + 1) != std::string::npos) {
      throw std::runtime_error(path.string() + ":" + std::to_string(ln + 1) +
                               ": expected exactly 3 fields");
    }
    const std::string_view view(line);
    rows.push_back(to_key(view.substr(0, d1)));
    cols.push_back(to_key(view.substr(d1 + 1, d2 - d1 - 1)));
    vals.emplace_back(view.substr(d2 + 1));
  }

  std::vector<double> numbers;
  numbers.reserve(vals.size());
  for (const auto& v : vals) {
    auto num = parse_number(v);
    if (!num) break;
    numbers.push_back(*num);
  }
  if (numbers.size() == vals.size()) {
    return Assoc::from_triples(rows, cols, std::span<const double>(numbers), aggregate);
  }
  return Assoc::from_triples(rows, cols, std::span<const std::string>(vals), aggregate);
}

BenchDataset generate_bench(int n, std::uint64_t seed) {
  if (n < kBenchMinN || n > kBenchMaxN) {
    throw std::invalid_argument("benchmark exponent n=" + std::to_string(n) + " outside [" +
                                std::to_string(kBenchMinN) + ", " + std::to_string(kBenchMaxN) + "]");
  }
  BenchDataset d;
  d.n = n;
  d.seed = seed;
  const std::size_t count = std::size_t{8} << n;
  const long long key_bound = 1LL << n;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> key_dist(0, key_bound - 1);
  std::uniform_int_distribution<int> num_dist(0, 100);
  std::uniform_int_distribution<int> letter_dist(0, 25);

  auto keys = [&]() {
    std::vector<std::string> out(count);
    for (auto& k : out) k = std::to_string(key_dist(rng));
    return out;
  };
  d.rows = keys();
  d.rows2 = keys();
  d.cols = keys();
  d.cols2 = keys();
  d.num_vals.resize(count);
  for (auto& v : d.num_vals) v = static_cast<double>(num_dist(rng));
  d.str_vals.resize(count);
  for (auto& s : d.str_vals) {
    s.resize(8);
    for (auto& ch : s) ch = static_cast<char>('a' + letter_dist(rng));
  }
  return d;
}

void write_bench_files(const BenchDataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto same = [](const std::string& s) -> const std::string& { return s; };
  write_lines(dir / "rows.txt", data.rows, same);
  write_lines(dir / "rows2.txt", data.rows2, same);
  write_lines(dir / "cols.txt", data.cols, same);
  write_lines(dir / "cols2.txt", data.cols2, same);
  write_lines(dir / "num_vals.txt", data.num_vals, [](double v) { return format_number(v); });
  write_lines(dir / "string_vals.txt", data.str_vals, same);
}

BenchDataset read_bench_files(const std::filesystem::path& dir) {
  BenchDataset d;
  d.rows = read_lines(dir / "rows.txt");
  d.rows2 = read_lines(dir / "rows2.txt");
  d.cols = read_lines(dir / "cols.txt");
  d.cols2 = read_lines(dir / "cols2.txt");
  d.str_vals = read_lines(dir / "string_vals.txt");
  const auto nums = read_lines(dir / "num_vals.txt");
  d.num_vals.reserve(nums.size());
  for (std::size_t i = 0; i < nums.size(); ++i) {
    auto v = parse_number(nums[i]);
    if (!v) {
      throw std::runtime_error((dir / "num_vals.txt").string() + ":" + std::to_string(i + 1) +
                               ": not a number");
    }
    d.num_vals.push_back(*v);
  }
  const std::size_t n = d.rows.size();
  if (d.rows2.size() != n || d.cols.size() != n || d.cols2.size() != n || d.num_vals.size() != n ||
      d.str_vals.size() != n) {
    throw std::runtime_error("benchmark files in '" + dir.string() + "' differ in length");
  }
  for (int k = kBenchMinN; k <= kBenchMaxN; ++k) {
    if ((std::size_t{8} << k) == n) d.n = k;
  }
  return d;
}

}  // namespace assocarray
