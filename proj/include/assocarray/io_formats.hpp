#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assocarray/assoc.hpp"

namespace assocarray {

/// How key fields of a triple file are interpreted on read.
enum class KeyParse {
  text,     // every key is a string (the default; matches integer-as-string data)
  numeric,  // fields that parse as finite numbers become numeric keys
};

/// Writes one "row<d>col<d>value" line per triple in row-major order.
/// Numbers use the shortest round-trip text. Throws std::runtime_error if
/// the file cannot be written and std::invalid_argument if any field
/// contains the delimiter or a line break.
std::size_t write_triples(const Assoc& a, const std::filesystem::path& path, char delimiter = '\t');

/// Reads a triple file. The array is numeric when every value field parses
/// as a finite number, otherwise string-valued. Lines with other than three
/// fields raise std::runtime_error naming the line number.
Assoc read_triples(const std::filesystem::path& path, char delimiter = '\t',
                   const ValueOp& aggregate = ops::min(), KeyParse keys = KeyParse::text);

/// Parses a whole number field; std::nullopt unless the text is a finite number.
std::optional<double> parse_number(std::string_view text);

/// One benchmark input set for a given exponent n. Every sequence holds
/// 8 * 2^n elements: keys are integers in [0, 2^n) rendered as strings,
/// num_vals are integers in [0, 100], str_vals are 8-letter lowercase strings.
struct BenchDataset {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> rows;
  std::vector<std::string> rows2;
  std::vector<std::string> cols;
  std::vector<std::string> cols2;
  std::vector<double> num_vals;
  std::vector<std::string> str_vals;

  std::size_t size() const { return rows.size(); }
};

inline constexpr int kBenchMinN = 5;
inline constexpr int kBenchMaxN = 18;

/// Deterministic for a fixed (n, seed). Throws std::invalid_argument when n
/// is outside [5, 18].
BenchDataset generate_bench(int n, std::uint64_t seed);

/// Writes rows.txt, rows2.txt, cols.txt, cols2.txt, num_vals.txt and
/// string_vals.txt (one element per line) into `dir`, creating it if needed.
void write_bench_files(const BenchDataset& data, const std::filesystem::path& dir);

/// Inverse of write_bench_files; n and seed are not recorded in the files.
BenchDataset read_bench_files(const std::filesystem::path& dir);

}  // namespace assocarray
