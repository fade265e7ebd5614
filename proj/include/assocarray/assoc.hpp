#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "assocarray/key.hpp"
#include "assocarray/semiring.hpp"
#include "assocarray/sparse_matrix.hpp"

namespace assocarray {

/// A stored value: numeric arrays hold doubles, string arrays hold strings.
/// The empty value is 0.0 or "" respectively and is never stored.
using Value = std::variant<double, std::string>;

using NumericOp = std::function<double(double, double)>;
using TextOp = std::function<std::string(const std::string&, const std::string&)>;

/// A binary operation usable on either value kind. Either half may be
/// missing, in which case applying it to that kind throws.
struct ValueOp {
  std::string name;
  NumericOp numeric;
  TextOp text;
};

namespace ops {
ValueOp min();     // numeric min, dictionary min
ValueOp max();
ValueOp sum();     // numeric only
ValueOp concat();  // text only
ValueOp first();   // keeps the earlier value
ValueOp last();    // keeps the later value
}  // namespace ops

/// Parallel triple sequences. Values are either all numeric or all text.
struct Triples {
  std::vector<Key> rows;
  std::vector<Key> cols;
  std::variant<std::vector<double>, std::vector<std::string>> vals;

  std::size_t size() const { return rows.size(); }
  bool is_numeric() const { return vals.index() == 0; }
};

/// Subarray selector for one axis.
///
/// Integers in `positions` and `slice` always address positions in the
/// sorted key list, never key values; numeric keys are reached through
/// `key` / `keys`. Ranges are inclusive at both ends.
class Selector {
 public:
  enum class Kind { all, key, keys, range, positions, slice };

  static Selector all() { return Selector(Kind::all); }
  static Selector key(Key k);
  static Selector keys(std::vector<Key> ks);
  static Selector range(Key lo, Key hi);
  /// Parses "lo<d>:<d>hi<d>", e.g. "a,:,b," with the default delimiter.
  static Selector parse_range(std::string_view text, char delimiter = ',');
  static Selector positions(std::vector<index_t> pos);
  /// Python-style half-open [start, stop); negative values count from the end.
  static Selector slice(index_t start, index_t stop);

  Kind kind() const { return kind_; }
  const std::vector<Key>& key_list() const { return keys_; }
  const std::vector<index_t>& position_list() const { return positions_; }
  index_t slice_start() const { return start_; }
  index_t slice_stop() const { return stop_; }

  /// Sorted, duplicate-free positions selected within `sorted_keys`.
  std::vector<index_t> resolve(std::span<const Key> sorted_keys) const;

 private:
  explicit Selector(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::vector<Key> keys_;  // key / keys / range endpoints
  std::vector<index_t> positions_;
  index_t start_ = 0;
  index_t stop_ = 0;
};

/// Raw pieces of an associative array before condensing. `pool` is empty
/// for numeric data; when present, adjacency values are 1-based pointers.
struct AssocParts {
  std::vector<Key> row;
  std::vector<Key> col;
  std::optional<std::vector<std::string>> pool;
  SparseMatrix adj;
};

/**
 * Sparse two-dimensional array with sorted unique row and column keys.
 *
 * Stored as four attributes: sorted row keys, sorted column keys, a value
 * pool, and a CSR adjacency matrix of shape |row| x |col|. Numeric arrays
 * keep their values directly in the adjacency. String arrays keep a sorted
 * pool of distinct nonempty strings and the adjacency holds 1-based
 * pointers into it (adj[i,j] == k + 1 means value pool[k]).
 *
 * Every array is condensed: each row and column holds at least one stored
 * entry, and every pool string is referenced. The empty array is numeric
 * and is accepted wherever either kind is expected. Values are immutable;
 * all operations return new arrays.
 */
class Assoc {
 public:
  Assoc();

  static Assoc from_triples(std::span<const Key> rows, std::span<const Key> cols,
                            std::span<const double> vals, const ValueOp& aggregate = ops::min());
  static Assoc from_triples(std::span<const Key> rows, std::span<const Key> cols,
                            std::span<const std::string> vals, const ValueOp& aggregate = ops::min());
  /// Mixed-kind entry point; throws if the values mix numbers and strings.
  static Assoc from_triples(std::span<const Key> rows, std::span<const Key> cols,
                            std::span<const Value> vals, const ValueOp& aggregate = ops::min());
  static Assoc from_triples(const Triples& t, const ValueOp& aggregate = ops::min());

  /// Numeric array whose values are the entries of `adj`.
  static Assoc from_adjacency(std::span<const Key> rows, std::span<const Key> cols,
                              const SparseMatrix& adj);
  /// String array: entries of `adj` are 1-based pointers into sorted_unique(vals).
  static Assoc from_adjacency(std::span<const Key> rows, std::span<const Key> cols,
                              std::span<const std::string> vals, const SparseMatrix& adj);

  const std::vector<Key>& row() const { return row_; }
  const std::vector<Key>& col() const { return col_; }
  /// Sorted distinct values of a string array; empty for numeric arrays.
  const std::vector<std::string>& val() const { return pool_; }
  const SparseMatrix& adj() const { return adj_; }

  bool is_numeric() const { return numeric_; }
  bool is_string() const { return !numeric_; }
  bool empty() const { return adj_.nnz() == 0; }
  index_t nnz() const { return adj_.nnz(); }
  index_t nrows() const { return static_cast<index_t>(row_.size()); }
  index_t ncols() const { return static_cast<index_t>(col_.size()); }

  /// Row-major sorted triples.
  Triples triples() const;

  Assoc get(const Selector& rows, const Selector& cols) const;
  /// Single cell; returns the empty value of the array's kind when absent.
  Value get(const Key& row, const Key& col) const;

  /// Persistent update: a copy with (row, col) set to v. Setting the empty
  /// value deletes the cell.
  Assoc set(const Key& row, const Key& col, const Value& v) const;

  Assoc logical() const;
  Assoc transpose() const;

  /// Problems with the representation invariants; empty when valid.
  std::vector<std::string> check_invariants() const;

  friend bool operator==(const Assoc& a, const Assoc& b);

 private:
  friend Assoc condense(AssocParts parts);

  std::vector<Key> row_;
  std::vector<Key> col_;
  std::vector<std::string> pool_;
  bool numeric_ = true;
  SparseMatrix adj_;
};

/// Drops rows and columns without stored entries and unreferenced pool
/// values. Stored entries are never changed.
Assoc condense(AssocParts parts);

/// from_triples over triples(a) followed by triples(b), folding collisions with op.
Assoc combine(const Assoc& a, const Assoc& b, const ValueOp& op);

/// Element-wise sum; string arrays concatenate colliding values (a first).
Assoc add(const Assoc& a, const Assoc& b);

/// Element-wise product on the intersection of supports.
///   numeric x numeric: products
///   string  x string : dictionary minimum
///   string  x numeric: a masked by b's pattern
///   numeric x string : a times logical(b)
Assoc multiply_elementwise(const Assoc& a, const Assoc& b);

/// C(i,j) = ring.add over k in a.col and b.row of ring.mul(a(i,k), b(k,j)).
/// String operands are replaced by their logical patterns first.
Assoc array_product(const Assoc& a, const Assoc& b, const NumericSemiring& ring = plus_times());

Assoc elementwise_min(const Assoc& a, const Assoc& b);
Assoc elementwise_max(const Assoc& a, const Assoc& b);

inline Assoc operator+(const Assoc& a, const Assoc& b) { return add(a, b); }
inline Assoc operator*(const Assoc& a, const Assoc& b) { return multiply_elementwise(a, b); }

std::string to_string(const Value& v);

}  // namespace assocarray
