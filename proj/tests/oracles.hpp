#pragma once

// Reference implementations used only by tests. Each one is deliberately
// naive and shares no code path with the library kernels it checks.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "assocarray/assoc.hpp"
#include "assocarray/semiring.hpp"
#include "assocarray/sparse_matrix.hpp"

namespace oracle {

using assocarray::index_t;
using assocarray::Key;
using assocarray::Value;

// ---------------------------------------------------------------- dense ----

struct Dense {
  index_t rows = 0;
  index_t cols = 0;
  std::vector<double> v;

  Dense() = default;
  Dense(index_t r, index_t c, double fill = 0.0) : rows(r), cols(c), v(static_cast<std::size_t>(r * c), fill) {}
  double& operator()(index_t i, index_t j) { return v[static_cast<std::size_t>(i * cols + j)]; }
  double operator()(index_t i, index_t j) const { return v[static_cast<std::size_t>(i * cols + j)]; }
  bool operator==(const Dense&) const = default;
};

/// Reads stored entries by walking whichever layout is present; absent cells get `fill`.
inline Dense to_dense(const assocarray::SparseMatrix& m, double fill = 0.0) {
  using assocarray::Layout;
  Dense d(m.nrows(), m.ncols(), fill);
  const auto& vals = m.values();
  if (m.layout() == Layout::coo) {
    for (std::size_t t = 0; t < vals.size(); ++t) d(m.row_indices()[t], m.col_indices()[t]) = vals[t];
    return d;
  }
  const auto p = m.indptr();
  const auto idx = m.indices();
  const bool csr = m.layout() == Layout::csr;
  for (std::size_t major = 0; major + 1 < p.size(); ++major) {
    for (index_t q = p[major]; q < p[major + 1]; ++q) {
      if (csr) {
        d(static_cast<index_t>(major), idx[q]) = vals[q];
      } else {
        d(idx[q], static_cast<index_t>(major)) = vals[q];
      }
    }
  }
  return d;
}

inline Dense dense_add(const Dense& a, const Dense& b) {
  Dense c(a.rows, a.cols);
  for (std::size_t i = 0; i < a.v.size(); ++i) c.v[i] = a.v[i] + b.v[i];
  return c;
}

inline Dense dense_hadamard(const Dense& a, const Dense& b) {
  Dense c(a.rows, a.cols);
  for (std::size_t i = 0; i < a.v.size(); ++i) c.v[i] = a.v[i] * b.v[i];
  return c;
}

/// Triple loop; inputs must already use ring.zero for absent cells.
inline Dense dense_matmul(const Dense& a, const Dense& b, const assocarray::NumericSemiring& ring) {
  Dense c(a.rows, b.cols, ring.zero);
  for (index_t i = 0; i < a.rows; ++i) {
    for (index_t j = 0; j < b.cols; ++j) {
      double acc = ring.zero;
      for (index_t k = 0; k < a.cols; ++k) acc = ring.add(acc, ring.mul(a(i, k), b(k, j)));
      c(i, j) = acc;
    }
  }
  return c;
}

/// Cells equal to `absent` or to 0.0 are treated as unstored.
inline std::map<std::pair<index_t, index_t>, double> stored_cells(const Dense& d, double absent = 0.0) {
  std::map<std::pair<index_t, index_t>, double> out;
  for (index_t i = 0; i < d.rows; ++i) {
    for (index_t j = 0; j < d.cols; ++j) {
      const double x = d(i, j);
      if (x != absent && x != 0.0) out[{i, j}] = x;
    }
  }
  return out;
}

inline Dense random_dense(std::mt19937_64& rng, index_t rows, index_t cols, double density, bool integers) {
  Dense d(rows, cols);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> ints(-9, 9);
  std::uniform_real_distribution<double> reals(-10.0, 10.0);
  for (double& x : d.v) {
    if (coin(rng) < density) {
      x = integers ? ints(rng) : reals(rng);
    }
  }
  return d;
}

inline assocarray::SparseMatrix from_dense(const Dense& d, assocarray::Layout layout = assocarray::Layout::coo) {
  std::vector<index_t> r, c;
  std::vector<double> v;
  for (index_t i = 0; i < d.rows; ++i) {
    for (index_t j = 0; j < d.cols; ++j) {
      if (d(i, j) != 0.0) {
        r.push_back(i);
        c.push_back(j);
        v.push_back(d(i, j));
      }
    }
  }
  return assocarray::convert(assocarray::from_triples(d.rows, d.cols, r, c, v), layout);
}

// --------------------------------------------------------- sorted sets ----

template <typename T>
std::vector<T> set_union(const std::vector<T>& a, const std::vector<T>& b) {
  std::unordered_set<T> s(a.begin(), a.end());
  s.insert(b.begin(), b.end());
  std::vector<T> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

template <typename T>
std::vector<T> set_intersection(const std::vector<T>& a, const std::vector<T>& b) {
  std::unordered_set<T> s(a.begin(), a.end());
  std::vector<T> out;
  for (const auto& x : b) {
    if (s.count(x)) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------- map of maps ----

/// Associative array as nested ordered maps holding only nonempty cells.
struct MapArray {
  bool numeric = true;
  std::map<Key, std::map<Key, Value>> cells;

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& [r, row] : cells) n += row.size();
    return n;
  }
  const Value* find(const Key& r, const Key& c) const {
    auto it = cells.find(r);
    if (it == cells.end()) return nullptr;
    auto jt = it->second.find(c);
    return jt == it->second.end() ? nullptr : &jt->second;
  }
  void put(const Key& r, const Key& c, Value v) {
    const bool empty_value = v.index() == 0 ? std::get<double>(v) == 0.0 : std::get<std::string>(v).empty();
    if (!empty_value) cells[r][c] = std::move(v);
  }
};

inline MapArray to_map(const assocarray::Assoc& a) {
  MapArray m;
  m.numeric = a.is_numeric();
  const auto t = a.triples();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.is_numeric()) {
      m.put(t.rows[i], t.cols[i], std::get<0>(t.vals)[i]);
    } else {
      m.put(t.rows[i], t.cols[i], std::get<1>(t.vals)[i]);
    }
  }
  return m;
}

inline double num(const Value& v) { return std::get<double>(v); }
inline const std::string& str(const Value& v) { return std::get<std::string>(v); }

inline MapArray map_logical(const MapArray& a) {
  MapArray out;
  for (const auto& [r, row] : a.cells) {
    for (const auto& [c, v] : row) out.put(r, c, 1.0);
  }
  return out;
}

inline MapArray map_add(const MapArray& a, const MapArray& b) {
  MapArray out;
  out.numeric = a.nnz() ? a.numeric : b.numeric;
  std::set<std::pair<Key, Key>> seen;
  for (const auto* src : {&a, &b}) {
    for (const auto& [r, row] : src->cells) {
      for (const auto& [c, v] : row) seen.insert({r, c});
    }
  }
  for (const auto& [r, c] : seen) {
    const Value* x = a.find(r, c);
    const Value* y = b.find(r, c);
    if (x && y) {
      if (out.numeric) {
        out.put(r, c, num(*x) + num(*y));
      } else {
        out.put(r, c, str(*x) + str(*y));
      }
    } else {
      out.put(r, c, x ? *x : *y);
    }
  }
  return out;
}

inline MapArray map_minmax(const MapArray& a, const MapArray& b, bool take_min) {
  MapArray out;
  out.numeric = a.nnz() ? a.numeric : b.numeric;
  for (const auto* src : {&a, &b}) {
    for (const auto& [r, row] : src->cells) {
      for (const auto& [c, v] : row) {
        const Value* x = a.find(r, c);
        const Value* y = b.find(r, c);
        if (x && y) {
          const bool x_less = *x < *y;  // variant compare: same alternative, natural order
          out.put(r, c, (x_less == take_min) ? *x : *y);
        } else {
          out.put(r, c, v);
        }
      }
    }
  }
  return out;
}

inline MapArray map_multiply(const MapArray& a, const MapArray& b) {
  MapArray out;
  out.numeric = a.numeric;
  if (!a.nnz() || !b.nnz()) {
    out.numeric = true;
    return out;
  }
  for (const auto& [r, row] : a.cells) {
    for (const auto& [c, x] : row) {
      const Value* y = b.find(r, c);
      if (!y) continue;
      if (a.numeric && b.numeric) {
        out.put(r, c, num(x) * num(*y));
      } else if (a.numeric) {
        out.put(r, c, num(x) * 1.0);
      } else if (b.numeric) {
        out.put(r, c, x);
      } else {
        out.put(r, c, std::min(str(x), str(*y)));
      }
    }
  }
  if (!out.nnz()) out.numeric = true;
  return out;
}

inline MapArray map_product(const MapArray& a0, const MapArray& b0) {
  const MapArray a = a0.numeric ? a0 : map_logical(a0);
  const MapArray b = b0.numeric ? b0 : map_logical(b0);
  std::set<Key> out_cols;
  for (const auto& [k, row] : b.cells) {
    for (const auto& [c, v] : row) out_cols.insert(c);
  }
  MapArray out;
  for (const auto& [i, arow] : a.cells) {
    for (const auto& j : out_cols) {
      double acc = 0.0;
      for (const auto& [k, x] : arow) {
        if (const Value* y = b.find(k, j)) acc += num(x) * num(*y);
      }
      out.put(i, j, acc);
    }
  }
  return out;
}

/// Exact comparison for strings and integer-valued data; relative
/// tolerance `rel_tol` for floats. Returns a description of the first
/// mismatch, or an empty string.
inline std::string compare(const MapArray& expected, const assocarray::Assoc& actual, double rel_tol = 0.0) {
  const MapArray got = to_map(actual);
  if (expected.nnz() != got.nnz()) {
    return "nnz differs: expected " + std::to_string(expected.nnz()) + ", got " + std::to_string(got.nnz());
  }
  if (expected.nnz() && expected.numeric != got.numeric) return "value kind differs";
  for (const auto& [r, row] : expected.cells) {
    for (const auto& [c, v] : row) {
      const Value* w = got.find(r, c);
      if (!w) return "missing cell (" + r.to_string() + ", " + c.to_string() + ")";
      if (v.index() != w->index()) return "cell kind differs at (" + r.to_string() + ", " + c.to_string() + ")";
      if (v.index() == 0) {
        const double x = num(v), y = num(*w);
        if (x != y && std::fabs(x - y) > rel_tol * std::max(std::fabs(x), std::fabs(y))) {
          return "value differs at (" + r.to_string() + ", " + c.to_string() + ")";
        }
      } else if (str(v) != str(*w)) {
        return "string differs at (" + r.to_string() + ", " + c.to_string() + ")";
      }
    }
  }
  return {};
}

// ---------------------------------------------------- random arrays ----

enum class ValueKind { integer, real, text };

/// Keys drawn from a fixed small universe (numbers and strings) so random
/// operands overlap.
inline Key random_key(std::mt19937_64& rng, int universe) {
  std::uniform_int_distribution<int> pick(0, universe - 1);
  const int k = pick(rng);
  if (k % 3 == 0) return Key(static_cast<double>(k) / 2.0);
  return Key("k" + std::to_string(k));
}

inline std::string random_word(std::mt19937_64& rng, int max_len, int alphabet = 4) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> ch(0, alphabet - 1);
  std::string s(static_cast<std::size_t>(len(rng)), 'a');
  for (auto& c : s) c = static_cast<char>('a' + ch(rng));
  return s;
}

inline assocarray::Assoc random_assoc(std::mt19937_64& rng, ValueKind kind, int max_keys = 20, int max_triples = 60) {
  std::uniform_int_distribution<int> count(0, max_triples);
  std::uniform_int_distribution<int> ints(-5, 5);
  std::uniform_real_distribution<double> reals(-100.0, 100.0);
  const int n = count(rng);
  std::vector<Key> rows, cols;
  std::vector<double> nums;
  std::vector<std::string> strs;
  for (int t = 0; t < n; ++t) {
    rows.push_back(random_key(rng, max_keys));
    cols.push_back(random_key(rng, max_keys));
    switch (kind) {
      case ValueKind::integer: nums.push_back(ints(rng)); break;
      case ValueKind::real: nums.push_back(reals(rng)); break;
      case ValueKind::text: strs.push_back(random_word(rng, 3)); break;
    }
  }
  if (kind == ValueKind::text) return assocarray::Assoc::from_triples(rows, cols, std::span<const std::string>(strs));
  return assocarray::Assoc::from_triples(rows, cols, std::span<const double>(nums));
}

}  // namespace oracle
