#include "assocarray/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "assocarray/sorted_sets.hpp"

namespace assocarray {

namespace ops {

ValueOp min() {
  return {"min", [](double a, double b) { return std::min(a, b); },
          [](const std::string& a, const std::string& b) { return b < a ? b : a; }};
}

ValueOp max() {
  return {"max", [](double a, double b) { return std::max(a, b); },
          [](const std::string& a, const std::string& b) { return a < b ? b : a; }};
}

ValueOp sum() { return {"sum", [](double a, double b) { return a + b; }, nullptr}; }

ValueOp concat() {
  return {"concat", nullptr, [](const std::string& a, const std::string& b) { return a + b; }};
}

ValueOp first() {
  return {"first", [](double a, double) { return a; },
          [](const std::string& a, const std::string&) { return a; }};
}

ValueOp last() {
  return {"last", [](double, double b) { return b; },
          [](const std::string&, const std::string& b) { return b; }};
}

}  // namespace ops

namespace {

// Length every argument broadcasts to; each input must have that length or 1.
std::size_t broadcast_length(std::size_t nrows, std::size_t ncols, std::size_t nvals) {
  const std::size_t n = std::max({nrows, ncols, nvals});
  for (std::size_t len : {nrows, ncols, nvals}) {
    if (len != n && len != 1) {
      throw std::invalid_argument("cannot broadcast triple arguments of lengths " +
                                  std::to_string(nrows) + ", " + std::to_string(ncols) + ", " +
                                  std::to_string(nvals));
    }
  }
  return n;
}

// Sorted key list plus, for each of the n broadcast triples, its key position.
struct KeyIndex {
  std::vector<Key> keys;
  std::vector<index_t> pos;
};

KeyIndex index_keys(std::span<const Key> keys, std::size_t n) {
  auto u = sorted_unique(keys);
  KeyIndex out{std::move(u.items), std::move(u.positions)};
  if (out.pos.size() == 1 && n != 1) out.pos.assign(n, out.pos[0]);
  return out;
}

void require_op(bool present, const ValueOp& op, const char* kind) {
  if (!present) {
    throw std::invalid_argument("operation '" + op.name + "' is not defined for " + kind + " values");
  }
}

bool is_strictly_sorted_keys(const std::vector<Key>& keys) {
  return is_strictly_sorted(std::span<const Key>(keys));
}

SparseMatrix pattern_of(const SparseMatrix& m) {
  return m.map_values([](double) { return 1.0; });
}

Triples concat_triples(const Triples& a, const Triples& b) {
  Triples out;
  out.rows = a.rows;
  out.rows.insert(out.rows.end(), b.rows.begin(), b.rows.end());
  out.cols = a.cols;
  out.cols.insert(out.cols.end(), b.cols.begin(), b.cols.end());
  std::visit(
      [&](const auto& av) {
        using V = std::decay_t<decltype(av)>;
        V merged = av;
        const V& bv = std::get<V>(b.vals);
        merged.insert(merged.end(), bv.begin(), bv.end());
        out.vals = std::move(merged);
      },
      a.vals);
  return out;
}

Triples with_kind(Triples t, bool numeric) {
  // An empty operand adopts the kind of its partner.
  if (t.size() == 0) {
    if (numeric) {
      t.vals = std::vector<double>{};
    } else {
      t.vals = std::vector<std::string>{};
    }
  }
  return t;
}

}  // namespace

Assoc::Assoc() : adj_(0, 0, Layout::csr) {}

Assoc Assoc::from_triples(std::span<const Key> rows, std::span<const Key> cols,
                          std::span<const double> vals, const ValueOp& aggregate) {
  const std::size_t n = broadcast_length(rows.size(), cols.size(), vals.size());
  if (n == 0) return Assoc();
  require_op(static_cast<bool>(aggregate.numeric), aggregate, "numeric");
  KeyIndex r = index_keys(rows, n);
  KeyIndex c = index_keys(cols, n);
  std::vector<double> expanded;
  if (vals.size() != n) {
    expanded.assign(n, vals[0]);
    vals = expanded;
  }
  SparseMatrix adj = assocarray::from_triples(static_cast<index_t>(r.keys.size()),
                                              static_cast<index_t>(c.keys.size()), r.pos, c.pos,
                                              vals, aggregate.numeric);
  return condense({std::move(r.keys), std::move(c.keys), std::nullopt, std::move(adj)});
}

Assoc Assoc::from_triples(std::span<const Key> rows, std::span<const Key> cols,
                          std::span<const std::string> vals, const ValueOp& aggregate) {
  const std::size_t n = broadcast_length(rows.size(), cols.size(), vals.size());
  if (n == 0) return Assoc();
  require_op(static_cast<bool>(aggregate.text), aggregate, "string");
  KeyIndex r = index_keys(rows, n);
  KeyIndex c = index_keys(cols, n);
  const index_t nr = static_cast<index_t>(r.keys.size());
  const index_t nc = static_cast<index_t>(c.keys.size());
  const CellGrouping g = group_cells(nr, nc, r.pos, c.pos);
  auto val_at = [&](index_t t) -> const std::string& { return vals.size() == 1 ? vals[0] : vals[t]; };

  // Fold each cell in input order; keep nonempty results.
  std::vector<index_t> indptr(static_cast<std::size_t>(nr) + 1, 0);
  std::vector<index_t> cell_cols;
  std::vector<std::string> cell_vals;
  cell_cols.reserve(g.cell_col.size());
  cell_vals.reserve(g.cell_col.size());
  for (index_t i = 0; i < nr; ++i) {
    for (index_t cell = g.indptr[i]; cell < g.indptr[i + 1]; ++cell) {
      const index_t begin = g.cell_start[cell];
      const index_t end = g.cell_start[cell + 1];
      std::string acc = val_at(g.order[begin]);
      for (index_t t = begin + 1; t < end; ++t) acc = aggregate.text(acc, val_at(g.order[t]));
      if (!acc.empty()) {
        cell_cols.push_back(g.cell_col[cell]);
        cell_vals.push_back(std::move(acc));
      }
    }
    indptr[i + 1] = static_cast<index_t>(cell_cols.size());
  }

  auto pool = sorted_unique(cell_vals);
  std::vector<double> pointers(pool.positions.size());
  for (std::size_t t = 0; t < pointers.size(); ++t) pointers[t] = static_cast<double>(pool.positions[t] + 1);
  SparseMatrix adj = SparseMatrix::from_parts(nr, nc, Layout::csr, std::move(indptr),
                                              std::move(cell_cols), std::move(pointers));
  return condense({std::move(r.keys), std::move(c.keys), std::move(pool.items), std::move(adj)});
}

Assoc Assoc::from_triples(std::span<const Key> rows, std::span<const Key> cols,
                          std::span<const Value> vals, const ValueOp& aggregate) {
  const bool any_text = std::any_of(vals.begin(), vals.end(), [](const Value& v) { return v.index() == 1; });
  const bool any_num = std::any_of(vals.begin(), vals.end(), [](const Value& v) { return v.index() == 0; });
  if (any_text && any_num) throw std::invalid_argument("values mix numbers and strings");
  if (any_text) {
    std::vector<std::string> text;
    text.reserve(vals.size());
    for (const auto& v : vals) text.push_back(std::get<std::string>(v));
    return from_triples(rows, cols, std::span<const std::string>(text), aggregate);
  }
  std::vector<double> nums;
  nums.reserve(vals.size());
  for (const auto& v : vals) nums.push_back(std::get<double>(v));
  return from_triples(rows, cols, std::span<const double>(nums), aggregate);
}

Assoc Assoc::from_triples(const Triples& t, const ValueOp& aggregate) {
  return std::visit(
      [&](const auto& v) {
        using V = typename std::decay_t<decltype(v)>::value_type;
        return from_triples(t.rows, t.cols, std::span<const V>(v), aggregate);
      },
      t.vals);
}

namespace {

std::vector<Key> leading_unique(std::span<const Key> keys, index_t count, const char* axis) {
  auto u = sorted_unique(keys);
  if (static_cast<index_t>(u.items.size()) < count) {
    throw std::invalid_argument(std::string("too few unique ") + axis + " keys for adjacency shape");
  }
  u.items.resize(static_cast<std::size_t>(count));
  return std::move(u.items);
}

}  // namespace

Assoc Assoc::from_adjacency(std::span<const Key> rows, std::span<const Key> cols,
                            const SparseMatrix& adj) {
  std::vector<Key> r = leading_unique(rows, adj.nrows(), "row");
  std::vector<Key> c = leading_unique(cols, adj.ncols(), "column");
  return condense({std::move(r), std::move(c), std::nullopt, convert(adj.canonical(), Layout::csr)});
}

Assoc Assoc::from_adjacency(std::span<const Key> rows, std::span<const Key> cols,
                            std::span<const std::string> vals, const SparseMatrix& adj) {
  std::vector<Key> r = leading_unique(rows, adj.nrows(), "row");
  std::vector<Key> c = leading_unique(cols, adj.ncols(), "column");
  std::vector<std::string> pool = sorted_unique(vals).items;
  if (!pool.empty() && pool.front().empty()) pool.erase(pool.begin());
  SparseMatrix m = convert(adj.canonical(), Layout::csr);
  const double limit = static_cast<double>(pool.size());
  for (double v : m.values()) {
    if (v != std::trunc(v) || v < 1.0 || v > limit) {
      throw std::invalid_argument("adjacency pointer " + format_number(v) + " outside value pool of size " +
                                  std::to_string(pool.size()));
    }
  }
  return condense({std::move(r), std::move(c), std::move(pool), std::move(m)});
}

Assoc condense(AssocParts parts) {
  if (parts.adj.nrows() != static_cast<index_t>(parts.row.size()) ||
      parts.adj.ncols() != static_cast<index_t>(parts.col.size())) {
    throw std::invalid_argument("condense: key counts do not match adjacency shape");
  }
  if (!is_strictly_sorted_keys(parts.row) || !is_strictly_sorted_keys(parts.col)) {
    throw std::invalid_argument("condense: keys must be sorted and unique");
  }
  SparseMatrix adj = convert(parts.adj, Layout::csr);
  {
    const auto p = adj.indptr();
    const auto idx = adj.indices();
    for (index_t i = 0; i < adj.nrows(); ++i) {
      for (index_t q = p[i] + 1; q < p[i + 1]; ++q) {
        if (idx[q - 1] >= idx[q]) throw std::invalid_argument("condense: adjacency is not canonical");
      }
    }
    for (double v : adj.values()) {
      if (v == 0.0) throw std::invalid_argument("condense: adjacency stores an explicit zero");
    }
  }
  if (adj.nnz() == 0) return Assoc();

  Assoc out;
  const NonemptyMasks masks = nonempty_rows_cols(adj);
  const bool all_rows = std::all_of(masks.rows.begin(), masks.rows.end(), [](bool b) { return b; });
  const bool all_cols = std::all_of(masks.cols.begin(), masks.cols.end(), [](bool b) { return b; });
  if (all_rows) {
    out.row_ = std::move(parts.row);
  } else {
    for (std::size_t i = 0; i < masks.rows.size(); ++i) {
      if (masks.rows[i]) out.row_.push_back(std::move(parts.row[i]));
    }
  }
  if (all_cols) {
    out.col_ = std::move(parts.col);
  } else {
    for (std::size_t j = 0; j < masks.cols.size(); ++j) {
      if (masks.cols[j]) out.col_.push_back(std::move(parts.col[j]));
    }
  }
  if (!all_rows || !all_cols) {
    std::optional<std::vector<index_t>> keep_rows, keep_cols;
    if (!all_rows) keep_rows = mask_to_indices(masks.rows);
    if (!all_cols) keep_cols = mask_to_indices(masks.cols);
    adj = select(adj, keep_rows, keep_cols);
  }

  if (parts.pool) {
    std::vector<std::string>& pool = *parts.pool;
    std::vector<index_t> remap(pool.size() + 1, 0);
    for (double v : adj.values()) remap[static_cast<std::size_t>(v)] = 1;
    index_t used = 0;
    for (std::size_t k = 1; k < remap.size(); ++k) {
      if (remap[k]) remap[k] = ++used;
    }
    if (used != static_cast<index_t>(pool.size())) {
      std::vector<std::string> kept;
      kept.reserve(static_cast<std::size_t>(used));
      for (std::size_t k = 1; k < remap.size(); ++k) {
        if (remap[k]) kept.push_back(std::move(pool[k - 1]));
      }
      pool = std::move(kept);
      adj = adj.map_values([&](double v) { return static_cast<double>(remap[static_cast<std::size_t>(v)]); });
    }
    out.pool_ = std::move(pool);
    out.numeric_ = false;
  }
  out.adj_ = std::move(adj);
  return out;
}

Triples Assoc::triples() const {
  Triples t;
  const auto p = adj_.indptr();
  const auto idx = adj_.indices();
  const auto& vals = adj_.values();
  t.rows.reserve(vals.size());
  t.cols.reserve(vals.size());
  for (index_t i = 0; i < nrows(); ++i) {
    for (index_t q = p[i]; q < p[i + 1]; ++q) {
      t.rows.push_back(row_[i]);
      t.cols.push_back(col_[idx[q]]);
    }
  }
  if (numeric_) {
    t.vals = vals;
  } else {
    std::vector<std::string> text;
    text.reserve(vals.size());
    for (double v : vals) text.push_back(pool_[static_cast<std::size_t>(v) - 1]);
    t.vals = std::move(text);
  }
  return t;
}

// ---- selectors ----

Selector Selector::key(Key k) {
  Selector s(Kind::key);
  s.keys_.push_back(std::move(k));
  return s;
}

Selector Selector::keys(std::vector<Key> ks) {
  Selector s(Kind::keys);
  s.keys_ = std::move(ks);
  return s;
}

Selector Selector::range(Key lo, Key hi) {
  Selector s(Kind::range);
  s.keys_ = {std::move(lo), std::move(hi)};
  return s;
}

Selector Selector::parse_range(std::string_view text, char delimiter) {
  auto malformed = [&]() {
    return std::invalid_argument("malformed key range '" + std::string(text) +
                                 "': expected lo" + delimiter + ":" + delimiter + "hi" + delimiter);
  };
  if (text.empty() || text.back() != delimiter) throw malformed();
  std::vector<std::string_view> tokens;
  std::string_view body = text.substr(0, text.size() - 1);
  while (true) {
    const auto cut = body.find(delimiter);
    tokens.push_back(body.substr(0, cut));
    if (cut == std::string_view::npos) break;
    body.remove_prefix(cut + 1);
  }
  if (tokens.size() != 3 || tokens[1] != ":" || tokens[0].empty() || tokens[2].empty()) {
    throw malformed();
  }
  return range(Key(tokens[0]), Key(tokens[2]));
}

Selector Selector::positions(std::vector<index_t> pos) {
  Selector s(Kind::positions);
  s.positions_ = std::move(pos);
  return s;
}

Selector Selector::slice(index_t start, index_t stop) {
  Selector s(Kind::slice);
  s.start_ = start;
  s.stop_ = stop;
  return s;
}

std::vector<index_t> Selector::resolve(std::span<const Key> sorted_keys) const {
  const index_t n = static_cast<index_t>(sorted_keys.size());
  std::vector<index_t> out;
  switch (kind_) {
    case Kind::all:
      out.resize(static_cast<std::size_t>(n));
      for (index_t i = 0; i < n; ++i) out[i] = i;
      return out;
    case Kind::key:
    case Kind::keys:
      for (const Key& k : keys_) {
        auto it = std::lower_bound(sorted_keys.begin(), sorted_keys.end(), k);
        if (it != sorted_keys.end() && *it == k) out.push_back(it - sorted_keys.begin());
      }
      break;
    case Kind::range: {
      if (keys_[1] < keys_[0]) return out;
      auto lo = std::lower_bound(sorted_keys.begin(), sorted_keys.end(), keys_[0]);
      auto hi = std::upper_bound(sorted_keys.begin(), sorted_keys.end(), keys_[1]);
      for (auto it = lo; it < hi; ++it) out.push_back(it - sorted_keys.begin());
      return out;
    }
    case Kind::positions:
      for (index_t p : positions_) {
        if (p < 0 || p >= n) {
          throw std::out_of_range("position " + std::to_string(p) + " out of range for " +
                                  std::to_string(n) + " keys");
        }
        out.push_back(p);
      }
      break;
    case Kind::slice: {
      auto clamp = [n](index_t v) {
        if (v < 0) v += n;
        return std::clamp<index_t>(v, 0, n);
      };
      for (index_t i = clamp(start_); i < clamp(stop_); ++i) out.push_back(i);
      return out;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Assoc Assoc::get(const Selector& rows, const Selector& cols) const {
  std::vector<index_t> rp = rows.resolve(row_);
  std::vector<index_t> cp = cols.resolve(col_);
  if (rp.empty() || cp.empty()) return Assoc();
  std::vector<Key> r, c;
  r.reserve(rp.size());
  c.reserve(cp.size());
  for (index_t i : rp) r.push_back(row_[i]);
  for (index_t j : cp) c.push_back(col_[j]);
  SparseMatrix sub = select(adj_, std::move(rp), std::move(cp));
  std::optional<std::vector<std::string>> pool;
  if (!numeric_) pool = pool_;
  return condense({std::move(r), std::move(c), std::move(pool), std::move(sub)});
}

Value Assoc::get(const Key& row, const Key& col) const {
  const Value empty_value = numeric_ ? Value(0.0) : Value(std::string());
  auto ri = std::lower_bound(row_.begin(), row_.end(), row);
  auto ci = std::lower_bound(col_.begin(), col_.end(), col);
  if (ri == row_.end() || *ri != row || ci == col_.end() || *ci != col) return empty_value;
  const double v = adj_.at(ri - row_.begin(), ci - col_.begin());
  if (v == 0.0) return empty_value;
  if (numeric_) return v;
  return pool_[static_cast<std::size_t>(v) - 1];
}

Assoc Assoc::set(const Key& row, const Key& col, const Value& v) const {
  const bool v_numeric = v.index() == 0;
  if (!empty() && v_numeric != numeric_) {
    throw std::invalid_argument("cannot assign a " + std::string(v_numeric ? "numeric" : "string") +
                                " value into a " + (numeric_ ? "numeric" : "string") + " array");
  }
  Triples t = with_kind(triples(), v_numeric);
  t.rows.push_back(row);
  t.cols.push_back(col);
  if (v_numeric) {
    std::get<0>(t.vals).push_back(std::get<double>(v));
  } else {
    std::get<1>(t.vals).push_back(std::get<std::string>(v));
  }
  return from_triples(t, ops::last());
}

Assoc Assoc::logical() const {
  Assoc out = *this;
  out.pool_.clear();
  out.numeric_ = true;
  out.adj_ = pattern_of(adj_);
  return out;
}

Assoc Assoc::transpose() const {
  Assoc out;
  out.row_ = col_;
  out.col_ = row_;
  out.pool_ = pool_;
  out.numeric_ = numeric_;
  out.adj_ = convert(assocarray::transpose(adj_), Layout::csr);
  return out;
}

std::vector<std::string> Assoc::check_invariants() const {
  std::vector<std::string> problems;
  if (!is_strictly_sorted_keys(row_)) problems.emplace_back("row keys not strictly increasing");
  if (!is_strictly_sorted_keys(col_)) problems.emplace_back("column keys not strictly increasing");
  if (adj_.layout() != Layout::csr) problems.emplace_back("adjacency is not CSR");
  if (adj_.nrows() != nrows() || adj_.ncols() != ncols()) {
    problems.emplace_back("adjacency shape does not match key counts");
    return problems;
  }
  const auto p = adj_.indptr();
  const auto idx = adj_.indices();
  for (index_t i = 0; i < adj_.nrows(); ++i) {
    for (index_t q = p[i] + 1; q < p[i + 1]; ++q) {
      if (idx[q - 1] >= idx[q]) {
        problems.emplace_back("adjacency row " + std::to_string(i) + " not strictly sorted");
        break;
      }
    }
  }
  const NonemptyMasks masks = nonempty_rows_cols(adj_);
  if (std::find(masks.rows.begin(), masks.rows.end(), false) != masks.rows.end()) {
    problems.emplace_back("empty row present (not condensed)");
  }
  if (std::find(masks.cols.begin(), masks.cols.end(), false) != masks.cols.end()) {
    problems.emplace_back("empty column present (not condensed)");
  }
  if (empty() && (!row_.empty() || !col_.empty() || !numeric_)) {
    problems.emplace_back("empty array must have no keys and be numeric");
  }
  if (numeric_) {
    if (!pool_.empty()) problems.emplace_back("numeric array carries a value pool");
    for (double v : adj_.values()) {
      if (v == 0.0 || std::isnan(v)) {
        problems.emplace_back("numeric adjacency stores zero or NaN");
        break;
      }
    }
  } else {
    for (std::size_t k = 0; k < pool_.size(); ++k) {
      if (pool_[k].empty()) problems.emplace_back("value pool contains the empty string");
      if (k > 0 && !(pool_[k - 1] < pool_[k])) problems.emplace_back("value pool not strictly sorted");
    }
    std::vector<bool> hit(pool_.size(), false);
    for (double v : adj_.values()) {
      if (v != std::trunc(v) || v < 1.0 || v > static_cast<double>(pool_.size())) {
        problems.emplace_back("adjacency pointer " + format_number(v) + " outside pool");
        return problems;
      }
      hit[static_cast<std::size_t>(v) - 1] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
      problems.emplace_back("value pool has unreferenced entries");
    }
  }
  return problems;
}

bool operator==(const Assoc& a, const Assoc& b) {
  return a.numeric_ == b.numeric_ && a.row_ == b.row_ && a.col_ == b.col_ && a.pool_ == b.pool_ &&
         a.adj_.outer() == b.adj_.outer() && a.adj_.inner() == b.adj_.inner() &&
         a.adj_.values() == b.adj_.values();
}

// ---- algebra ----

Assoc combine(const Assoc& a, const Assoc& b, const ValueOp& op) {
  if (!a.empty() && !b.empty() && a.is_numeric() != b.is_numeric()) {
    throw std::invalid_argument("combine: cannot mix numeric and string arrays");
  }
  const bool numeric = a.empty() ? b.is_numeric() : a.is_numeric();
  const Triples t = concat_triples(with_kind(a.triples(), numeric), with_kind(b.triples(), numeric));
  return Assoc::from_triples(t, op);
}

Assoc add(const Assoc& a, const Assoc& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.is_numeric() != b.is_numeric()) {
    throw std::invalid_argument("add: cannot add a numeric and a string array");
  }
  if (a.is_string()) return combine(a, b, ops::concat());

  auto rows = detail::union_unchecked(std::span<const Key>(a.row()), std::span<const Key>(b.row()));
  auto cols = detail::union_unchecked(std::span<const Key>(a.col()), std::span<const Key>(b.col()));
  const index_t nr = static_cast<index_t>(rows.merged.size());
  const index_t nc = static_cast<index_t>(cols.merged.size());
  SparseMatrix sum = assocarray::add(scatter(a.adj(), nr, nc, rows.map_left, cols.map_left),
                                     scatter(b.adj(), nr, nc, rows.map_right, cols.map_right));
  return condense({std::move(rows.merged), std::move(cols.merged), std::nullopt, std::move(sum)});
}

Assoc multiply_elementwise(const Assoc& a, const Assoc& b) {
  if (a.empty() || b.empty()) return Assoc();
  auto rows = detail::intersection_unchecked(std::span<const Key>(a.row()), std::span<const Key>(b.row()));
  auto cols = detail::intersection_unchecked(std::span<const Key>(a.col()), std::span<const Key>(b.col()));
  if (rows.merged.empty() || cols.merged.empty()) return Assoc();
  const SparseMatrix as = select(a.adj(), rows.map_left, cols.map_left);
  const SparseMatrix bs = select(b.adj(), rows.map_right, cols.map_right);

  if (a.is_numeric()) {
    const SparseMatrix prod = elementwise_multiply(as, b.is_numeric() ? bs : pattern_of(bs));
    return condense({std::move(rows.merged), std::move(cols.merged), std::nullopt, prod});
  }
  if (b.is_numeric()) {
    // Pointer times 1 keeps the pointer, so a's strings survive where b is set.
    const SparseMatrix masked = elementwise_multiply(as, pattern_of(bs));
    return condense({std::move(rows.merged), std::move(cols.merged), a.val(), masked});
  }

  // string x string: dictionary minimum over a pool spanning both inputs.
  auto pool = detail::union_unchecked(std::span<const std::string>(a.val()),
                                      std::span<const std::string>(b.val()));
  const auto ap = as.indptr(), ai = as.indices();
  const auto bp = bs.indptr(), bi = bs.indices();
  const auto& av = as.values();
  const auto& bv = bs.values();
  std::vector<index_t> indptr(static_cast<std::size_t>(as.nrows()) + 1, 0);
  std::vector<index_t> out_cols;
  std::vector<double> out_vals;
  for (index_t i = 0; i < as.nrows(); ++i) {
    index_t p = ap[i], q = bp[i];
    while (p < ap[i + 1] && q < bp[i + 1]) {
      if (ai[p] < bi[q]) {
        ++p;
      } else if (bi[q] < ai[p]) {
        ++q;
      } else {
        const index_t ka = pool.map_left[static_cast<std::size_t>(av[p]) - 1];
        const index_t kb = pool.map_right[static_cast<std::size_t>(bv[q]) - 1];
        out_cols.push_back(ai[p]);
        out_vals.push_back(static_cast<double>(std::min(ka, kb) + 1));
        ++p;
        ++q;
      }
    }
    indptr[i + 1] = static_cast<index_t>(out_cols.size());
  }
  SparseMatrix adj = SparseMatrix::from_parts(as.nrows(), as.ncols(), Layout::csr, std::move(indptr),
                                              std::move(out_cols), std::move(out_vals));
  return condense({std::move(rows.merged), std::move(cols.merged), std::move(pool.merged), std::move(adj)});
}

Assoc array_product(const Assoc& a, const Assoc& b, const NumericSemiring& ring) {
  if (a.empty() || b.empty()) return Assoc();
  const Assoc la = a.is_string() ? a.logical() : a;
  const Assoc lb = b.is_string() ? b.logical() : b;
  auto inner = detail::intersection_unchecked(std::span<const Key>(la.col()), std::span<const Key>(lb.row()));
  if (inner.merged.empty()) return Assoc();
  const SparseMatrix as = select(la.adj(), std::nullopt, inner.map_left);
  const SparseMatrix bs = select(lb.adj(), inner.map_right, std::nullopt);
  SparseMatrix prod = matmul(as, bs, ring);
  return condense({la.row(), lb.col(), std::nullopt, std::move(prod)});
}

Assoc elementwise_min(const Assoc& a, const Assoc& b) { return combine(a, b, ops::min()); }

Assoc elementwise_max(const Assoc& a, const Assoc& b) { return combine(a, b, ops::max()); }

std::string to_string(const Value& v) {
  if (v.index() == 0) return format_number(std::get<double>(v));
  return std::get<std::string>(v);
}

}  // namespace assocarray
