#include "assocarray/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace assocarray {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_in_range(bool cond, const std::string& msg) {
  if (!cond) throw std::out_of_range(msg);
}

void require_strictly_increasing(std::span<const index_t> idx, index_t bound, const char* what) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    require_in_range(idx[i] >= 0 && idx[i] < bound, std::string(what) + " index out of range");
    require(i == 0 || idx[i - 1] < idx[i], std::string(what) + " indices must be strictly increasing");
  }
}

// Stable counting sort of (major, minor, value) triples by major index.
struct Compressed {
  std::vector<index_t> indptr;
  std::vector<index_t> minor;
  std::vector<double> values;
};

Compressed compress(index_t n_major, std::span<const index_t> major, std::span<const index_t> minor,
                    std::span<const double> values) {
  Compressed out;
  out.indptr.assign(static_cast<std::size_t>(n_major) + 1, 0);
  for (index_t r : major) ++out.indptr[r + 1];
  for (index_t i = 0; i < n_major; ++i) out.indptr[i + 1] += out.indptr[i];
  out.minor.resize(minor.size());
  out.values.resize(values.size());
  std::vector<index_t> next(out.indptr.begin(), out.indptr.end() - 1);
  for (std::size_t t = 0; t < major.size(); ++t) {
    const index_t dst = next[major[t]]++;
    out.minor[dst] = minor[t];
    out.values[dst] = values[t];
  }
  return out;
}

std::vector<index_t> expand_indptr(std::span<const index_t> indptr) {
  std::vector<index_t> major(indptr.empty() ? 0 : static_cast<std::size_t>(indptr.back()));
  for (std::size_t i = 0; i + 1 < indptr.size(); ++i) {
    std::fill(major.begin() + indptr[i], major.begin() + indptr[i + 1], static_cast<index_t>(i));
  }
  return major;
}

// Returns m itself when already CSR, otherwise a converted copy held in `storage`.
const SparseMatrix& as_csr(const SparseMatrix& m, SparseMatrix& storage) {
  if (m.layout() == Layout::csr) return m;
  storage = convert(m, Layout::csr);
  return storage;
}

template <typename Fold>
SparseMatrix assemble_csr(const CellGrouping& g, std::span<const double> values, Fold fold) {
  std::vector<index_t> indptr(static_cast<std::size_t>(g.nrows) + 1, 0);
  std::vector<index_t> cols;
  std::vector<double> vals;
  cols.reserve(g.cell_col.size());
  vals.reserve(g.cell_col.size());
  for (index_t r = 0; r < g.nrows; ++r) {
    for (index_t c = g.indptr[r]; c < g.indptr[r + 1]; ++c) {
      double acc = values[g.order[g.cell_start[c]]];
      for (index_t t = g.cell_start[c] + 1; t < g.cell_start[c + 1]; ++t) {
        acc = fold(acc, values[g.order[t]]);
      }
      if (acc != 0.0) {
        cols.push_back(g.cell_col[c]);
        vals.push_back(acc);
      }
    }
    indptr[r + 1] = static_cast<index_t>(cols.size());
  }
  return SparseMatrix::from_parts(g.nrows, g.ncols, Layout::csr, std::move(indptr), std::move(cols),
                                  std::move(vals));
}

template <typename Add, typename Mul>
SparseMatrix gustavson(const SparseMatrix& a, const SparseMatrix& b, double zero, Add add, Mul mul) {
  const auto ap = a.indptr();
  const auto ai = a.indices();
  const auto& av = a.values();
  const auto bp = b.indptr();
  const auto bi = b.indices();
  const auto& bv = b.values();

  const index_t nrows = a.nrows();
  const index_t ncols = b.ncols();
  std::vector<double> acc(static_cast<std::size_t>(ncols), 0.0);
  std::vector<index_t> marker(static_cast<std::size_t>(ncols), -1);
  std::vector<index_t> touched;

  std::vector<index_t> indptr(static_cast<std::size_t>(nrows) + 1, 0);
  std::vector<index_t> cols;
  std::vector<double> vals;

  for (index_t i = 0; i < nrows; ++i) {
    touched.clear();
    for (index_t p = ap[i]; p < ap[i + 1]; ++p) {
      const index_t k = ai[p];
      const double aik = av[p];
      for (index_t q = bp[k]; q < bp[k + 1]; ++q) {
        const index_t j = bi[q];
        const double prod = mul(aik, bv[q]);
        if (marker[j] != i) {
          marker[j] = i;
          acc[j] = prod;
          touched.push_back(j);
        } else {
          acc[j] = add(acc[j], prod);
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    for (index_t j : touched) {
      const double v = acc[j];
      if (v != zero && v != 0.0) {
        cols.push_back(j);
        vals.push_back(v);
      }
    }
    indptr[i + 1] = static_cast<index_t>(cols.size());
  }
  return SparseMatrix::from_parts(nrows, ncols, Layout::csr, std::move(indptr), std::move(cols),
                                  std::move(vals));
}

}  // namespace

std::string to_string(Layout layout) {
  switch (layout) {
    case Layout::coo: return "coo";
    case Layout::csr: return "csr";
    case Layout::csc: return "csc";
  }
  return "?";
}

SparseMatrix::SparseMatrix(index_t nrows, index_t ncols, Layout layout)
    : nrows_(nrows), ncols_(ncols), layout_(layout) {
  require(nrows >= 0 && ncols >= 0, "matrix dimensions must be nonnegative");
  switch (layout) {
    case Layout::coo: outer_.clear(); break;
    case Layout::csr: outer_.assign(static_cast<std::size_t>(nrows) + 1, 0); break;
    case Layout::csc: outer_.assign(static_cast<std::size_t>(ncols) + 1, 0); break;
  }
}

SparseMatrix SparseMatrix::from_parts(index_t nrows, index_t ncols, Layout layout,
                                      std::vector<index_t> outer, std::vector<index_t> inner,
                                      std::vector<double> values) {
  require(nrows >= 0 && ncols >= 0, "matrix dimensions must be nonnegative");
  require(inner.size() == values.size(), "index and value arrays differ in length");
  if (layout == Layout::coo) {
    require(outer.size() == inner.size(), "COO row and column arrays differ in length");
    for (std::size_t t = 0; t < inner.size(); ++t) {
      require(outer[t] >= 0 && outer[t] < nrows, "COO row index out of range");
      require(inner[t] >= 0 && inner[t] < ncols, "COO column index out of range");
    }
  } else {
    const index_t n_major = layout == Layout::csr ? nrows : ncols;
    const index_t n_minor = layout == Layout::csr ? ncols : nrows;
    require(static_cast<index_t>(outer.size()) == n_major + 1, "indptr has the wrong length");
    require(outer.front() == 0, "indptr must start at 0");
    for (std::size_t i = 1; i < outer.size(); ++i) {
      require(outer[i - 1] <= outer[i], "indptr must be nondecreasing");
    }
    require(outer.back() == static_cast<index_t>(inner.size()), "indptr does not match entry count");
    for (index_t idx : inner) require(idx >= 0 && idx < n_minor, "index out of range");
  }
  SparseMatrix m;
  m.nrows_ = nrows;
  m.ncols_ = ncols;
  m.layout_ = layout;
  m.outer_ = std::move(outer);
  m.inner_ = std::move(inner);
  m.values_ = std::move(values);
  return m;
}

std::span<const index_t> SparseMatrix::indptr() const {
  if (layout_ == Layout::coo) throw std::logic_error("indptr() requires CSR or CSC layout");
  return outer_;
}

std::span<const index_t> SparseMatrix::indices() const {
  if (layout_ == Layout::coo) throw std::logic_error("indices() requires CSR or CSC layout");
  return inner_;
}

std::span<const index_t> SparseMatrix::row_indices() const {
  if (layout_ != Layout::coo) throw std::logic_error("row_indices() requires COO layout");
  return outer_;
}

std::span<const index_t> SparseMatrix::col_indices() const {
  if (layout_ != Layout::coo) throw std::logic_error("col_indices() requires COO layout");
  return inner_;
}

SparseMatrix SparseMatrix::map_values(const std::function<double(double)>& fn) const {
  SparseMatrix out = *this;
  for (double& v : out.values_) v = fn(v);
  return out;
}

SparseMatrix SparseMatrix::canonical() const {
  const SparseMatrix coo = convert(*this, Layout::coo);
  return convert(from_triples(nrows_, ncols_, coo.row_indices(), coo.col_indices(), coo.values_,
                              DupRule::sum),
                 layout_);
}

double SparseMatrix::at(index_t row, index_t col) const {
  require_in_range(row >= 0 && row < nrows_ && col >= 0 && col < ncols_, "at(): index out of range");
  if (layout_ == Layout::coo) {
    double total = 0.0;
    for (std::size_t t = 0; t < values_.size(); ++t) {
      if (outer_[t] == row && inner_[t] == col) total += values_[t];
    }
    return total;
  }
  const index_t major = layout_ == Layout::csr ? row : col;
  const index_t minor = layout_ == Layout::csr ? col : row;
  const auto first = inner_.begin() + outer_[major];
  const auto last = inner_.begin() + outer_[major + 1];
  const auto it = std::lower_bound(first, last, minor);
  if (it != last && *it == minor) return values_[it - inner_.begin()];
  return 0.0;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.nrows_ != b.nrows_ || a.ncols_ != b.ncols_) return false;
  const SparseMatrix ca = convert(a.canonical(), Layout::csr);
  const SparseMatrix cb = convert(b.canonical(), Layout::csr);
  return ca.outer_ == cb.outer_ && ca.inner_ == cb.inner_ && ca.values_ == cb.values_;
}

CellGrouping group_cells(index_t nrows, index_t ncols, std::span<const index_t> rows,
                         std::span<const index_t> cols) {
  require(rows.size() == cols.size(), "row and column index arrays differ in length");
  require(nrows >= 0 && ncols >= 0, "matrix dimensions must be nonnegative");
  const std::size_t n = rows.size();
  for (std::size_t t = 0; t < n; ++t) {
    require_in_range(rows[t] >= 0 && rows[t] < nrows, "row index out of range");
    require_in_range(cols[t] >= 0 && cols[t] < ncols, "column index out of range");
  }

  // LSD radix: stable by column, then stable by row.
  std::vector<index_t> count(static_cast<std::size_t>(std::max(nrows, ncols)) + 1);
  std::vector<index_t> by_col(n);
  std::fill(count.begin(), count.begin() + ncols + 1, 0);
  for (std::size_t t = 0; t < n; ++t) ++count[cols[t] + 1];
  for (index_t j = 0; j < ncols; ++j) count[j + 1] += count[j];
  for (std::size_t t = 0; t < n; ++t) by_col[count[cols[t]]++] = static_cast<index_t>(t);

  CellGrouping g;
  g.nrows = nrows;
  g.ncols = ncols;
  g.order.resize(n);
  std::fill(count.begin(), count.begin() + nrows + 1, 0);
  for (std::size_t t = 0; t < n; ++t) ++count[rows[t] + 1];
  for (index_t i = 0; i < nrows; ++i) count[i + 1] += count[i];
  for (index_t t : by_col) g.order[count[rows[t]]++] = t;

  g.indptr.assign(static_cast<std::size_t>(nrows) + 1, 0);
  g.cell_start.reserve(n + 1);
  g.cell_col.reserve(n);
  index_t prev_row = -1, prev_col = -1;
  for (std::size_t p = 0; p < n; ++p) {
    const index_t t = g.order[p];
    if (rows[t] != prev_row || cols[t] != prev_col) {
      g.cell_start.push_back(static_cast<index_t>(p));
      g.cell_col.push_back(cols[t]);
      ++g.indptr[rows[t] + 1];
      prev_row = rows[t];
      prev_col = cols[t];
    }
  }
  g.cell_start.push_back(static_cast<index_t>(n));
  for (index_t i = 0; i < nrows; ++i) g.indptr[i + 1] += g.indptr[i];
  return g;
}

SparseMatrix from_triples(index_t nrows, index_t ncols, std::span<const index_t> rows,
                          std::span<const index_t> cols, std::span<const double> values,
                          DupRule rule) {
  require(values.size() == rows.size(), "value array length differs from index arrays");
  const CellGrouping g = group_cells(nrows, ncols, rows, cols);
  SparseMatrix csr;
  switch (rule) {
    case DupRule::sum:
      csr = assemble_csr(g, values, [](double a, double b) { return a + b; });
      break;
    case DupRule::last:
      csr = assemble_csr(g, values, [](double, double b) { return b; });
      break;
    case DupRule::min:
      csr = assemble_csr(g, values, [](double a, double b) { return std::min(a, b); });
      break;
    case DupRule::max:
      csr = assemble_csr(g, values, [](double a, double b) { return std::max(a, b); });
      break;
  }
  return convert(csr, Layout::coo);
}

SparseMatrix from_triples(index_t nrows, index_t ncols, std::span<const index_t> rows,
                          std::span<const index_t> cols, std::span<const double> values,
                          const std::function<double(double, double)>& fold) {
  require(values.size() == rows.size(), "value array length differs from index arrays");
  return assemble_csr(group_cells(nrows, ncols, rows, cols), values, fold);
}

SparseMatrix convert(const SparseMatrix& m, Layout target) {
  if (m.layout_ == target) return m;
  switch (target) {
    case Layout::coo: {
      const SparseMatrix csr = m.layout_ == Layout::csr ? m : convert(m, Layout::csr);
      return SparseMatrix::from_parts(m.nrows_, m.ncols_, Layout::coo, expand_indptr(csr.outer_),
                                      csr.inner_, csr.values_);
    }
    case Layout::csr: {
      // From COO rows directly; from CSC via the column expansion.
      if (m.layout_ == Layout::coo) {
        auto c = compress(m.nrows_, m.outer_, m.inner_, m.values_);
        return SparseMatrix::from_parts(m.nrows_, m.ncols_, Layout::csr, std::move(c.indptr),
                                        std::move(c.minor), std::move(c.values));
      }
      const auto cols = expand_indptr(m.outer_);
      auto c = compress(m.nrows_, m.inner_, cols, m.values_);
      return SparseMatrix::from_parts(m.nrows_, m.ncols_, Layout::csr, std::move(c.indptr),
                                      std::move(c.minor), std::move(c.values));
    }
    case Layout::csc: {
      if (m.layout_ == Layout::coo) {
        auto c = compress(m.ncols_, m.inner_, m.outer_, m.values_);
        return SparseMatrix::from_parts(m.nrows_, m.ncols_, Layout::csc, std::move(c.indptr),
                                        std::move(c.minor), std::move(c.values));
      }
      const auto rows = expand_indptr(m.outer_);
      auto c = compress(m.ncols_, m.inner_, rows, m.values_);
      return SparseMatrix::from_parts(m.nrows_, m.ncols_, Layout::csc, std::move(c.indptr),
                                      std::move(c.minor), std::move(c.values));
    }
  }
  throw std::logic_error("unknown layout");
}

SparseMatrix transpose(const SparseMatrix& m) {
  // A CSR matrix read as CSC is its transpose.
  switch (m.layout()) {
    case Layout::csr:
      return SparseMatrix::from_parts(m.ncols(), m.nrows(), Layout::csc, m.outer(), m.inner(),
                                      m.values());
    case Layout::csc:
      return SparseMatrix::from_parts(m.ncols(), m.nrows(), Layout::csr, m.outer(), m.inner(),
                                      m.values());
    case Layout::coo:
      return convert(transpose(convert(m, Layout::csr)), Layout::coo);
  }
  throw std::logic_error("unknown layout");
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b) {
  require(a.nrows() == b.nrows() && a.ncols() == b.ncols(), "add: shape mismatch");
  SparseMatrix sa, sb;
  const SparseMatrix& x = as_csr(a, sa);
  const SparseMatrix& y = as_csr(b, sb);
  const auto xp = x.indptr(), xi = x.indices();
  const auto yp = y.indptr(), yi = y.indices();
  const auto& xv = x.values();
  const auto& yv = y.values();

  std::vector<index_t> indptr(static_cast<std::size_t>(a.nrows()) + 1, 0);
  std::vector<index_t> cols;
  std::vector<double> vals;
  cols.reserve(xi.size() + yi.size());
  vals.reserve(xi.size() + yi.size());
  auto emit = [&](index_t j, double v) {
    if (v != 0.0) {
      cols.push_back(j);
      vals.push_back(v);
    }
  };
  for (index_t i = 0; i < a.nrows(); ++i) {
    index_t p = xp[i], q = yp[i];
    while (p < xp[i + 1] && q < yp[i + 1]) {
      if (xi[p] < yi[q]) {
        emit(xi[p], xv[p]);
        ++p;
      } else if (yi[q] < xi[p]) {
        emit(yi[q], yv[q]);
        ++q;
      } else {
        emit(xi[p], xv[p] + yv[q]);
        ++p;
        ++q;
      }
    }
    for (; p < xp[i + 1]; ++p) emit(xi[p], xv[p]);
    for (; q < yp[i + 1]; ++q) emit(yi[q], yv[q]);
    indptr[i + 1] = static_cast<index_t>(cols.size());
  }
  return SparseMatrix::from_parts(a.nrows(), a.ncols(), Layout::csr, std::move(indptr),
                                  std::move(cols), std::move(vals));
}

SparseMatrix elementwise_multiply(const SparseMatrix& a, const SparseMatrix& b) {
  require(a.nrows() == b.nrows() && a.ncols() == b.ncols(), "elementwise_multiply: shape mismatch");
  SparseMatrix sa, sb;
  const SparseMatrix& x = as_csr(a, sa);
  const SparseMatrix& y = as_csr(b, sb);
  const auto xp = x.indptr(), xi = x.indices();
  const auto yp = y.indptr(), yi = y.indices();
  const auto& xv = x.values();
  const auto& yv = y.values();

  std::vector<index_t> indptr(static_cast<std::size_t>(a.nrows()) + 1, 0);
  std::vector<index_t> cols;
  std::vector<double> vals;
  for (index_t i = 0; i < a.nrows(); ++i) {
    index_t p = xp[i], q = yp[i];
    while (p < xp[i + 1] && q < yp[i + 1]) {
      if (xi[p] < yi[q]) {
        ++p;
      } else if (yi[q] < xi[p]) {
        ++q;
      } else {
        const double v = xv[p] * yv[q];
        if (v != 0.0) {
          cols.push_back(xi[p]);
          vals.push_back(v);
        }
        ++p;
        ++q;
      }
    }
    indptr[i + 1] = static_cast<index_t>(cols.size());
  }
  return SparseMatrix::from_parts(a.nrows(), a.ncols(), Layout::csr, std::move(indptr),
                                  std::move(cols), std::move(vals));
}

SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b, const NumericSemiring& ring) {
  require(a.ncols() == b.nrows(), "matmul: inner dimensions differ");
  SparseMatrix sa, sb;
  const SparseMatrix& x = as_csr(a, sa);
  const SparseMatrix& y = as_csr(b, sb);
  switch (ring.kind) {
    case SemiringKind::plus_times:
      return gustavson(x, y, ring.zero, std::plus<>{}, std::multiplies<>{});
    case SemiringKind::max_plus:
      return gustavson(
          x, y, ring.zero, [](double p, double q) { return std::max(p, q); }, std::plus<>{});
    case SemiringKind::max_min:
      return gustavson(
          x, y, ring.zero, [](double p, double q) { return std::max(p, q); },
          [](double p, double q) { return std::min(p, q); });
    case SemiringKind::custom:
      return gustavson(x, y, ring.zero, ring.add, ring.mul);
  }
  throw std::logic_error("unknown semiring kind");
}

SparseMatrix select(const SparseMatrix& m, const std::optional<std::vector<index_t>>& rows,
                    const std::optional<std::vector<index_t>>& cols) {
  if (rows) require_strictly_increasing(*rows, m.nrows(), "row");
  if (cols) require_strictly_increasing(*cols, m.ncols(), "column");
  SparseMatrix storage;
  const SparseMatrix& x = as_csr(m, storage);
  if (!rows && !cols) return x;

  const auto xp = x.indptr(), xi = x.indices();
  const auto& xv = x.values();
  std::vector<index_t> col_map;
  if (cols) {
    col_map.assign(static_cast<std::size_t>(m.ncols()), -1);
    for (std::size_t j = 0; j < cols->size(); ++j) col_map[(*cols)[j]] = static_cast<index_t>(j);
  }
  const index_t out_rows = rows ? static_cast<index_t>(rows->size()) : m.nrows();
  const index_t out_cols = cols ? static_cast<index_t>(cols->size()) : m.ncols();
  std::vector<index_t> indptr(static_cast<std::size_t>(out_rows) + 1, 0);
  std::vector<index_t> out_idx;
  std::vector<double> out_val;
  for (index_t r = 0; r < out_rows; ++r) {
    const index_t src = rows ? (*rows)[r] : r;
    for (index_t p = xp[src]; p < xp[src + 1]; ++p) {
      const index_t j = cols ? col_map[xi[p]] : xi[p];
      if (j >= 0) {
        out_idx.push_back(j);
        out_val.push_back(xv[p]);
      }
    }
    indptr[r + 1] = static_cast<index_t>(out_idx.size());
  }
  return SparseMatrix::from_parts(out_rows, out_cols, Layout::csr, std::move(indptr),
                                  std::move(out_idx), std::move(out_val));
}

SparseMatrix scatter(const SparseMatrix& m, index_t nrows, index_t ncols,
                     std::span<const index_t> row_targets, std::span<const index_t> col_targets) {
  require(static_cast<index_t>(row_targets.size()) == m.nrows(), "scatter: row target count mismatch");
  require(static_cast<index_t>(col_targets.size()) == m.ncols(), "scatter: column target count mismatch");
  require_strictly_increasing(row_targets, nrows, "row target");
  require_strictly_increasing(col_targets, ncols, "column target");
  SparseMatrix storage;
  const SparseMatrix& x = as_csr(m, storage);
  const auto xp = x.indptr(), xi = x.indices();

  std::vector<index_t> indptr(static_cast<std::size_t>(nrows) + 1, 0);
  for (index_t i = 0; i < m.nrows(); ++i) indptr[row_targets[i] + 1] = xp[i + 1] - xp[i];
  for (index_t i = 0; i < nrows; ++i) indptr[i + 1] += indptr[i];
  std::vector<index_t> cols(xi.size());
  for (std::size_t p = 0; p < xi.size(); ++p) cols[p] = col_targets[xi[p]];
  // Row order is preserved because targets are increasing, so values keep their order.
  return SparseMatrix::from_parts(nrows, ncols, Layout::csr, std::move(indptr), std::move(cols),
                                  x.values());
}

NonemptyMasks nonempty_rows_cols(const SparseMatrix& m) {
  auto good = [](std::span<const index_t> indptr) {
    std::vector<bool> mask(indptr.size() - 1);
    for (std::size_t i = 0; i + 1 < indptr.size(); ++i) mask[i] = indptr[i] < indptr[i + 1];
    return mask;
  };
  // Builds the other layout's indptr by counting; the entries themselves are
  // never permuted.
  auto counted_indptr = [](index_t n, std::span<const index_t> idx) {
    std::vector<index_t> indptr(static_cast<std::size_t>(n) + 1, 0);
    for (index_t k : idx) ++indptr[k + 1];
    for (index_t i = 0; i < n; ++i) indptr[i + 1] += indptr[i];
    return indptr;
  };
  NonemptyMasks out;
  switch (m.layout()) {
    case Layout::csr:
      out.rows = good(m.indptr());
      out.cols = good(counted_indptr(m.ncols(), m.indices()));
      break;
    case Layout::csc:
      out.rows = good(counted_indptr(m.nrows(), m.indices()));
      out.cols = good(m.indptr());
      break;
    case Layout::coo:
      out.rows = good(counted_indptr(m.nrows(), m.row_indices()));
      out.cols = good(counted_indptr(m.ncols(), m.col_indices()));
      break;
  }
  return out;
}

std::vector<index_t> mask_to_indices(const std::vector<bool>& mask) {
  std::vector<index_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(static_cast<index_t>(i));
  }
  return out;
}

}  // namespace assocarray
