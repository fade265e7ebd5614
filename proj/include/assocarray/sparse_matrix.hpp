#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "assocarray/key.hpp"
#include "assocarray/semiring.hpp"

namespace assocarray {

enum class Layout { coo, csr, csc };

std::string to_string(Layout layout);

/// How duplicate coordinates are merged during assembly.
enum class DupRule { sum, last, min, max };

/**
 * Sparse 2-D matrix of doubles in COO, CSR or CSC layout.
 *
 * Matrices produced by the factory functions and kernels below are
 * canonical: coordinates sorted (row-major for COO and CSR, column-major
 * for CSC), no duplicates, and no stored 0.0. Two canonical matrices with
 * the same layout and logical content have identical arrays.
 *
 * Storage uses two index arrays whose meaning depends on the layout:
 *   COO: outer = row indices,        inner = column indices
 *   CSR: outer = indptr (nrows + 1), inner = column indices
 *   CSC: outer = indptr (ncols + 1), inner = row indices
 */
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(index_t nrows, index_t ncols, Layout layout = Layout::csr);

  /// Wraps raw arrays after validating them. Duplicates and explicit zeros
  /// are allowed here; call canonical() to normalise.
  static SparseMatrix from_parts(index_t nrows, index_t ncols, Layout layout,
                                 std::vector<index_t> outer, std::vector<index_t> inner,
                                 std::vector<double> values);

  index_t nrows() const { return nrows_; }
  index_t ncols() const { return ncols_; }
  Layout layout() const { return layout_; }
  index_t nnz() const { return static_cast<index_t>(values_.size()); }

  const std::vector<index_t>& outer() const { return outer_; }
  const std::vector<index_t>& inner() const { return inner_; }
  const std::vector<double>& values() const { return values_; }

  std::span<const index_t> indptr() const;        // CSR/CSC
  std::span<const index_t> indices() const;       // CSR/CSC
  std::span<const index_t> row_indices() const;   // COO
  std::span<const index_t> col_indices() const;   // COO

  /// Same structure, values replaced by fn(value).
  SparseMatrix map_values(const std::function<double(double)>& fn) const;

  /// Sorted, deduplicated (summing) and zero-pruned copy in the same layout.
  SparseMatrix canonical() const;

  double at(index_t row, index_t col) const;

  /// Logical equality: same shape and same stored (row, col, value) set,
  /// independent of layout.
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  index_t nrows_ = 0;
  index_t ncols_ = 0;
  Layout layout_ = Layout::csr;
  std::vector<index_t> outer_ = {0};
  std::vector<index_t> inner_;
  std::vector<double> values_;

  friend SparseMatrix convert(const SparseMatrix&, Layout);
};

/// Cells grouped by coordinate, in row-major order.
///
/// Cell c sits at (row, cell_col[c]) for indptr[row] <= c < indptr[row+1];
/// the input triples that landed in it are order[cell_start[c] ..
/// cell_start[c+1]), listed in input order.
struct CellGrouping {
  index_t nrows = 0;
  index_t ncols = 0;
  std::vector<index_t> indptr;
  std::vector<index_t> cell_col;
  std::vector<index_t> cell_start;
  std::vector<index_t> order;
};

/// Stable two-pass counting sort of coordinates. O(n + nrows + ncols).
CellGrouping group_cells(index_t nrows, index_t ncols, std::span<const index_t> rows,
                         std::span<const index_t> cols);

/// Canonical COO assembly. Indices outside the shape raise std::out_of_range.
SparseMatrix from_triples(index_t nrows, index_t ncols, std::span<const index_t> rows,
                          std::span<const index_t> cols, std::span<const double> values,
                          DupRule rule = DupRule::sum);

/// Assembly with an arbitrary fold over duplicates, applied in input order.
/// Result is canonical CSR.
SparseMatrix from_triples(index_t nrows, index_t ncols, std::span<const index_t> rows,
                          std::span<const index_t> cols, std::span<const double> values,
                          const std::function<double(double, double)>& fold);

SparseMatrix convert(const SparseMatrix& m, Layout target);
SparseMatrix transpose(const SparseMatrix& m);

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix elementwise_multiply(const SparseMatrix& a, const SparseMatrix& b);

/// Semiring product: C(i,j) = add over k of mul(A(i,k), B(k,j)), taken over
/// stored entries only (absent entries stand for ring.zero). Results equal
/// to ring.zero or to 0.0 are not stored. Row-wise Gustavson with a dense
/// accumulator; returns CSR.
SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b,
                    const NumericSemiring& ring = plus_times());

/// Submatrix m[rows, cols]; std::nullopt selects everything. Index lists
/// must be strictly increasing and in range. Returns CSR.
SparseMatrix select(const SparseMatrix& m, const std::optional<std::vector<index_t>>& rows,
                    const std::optional<std::vector<index_t>>& cols);

/// Inverse of select: row i of m goes to row_targets[i] of an
/// (nrows x ncols) result, column j to col_targets[j]. Targets must be
/// strictly increasing and in range. Returns CSR.
SparseMatrix scatter(const SparseMatrix& m, index_t nrows, index_t ncols,
                     std::span<const index_t> row_targets, std::span<const index_t> col_targets);

struct NonemptyMasks {
  std::vector<bool> rows;
  std::vector<bool> cols;
};

/// Row i is nonempty iff csr.indptr[i] < csr.indptr[i+1]; columns likewise
/// from the CSC indptr.
NonemptyMasks nonempty_rows_cols(const SparseMatrix& m);

/// Indices of set entries in a mask.
std::vector<index_t> mask_to_indices(const std::vector<bool>& mask);

}  // namespace assocarray
