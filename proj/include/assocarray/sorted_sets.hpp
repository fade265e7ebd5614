#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "assocarray/key.hpp"

namespace assocarray {

/**
 * Output of a sorted merge.
 *
 * For a union, map_left[m] is the position of left[m] in `merged` (one entry
 * per left element), and likewise for map_right. For an intersection the
 * direction flips: map_left[t] is the position of merged[t] in the left
 * input, so both maps have one entry per merged element.
 */
template <typename T>
struct MergeResult {
  std::vector<T> merged;
  std::vector<index_t> map_left;
  std::vector<index_t> map_right;
};

template <typename T, typename Compare = std::less<>>
bool is_strictly_sorted(std::span<const T> items, Compare less = {}) {
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (!less(items[i - 1], items[i])) return false;
  }
  return true;
}

namespace detail {

template <typename T, typename Compare>
void require_key_seq(std::span<const T> items, Compare less, const char* which) {
  if (!is_strictly_sorted(items, less)) {
    throw std::invalid_argument(std::string(which) + " input is not strictly increasing");
  }
}

template <typename T, typename Compare = std::less<>>
MergeResult<T> union_unchecked(std::span<const T> left, std::span<const T> right, Compare less = {}) {
  MergeResult<T> out;
  out.merged.reserve(left.size() + right.size());
  out.map_left.resize(left.size());
  out.map_right.resize(right.size());
  std::size_t m = 0, n = 0;
  while (m < left.size() && n < right.size()) {
    const index_t pos = static_cast<index_t>(out.merged.size());
    if (less(right[n], left[m])) {
      out.map_right[n] = pos;
      out.merged.push_back(right[n++]);
    } else if (less(left[m], right[n])) {
      out.map_left[m] = pos;
      out.merged.push_back(left[m++]);
    } else {
      out.map_left[m] = pos;
      out.map_right[n] = pos;
      out.merged.push_back(left[m]);
      ++m;
      ++n;
    }
  }
  // One side is drained; the rest of the other is appended as a block.
  for (; m < left.size(); ++m) {
    out.map_left[m] = static_cast<index_t>(out.merged.size());
    out.merged.push_back(left[m]);
  }
  for (; n < right.size(); ++n) {
    out.map_right[n] = static_cast<index_t>(out.merged.size());
    out.merged.push_back(right[n]);
  }
  return out;
}

template <typename T, typename Compare = std::less<>>
MergeResult<T> intersection_unchecked(std::span<const T> left, std::span<const T> right,
                                      Compare less = {}) {
  MergeResult<T> out;
  std::size_t m = 0, n = 0;
  while (m < left.size() && n < right.size()) {
    if (less(right[n], left[m])) {
      ++n;
    } else if (less(left[m], right[n])) {
      ++m;
    } else {
      out.merged.push_back(left[m]);
      out.map_left.push_back(static_cast<index_t>(m++));
      out.map_right.push_back(static_cast<index_t>(n++));
    }
  }
  return out;
}

}  // namespace detail

/// One-pass sorted union with index maps. Throws std::invalid_argument if
/// either input is unsorted or has duplicates.
template <typename T, typename Compare = std::less<>>
MergeResult<T> sorted_union(std::span<const T> left, std::span<const T> right, Compare less = {}) {
  detail::require_key_seq(left, less, "left");
  detail::require_key_seq(right, less, "right");
  return detail::union_unchecked(left, right, less);
}

template <typename T, typename Compare = std::less<>>
MergeResult<T> sorted_union(const std::vector<T>& left, const std::vector<T>& right, Compare less = {}) {
  return sorted_union(std::span<const T>(left), std::span<const T>(right), less);
}

/// One-pass sorted intersection with index maps back into both inputs.
template <typename T, typename Compare = std::less<>>
MergeResult<T> sorted_intersection(std::span<const T> left, std::span<const T> right,
                                   Compare less = {}) {
  detail::require_key_seq(left, less, "left");
  detail::require_key_seq(right, less, "right");
  return detail::intersection_unchecked(left, right, less);
}

template <typename T, typename Compare = std::less<>>
MergeResult<T> sorted_intersection(const std::vector<T>& left, const std::vector<T>& right,
                                   Compare less = {}) {
  return sorted_intersection(std::span<const T>(left), std::span<const T>(right), less);
}

template <typename T>
struct UniqueResult {
  std::vector<T> items;
  std::vector<index_t> positions;  // positions[t] locates input[t] in items
};

/// Sorted deduplication of `items`, with the position of every input element
/// in the output.
template <typename T, typename Compare = std::less<>>
UniqueResult<T> sorted_unique(std::span<const T> items, Compare less = {}) {
  UniqueResult<T> out;
  std::vector<index_t> order(items.size());
  std::iota(order.begin(), order.end(), index_t{0});
  std::sort(order.begin(), order.end(),
            [&](index_t a, index_t b) { return less(items[a], items[b]); });
  out.positions.resize(items.size());
  for (std::size_t t = 0; t < order.size(); ++t) {
    const T& item = items[order[t]];
    if (out.items.empty() || less(out.items.back(), item)) {
      out.items.push_back(item);
    } else if (less(item, out.items.back())) {
      throw std::invalid_argument("sorted_unique: items are not totally ordered");
    }
    out.positions[order[t]] = static_cast<index_t>(out.items.size()) - 1;
  }
  return out;
}

template <typename T, typename Compare = std::less<>>
UniqueResult<T> sorted_unique(const std::vector<T>& items, Compare less = {}) {
  return sorted_unique(std::span<const T>(items), less);
}

}  // namespace assocarray
