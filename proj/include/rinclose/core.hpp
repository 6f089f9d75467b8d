// Core domain types for mining biclusters with constant values on columns
// (CVC) in numerical matrices: the data matrix, biclusters, mining
// parameters, and the elementary consistency/maximality predicates shared
// by the miners, the brute-force oracle, and the verifier.
//
// All row/column indices in the public interface are 1-based and index
// sets are kept strictly ascending.
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rinclose {

using Index = std::int32_t;
using IndexSet = std::vector<Index>;  // strictly ascending, no duplicates

namespace detail {

inline bool is_strictly_ascending(const IndexSet& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] >= s[i]) return false;
  return true;
}

inline bool contains_sorted(const IndexSet& s, Index v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline void insert_sorted(IndexSet& s, Index v) {
  s.insert(std::lower_bound(s.begin(), s.end(), v), v);
}

inline IndexSet union_sorted(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet difference_sorted(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::size_t intersection_size(const IndexSet& a, const IndexSet& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else { ++count; ++ia; ++ib; }
  }
  return count;
}

inline IndexSet iota_set(Index count) {
  IndexSet s(static_cast<std::size_t>(count));
  std::iota(s.begin(), s.end(), Index{1});
  return s;
}

}  // namespace detail

/// Dense numeric matrix with 1-based row/column access and optional labels.
class DataMatrix {
 public:
  DataMatrix(int n_rows, int n_cols, std::vector<double> values)
      : n_(n_rows), m_(n_cols), values_(std::move(values)) {
    if (n_ < 1 || m_ < 1)
      throw std::invalid_argument("DataMatrix: dimensions must be at least 1x1");
    if (values_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(m_))
      throw std::invalid_argument("DataMatrix: value count does not match dimensions");
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (!std::isfinite(values_[k])) {
        std::ostringstream msg;
        msg << "DataMatrix: non-finite value at cell (" << (k / m_ + 1) << "," << (k % m_ + 1) << ")";
        throw std::invalid_argument(msg.str());
      }
    }
  }

  static DataMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty())
      throw std::invalid_argument("DataMatrix: empty row list");
    const std::size_t m = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * m);
    for (const auto& r : rows) {
      if (r.size() != m) throw std::invalid_argument("DataMatrix: ragged row list");
      values.insert(values.end(), r.begin(), r.end());
    }
    return DataMatrix(static_cast<int>(rows.size()), static_cast<int>(m), std::move(values));
  }

  int rows() const noexcept { return n_; }
  int cols() const noexcept { return m_; }

  // 1-based, unchecked; callers validate indices at API boundaries.
  double operator()(Index i, Index j) const noexcept {
    return values_[(static_cast<std::size_t>(i) - 1) * m_ + (static_cast<std::size_t>(j) - 1)];
  }

  double at(Index i, Index j) const {
    if (i < 1 || i > n_ || j < 1 || j > m_) {
      std::ostringstream msg;
      msg << "DataMatrix: index (" << i << "," << j << ") outside " << n_ << "x" << m_;
      throw std::out_of_range(msg.str());
    }
    return (*this)(i, j);
  }

  std::span<const double> values() const noexcept { return values_; }

  bool has_row_labels() const noexcept { return !row_labels_.empty(); }
  bool has_col_labels() const noexcept { return !col_labels_.empty(); }
  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

  void set_row_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(n_))
      throw std::invalid_argument("DataMatrix: row label count does not match row count");
    row_labels_ = std::move(labels);
  }
  void set_col_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(m_))
      throw std::invalid_argument("DataMatrix: column label count does not match column count");
    col_labels_ = std::move(labels);
  }

 private:
  int n_;
  int m_;
  std::vector<double> values_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

/// A bicluster is a pair of ascending, non-empty row and column index sets.
struct Bicluster {
  IndexSet rows;
  IndexSet cols;

  friend bool operator==(const Bicluster&, const Bicluster&) = default;
  // Canonical order: rows lexicographically, ties broken by cols.
  friend auto operator<=>(const Bicluster&, const Bicluster&) = default;
};

inline void validate_bicluster(const DataMatrix& a, const Bicluster& b) {
  if (b.rows.empty() || b.cols.empty())
    throw std::invalid_argument("Bicluster: row and column sets must be non-empty");
  if (!detail::is_strictly_ascending(b.rows) || !detail::is_strictly_ascending(b.cols))
    throw std::invalid_argument("Bicluster: index sets must be strictly ascending");
  if (b.rows.front() < 1 || b.rows.back() > a.rows())
    throw std::invalid_argument("Bicluster: row index out of range");
  if (b.cols.front() < 1 || b.cols.back() > a.cols())
    throw std::invalid_argument("Bicluster: column index out of range");
}

/// Mining parameters: the maximum per-column perturbation and the minimum
/// bicluster shape. A single epsilon entry applies to every column.
struct MiningParams {
  std::vector<double> epsilon{0.0};
  int min_row = 1;
  int min_col = 1;

  MiningParams() = default;
  MiningParams(double eps, int min_row_, int min_col_)
      : epsilon{eps}, min_row(min_row_), min_col(min_col_) {}
  MiningParams(std::vector<double> eps, int min_row_, int min_col_)
      : epsilon(std::move(eps)), min_row(min_row_), min_col(min_col_) {}

  void validate(const DataMatrix& a) const {
    if (epsilon.empty())
      throw std::invalid_argument("MiningParams: epsilon must have at least one entry");
    if (epsilon.size() != 1 && epsilon.size() != static_cast<std::size_t>(a.cols()))
      throw std::invalid_argument("MiningParams: epsilon must be scalar or one value per column");
    for (double e : epsilon)
      if (!(e >= 0.0))
        throw std::invalid_argument("MiningParams: epsilon must be non-negative");
    if (min_row < 1 || min_row > a.rows())
      throw std::invalid_argument("MiningParams: min_row must be in [1, n]");
    if (min_col < 1 || min_col > a.cols())
      throw std::invalid_argument("MiningParams: min_col must be in [1, m]");
  }

  std::vector<double> column_epsilons(const DataMatrix& a) const {
    validate(a);
    if (epsilon.size() == 1)
      return std::vector<double>(static_cast<std::size_t>(a.cols()), epsilon.front());
    return epsilon;
  }
};

/// An immutable collection of biclusters in canonical order (rows
/// lexicographically ascending, ties by cols) with duplicates removed.
class BiclusterSet {
 public:
  BiclusterSet() = default;

  static BiclusterSet canonical(std::vector<Bicluster> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return BiclusterSet(std::move(items));
  }

  const std::vector<Bicluster>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

  bool contains(const Bicluster& b) const {
    return std::binary_search(items_.begin(), items_.end(), b);
  }

  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  friend bool operator==(const BiclusterSet&, const BiclusterSet&) = default;

 private:
  explicit BiclusterSet(std::vector<Bicluster> sorted) : items_(std::move(sorted)) {}
  std::vector<Bicluster> items_;
};

namespace detail {

// max - min of column j over a non-empty row set; no validation.
inline double column_span_unchecked(const DataMatrix& a, const IndexSet& rows, Index j) noexcept {
  double lo = a(rows.front(), j);
  double hi = lo;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double v = a(rows[k], j);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

// True when the span of column j over `rows` stays within `bound`.
// Bails out as soon as the running span exceeds the bound.
inline bool span_within(const DataMatrix& a, const IndexSet& rows, Index j, double bound) noexcept {
  double lo = a(rows.front(), j);
  double hi = lo;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double v = a(rows[k], j);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (hi - lo > bound) return false;
  }
  return hi - lo <= bound;
}

// Same as span_within for rows ∪ {extra_row}.
inline bool span_within_plus(const DataMatrix& a, const IndexSet& rows, Index extra_row,
                             Index j, double bound) noexcept {
  double lo = a(extra_row, j);
  double hi = lo;
  for (const Index i : rows) {
    const double v = a(i, j);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (hi - lo > bound) return false;
  }
  return true;
}

}  // namespace detail

/// max over `rows` of a_ij minus min over `rows` of a_ij.
inline double column_span(const DataMatrix& a, const IndexSet& rows, Index j) {
  if (rows.empty()) throw std::invalid_argument("column_span: empty row set");
  if (j < 1 || j > a.cols()) throw std::invalid_argument("column_span: column index out of range");
  if (rows.front() < 1 || rows.back() > a.rows() || !detail::is_strictly_ascending(rows))
    throw std::invalid_argument("column_span: invalid row set");
  return detail::column_span_unchecked(a, rows, j);
}

/// True when every column of the bicluster stays within its perturbation
/// bound over the bicluster's rows.
inline bool is_correct_cvc(const DataMatrix& a, const Bicluster& b, std::span<const double> eps) {
  validate_bicluster(a, b);
  if (eps.size() != static_cast<std::size_t>(a.cols()))
    throw std::invalid_argument("is_correct_cvc: epsilon vector must have one entry per column");
  for (const Index j : b.cols)
    if (!detail::span_within(a, b.rows, j, eps[static_cast<std::size_t>(j) - 1])) return false;
  return true;
}

/// True when no single row and no single column can be added to a correct
/// bicluster without breaking some column's perturbation bound.
/// Calling it on an incorrect bicluster is a contract violation.
inline bool is_maximal(const DataMatrix& a, const Bicluster& b, std::span<const double> eps) {
  if (!is_correct_cvc(a, b, eps))
    throw std::invalid_argument("is_maximal: bicluster is not a correct CVC bicluster");
  for (Index x = 1; x <= a.rows(); ++x) {
    if (detail::contains_sorted(b.rows, x)) continue;
    bool fits = true;
    for (const Index j : b.cols) {
      if (!detail::span_within_plus(a, b.rows, x, j, eps[static_cast<std::size_t>(j) - 1])) {
        fits = false;
        break;
      }
    }
    if (fits) return false;
  }
  for (Index y = 1; y <= a.cols(); ++y) {
    if (detail::contains_sorted(b.cols, y)) continue;
    if (detail::span_within(a, b.rows, y, eps[static_cast<std::size_t>(y) - 1])) return false;
  }
  return true;
}

}  // namespace rinclose
