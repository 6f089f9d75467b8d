// Shared machinery of the enumeration algorithms: candidate row-set
// generation by sort-and-sweep, the canonicity / row-maximality /
// row-canonicity tests, expansion of the row-check set carried down the
// search tree, and the symbol table used for duplicate suppression.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rinclose/core.hpp"

namespace rinclose {

/// A maximal row window of one column: adding any further row of the
/// parent's row set breaks the column's perturbation bound.
struct CandidateWindow {
  IndexSet rows;
  Index col = 0;

  friend bool operator==(const CandidateWindow&, const CandidateWindow&) = default;
};

/// All maximal row subsets of `parent_rows` whose values in column j span
/// at most eps_j. Values are sorted ascending (ties by row index) and a
/// two-pointer sweep emits every maximal window in ascending order of its
/// start. With eps_j = 0 the windows partition the parent rows; with
/// eps_j > 0 they may overlap.
inline std::vector<CandidateWindow> candidate_rowsets(const DataMatrix& a,
                                                      const IndexSet& parent_rows, Index j,
                                                      double eps_j) {
  if (parent_rows.empty()) throw std::invalid_argument("candidate_rowsets: empty parent row set");
  if (j < 1 || j > a.cols())
    throw std::invalid_argument("candidate_rowsets: column index out of range");

  std::vector<std::pair<double, Index>> order;
  order.reserve(parent_rows.size());
  for (const Index i : parent_rows) order.emplace_back(a(i, j), i);
  std::sort(order.begin(), order.end());

  std::vector<CandidateWindow> out;
  std::size_t hi = 0;
  std::size_t prev_hi = 0;
  bool emitted_any = false;
  for (std::size_t lo = 0; lo < order.size(); ++lo) {
    if (hi < lo) hi = lo;
    while (hi + 1 < order.size() && order[hi + 1].first - order[lo].first <= eps_j) ++hi;
    if (!emitted_any || hi > prev_hi) {
      IndexSet rows;
      rows.reserve(hi - lo + 1);
      for (std::size_t k = lo; k <= hi; ++k) rows.push_back(order[k].second);
      std::sort(rows.begin(), rows.end());
      out.push_back(CandidateWindow{std::move(rows), j});
      prev_hi = hi;
      emitted_any = true;
    }
  }
  return out;
}

/// Lexicographic canonicity: the candidate generated at column j is not
/// canonical when some earlier column outside the current column set could
/// be added to it without breaking that column's bound. Non-canonical
/// candidates are created again, from another branch, at a later column.
inline bool is_canonical(const DataMatrix& a, const IndexSet& g, const IndexSet& cols, Index j,
                         std::span<const double> eps) {
  for (Index k = 1; k < j; ++k) {
    if (detail::contains_sorted(cols, k)) continue;
    if (detail::span_within(a, g, k, eps[static_cast<std::size_t>(k) - 1])) return false;
  }
  return true;
}

/// Canonicity for binary formal-concept mining: an earlier column outside
/// the current column set that is all ones over the candidate rows makes
/// the candidate non-canonical.
inline bool is_canonical_binary(const DataMatrix& a, const IndexSet& g, const IndexSet& cols,
                                Index j) {
  for (Index k = 1; k < j; ++k) {
    if (detail::contains_sorted(cols, k)) continue;
    bool all_ones = true;
    for (const Index i : g) {
      if (a(i, k) != 1.0) {
        all_ones = false;
        break;
      }
    }
    if (all_ones) return false;
  }
  return true;
}

namespace detail {

// min/max of each listed column over a row set, for repeated
// one-extra-row span tests against many tracked rows.
struct ColumnExtents {
  std::vector<double> lo;
  std::vector<double> hi;

  template <class ColumnRange>
  ColumnExtents(const DataMatrix& a, const IndexSet& rows, const ColumnRange& cols) {
    lo.reserve(cols.size());
    hi.reserve(cols.size());
    for (const Index k : cols) {
      double clo = a(rows.front(), k);
      double chi = clo;
      for (std::size_t t = 1; t < rows.size(); ++t) {
        const double v = a(rows[t], k);
        clo = std::min(clo, v);
        chi = std::max(chi, v);
      }
      lo.push_back(clo);
      hi.push_back(chi);
    }
  }
};

}  // namespace detail

/// Row-maximality over the column set `h_cols`: false when some tracked row
/// can be added to the candidate while every column of h_cols stays within
/// its bound. h_cols is the candidate's full inherited column set plus the
/// generating column.
inline bool is_row_maximal(const DataMatrix& a, const IndexSet& g, const IndexSet& h_cols,
                           const IndexSet& check_rows, std::span<const double> eps) {
  if (check_rows.empty()) return true;
  const detail::ColumnExtents g_ext(a, g, h_cols);
  for (const Index cand : check_rows) {
    bool fits = true;
    for (std::size_t t = 0; t < h_cols.size(); ++t) {
      const Index k = h_cols[t];
      const double v = a(cand, k);
      if (std::max(g_ext.hi[t], v) - std::min(g_ext.lo[t], v) >
          eps[static_cast<std::size_t>(k) - 1]) {
        fits = false;
        break;
      }
    }
    if (fits) return false;
  }
  return true;
}

enum class RowCanonicity {
  canonical,
  // A tracked row extends the candidate over the inherited columns
  // preceding j plus j itself; the larger bicluster subsumes it.
  fails_extension,
  // A lexicographically smaller row-set could have generated the same
  // candidate in this column; that branch owns it.
  fails_lex_order,
};

/// The duplicate-suppression test that replaces both the symbol table and
/// the plain row-maximality check. Only the inherited columns preceding
/// the generating column take part, unlike is_row_maximal which uses the
/// full inherited column set.
inline RowCanonicity row_canonicity(const DataMatrix& a, const IndexSet& g,
                                    const IndexSet& parent_rows, const IndexSet& cols, Index j,
                                    const IndexSet& check_rows, std::span<const double> eps) {
  if (check_rows.empty()) return RowCanonicity::canonical;

  IndexSet cols_le_j(cols.begin(), std::lower_bound(cols.begin(), cols.end(), j));
  const std::size_t n_before = cols_le_j.size();  // inherited columns < j
  cols_le_j.push_back(j);

  const detail::ColumnExtents g_ext(a, g, cols_le_j);

  // prefix min/max of each inherited column over the parent rows, so the
  // rows-preceding-a-tracked-row extents come from one lookup
  std::vector<std::vector<double>> prefix_lo(n_before), prefix_hi(n_before);
  for (std::size_t t = 0; t < n_before; ++t) {
    const Index k = cols_le_j[t];
    auto& lo = prefix_lo[t];
    auto& hi = prefix_hi[t];
    lo.resize(parent_rows.size() + 1);
    hi.resize(parent_rows.size() + 1);
    lo[0] = std::numeric_limits<double>::infinity();
    hi[0] = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < parent_rows.size(); ++p) {
      const double v = a(parent_rows[p], k);
      lo[p + 1] = std::min(lo[p], v);
      hi[p + 1] = std::max(hi[p], v);
    }
  }

  for (const Index cand : check_rows) {
    bool extends = true;
    for (std::size_t t = 0; t < cols_le_j.size(); ++t) {
      const Index k = cols_le_j[t];
      const double v = a(cand, k);
      if (std::max(g_ext.hi[t], v) - std::min(g_ext.lo[t], v) >
          eps[static_cast<std::size_t>(k) - 1]) {
        extends = false;
        break;
      }
    }
    if (extends) return RowCanonicity::fails_extension;

    const std::size_t before =
        static_cast<std::size_t>(std::lower_bound(parent_rows.begin(), parent_rows.end(), cand) -
                                 parent_rows.begin());
    bool smaller_parent = true;
    for (std::size_t t = 0; t < n_before; ++t) {
      const Index k = cols_le_j[t];
      const double v = a(cand, k);
      const double lo = std::min({prefix_lo[t][before], g_ext.lo[t], v});
      const double hi = std::max({prefix_hi[t][before], g_ext.hi[t], v});
      if (hi - lo > eps[static_cast<std::size_t>(k) - 1]) {
        smaller_parent = false;
        break;
      }
    }
    if (smaller_parent) return RowCanonicity::fails_lex_order;
  }
  return RowCanonicity::canonical;
}

inline bool is_row_canonical(const DataMatrix& a, const IndexSet& g, const IndexSet& parent_rows,
                             const IndexSet& cols, Index j, const IndexSet& check_rows,
                             std::span<const double> eps) {
  return row_canonicity(a, g, parent_rows, cols, j, check_rows, eps) == RowCanonicity::canonical;
}

/// Rows a descendant of the candidate must be checked against: the
/// inherited check rows plus every dropped parent row whose column-j value
/// lies within [p1 - eps_j, p2 + eps_j], where p1 and p2 are the
/// min_row-th smallest and largest values of column j over the candidate.
/// Rows outside that interval cannot join any descendant that keeps at
/// least min_row of the candidate's rows.
inline IndexSet compute_rm(const DataMatrix& a, const IndexSet& g, Index j,
                           const IndexSet& check_rows, const IndexSet& parent_rows, double eps_j,
                           int min_row) {
  if (static_cast<int>(g.size()) < min_row)
    throw std::invalid_argument("compute_rm: candidate has fewer than min_row rows");

  std::vector<double> values;
  values.reserve(g.size());
  for (const Index i : g) values.push_back(a(i, j));
  const auto kth_small = values.begin() + (min_row - 1);
  std::nth_element(values.begin(), kth_small, values.end());
  const double p1 = *kth_small;
  const auto kth_large = values.begin() + (static_cast<std::ptrdiff_t>(values.size()) - min_row);
  std::nth_element(values.begin(), kth_large, values.end());
  const double p2 = *kth_large;

  const double lo = p1 - eps_j;
  const double hi = p2 + eps_j;

  IndexSet added;
  auto g_it = g.begin();
  for (const Index i : parent_rows) {
    while (g_it != g.end() && *g_it < i) ++g_it;
    if (g_it != g.end() && *g_it == i) continue;
    const double v = a(i, j);
    if (v >= lo && v <= hi) added.push_back(i);
  }
  return detail::union_sorted(check_rows, added);
}

/// Registry of already-generated row sets, keyed by the ascending index
/// sequence. Hash-backed by default; a balanced-tree backend is available
/// for worst-case sensitive runs.
class SymbolTable {
 public:
  enum class Backend { hash, tree };

  explicit SymbolTable(Backend backend = Backend::hash) : backend_(backend) {}

  bool contains(const IndexSet& g) const {
    return backend_ == Backend::hash ? hash_.contains(g) : tree_.contains(g);
  }

  void insert(const IndexSet& g) {
    const bool added = backend_ == Backend::hash ? hash_.insert(g).second : tree_.insert(g).second;
    if (added) key_bytes_ += g.size() * sizeof(Index);
  }

  /// True when g was absent; g is recorded either way.
  bool check_insert(const IndexSet& g) {
    const bool was_present = contains(g);
    if (!was_present) insert(g);
    return !was_present;
  }

  std::size_t entries() const noexcept {
    return backend_ == Backend::hash ? hash_.size() : tree_.size();
  }
  std::size_t key_bytes() const noexcept { return key_bytes_; }
  Backend backend() const noexcept { return backend_; }

 private:
  struct RowSetHash {
    std::size_t operator()(const IndexSet& g) const noexcept {
      std::size_t h = 14695981039346656037ull;  // FNV-1a over the index words
      for (const Index v : g) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  Backend backend_;
  std::unordered_set<IndexSet, RowSetHash> hash_;
  std::set<IndexSet> tree_;
  std::size_t key_bytes_ = 0;
};

}  // namespace rinclose
