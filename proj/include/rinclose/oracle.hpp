// Brute-force reference enumerators. Deliberately free of pruning beyond
// the subset loop itself, so they stay trustworthy as ground truth for the
// miners on small instances.
#pragma once

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "rinclose/core.hpp"

namespace rinclose {

inline constexpr int kOracleMaxRows = 22;

/// Exhaustive enumeration of all maximal CVC biclusters: every row subset
/// of size >= min_row is closed against the columns (each column whose
/// span over the subset stays within its bound joins), kept when the
/// closure has >= min_col columns and no outside row fits every closed
/// column. Refuses matrices with more than kOracleMaxRows rows.
inline BiclusterSet oracle_cvc(const DataMatrix& a, const MiningParams& params) {
  params.validate(a);
  if (a.rows() > kOracleMaxRows) {
    std::ostringstream msg;
    msg << "oracle_cvc: matrix has " << a.rows() << " rows; the 2^n subset enumeration is capped at n = "
        << kOracleMaxRows;
    throw std::runtime_error(msg.str());
  }
  const std::vector<double> eps = params.column_epsilons(a);
  const int n = a.rows();
  const int m = a.cols();

  std::vector<Bicluster> found;
  const std::uint32_t limit = static_cast<std::uint32_t>(1u << n);
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    if (std::popcount(mask) < params.min_row) continue;

    IndexSet rows;
    rows.reserve(static_cast<std::size_t>(std::popcount(mask)));
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) rows.push_back(static_cast<Index>(i + 1));

    IndexSet cols;
    for (Index j = 1; j <= m; ++j)
      if (detail::span_within(a, rows, j, eps[static_cast<std::size_t>(j) - 1])) cols.push_back(j);
    if (static_cast<int>(cols.size()) < params.min_col) continue;

    bool row_maximal = true;
    for (Index x = 1; x <= n && row_maximal; ++x) {
      if (mask & (1u << (x - 1))) continue;
      bool fits = true;
      for (const Index j : cols) {
        if (!detail::span_within_plus(a, rows, x, j, eps[static_cast<std::size_t>(j) - 1])) {
          fits = false;
          break;
        }
      }
      if (fits) row_maximal = false;
    }
    if (row_maximal) found.push_back(Bicluster{std::move(rows), std::move(cols)});
  }
  return BiclusterSet::canonical(std::move(found));
}

/// Exhaustive enumeration of all formal concepts of a binary matrix:
/// row subsets that are fixed points of the up-down closure, filtered by
/// the size constraints. Same row-count guard as oracle_cvc.
inline BiclusterSet oracle_formal_concepts(const DataMatrix& a, const MiningParams& params) {
  params.validate(a);
  if (a.rows() > kOracleMaxRows) {
    std::ostringstream msg;
    msg << "oracle_formal_concepts: matrix has " << a.rows()
        << " rows; the 2^n subset enumeration is capped at n = " << kOracleMaxRows;
    throw std::runtime_error(msg.str());
  }
  for (Index i = 1; i <= a.rows(); ++i)
    for (Index j = 1; j <= a.cols(); ++j)
      if (a(i, j) != 0.0 && a(i, j) != 1.0)
        throw std::invalid_argument("oracle_formal_concepts: matrix is not binary");

  const int n = a.rows();
  const int m = a.cols();

  std::vector<Bicluster> found;
  const std::uint32_t limit = static_cast<std::uint32_t>(1u << n);
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    if (std::popcount(mask) < params.min_row) continue;

    IndexSet rows;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) rows.push_back(static_cast<Index>(i + 1));

    IndexSet up;
    for (Index j = 1; j <= m; ++j) {
      bool all_ones = true;
      for (const Index i : rows) {
        if (a(i, j) != 1.0) {
          all_ones = false;
          break;
        }
      }
      if (all_ones) up.push_back(j);
    }
    if (static_cast<int>(up.size()) < params.min_col) continue;

    IndexSet down;
    for (Index i = 1; i <= n; ++i) {
      bool all_ones = true;
      for (const Index j : up) {
        if (a(i, j) != 1.0) {
          all_ones = false;
          break;
        }
      }
      if (all_ones) down.push_back(i);
    }
    if (down == rows) found.push_back(Bicluster{std::move(rows), std::move(up)});
  }
  return BiclusterSet::canonical(std::move(found));
}

}  // namespace rinclose
