// Shared fixtures and brute-force helpers for the test suites.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rinclose/core.hpp"

namespace testsupport {

using rinclose::Bicluster;
using rinclose::DataMatrix;
using rinclose::Index;
using rinclose::IndexSet;

// 5x3 worked fixture: at eps = 1, minRow = 2, minCol = 1 its maximal
// biclusters are ({1,2,3},{1,2}), ({2,3},{1,2,3}), ({2,3,4},{1,2}) and
// ({1,2,3,4},{2}); the row set {2,3} is reachable from two parents, which
// is exactly the duplicate the row-discipline checks have to fence off.
inline DataMatrix fixture_m2() {
  return DataMatrix::from_rows({
      {0.0, 3.0, 9.0},
      {0.5, 3.1, 7.0},
      {1.0, 3.3, 7.5},
      {1.5, 3.2, 20.0},
      {10.0, 0.0, 0.0},
  });
}

// 3x3 binary context with four formal concepts.
inline DataMatrix fixture_b1() {
  return DataMatrix::from_rows({
      {1, 1, 0},
      {1, 1, 1},
      {0, 1, 1},
  });
}

inline DataMatrix random_uniform_matrix(std::mt19937_64& rng, int n, int m) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(static_cast<std::size_t>(n) * m);
  for (double& v : values) v = unit(rng);
  return DataMatrix(n, m, std::move(values));
}

inline DataMatrix random_integer_matrix(std::mt19937_64& rng, int n, int m, int lo = 0,
                                        int hi = 4) {
  std::uniform_int_distribution<int> grid(lo, hi);
  std::vector<double> values(static_cast<std::size_t>(n) * m);
  for (double& v : values) v = grid(rng);
  return DataMatrix(n, m, std::move(values));
}

inline DataMatrix random_binary_matrix(std::mt19937_64& rng, int n, int m,
                                       double p_one = 0.5) {
  std::bernoulli_distribution bit(p_one);
  std::vector<double> values(static_cast<std::size_t>(n) * m);
  for (double& v : values) v = bit(rng) ? 1.0 : 0.0;
  return DataMatrix(n, m, std::move(values));
}

// All maximal subsets of parent_rows whose column-j values span at most
// eps: a subset qualifies when it is within the bound and no further
// parent row fits. Exponential; for cross-checking the sweep kernel only.
inline std::vector<IndexSet> brute_force_windows(const DataMatrix& a, const IndexSet& parent_rows,
                                                 Index j, double eps) {
  const int t = static_cast<int>(parent_rows.size());
  std::vector<IndexSet> out;
  for (std::uint32_t mask = 1; mask < (1u << t); ++mask) {
    IndexSet rows;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int k = 0; k < t; ++k) {
      if (!(mask & (1u << k))) continue;
      const double v = a(parent_rows[static_cast<std::size_t>(k)], j);
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      rows.push_back(parent_rows[static_cast<std::size_t>(k)]);
    }
    if (hi - lo > eps) continue;
    bool maximal = true;
    for (int k = 0; k < t && maximal; ++k) {
      if (mask & (1u << k)) continue;
      const double v = a(parent_rows[static_cast<std::size_t>(k)], j);
      if (std::max(hi, v) - std::min(lo, v) <= eps) maximal = false;
    }
    if (maximal) out.push_back(std::move(rows));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testsupport
