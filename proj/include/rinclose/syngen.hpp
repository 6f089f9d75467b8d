// Synthetic dataset generator: plants a chain of possibly overlapping CVC
// biclusters in a uniform background, adds Gaussian noise, shuffles rows
// and columns, and reports the largest per-column span observed inside the
// planted structure as the perturbation bound that preserves it.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rinclose/core.hpp"

namespace rinclose {

struct GeneratorConfig {
  int n = 10000;
  int m = 100;
  int n_biclusters = 30;
  int bic_rows = 200;
  int bic_cols = 16;
  double overlap = 0.2;       // fraction of rows/cols shared by consecutive biclusters
  double noise_sigma = 0.05;  // std-dev of the zero-mean Gaussian noise
  // Background cells are uniform in [0, background_range] while base values
  // stay in [0, 1]. Values above 1 thin out the background relative to the
  // planted structure; at the default the returned perturbation bound covers
  // a large fraction of the background range and the enumeration explodes
  // combinatorially on anything but small matrices.
  double background_range = 1.0;
  std::uint64_t seed = 0;
};

struct GeneratedDataset {
  DataMatrix matrix;
  std::vector<Bicluster> planted;  // index sets after the shuffle
  double epsilon = 0.0;            // max per-column span inside the planted structure
};

namespace detail {

inline void validate_generator_config(const GeneratorConfig& c) {
  if (c.n < 1 || c.m < 1) throw std::invalid_argument("generate: matrix dimensions must be >= 1");
  if (c.n_biclusters < 0) throw std::invalid_argument("generate: n_biclusters must be >= 0");
  if (c.overlap < 0.0 || c.overlap >= 1.0)
    throw std::invalid_argument("generate: overlap must be in [0, 1)");
  if (c.noise_sigma < 0.0) throw std::invalid_argument("generate: noise_sigma must be >= 0");
  if (!(c.background_range > 0.0))
    throw std::invalid_argument("generate: background_range must be positive");
  if (c.n_biclusters > 0) {
    if (c.bic_rows < 1 || c.bic_rows > c.n)
      throw std::invalid_argument("generate: bic_rows must be in [1, n]");
    if (c.bic_cols < 1 || c.bic_cols > c.m)
      throw std::invalid_argument("generate: bic_cols must be in [1, m]");
  }
}

// Draws a base value separated from the bases already used in the column.
// The separation target shrinks when the column gets crowded; giving up
// entirely means the layout cannot host distinguishable biclusters.
inline double draw_separated_base(std::mt19937_64& rng, const std::vector<double>& taken,
                                  double separation) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double sep = separation;
  for (int round = 0; round < 12; ++round) {
    for (int attempt = 0; attempt < 256; ++attempt) {
      const double v = unit(rng);
      bool ok = true;
      for (const double t : taken) {
        if (std::abs(v - t) <= sep) {
          ok = false;
          break;
        }
      }
      if (ok) return v;
    }
    sep *= 0.5;
  }
  throw std::runtime_error(
      "generate: could not separate planted base values within a column; too many biclusters "
      "share it for the requested noise level");
}

struct PlantedConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline GeneratedDataset generate_once(const GeneratorConfig& config) {
  validate_generator_config(config);
  const int n = config.n;
  const int m = config.m;
  const int nb = config.n_biclusters;
  const int br = config.bic_rows;
  const int bc = config.bic_cols;
  const int ov_r = nb > 0 ? static_cast<int>(config.overlap * br) : 0;
  const int ov_c = nb > 0 ? static_cast<int>(config.overlap * bc) : 0;
  const int stride_r = br - ov_r;
  const int stride_c = bc - ov_c;

  if (nb > 0) {
    const long long rows_needed = static_cast<long long>(nb - 1) * stride_r + br;
    if (rows_needed > n) {
      std::ostringstream msg;
      msg << "generate: infeasible overlap layout: the planted row chain needs " << rows_needed
          << " rows but the matrix has " << n;
      throw std::runtime_error(msg.str());
    }
    if (nb > 1 && bc + stride_c > m) {
      std::ostringstream msg;
      msg << "generate: infeasible overlap layout: consecutive biclusters wrap onto each other "
             "(bic_cols + stride = "
          << (bc + stride_c) << " exceeds m = " << m << ")";
      throw std::runtime_error(msg.str());
    }
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> background(0.0, config.background_range);

  std::vector<double> values(static_cast<std::size_t>(n) * m);
  for (double& v : values) v = background(rng);

  // Planted structure, pre-shuffle coordinates (0-based).
  std::vector<std::vector<int>> bic_rows_of(nb);
  std::vector<std::vector<int>> bic_cols_of(nb);
  std::vector<std::vector<double>> bases(nb, std::vector<double>(static_cast<std::size_t>(bc)));
  std::vector<std::vector<double>> bases_in_col(static_cast<std::size_t>(m));
  std::vector<int> cell_owner(static_cast<std::size_t>(n) * m, -1);
  const double separation = 6.0 * config.noise_sigma;

  for (int k = 0; k < nb; ++k) {
    auto& rows_k = bic_rows_of[k];
    auto& cols_k = bic_cols_of[k];
    rows_k.resize(static_cast<std::size_t>(br));
    cols_k.resize(static_cast<std::size_t>(bc));
    for (int t = 0; t < br; ++t) rows_k[static_cast<std::size_t>(t)] = k * stride_r + t;
    for (int t = 0; t < bc; ++t) cols_k[static_cast<std::size_t>(t)] = (k * stride_c + t) % m;

    for (int t = 0; t < bc; ++t) {
      const int c = cols_k[static_cast<std::size_t>(t)];
      double base;
      if (k > 0 && t < ov_c) {
        base = bases[k - 1][static_cast<std::size_t>(bc - ov_c + t)];  // shared with predecessor
      } else {
        base = draw_separated_base(rng, bases_in_col[static_cast<std::size_t>(c)], separation);
        bases_in_col[static_cast<std::size_t>(c)].push_back(base);
      }
      bases[k][static_cast<std::size_t>(t)] = base;

      for (const int r : rows_k) {
        const std::size_t cell = static_cast<std::size_t>(r) * m + c;
        const int owner = cell_owner[cell];
        if (owner >= 0 && values[cell] != base) {
          std::ostringstream msg;
          msg << "generate: infeasible overlap layout: planted biclusters " << owner << " and "
              << k << " disagree on cell (" << (r + 1) << "," << (c + 1) << ")";
          throw std::runtime_error(msg.str());
        }
        values[cell] = base;
        if (owner < 0) cell_owner[cell] = k;
      }
    }
  }

  if (config.noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, config.noise_sigma);
    for (double& v : values) v += noise(rng);
  }

  // Shuffle rows and columns; position[i] is where original index i lands.
  std::vector<int> row_pos(static_cast<std::size_t>(n));
  std::vector<int> col_pos(static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) row_pos[static_cast<std::size_t>(i)] = i;
  for (int j = 0; j < m; ++j) col_pos[static_cast<std::size_t>(j)] = j;
  std::shuffle(row_pos.begin(), row_pos.end(), rng);
  std::shuffle(col_pos.begin(), col_pos.end(), rng);

  std::vector<double> shuffled(values.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      shuffled[static_cast<std::size_t>(row_pos[static_cast<std::size_t>(i)]) * m +
               col_pos[static_cast<std::size_t>(j)]] =
          values[static_cast<std::size_t>(i) * m + j];

  GeneratedDataset out{DataMatrix(n, m, std::move(shuffled)), {}, 0.0};

  out.planted.reserve(static_cast<std::size_t>(nb));
  for (int k = 0; k < nb; ++k) {
    Bicluster b;
    b.rows.reserve(static_cast<std::size_t>(br));
    b.cols.reserve(static_cast<std::size_t>(bc));
    for (const int r : bic_rows_of[k])
      b.rows.push_back(static_cast<Index>(row_pos[static_cast<std::size_t>(r)] + 1));
    for (const int c : bic_cols_of[k])
      b.cols.push_back(static_cast<Index>(col_pos[static_cast<std::size_t>(c)] + 1));
    std::sort(b.rows.begin(), b.rows.end());
    std::sort(b.cols.begin(), b.cols.end());
    out.planted.push_back(std::move(b));
  }

  for (const Bicluster& b : out.planted)
    for (const Index j : b.cols)
      out.epsilon = std::max(out.epsilon, column_span_unchecked(out.matrix, b.rows, j));

  // The reported bound is the max planted span, so this holds by
  // construction; it guards the layout logic above.
  const std::vector<double> eps(static_cast<std::size_t>(m), out.epsilon);
  for (const Bicluster& b : out.planted) {
    if (!is_correct_cvc(out.matrix, b, eps))
      throw PlantedConsistencyError(
          "generate: planted bicluster violates the reported perturbation bound");
  }
  return out;
}

}  // namespace detail

/// Builds one dataset from the config. Deterministic given the seed.
///
/// Layout: bicluster k+1 shares floor(overlap*bic_rows) trailing rows and
/// floor(overlap*bic_cols) trailing columns with bicluster k; rows advance
/// linearly (the chain must fit in n), columns advance cyclically modulo m.
/// In shared columns the newer bicluster reuses the older one's base value,
/// so both stay internally consistent. Any other collision of planted
/// cells means the layout is infeasible and raises an error immediately.
///
/// Every planted bicluster is checked against the returned perturbation
/// bound; a failed check rebuilds the dataset with a derived sub-seed, at
/// most 100 times.
inline GeneratedDataset generate(const GeneratorConfig& config) {
  GeneratorConfig attempt_config = config;
  for (int attempt = 0;; ++attempt) {
    try {
      return detail::generate_once(attempt_config);
    } catch (const detail::PlantedConsistencyError&) {
      if (attempt >= 100) throw;
      attempt_config.seed =
          attempt_config.seed * 6364136223846793005ull + 1442695040888963407ull;
    }
  }
}

}  // namespace rinclose
