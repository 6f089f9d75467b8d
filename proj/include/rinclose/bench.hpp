// Benchmark harness: times mining runs over fixed matrices or freshly
// generated datasets, aggregates repeats, and emits plot-ready CSV. Wall
// time covers the search only; loading and serialization stay outside.
// Memory numbers are the engine's logical auxiliary accounting.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rinclose/core.hpp"
#include "rinclose/dataio.hpp"
#include "rinclose/miners.hpp"
#include "rinclose/syngen.hpp"

namespace rinclose {

struct BenchReport {
  std::string algorithm;
  std::string dataset;
  int n = 0;
  int m = 0;
  double epsilon = 0.0;
  int min_row = 1;
  int min_col = 1;
  std::uint64_t n_biclusters = 0;
  double wall_ms = 0.0;
  std::size_t peak_aux_bytes = 0;
  int repeats = 1;
  std::string aggregate = "median";
  bool truncated = false;
  std::size_t symbol_table_bytes = 0;  // informational; zero for table-free algorithms
};

struct BenchInput {
  std::string id;
  std::optional<DataMatrix> matrix;          // fixed dataset, reused across repeats
  std::optional<GeneratorConfig> generator;  // fresh dataset per repeat (seed + repeat index)
};

struct BenchRequest {
  BenchInput input;
  std::vector<Algorithm> algorithms;
  std::vector<double> epsilons;       // ignored when epsilon_from_generator is set
  bool epsilon_from_generator = false;
  int min_row = 1;
  int min_col = 1;
  int repeats = 1;
  std::string aggregate = "median";  // "median" or "mean"
  std::uint64_t time_budget_ms = 0;
  std::size_t memory_budget_bytes = 0;
};

namespace detail {

inline double aggregate_values(std::vector<double> values, const std::string& how) {
  if (values.empty()) return 0.0;
  if (how == "mean") {
    double sum = 0.0;
    for (const double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  }
  // median: lower-middle for even counts, matching integral counters
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

}  // namespace detail

/// Runs every algorithm of the request and aggregates over repeats.
/// Runs that hit the time/memory budget are marked truncated, not fatal.
inline std::vector<BenchReport> run_benchmark(const BenchRequest& request) {
  if (request.algorithms.empty())
    throw std::invalid_argument("run_benchmark: at least one algorithm is required");
  if (!request.input.matrix && !request.input.generator)
    throw std::invalid_argument("run_benchmark: the input needs a matrix or a generator config");
  if (request.repeats < 1) throw std::invalid_argument("run_benchmark: repeats must be >= 1");
  if (request.aggregate != "median" && request.aggregate != "mean")
    throw std::invalid_argument("run_benchmark: aggregate must be 'median' or 'mean'");

  std::vector<double> epsilons = request.epsilons;
  if (request.epsilon_from_generator) {
    if (!request.input.generator)
      throw std::invalid_argument(
          "run_benchmark: epsilon_from_generator needs a generator input");
    epsilons = {0.0};  // placeholder; replaced per repeat
  } else if (epsilons.empty()) {
    epsilons = {0.0};
  }

  MiningOptions opts;
  opts.time_budget_ms = request.time_budget_ms;
  opts.memory_budget_bytes = request.memory_budget_bytes;

  std::vector<BenchReport> reports;
  for (const Algorithm algo : request.algorithms) {
    for (const double eps_value : epsilons) {
      BenchReport report;
      report.algorithm = to_string(algo);
      report.dataset = request.input.id;
      report.min_row = request.min_row;
      report.min_col = request.min_col;
      report.repeats = request.repeats;
      report.aggregate = request.aggregate;

      std::vector<double> wall_ms, counts, peaks, st_bytes, eps_used;
      for (int r = 0; r < request.repeats; ++r) {
        std::optional<GeneratedDataset> generated;
        const DataMatrix* matrix = nullptr;
        double eps = eps_value;
        if (request.input.generator) {
          GeneratorConfig cfg = *request.input.generator;
          cfg.seed += static_cast<std::uint64_t>(r);
          generated = generate(cfg);
          matrix = &generated->matrix;
          if (request.epsilon_from_generator) eps = generated->epsilon;
        } else {
          matrix = &*request.input.matrix;
        }
        report.n = matrix->rows();
        report.m = matrix->cols();
        eps_used.push_back(eps);

        MiningParams params(eps, request.min_row, request.min_col);
        MiningStats stats;
        CountingSink sink;
        const auto t0 = std::chrono::steady_clock::now();
        mine(*matrix, params, algo, sink, &stats, opts);
        const auto t1 = std::chrono::steady_clock::now();

        wall_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        counts.push_back(static_cast<double>(sink.count()));
        peaks.push_back(static_cast<double>(stats.peak_aux_bytes));
        st_bytes.push_back(static_cast<double>(stats.symbol_table_bytes));
        report.truncated = report.truncated || stats.truncated;
      }
      report.wall_ms = detail::aggregate_values(wall_ms, request.aggregate);
      report.n_biclusters =
          static_cast<std::uint64_t>(detail::aggregate_values(counts, request.aggregate));
      report.peak_aux_bytes =
          static_cast<std::size_t>(detail::aggregate_values(peaks, request.aggregate));
      report.symbol_table_bytes =
          static_cast<std::size_t>(detail::aggregate_values(st_bytes, request.aggregate));
      report.epsilon = detail::aggregate_values(eps_used, request.aggregate);
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

inline void emit_plot_data(const std::vector<BenchReport>& reports, std::ostream& out) {
  out << "algorithm,dataset,n,m,epsilon,min_row,min_col,n_biclusters,wall_ms,peak_aux_bytes,"
         "aggregate\n";
  for (const BenchReport& r : reports) {
    out << r.algorithm << ',' << r.dataset << ',' << r.n << ',' << r.m << ','
        << detail::format_double(r.epsilon) << ',' << r.min_row << ',' << r.min_col << ','
        << r.n_biclusters << ',' << detail::format_double(r.wall_ms) << ',' << r.peak_aux_bytes
        << ',' << r.aggregate << '\n';
  }
}

inline void emit_plot_data(const std::vector<BenchReport>& reports, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_plot_data: cannot open '" + path + "' for writing");
  emit_plot_data(reports, out);
  if (!out) throw std::runtime_error("emit_plot_data: failed writing '" + path + "'");
}

/// Parses a sweep description: a dataset (generator config or matrix
/// path), algorithms, an epsilon grid or "generator", size constraints,
/// and optionally one generator parameter swept over a value list.
inline std::vector<BenchRequest> parse_bench_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_bench_spec: cannot open '" + path + "'");
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("parse_bench_spec: '" + path + "': " + e.what());
  }

  BenchRequest base;
  const auto dataset = spec.at("dataset");
  if (dataset.contains("matrix")) {
    const std::string matrix_path = dataset.at("matrix").get<std::string>();
    LoadOptions load;
    if (dataset.value("tsv", false)) load.delimiter = '\t';
    load.header = dataset.value("header", false);
    load.row_labels = dataset.value("row_labels", false);
    base.input.matrix = load_matrix(matrix_path, load);
    base.input.id = dataset.value("id", matrix_path);
  } else if (dataset.contains("generator")) {
    const auto& g = dataset.at("generator");
    GeneratorConfig cfg;
    cfg.n = g.value("n", cfg.n);
    cfg.m = g.value("m", cfg.m);
    cfg.n_biclusters = g.value("n_biclusters", cfg.n_biclusters);
    cfg.bic_rows = g.value("bic_rows", cfg.bic_rows);
    cfg.bic_cols = g.value("bic_cols", cfg.bic_cols);
    cfg.overlap = g.value("overlap", cfg.overlap);
    cfg.noise_sigma = g.value("noise_sigma", cfg.noise_sigma);
    cfg.background_range = g.value("background_range", cfg.background_range);
    cfg.seed = g.value("seed", cfg.seed);
    base.input.generator = cfg;
    base.input.id = dataset.value("id", std::string("generated"));
  } else {
    throw std::runtime_error("parse_bench_spec: dataset needs 'matrix' or 'generator'");
  }

  for (const auto& name : spec.at("algorithms")) {
    const auto algo = algorithm_from_string(name.get<std::string>());
    if (!algo)
      throw std::runtime_error("parse_bench_spec: unknown algorithm '" +
                               name.get<std::string>() + "'");
    base.algorithms.push_back(*algo);
  }

  if (spec.contains("epsilon")) {
    const auto& e = spec.at("epsilon");
    if (e.is_string() && e.get<std::string>() == "generator")
      base.epsilon_from_generator = true;
    else if (e.is_array())
      for (const auto& v : e) base.epsilons.push_back(v.get<double>());
    else
      base.epsilons.push_back(e.get<double>());
  }
  base.min_row = spec.value("min_row", 1);
  base.min_col = spec.value("min_col", 1);
  base.repeats = spec.value("repeats", 1);
  base.aggregate = spec.value("aggregate", std::string("median"));
  base.time_budget_ms = spec.value("time_budget_ms", std::uint64_t{0});
  base.memory_budget_bytes = spec.value("memory_budget_bytes", std::size_t{0});

  if (!spec.contains("sweep")) return {base};

  if (!base.input.generator)
    throw std::runtime_error("parse_bench_spec: 'sweep' needs a generator dataset");
  const auto& sweep = spec.at("sweep");
  const std::string param = sweep.at("param").get<std::string>();
  std::vector<BenchRequest> requests;
  for (const auto& value : sweep.at("values")) {
    BenchRequest req = base;
    GeneratorConfig& cfg = *req.input.generator;
    if (param == "n") cfg.n = value.get<int>();
    else if (param == "m") cfg.m = value.get<int>();
    else if (param == "n_biclusters") cfg.n_biclusters = value.get<int>();
    else if (param == "bic_rows") cfg.bic_rows = value.get<int>();
    else if (param == "bic_cols") cfg.bic_cols = value.get<int>();
    else if (param == "overlap") cfg.overlap = value.get<double>();
    else if (param == "noise_sigma") cfg.noise_sigma = value.get<double>();
    else throw std::runtime_error("parse_bench_spec: unknown sweep parameter '" + param + "'");
    std::ostringstream id;
    id << base.input.id << ":" << param << "=" << value.dump();
    req.input.id = id.str();
    requests.push_back(std::move(req));
  }
  return requests;
}

}  // namespace rinclose
