// Command-line front end: mine / generate / oracle / verify / bench /
// preprocess. Exit codes: 0 success, 1 verification found violations or a
// non-empty diff, 2 usage or input errors.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rinclose/rinclose.hpp"

namespace {

using namespace rinclose;

struct MatrixArgs {
  std::string path;
  std::string format;  // "", "csv" or "tsv"; "" picks by extension
  bool header = false;
  bool row_labels = false;
};

struct PreprocessArgs {
  bool transpose = false;
  bool log_transform = false;
  double shift = 0.0;
  bool scale = false;

  PreprocessSpec spec() const {
    PreprocessSpec s;
    s.transpose = transpose;
    s.log_transform = log_transform;
    s.shift_constant = shift;
    s.scale_columns = scale;
    return s;
  }
};

void add_matrix_options(CLI::App* cmd, MatrixArgs& args) {
  cmd->add_option("--input", args.path, "input matrix file")->required();
  cmd->add_option("--input-format", args.format, "csv or tsv (default: by extension)")
      ->check(CLI::IsMember({"csv", "tsv"}));
  cmd->add_flag("--header", args.header, "first row holds column labels");
  cmd->add_flag("--row-labels", args.row_labels, "first field of each row is a label");
}

void add_preprocess_options(CLI::App* cmd, PreprocessArgs& args) {
  cmd->add_flag("--transpose", args.transpose, "transpose before anything else");
  cmd->add_flag("--log", args.log_transform, "natural log after adding --shift");
  cmd->add_option("--shift", args.shift, "constant added before the log");
  cmd->add_flag("--scale", args.scale, "per-column min-max scaling to [0,1]");
}

DataMatrix load_from_args(const MatrixArgs& args) {
  LoadOptions opts;
  std::string format = args.format;
  if (format.empty())
    format = args.path.size() >= 4 && args.path.substr(args.path.size() - 4) == ".tsv"
                 ? "tsv"
                 : "csv";
  opts.delimiter = format == "tsv" ? '\t' : ',';
  opts.header = args.header;
  opts.row_labels = args.row_labels;
  return load_matrix(args.path, opts);
}

std::vector<double> read_epsilon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open epsilon file '" + path + "'");
  std::vector<double> values;
  double v = 0.0;
  while (in >> v) values.push_back(v);
  if (values.empty()) throw std::runtime_error("epsilon file '" + path + "' has no values");
  return values;
}

MiningParams make_params(double epsilon, const std::string& epsilon_file, int min_row,
                         int min_col) {
  if (!epsilon_file.empty())
    return MiningParams(read_epsilon_file(epsilon_file), min_row, min_col);
  return MiningParams(epsilon, min_row, min_col);
}

int run_mine(const MatrixArgs& matrix_args, const PreprocessArgs& pre_args,
             const std::string& algorithm, double epsilon, const std::string& epsilon_file,
             int min_row, int min_col, const std::string& output, const std::string& format) {
  const auto algo = algorithm_from_string(algorithm);
  if (!algo) throw std::runtime_error("unknown algorithm '" + algorithm + "'");
  const auto out_format = bicluster_format_from_string(format);
  if (!out_format) throw std::runtime_error("unknown output format '" + format + "'");

  const auto a = preprocess(load_from_args(matrix_args), pre_args.spec());
  const auto params = make_params(epsilon, epsilon_file, min_row, min_col);

  StreamingBiclusterWriter writer(output, *out_format);
  MiningStats stats;
  mine(a, params, *algo, writer, &stats);
  writer.close();
  std::cerr << "mined " << stats.biclusters << " biclusters ("
            << stats.nodes << " nodes, peak aux " << stats.peak_aux_bytes << " bytes)\n";
  return 0;
}

int run_oracle(const MatrixArgs& matrix_args, const PreprocessArgs& pre_args,
               const std::string& algorithm, double epsilon, const std::string& epsilon_file,
               int min_row, int min_col, const std::string& output, const std::string& format) {
  const auto algo = algorithm_from_string(algorithm);
  if (!algo) throw std::runtime_error("unknown algorithm '" + algorithm + "'");
  const auto out_format = bicluster_format_from_string(format);
  if (!out_format) throw std::runtime_error("unknown output format '" + format + "'");

  const auto a = preprocess(load_from_args(matrix_args), pre_args.spec());
  MiningParams params = make_params(epsilon, epsilon_file, min_row, min_col);

  BiclusterSet found;
  if (*algo == Algorithm::inclose2) {
    found = oracle_formal_concepts(a, params);
  } else {
    if (*algo == Algorithm::cvcp) params.epsilon = {0.0};
    found = oracle_cvc(a, params);
  }
  write_biclusters(found, output, *out_format);
  std::cerr << "enumerated " << found.size() << " biclusters exhaustively\n";
  return 0;
}

int run_generate(const GeneratorConfig& config, const std::string& out_matrix,
                 const std::string& out_truth) {
  const auto data = generate(config);
  write_matrix(data.matrix, out_matrix);
  if (!out_truth.empty()) write_ground_truth(out_truth, data.planted, data.epsilon);
  std::cerr << "generated " << data.matrix.rows() << "x" << data.matrix.cols() << " matrix, "
            << data.planted.size() << " planted biclusters, epsilon " << data.epsilon << "\n";
  return 0;
}

int run_verify(const MatrixArgs& matrix_args, const std::string& solution_path,
               const std::string& solution_format, double epsilon,
               const std::string& epsilon_file, int min_row, int min_col,
               const std::string& against_path, const std::string& report_path) {
  const auto format = bicluster_format_from_string(solution_format);
  if (!format) throw std::runtime_error("unknown solution format '" + solution_format + "'");

  const auto a = load_from_args(matrix_args);
  const auto params = make_params(epsilon, epsilon_file, min_row, min_col);
  const auto solution = BiclusterSet::canonical(read_biclusters(solution_path, *format));

  const auto report = check_solution(a, solution, params);
  auto json = report_to_json(report);

  bool diff_clean = true;
  if (!against_path.empty()) {
    const auto other = BiclusterSet::canonical(read_biclusters(against_path, *format));
    const auto diff = compare_sets(solution, other);
    diff_clean = diff.empty();
    json["diff_missing_from_solution"] = diff.missing_from_a.size();
    json["diff_missing_from_against"] = diff.missing_from_b.size();
  }

  const auto rendered = json.dump(2);
  if (report_path.empty()) {
    std::cout << rendered << "\n";
  } else {
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error("cannot open '" + report_path + "' for writing");
    out << rendered << "\n";
  }
  return report.clean() && diff_clean ? 0 : 1;
}

int run_bench(const std::string& spec_path, int repeats, std::uint64_t time_budget_ms,
              std::size_t memory_budget_bytes, const std::string& out_path) {
  auto requests = parse_bench_spec(spec_path);
  std::vector<BenchReport> reports;
  for (auto& req : requests) {
    if (repeats > 0) req.repeats = repeats;
    if (time_budget_ms > 0) req.time_budget_ms = time_budget_ms;
    if (memory_budget_bytes > 0) req.memory_budget_bytes = memory_budget_bytes;
    const auto batch = run_benchmark(req);
    reports.insert(reports.end(), batch.begin(), batch.end());
  }
  emit_plot_data(reports, out_path);
  std::cerr << "wrote " << reports.size() << " benchmark rows to " << out_path << "\n";
  return 0;
}

int run_preprocess(const MatrixArgs& matrix_args, const PreprocessArgs& pre_args,
                   const std::string& output, const std::string& output_format) {
  const auto a = preprocess(load_from_args(matrix_args), pre_args.spec());
  LoadOptions out_opts;
  out_opts.delimiter = output_format == "tsv" ? '\t' : ',';
  write_matrix(a, output, out_opts);
  std::cerr << "wrote " << a.rows() << "x" << a.cols() << " matrix to " << output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"enumeration of maximal biclusters with constant values on columns"};
  app.require_subcommand(1);

  // mine
  MatrixArgs mine_matrix;
  PreprocessArgs mine_pre;
  std::string mine_algorithm, mine_eps_file, mine_output, mine_format = "jsonl";
  double mine_epsilon = 0.0;
  int mine_min_row = 1, mine_min_col = 1;
  auto* mine_cmd = app.add_subcommand("mine", "enumerate maximal biclusters");
  add_matrix_options(mine_cmd, mine_matrix);
  add_preprocess_options(mine_cmd, mine_pre);
  mine_cmd->add_option("--algorithm", mine_algorithm, "inclose2, cvcp, cvc or cvc2")
      ->required()
      ->check(CLI::IsMember({"inclose2", "cvcp", "cvc", "cvc2"}));
  mine_cmd->add_option("--epsilon", mine_epsilon, "maximum per-column perturbation");
  mine_cmd->add_option("--epsilon-file", mine_eps_file, "one bound per column");
  mine_cmd->add_option("--min-row", mine_min_row, "minimum rows per bicluster");
  mine_cmd->add_option("--min-col", mine_min_col, "minimum columns per bicluster");
  mine_cmd->add_option("--output", mine_output, "bicluster output file")->required();
  mine_cmd->add_option("--format", mine_format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));

  // generate
  GeneratorConfig gen_config;
  std::string gen_out_matrix, gen_out_truth;
  auto* gen_cmd = app.add_subcommand("generate", "build a synthetic dataset");
  gen_cmd->add_option("--n", gen_config.n, "rows");
  gen_cmd->add_option("--m", gen_config.m, "columns");
  gen_cmd->add_option("--n-biclusters", gen_config.n_biclusters, "planted bicluster count");
  gen_cmd->add_option("--bic-rows", gen_config.bic_rows, "rows per planted bicluster");
  gen_cmd->add_option("--bic-cols", gen_config.bic_cols, "columns per planted bicluster");
  gen_cmd->add_option("--overlap", gen_config.overlap, "overlap fraction in [0,1)");
  gen_cmd->add_option("--noise-sigma", gen_config.noise_sigma, "Gaussian noise std-dev");
  gen_cmd->add_option("--background-range", gen_config.background_range,
                      "background cells are uniform in [0, this]");
  gen_cmd->add_option("--seed", gen_config.seed, "reproducibility seed");
  gen_cmd->add_option("--out-matrix", gen_out_matrix, "matrix CSV path")->required();
  gen_cmd->add_option("--out-truth", gen_out_truth, "ground-truth jsonl path");

  // oracle
  MatrixArgs oracle_matrix;
  PreprocessArgs oracle_pre;
  std::string oracle_algorithm = "cvc", oracle_eps_file, oracle_output,
              oracle_format = "jsonl";
  double oracle_epsilon = 0.0;
  int oracle_min_row = 1, oracle_min_col = 1;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "exhaustive reference enumeration (small matrices)");
  add_matrix_options(oracle_cmd, oracle_matrix);
  add_preprocess_options(oracle_cmd, oracle_pre);
  oracle_cmd->add_option("--algorithm", oracle_algorithm, "inclose2, cvcp, cvc or cvc2")
      ->check(CLI::IsMember({"inclose2", "cvcp", "cvc", "cvc2"}));
  oracle_cmd->add_option("--epsilon", oracle_epsilon, "maximum per-column perturbation");
  oracle_cmd->add_option("--epsilon-file", oracle_eps_file, "one bound per column");
  oracle_cmd->add_option("--min-row", oracle_min_row, "minimum rows per bicluster");
  oracle_cmd->add_option("--min-col", oracle_min_col, "minimum columns per bicluster");
  oracle_cmd->add_option("--output", oracle_output, "bicluster output file")->required();
  oracle_cmd->add_option("--format", oracle_format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));

  // verify
  MatrixArgs verify_matrix;
  std::string verify_solution, verify_solution_format = "jsonl", verify_eps_file,
              verify_against, verify_report;
  double verify_epsilon = 0.0;
  int verify_min_row = 1, verify_min_col = 1;
  auto* verify_cmd = app.add_subcommand("verify", "certify a mined solution");
  add_matrix_options(verify_cmd, verify_matrix);
  verify_cmd->add_option("--solution", verify_solution, "bicluster file to certify")
      ->required();
  verify_cmd->add_option("--solution-format", verify_solution_format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  verify_cmd->add_option("--epsilon", verify_epsilon, "maximum per-column perturbation");
  verify_cmd->add_option("--epsilon-file", verify_eps_file, "one bound per column");
  verify_cmd->add_option("--min-row", verify_min_row, "minimum rows per bicluster");
  verify_cmd->add_option("--min-col", verify_min_col, "minimum columns per bicluster");
  verify_cmd->add_option("--against", verify_against, "second solution for an exact set diff");
  verify_cmd->add_option("--out", verify_report, "write the JSON report here (default stdout)");

  // bench
  std::string bench_spec, bench_out;
  int bench_repeats = 0;
  std::uint64_t bench_time_budget = 0;
  std::size_t bench_memory_budget = 0;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark sweep");
  bench_cmd->add_option("--spec", bench_spec, "sweep description (JSON)")->required();
  bench_cmd->add_option("--repeats", bench_repeats, "override the spec's repeat count");
  bench_cmd->add_option("--time-budget-ms", bench_time_budget,
                        "truncate any single run after this many milliseconds");
  bench_cmd->add_option("--memory-budget-bytes", bench_memory_budget,
                        "truncate any single run above this auxiliary footprint");
  bench_cmd->add_option("--out", bench_out, "CSV output path")->required();

  // preprocess
  MatrixArgs pre_matrix;
  PreprocessArgs pre_args;
  std::string pre_output, pre_output_format = "csv";
  auto* pre_cmd = app.add_subcommand("preprocess", "apply the preprocessing pipeline");
  add_matrix_options(pre_cmd, pre_matrix);
  add_preprocess_options(pre_cmd, pre_args);
  pre_cmd->add_option("--output", pre_output, "output matrix path")->required();
  pre_cmd->add_option("--output-format", pre_output_format, "csv or tsv")
      ->check(CLI::IsMember({"csv", "tsv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits clean; any parse problem is a usage error
  }

  try {
    if (mine_cmd->parsed())
      return run_mine(mine_matrix, mine_pre, mine_algorithm, mine_epsilon, mine_eps_file,
                      mine_min_row, mine_min_col, mine_output, mine_format);
    if (gen_cmd->parsed()) return run_generate(gen_config, gen_out_matrix, gen_out_truth);
    if (oracle_cmd->parsed())
      return run_oracle(oracle_matrix, oracle_pre, oracle_algorithm, oracle_epsilon,
                        oracle_eps_file, oracle_min_row, oracle_min_col, oracle_output,
                        oracle_format);
    if (verify_cmd->parsed())
      return run_verify(verify_matrix, verify_solution, verify_solution_format, verify_epsilon,
                        verify_eps_file, verify_min_row, verify_min_col, verify_against,
                        verify_report);
    if (bench_cmd->parsed())
      return run_bench(bench_spec, bench_repeats, bench_time_budget, bench_memory_budget,
                       bench_out);
    if (pre_cmd->parsed()) return run_preprocess(pre_matrix, pre_args, pre_output,
                                                 pre_output_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
