// Acceptance suite: end-to-end checks of the library's headline claims,
// one pass/fail line per criterion. Exits non-zero when any criterion
// fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rinclose/rinclose.hpp"
#include "support/fixtures.hpp"

using namespace rinclose;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Tallies fed by criteria 1-5 and reported by criterion 6.
struct CertificationTally {
  std::size_t solutions = 0;
  std::size_t not_correct = 0;
  std::size_t not_maximal = 0;
  std::size_t duplicate_rowsets = 0;
  std::size_t size_violations = 0;
  std::size_t concept_solutions = 0;
  std::size_t concept_violations = 0;

  void add(const DataMatrix& a, const BiclusterSet& solution, const MiningParams& params) {
    const auto report = check_solution(a, solution, params);
    ++solutions;
    not_correct += !report.all_correct;
    not_maximal += !report.all_maximal;
    duplicate_rowsets += report.duplicate_rowsets;
    size_violations += report.size_violations;
  }

  // Formal concepts obey the binary (all-ones) maximality criterion, not
  // the numeric-column one: an all-zeros column may extend them as a
  // zero-perturbation bicluster without making them non-maximal concepts.
  void add_concepts(const DataMatrix& a, const BiclusterSet& solution,
                    const MiningParams& params) {
    ++concept_solutions;
    std::vector<IndexSet> rowsets;
    for (const Bicluster& b : solution) {
      rowsets.push_back(b.rows);
      bool ok = static_cast<int>(b.rows.size()) >= params.min_row &&
                static_cast<int>(b.cols.size()) >= params.min_col;
      for (const Index i : b.rows)
        for (const Index j : b.cols) ok = ok && a(i, j) == 1.0;
      for (Index x = 1; x <= a.rows() && ok; ++x) {
        if (detail::contains_sorted(b.rows, x)) continue;
        bool fits = true;
        for (const Index j : b.cols) fits = fits && a(x, j) == 1.0;
        ok = !fits;
      }
      for (Index y = 1; y <= a.cols() && ok; ++y) {
        if (detail::contains_sorted(b.cols, y)) continue;
        bool fits = true;
        for (const Index i : b.rows) fits = fits && a(i, y) == 1.0;
        ok = !fits;
      }
      if (!ok) ++concept_violations;
    }
    std::sort(rowsets.begin(), rowsets.end());
    if (std::adjacent_find(rowsets.begin(), rowsets.end()) != rowsets.end())
      ++concept_violations;
  }

  bool clean() const {
    return not_correct == 0 && not_maximal == 0 && duplicate_rowsets == 0 &&
           size_violations == 0 && concept_violations == 0;
  }
};

CertificationTally g_tally;

// Criteria 2 and 3 share these 50 mining runs.
struct PlantedRuns {
  int datasets = 0;
  int empty_diffs = 0;
  int planted_total = 0;
  int planted_recovered = 0;
  std::uint64_t biclusters = 0;
};

const PlantedRuns& planted_runs() {
  static const PlantedRuns runs = [] {
    PlantedRuns r;
    for (int i = 0; i < 50; ++i) {
      GeneratorConfig cfg;
      cfg.n = 500;
      cfg.m = 30;
      cfg.n_biclusters = 5;
      cfg.bic_rows = 40;
      cfg.bic_cols = 8;
      cfg.overlap = 0.2;
      cfg.noise_sigma = 0.05;
      cfg.background_range = 8.0;  // keeps the planted structure the dense region
      cfg.seed = 2000 + static_cast<std::uint64_t>(i);
      const auto data = generate(cfg);

      const MiningParams params(data.epsilon, 20, 3);
      const auto via_cvc = mine_cvc(data.matrix, params);
      const auto via_cvc2 = mine_cvc2(data.matrix, params);

      ++r.datasets;
      r.empty_diffs += compare_sets(via_cvc, via_cvc2).empty();
      r.biclusters += via_cvc2.size();
      for (const Bicluster& b : data.planted) {
        ++r.planted_total;
        r.planted_recovered += via_cvc2.contains(b);
      }
      g_tally.add(data.matrix, via_cvc, params);
      g_tally.add(data.matrix, via_cvc2, params);
    }
    return r;
  }();
  return runs;
}

Outcome criterion1() {
  std::mt19937_64 rng(1001);
  const double eps_grid[] = {0.0, 0.15, 0.3, 1.0};
  int matrices = 0;
  int comparisons = 0;
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 4 + t % 7;
    const int m = 2 + t % 5;
    const auto a = (t % 2) ? testsupport::random_integer_matrix(rng, n, m, 0, 4)
                           : testsupport::random_uniform_matrix(rng, n, m);
    ++matrices;
    for (const double eps : eps_grid) {
      for (int min_row = 1; min_row <= 2; ++min_row) {
        for (int min_col = 1; min_col <= 2; ++min_col) {
          const MiningParams params(eps, min_row, min_col);
          const auto reference = oracle_cvc(a, params);
          const auto via_cvc = mine_cvc(a, params);
          const auto via_cvc2 = mine_cvc2(a, params);
          mismatches += !compare_sets(via_cvc, reference).empty();
          mismatches += !compare_sets(via_cvc2, reference).empty();
          comparisons += 2;
          g_tally.add(a, via_cvc, params);
          g_tally.add(a, via_cvc2, params);
        }
      }
    }
  }
  std::ostringstream detail;
  detail << matrices << " matrices, " << comparisons << " miner-vs-oracle comparisons, "
         << mismatches << " mismatches";
  return {mismatches == 0, detail.str()};
}

Outcome criterion2() {
  const auto& runs = planted_runs();
  std::ostringstream detail;
  detail << runs.empty_diffs << "/" << runs.datasets
         << " datasets with an empty cvc-vs-cvc2 diff (" << runs.biclusters
         << " biclusters total)";
  return {runs.empty_diffs == runs.datasets, detail.str()};
}

Outcome criterion3() {
  const auto& runs = planted_runs();
  std::ostringstream detail;
  detail << runs.planted_recovered << "/" << runs.planted_total
         << " planted biclusters found verbatim at the generator bound";
  return {runs.planted_recovered == runs.planted_total, detail.str()};
}

Outcome criterion4() {
  std::mt19937_64 rng(4001);
  int mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 4 + t % 7;
    const int m = 2 + t % 5;
    const auto a = (t % 2) ? testsupport::random_integer_matrix(rng, n, m, 0, 3)
                           : testsupport::random_uniform_matrix(rng, n, m);
    const MiningParams params(0.0, 1 + t % 2, 1 + (t / 2) % 2);
    const auto perfect = mine_cvcp(a, params);
    const auto perturbed_at_zero = mine_cvc2(a, params);
    mismatches += !(perfect == perturbed_at_zero);
    g_tally.add(a, perfect, params);
  }
  std::ostringstream detail;
  detail << "100 random matrices, " << mismatches << " mismatches between cvcp and cvc2 at 0";
  return {mismatches == 0, detail.str()};
}

Outcome criterion5() {
  std::mt19937_64 rng(5001);
  int mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 5 + t % 8;
    const int m = 3 + t % 6;
    const auto a = testsupport::random_binary_matrix(rng, n, m, 0.4 + 0.03 * (t % 10));
    const MiningParams params(0.0, 1 + t % 2, 1 + (t / 2) % 2);
    const auto concepts = mine_inclose2(a, params);
    mismatches += !(concepts == oracle_formal_concepts(a, params));
    g_tally.add_concepts(a, concepts, params);
  }
  std::ostringstream detail;
  detail << "100 random binary matrices, " << mismatches << " mismatches vs the concept oracle";
  return {mismatches == 0, detail.str()};
}

Outcome criterion6() {
  std::ostringstream detail;
  detail << g_tally.solutions << " solutions certified (" << g_tally.not_correct
         << " with correctness violations, " << g_tally.not_maximal << " with maximality "
         << "violations, " << g_tally.duplicate_rowsets << " duplicate row-sets, "
         << g_tally.size_violations << " size violations); " << g_tally.concept_solutions
         << " concept solutions checked against all-ones maximality ("
         << g_tally.concept_violations << " violations)";
  return {g_tally.clean(), detail.str()};
}

Outcome criterion7() {
  int passed = 0;
  std::uint64_t min_q = 0;
  bool first = true;
  for (int i = 0; i < 5; ++i) {
    GeneratorConfig cfg;
    cfg.n = 400;
    cfg.m = 40;
    cfg.n_biclusters = 4;
    cfg.bic_rows = 30;
    cfg.bic_cols = 6;
    cfg.overlap = 0.25;
    cfg.noise_sigma = 0.05;
    cfg.seed = 7000 + static_cast<std::uint64_t>(i);
    const auto data = generate(cfg);

    const MiningParams params(0.22, 30, 1);
    MiningStats cvc_stats, cvc2_stats;
    CountingSink cvc_sink, cvc2_sink;
    mine(data.matrix, params, Algorithm::cvc, cvc_sink, &cvc_stats);
    mine(data.matrix, params, Algorithm::cvc2, cvc2_sink, &cvc2_stats);

    const std::uint64_t q = cvc_sink.count();
    const std::size_t per_entry_floor =
        detail::kSymbolTableEntryBytes + static_cast<std::size_t>(params.min_row) * sizeof(Index);
    const bool ok = q == cvc2_sink.count() && q >= 10000 &&
                    cvc2_stats.peak_aux_bytes < cvc_stats.peak_aux_bytes &&
                    cvc_stats.symbol_table_entries + 1 >= q &&
                    cvc_stats.symbol_table_bytes >=
                        cvc_stats.symbol_table_entries * per_entry_floor &&
                    cvc2_stats.symbol_table_bytes == 0;
    passed += ok;
    min_q = first ? q : std::min(min_q, q);
    first = false;
  }
  std::ostringstream detail;
  detail << passed << "/5 datasets with >= 10000 biclusters (min " << min_q
         << "), cvc2 peak below cvc peak, linear symbol-table growth in cvc, none in cvc2";
  return {passed == 5, detail.str()};
}

Outcome criterion8() {
  GeneratorConfig cfg;
  cfg.n = 120;
  cfg.m = 14;
  cfg.n_biclusters = 3;
  cfg.bic_rows = 25;
  cfg.bic_cols = 5;
  cfg.overlap = 0.2;
  cfg.noise_sigma = 0.05;
  cfg.seed = 8000;
  const auto data = generate(cfg);

  std::vector<BenchReport> reports;
  bool counts_match = true;
  std::uint64_t count_at_generator_eps = 0;
  for (const double gamma : {0.25, 0.5, 0.75, 1.0, 1.25}) {
    const double eps = gamma * data.epsilon;
    const MiningParams params(eps, 12, 2);
    std::uint64_t counts[2] = {0, 0};
    int slot = 0;
    for (const Algorithm algo : {Algorithm::cvc, Algorithm::cvc2}) {
      MiningStats stats;
      CountingSink sink;
      const auto t0 = std::chrono::steady_clock::now();
      mine(data.matrix, params, algo, sink, &stats);
      const auto t1 = std::chrono::steady_clock::now();
      counts[slot++] = sink.count();

      BenchReport report;
      report.algorithm = to_string(algo);
      report.dataset = "epsilon-sweep";
      report.n = data.matrix.rows();
      report.m = data.matrix.cols();
      report.epsilon = eps;
      report.min_row = params.min_row;
      report.min_col = params.min_col;
      report.n_biclusters = sink.count();
      report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      report.peak_aux_bytes = stats.peak_aux_bytes;
      reports.push_back(std::move(report));
    }
    counts_match = counts_match && counts[0] == counts[1];
    if (gamma == 1.0) count_at_generator_eps = counts[0];
  }
  const std::string csv_path = "acceptance_epsilon_sweep.csv";
  emit_plot_data(reports, csv_path);

  std::ostringstream detail;
  detail << "counts per grid point:";
  for (std::size_t k = 0; k < reports.size(); k += 2)
    detail << " " << reports[k].n_biclusters;
  detail << "; " << count_at_generator_eps << " at the generator bound (equal across "
         << "algorithms: " << (counts_match ? "yes" : "NO") << "); plot data in " << csv_path;
  return {counts_match, detail.str()};
}

Outcome criterion9() {
  const auto m2 = testsupport::fixture_m2();
  const MiningParams params(1.0, 2, 1);
  const IndexSet duplicate{2, 3};
  const IndexSet first_parent{1, 2, 3};
  const IndexSet second_parent{2, 3, 4};

  bool pass = true;
  std::ostringstream detail;
  for (const Algorithm algo : {Algorithm::cvc, Algorithm::cvc2}) {
    std::vector<TraceEvent> events;
    MiningOptions opts;
    opts.trace = [&](const TraceEvent& e) {
      if (e.candidate_rows == duplicate && e.col == 3) events.push_back(e);
    };
    CollectingSink sink;
    mine(m2, params, algo, sink, nullptr, opts);

    int accepted = 0;
    bool accepted_from_first = false;
    CandidateVerdict second_verdict = CandidateVerdict::accepted;
    for (const auto& e : events) {
      if (e.verdict == CandidateVerdict::accepted) {
        ++accepted;
        accepted_from_first = accepted_from_first || e.parent_rows == first_parent;
      }
      if (e.parent_rows == second_parent) second_verdict = e.verdict;
    }
    const CandidateVerdict expected_rejection = algo == Algorithm::cvc
                                                    ? CandidateVerdict::duplicate_rowset
                                                    : CandidateVerdict::not_row_canonical_lex;
    const bool algo_ok =
        accepted == 1 && accepted_from_first && second_verdict == expected_rejection;
    pass = pass && algo_ok;
    detail << to_string(algo) << ": accepted " << accepted << "x from {1,2,3}, parent {2,3,4} "
           << "rejected as " << to_string(second_verdict) << "; ";
  }
  detail << "solutions equal: "
         << (mine_cvc(m2, params) == mine_cvc2(m2, params) ? "yes" : "NO");
  return {pass, detail.str()};
}

struct Criterion {
  int id;
  const char* label;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence of cvc and cvc2 on random small matrices", criterion1},
      {2, "cvc and cvc2 produce identical solutions on planted datasets", criterion2},
      {3, "every planted bicluster is recovered at the generator bound", criterion3},
      {4, "perfect miner equals the perturbed miners at zero perturbation", criterion4},
      {5, "inclose2 enumerates exactly the formal concepts", criterion5},
      {6, "certification: correct, maximal, duplicate-free solutions", criterion6},
      {7, "table-free search peaks below the symbol-table search at volume", criterion7},
      {8, "bicluster counts over an epsilon grid agree across algorithms", criterion8},
      {9, "the duplicate candidate on the worked fixture is fenced once", criterion9},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(t1 - t0).count();
    failures += !outcome.pass;
    std::printf("[%s] criterion %d: %s — %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL",
                criterion.id, criterion.label, outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }

  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
