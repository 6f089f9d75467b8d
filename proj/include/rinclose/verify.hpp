// Independent certification of a mined solution: per-bicluster consistency
// and maximality, size constraints, duplicate row-set detection, and exact
// set comparison between two solutions.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rinclose/core.hpp"

namespace rinclose {

struct Violation {
  Bicluster bicluster;
  std::string reason;
};

struct VerificationReport {
  std::size_t n_biclusters = 0;
  bool all_correct = true;
  bool all_maximal = true;
  std::size_t duplicate_rowsets = 0;
  std::size_t size_violations = 0;
  std::vector<Violation> details;

  bool clean() const noexcept {
    return all_correct && all_maximal && duplicate_rowsets == 0 && size_violations == 0;
  }
};

/// Checks every bicluster of the solution against the matrix and the
/// mining parameters. Violations are reported, never thrown.
inline VerificationReport check_solution(const DataMatrix& a, const BiclusterSet& solution,
                                         const MiningParams& params) {
  const std::vector<double> eps = params.column_epsilons(a);
  VerificationReport report;
  report.n_biclusters = solution.size();

  std::map<IndexSet, std::size_t> rowset_count;
  for (const Bicluster& b : solution) ++rowset_count[b.rows];
  for (const auto& [rows, count] : rowset_count) {
    if (count > 1) {
      report.duplicate_rowsets += count - 1;
      std::ostringstream reason;
      reason << "row set appears " << count << " times";
      report.details.push_back(Violation{Bicluster{rows, {}}, reason.str()});
    }
  }

  for (const Bicluster& b : solution) {
    if (static_cast<int>(b.rows.size()) < params.min_row ||
        static_cast<int>(b.cols.size()) < params.min_col) {
      ++report.size_violations;
      report.details.push_back(Violation{b, "smaller than min_row x min_col"});
    }
    if (!is_correct_cvc(a, b, eps)) {
      report.all_correct = false;
      report.details.push_back(Violation{b, "column span exceeds the perturbation bound"});
      continue;  // maximality is only defined for correct biclusters
    }
    if (!is_maximal(a, b, eps)) {
      report.all_maximal = false;
      report.details.push_back(Violation{b, "extendable by a row or column"});
    }
  }
  return report;
}

struct SetDiff {
  std::vector<Bicluster> missing_from_a;
  std::vector<Bicluster> missing_from_b;

  bool empty() const noexcept { return missing_from_a.empty() && missing_from_b.empty(); }
};

/// Exact two-way difference of canonically ordered solutions.
inline SetDiff compare_sets(const BiclusterSet& a, const BiclusterSet& b) {
  SetDiff diff;
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                      std::back_inserter(diff.missing_from_a));
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(diff.missing_from_b));
  return diff;
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["n_biclusters"] = report.n_biclusters;
  j["all_correct"] = report.all_correct;
  j["all_maximal"] = report.all_maximal;
  j["duplicate_rowsets"] = report.duplicate_rowsets;
  j["size_violations"] = report.size_violations;
  j["details"] = nlohmann::ordered_json::array();
  for (const Violation& v : report.details) {
    nlohmann::ordered_json item;
    item["rows"] = v.bicluster.rows;
    item["cols"] = v.bicluster.cols;
    item["reason"] = v.reason;
    j["details"].push_back(std::move(item));
  }
  return j;
}

}  // namespace rinclose
