// The four enumeration drivers built on one incremental-closure search
// engine. A node (I, J) is closed by scanning attributes from its start
// column: a column whose values over I stay within the bound is absorbed
// into J; otherwise the maximal candidate windows of the column are
// filtered (size, duplicate/canonicity/row-discipline, in that order) and
// queued. The node is reported after its closure completes, then its
// children are descended depth-first in queue order. Children inherit the
// parent's fully closed column set plus their generating column.
//
// The drivers differ only in the absorption test, the candidate window
// construction, and the duplicate-suppression discipline:
//   inclose2  binary matrices, all-ones columns, lexicographic canonicity
//   cvcp      zero perturbation, constant-value windows, canonicity
//   cvc       perturbed windows, canonicity + symbol table + row-maximality
//   cvc2      perturbed windows, canonicity + row-canonicity, no table
//
// Recursion is replaced by an explicit frame stack, so column counts in
// the tens of thousands cannot overflow the call stack. Auxiliary memory
// is tracked logically (queued row/check sets, open frames, symbol-table
// keys) at fixed per-structure rates, independent of the allocator.
//
// Work per reported bicluster is polynomial: O(nm^2) for inclose2,
// O(nm(log n + m)) for cvcp, O(nm(n log n + nm + s)) for cvc with s the
// symbol-table lookup cost, and O(n^3 m^2) worst case for cvc2, whose
// lexicographic-parent test scans parent prefixes per tracked row. In
// practice cvc2 tends to run at least as fast while never holding more
// than the active search path.
#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rinclose/core.hpp"
#include "rinclose/kernels.hpp"

namespace rinclose {

enum class Algorithm { inclose2, cvcp, cvc, cvc2 };

constexpr const char* to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::inclose2: return "inclose2";
    case Algorithm::cvcp: return "cvcp";
    case Algorithm::cvc: return "cvc";
    case Algorithm::cvc2: return "cvc2";
  }
  return "?";
}

inline std::optional<Algorithm> algorithm_from_string(std::string_view name) {
  if (name == "inclose2") return Algorithm::inclose2;
  if (name == "cvcp") return Algorithm::cvcp;
  if (name == "cvc") return Algorithm::cvc;
  if (name == "cvc2") return Algorithm::cvc2;
  return std::nullopt;
}

enum class CandidateVerdict {
  accepted,
  too_few_rows,
  duplicate_rowset,
  not_canonical,
  not_row_maximal,
  not_row_canonical_extension,
  not_row_canonical_lex,
};

constexpr const char* to_string(CandidateVerdict v) {
  switch (v) {
    case CandidateVerdict::accepted: return "accepted";
    case CandidateVerdict::too_few_rows: return "too_few_rows";
    case CandidateVerdict::duplicate_rowset: return "duplicate_rowset";
    case CandidateVerdict::not_canonical: return "not_canonical";
    case CandidateVerdict::not_row_maximal: return "not_row_maximal";
    case CandidateVerdict::not_row_canonical_extension: return "not_row_canonical_extension";
    case CandidateVerdict::not_row_canonical_lex: return "not_row_canonical_lex";
  }
  return "?";
}

/// One candidate decision in the depth-first search, for trace consumers.
struct TraceEvent {
  IndexSet parent_rows;
  IndexSet candidate_rows;
  Index col = 0;
  CandidateVerdict verdict = CandidateVerdict::accepted;
};

struct MiningStats {
  std::uint64_t biclusters = 0;
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;
  std::uint64_t absorbed_columns = 0;
  std::uint64_t pruned_nodes = 0;
  std::uint64_t rejected_too_few_rows = 0;
  std::uint64_t rejected_duplicate = 0;
  std::uint64_t rejected_not_canonical = 0;
  std::uint64_t rejected_not_row_maximal = 0;
  std::uint64_t rejected_not_row_canonical_extension = 0;
  std::uint64_t rejected_not_row_canonical_lex = 0;
  std::size_t peak_aux_bytes = 0;
  std::size_t symbol_table_bytes = 0;
  std::size_t symbol_table_entries = 0;
  bool truncated = false;
};

struct MiningOptions {
  SymbolTable::Backend symbol_table_backend = SymbolTable::Backend::hash;
  // Abandoning nodes that cannot reach min_col saves work without changing
  // the output; the toggle exists so tests can demonstrate exactly that.
  bool min_col_prune = true;
  std::uint64_t time_budget_ms = 0;      // 0 = unlimited
  std::size_t memory_budget_bytes = 0;   // 0 = unlimited
  std::function<void(const TraceEvent&)> trace;
};

/// Receives each bicluster as soon as its closure completes.
class BiclusterSink {
 public:
  virtual ~BiclusterSink() = default;
  virtual void emit(const Bicluster& b) = 0;
};

class CollectingSink final : public BiclusterSink {
 public:
  void emit(const Bicluster& b) override { items_.push_back(b); }
  const std::vector<Bicluster>& items() const noexcept { return items_; }
  BiclusterSet take_canonical() { return BiclusterSet::canonical(std::move(items_)); }

 private:
  std::vector<Bicluster> items_;
};

class CountingSink final : public BiclusterSink {
 public:
  void emit(const Bicluster&) override { ++count_; }
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t count_ = 0;
};

class FunctionSink final : public BiclusterSink {
 public:
  explicit FunctionSink(std::function<void(const Bicluster&)> fn) : fn_(std::move(fn)) {}
  void emit(const Bicluster& b) override { fn_(b); }

 private:
  std::function<void(const Bicluster&)> fn_;
};

namespace detail {

// Logical accounting rates. Fixed so that peak numbers are reproducible
// across platforms and allocators.
inline constexpr std::size_t kIndexBytes = sizeof(Index);
inline constexpr std::size_t kQueueEntryBytes = 48;
inline constexpr std::size_t kFrameBytes = 64;
inline constexpr std::size_t kSymbolTableEntryBytes = 32;
inline constexpr std::size_t kSortEntryBytes = 16;

struct ChildSeed {
  IndexSet rows;
  Index gen_col = 0;
  IndexSet check_rows;
  std::size_t entry_bytes = 0;
};

struct InClose2Policy {
  bool absorbs(const DataMatrix& a, const IndexSet& rows, Index j, double) const {
    for (const Index i : rows)
      if (a(i, j) != 1.0) return false;
    return true;
  }

  void candidates(const DataMatrix& a, const IndexSet& rows, Index j, double,
                  std::vector<CandidateWindow>& out) const {
    IndexSet g;
    for (const Index i : rows)
      if (a(i, j) == 1.0) g.push_back(i);
    if (!g.empty()) out.push_back(CandidateWindow{std::move(g), j});
  }

  CandidateVerdict admit(const DataMatrix& a, const IndexSet& g, Index j, const IndexSet& cols,
                         const IndexSet&, const IndexSet&, std::span<const double>) const {
    return is_canonical_binary(a, g, cols, j) ? CandidateVerdict::accepted
                                              : CandidateVerdict::not_canonical;
  }

  std::size_t on_accept(const IndexSet&) { return 0; }

  IndexSet child_check_rows(const DataMatrix&, const IndexSet&, Index, const IndexSet&,
                            const IndexSet&, double, int) const {
    return {};
  }
};

struct NumericPolicyBase {
  bool absorbs(const DataMatrix& a, const IndexSet& rows, Index j, double eps_j) const {
    return span_within(a, rows, j, eps_j);
  }

  void candidates(const DataMatrix& a, const IndexSet& rows, Index j, double eps_j,
                  std::vector<CandidateWindow>& out) const {
    out = candidate_rowsets(a, rows, j, eps_j);
  }
};

struct CvcpPolicy : NumericPolicyBase {
  CandidateVerdict admit(const DataMatrix& a, const IndexSet& g, Index j, const IndexSet& cols,
                         const IndexSet&, const IndexSet&, std::span<const double> eps) const {
    return is_canonical(a, g, cols, j, eps) ? CandidateVerdict::accepted
                                            : CandidateVerdict::not_canonical;
  }

  std::size_t on_accept(const IndexSet&) { return 0; }

  IndexSet child_check_rows(const DataMatrix&, const IndexSet&, Index, const IndexSet&,
                            const IndexSet&, double, int) const {
    return {};
  }
};

struct CvcPolicy : NumericPolicyBase {
  SymbolTable table;

  explicit CvcPolicy(SymbolTable::Backend backend) : table(backend) {}

  CandidateVerdict admit(const DataMatrix& a, const IndexSet& g, Index j, const IndexSet& cols,
                         const IndexSet& check_rows, const IndexSet&,
                         std::span<const double> eps) const {
    if (table.contains(g)) return CandidateVerdict::duplicate_rowset;
    if (!is_canonical(a, g, cols, j, eps)) return CandidateVerdict::not_canonical;
    IndexSet h = cols;
    insert_sorted(h, j);
    if (!is_row_maximal(a, g, h, check_rows, eps)) return CandidateVerdict::not_row_maximal;
    return CandidateVerdict::accepted;
  }

  std::size_t on_accept(const IndexSet& g) {
    table.insert(g);
    return kSymbolTableEntryBytes + g.size() * kIndexBytes;
  }

  IndexSet child_check_rows(const DataMatrix& a, const IndexSet& g, Index j,
                            const IndexSet& check_rows, const IndexSet& parent_rows, double eps_j,
                            int min_row) const {
    return compute_rm(a, g, j, check_rows, parent_rows, eps_j, min_row);
  }
};

struct Cvc2Policy : NumericPolicyBase {
  CandidateVerdict admit(const DataMatrix& a, const IndexSet& g, Index j, const IndexSet& cols,
                         const IndexSet& check_rows, const IndexSet& parent_rows,
                         std::span<const double> eps) const {
    if (!is_canonical(a, g, cols, j, eps)) return CandidateVerdict::not_canonical;
    switch (row_canonicity(a, g, parent_rows, cols, j, check_rows, eps)) {
      case RowCanonicity::fails_extension: return CandidateVerdict::not_row_canonical_extension;
      case RowCanonicity::fails_lex_order: return CandidateVerdict::not_row_canonical_lex;
      case RowCanonicity::canonical: break;
    }
    return CandidateVerdict::accepted;
  }

  std::size_t on_accept(const IndexSet&) { return 0; }

  IndexSet child_check_rows(const DataMatrix& a, const IndexSet& g, Index j,
                            const IndexSet& check_rows, const IndexSet& parent_rows, double eps_j,
                            int min_row) const {
    return compute_rm(a, g, j, check_rows, parent_rows, eps_j, min_row);
  }
};

template <class Policy>
class MiningEngine {
 public:
  MiningEngine(const DataMatrix& a, std::vector<double> eps, int min_row, int min_col,
               BiclusterSink& sink, MiningStats* stats, const MiningOptions& opts, Policy policy)
      : a_(a),
        eps_(std::move(eps)),
        min_row_(min_row),
        min_col_(min_col),
        sink_(sink),
        stats_(stats),
        opts_(opts),
        policy_(std::move(policy)) {}

  void run() {
    start_ = std::chrono::steady_clock::now();
    std::vector<Frame> stack;

    Frame root;
    root.rows = iota_set(a_.rows());
    root.owned_bytes = kFrameBytes + root.rows.size() * kIndexBytes;
    account(root.owned_bytes);
    close_node(root, 1);
    stack.push_back(std::move(root));

    while (!stack.empty()) {
      Frame& top = stack.back();
      if (truncated_ || top.next == top.children.size()) {
        for (std::size_t k = top.next; k < top.children.size(); ++k)
          release(top.children[k].entry_bytes);
        release(top.owned_bytes);
        stack.pop_back();
        continue;
      }
      if (budget_exceeded()) {
        truncated_ = true;
        continue;
      }
      ChildSeed seed = std::move(top.children[top.next]);
      ++top.next;

      Frame child;
      child.rows = std::move(seed.rows);
      child.cols = top.cols;  // the parent's fully closed column set
      insert_sorted(child.cols, seed.gen_col);
      child.check_rows = std::move(seed.check_rows);
      const std::size_t frame_bytes = kFrameBytes + child.cols.size() * kIndexBytes;
      child.owned_bytes = seed.entry_bytes + frame_bytes;
      account(frame_bytes);
      close_node(child, seed.gen_col + 1);
      stack.push_back(std::move(child));
    }
    finish();
  }

 private:
  struct Frame {
    IndexSet rows;
    IndexSet cols;
    IndexSet check_rows;
    std::vector<ChildSeed> children;
    std::size_t next = 0;
    std::size_t owned_bytes = 0;
  };

  void close_node(Frame& f, Index start_attr) {
    ++local_.nodes;
    const Index m = a_.cols();
    for (Index j = start_attr; j <= m; ++j) {
      if (opts_.min_col_prune &&
          static_cast<int>(f.cols.size()) + (m - j + 1) < min_col_) {
        ++local_.pruned_nodes;
        break;
      }
      if (contains_sorted(f.cols, j)) continue;
      const double eps_j = eps_[static_cast<std::size_t>(j) - 1];

      if (policy_.absorbs(a_, f.rows, j, eps_j)) {
        insert_sorted(f.cols, j);
        f.owned_bytes += kIndexBytes;
        account(kIndexBytes);
        ++local_.absorbed_columns;
        continue;
      }

      const std::size_t scratch = f.rows.size() * kSortEntryBytes;
      account(scratch);
      windows_.clear();
      policy_.candidates(a_, f.rows, j, eps_j, windows_);
      release(scratch);

      for (CandidateWindow& w : windows_) {
        ++local_.candidates;
        CandidateVerdict verdict;
        if (static_cast<int>(w.rows.size()) < min_row_)
          verdict = CandidateVerdict::too_few_rows;
        else
          verdict = policy_.admit(a_, w.rows, j, f.cols, f.check_rows, f.rows, eps_);
        record(verdict);
        if (opts_.trace) opts_.trace(TraceEvent{f.rows, w.rows, j, verdict});
        if (verdict != CandidateVerdict::accepted) continue;

        const std::size_t retained = policy_.on_accept(w.rows);
        if (retained) {
          account(retained);
          local_.symbol_table_bytes += retained;
          ++local_.symbol_table_entries;
        }
        IndexSet check =
            policy_.child_check_rows(a_, w.rows, j, f.check_rows, f.rows, eps_j, min_row_);
        const std::size_t entry =
            kQueueEntryBytes + (w.rows.size() + check.size()) * kIndexBytes;
        account(entry);
        f.children.push_back(ChildSeed{std::move(w.rows), j, std::move(check), entry});
      }
    }

    if (static_cast<int>(f.rows.size()) >= min_row_ &&
        static_cast<int>(f.cols.size()) >= min_col_) {
      sink_.emit(Bicluster{f.rows, f.cols});
      ++local_.biclusters;
    }
  }

  void record(CandidateVerdict v) {
    switch (v) {
      case CandidateVerdict::accepted: break;
      case CandidateVerdict::too_few_rows: ++local_.rejected_too_few_rows; break;
      case CandidateVerdict::duplicate_rowset: ++local_.rejected_duplicate; break;
      case CandidateVerdict::not_canonical: ++local_.rejected_not_canonical; break;
      case CandidateVerdict::not_row_maximal: ++local_.rejected_not_row_maximal; break;
      case CandidateVerdict::not_row_canonical_extension:
        ++local_.rejected_not_row_canonical_extension;
        break;
      case CandidateVerdict::not_row_canonical_lex: ++local_.rejected_not_row_canonical_lex; break;
    }
  }

  void account(std::size_t bytes) {
    cur_bytes_ += bytes;
    if (cur_bytes_ > local_.peak_aux_bytes) local_.peak_aux_bytes = cur_bytes_;
  }
  void release(std::size_t bytes) { cur_bytes_ -= bytes; }

  bool budget_exceeded() const {
    if (opts_.memory_budget_bytes && cur_bytes_ > opts_.memory_budget_bytes) return true;
    if (opts_.time_budget_ms) {
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start_)
                               .count();
      if (static_cast<std::uint64_t>(elapsed) > opts_.time_budget_ms) return true;
    }
    return false;
  }

  void finish() {
    local_.truncated = truncated_;
    if (stats_) *stats_ = local_;
  }

  const DataMatrix& a_;
  std::vector<double> eps_;
  int min_row_;
  int min_col_;
  BiclusterSink& sink_;
  MiningStats* stats_;
  const MiningOptions& opts_;
  Policy policy_;
  std::vector<CandidateWindow> windows_;
  MiningStats local_;
  std::size_t cur_bytes_ = 0;
  bool truncated_ = false;
  std::chrono::steady_clock::time_point start_;
};

inline void ensure_binary(const DataMatrix& a) {
  for (Index i = 1; i <= a.rows(); ++i) {
    for (Index j = 1; j <= a.cols(); ++j) {
      const double v = a(i, j);
      if (v != 0.0 && v != 1.0) {
        std::ostringstream msg;
        msg << "inclose2 requires a binary matrix; cell (" << i << "," << j << ") is " << v;
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

}  // namespace detail

/// Runs the selected algorithm, streaming biclusters to the sink in
/// depth-first discovery order. cvcp mines at zero perturbation regardless
/// of the epsilon in params.
inline void mine(const DataMatrix& a, const MiningParams& params, Algorithm algo,
                 BiclusterSink& sink, MiningStats* stats = nullptr,
                 const MiningOptions& opts = {}) {
  params.validate(a);
  const std::vector<double> zeros(static_cast<std::size_t>(a.cols()), 0.0);
  switch (algo) {
    case Algorithm::inclose2: {
      detail::ensure_binary(a);
      detail::MiningEngine<detail::InClose2Policy> engine(a, zeros, params.min_row,
                                                          params.min_col, sink, stats, opts, {});
      engine.run();
      break;
    }
    case Algorithm::cvcp: {
      detail::MiningEngine<detail::CvcpPolicy> engine(a, zeros, params.min_row, params.min_col,
                                                      sink, stats, opts, {});
      engine.run();
      break;
    }
    case Algorithm::cvc: {
      detail::MiningEngine<detail::CvcPolicy> engine(
          a, params.column_epsilons(a), params.min_row, params.min_col, sink, stats, opts,
          detail::CvcPolicy(opts.symbol_table_backend));
      engine.run();
      break;
    }
    case Algorithm::cvc2: {
      detail::MiningEngine<detail::Cvc2Policy> engine(a, params.column_epsilons(a),
                                                      params.min_row, params.min_col, sink, stats,
                                                      opts, {});
      engine.run();
      break;
    }
  }
}

inline BiclusterSet mine_to_set(const DataMatrix& a, const MiningParams& params, Algorithm algo,
                                MiningStats* stats = nullptr, const MiningOptions& opts = {}) {
  CollectingSink sink;
  mine(a, params, algo, sink, stats, opts);
  return sink.take_canonical();
}

/// All formal concepts (maximal all-ones submatrices) of a binary matrix.
inline BiclusterSet mine_inclose2(const DataMatrix& a, const MiningParams& params,
                                  MiningStats* stats = nullptr, const MiningOptions& opts = {}) {
  return mine_to_set(a, params, Algorithm::inclose2, stats, opts);
}

/// All maximal perfect (zero-perturbation) CVC biclusters.
inline BiclusterSet mine_cvcp(const DataMatrix& a, const MiningParams& params,
                              MiningStats* stats = nullptr, const MiningOptions& opts = {}) {
  return mine_to_set(a, params, Algorithm::cvcp, stats, opts);
}

/// All maximal CVC biclusters within the perturbation bound, duplicate
/// suppression by symbol table.
inline BiclusterSet mine_cvc(const DataMatrix& a, const MiningParams& params,
                             MiningStats* stats = nullptr, const MiningOptions& opts = {}) {
  return mine_to_set(a, params, Algorithm::cvc, stats, opts);
}

/// Same bicluster set as mine_cvc, duplicate suppression by the
/// row-canonicity test alone; no global registry is kept.
inline BiclusterSet mine_cvc2(const DataMatrix& a, const MiningParams& params,
                              MiningStats* stats = nullptr, const MiningOptions& opts = {}) {
  return mine_to_set(a, params, Algorithm::cvc2, stats, opts);
}

}  // namespace rinclose
