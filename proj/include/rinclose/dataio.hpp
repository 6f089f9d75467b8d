// Matrix loading, the preprocessing pipeline (transpose, shift, log,
// per-column scaling), and serialization of biclusters and generator
// ground truth.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rinclose/core.hpp"
#include "rinclose/miners.hpp"

namespace rinclose {

struct LoadOptions {
  char delimiter = ',';     // '\t' for TSV
  bool header = false;      // first row holds column labels
  bool row_labels = false;  // first field of each row is a label
};

enum class BiclusterFormat { jsonl, csv };

inline std::optional<BiclusterFormat> bicluster_format_from_string(std::string_view name) {
  if (name == "jsonl") return BiclusterFormat::jsonl;
  if (name == "csv") return BiclusterFormat::csv;
  return std::nullopt;
}

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

// Shortest-round-trip formatting for doubles in text formats.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  double parsed = 0.0;
  if (parse_double(buf, parsed) && parsed == v) {
    char shorter[64];
    for (int prec = 1; prec < 17; ++prec) {
      std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
      if (parse_double(shorter, parsed) && parsed == v) return shorter;
    }
  }
  return buf;
}

inline void append_index_list(std::string& out, const IndexSet& s, char sep) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out.push_back(sep);
    out += std::to_string(s[k]);
  }
}

}  // namespace detail

/// Loads a rectangular numeric matrix from a delimited text file.
/// Errors carry 1-based coordinates of the numeric body.
inline DataMatrix load_matrix(const std::string& path, const LoadOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_matrix: cannot open '" + path + "'");

  std::vector<std::string> col_labels;
  std::vector<std::string> row_labels;
  std::vector<double> values;
  std::size_t body_cols = 0;
  std::size_t body_row = 0;

  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = detail::split_fields(line, opts.delimiter);
    if (opts.header && !saw_header) {
      saw_header = true;
      const std::size_t skip = opts.row_labels ? 1 : 0;
      for (std::size_t k = skip; k < fields.size(); ++k)
        col_labels.push_back(std::string(detail::trim(fields[k])));
      continue;
    }
    ++body_row;
    std::size_t first = 0;
    if (opts.row_labels) {
      if (fields.empty())
        throw std::runtime_error("load_matrix: row " + std::to_string(body_row) + " is empty");
      row_labels.push_back(std::string(detail::trim(fields[0])));
      first = 1;
    }
    const std::size_t ncols = fields.size() - first;
    if (body_cols == 0) {
      body_cols = ncols;
      if (body_cols == 0)
        throw std::runtime_error("load_matrix: row " + std::to_string(body_row) +
                                 " has no numeric fields");
    } else if (ncols != body_cols) {
      std::ostringstream msg;
      msg << "load_matrix: ragged input: row " << body_row << " has " << ncols
          << " fields, expected " << body_cols;
      throw std::runtime_error(msg.str());
    }
    for (std::size_t k = first; k < fields.size(); ++k) {
      const auto text = detail::trim(fields[k]);
      double v = 0.0;
      if (!detail::parse_double(text, v)) {
        std::ostringstream msg;
        msg << "load_matrix: cell (" << body_row << "," << (k - first + 1)
            << "): cannot parse '" << std::string(text) << "' as a number";
        throw std::runtime_error(msg.str());
      }
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "load_matrix: cell (" << body_row << "," << (k - first + 1) << ") is not finite";
        throw std::runtime_error(msg.str());
      }
      values.push_back(v);
    }
  }
  if (body_row == 0) throw std::runtime_error("load_matrix: '" + path + "' has no numeric rows");

  DataMatrix a(static_cast<int>(body_row), static_cast<int>(body_cols), std::move(values));
  if (opts.header && col_labels.size() == static_cast<std::size_t>(a.cols()))
    a.set_col_labels(std::move(col_labels));
  if (opts.row_labels) a.set_row_labels(std::move(row_labels));
  return a;
}

/// Writes the matrix as delimited text at full precision.
inline void write_matrix(const DataMatrix& a, const std::string& path,
                         const LoadOptions& opts = {}) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix: cannot open '" + path + "' for writing");
  std::string line;
  for (Index i = 1; i <= a.rows(); ++i) {
    line.clear();
    for (Index j = 1; j <= a.cols(); ++j) {
      if (j > 1) line.push_back(opts.delimiter);
      line += detail::format_double(a(i, j));
    }
    out << line << '\n';
  }
  if (!out) throw std::runtime_error("write_matrix: failed writing '" + path + "'");
}

inline DataMatrix transpose(const DataMatrix& a) {
  std::vector<double> values(static_cast<std::size_t>(a.rows()) * a.cols());
  for (Index i = 1; i <= a.rows(); ++i)
    for (Index j = 1; j <= a.cols(); ++j)
      values[(static_cast<std::size_t>(j) - 1) * a.rows() + (static_cast<std::size_t>(i) - 1)] =
          a(i, j);
  DataMatrix t(a.cols(), a.rows(), std::move(values));
  t.set_row_labels(a.col_labels());
  t.set_col_labels(a.row_labels());
  return t;
}

struct PreprocessSpec {
  bool transpose = false;
  bool log_transform = false;
  double shift_constant = 0.0;  // added before the log; only meaningful with log_transform
  bool scale_columns = false;   // per-column min-max to [0, 1]
};

/// Applies, in order: transpose, shift+log, per-column min-max scaling.
/// Constant columns scale to all zeros.
inline DataMatrix preprocess(const DataMatrix& input, const PreprocessSpec& spec) {
  DataMatrix a = spec.transpose ? transpose(input) : input;
  std::vector<double> values(a.values().begin(), a.values().end());
  const int n = a.rows();
  const int m = a.cols();

  if (spec.log_transform) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double shifted = values[k] + spec.shift_constant;
      if (!(shifted > 0.0)) {
        std::ostringstream msg;
        msg << "preprocess: cell (" << (k / m + 1) << "," << (k % m + 1) << ") is " << values[k]
            << "; value plus shift must be positive before the log";
        throw std::runtime_error(msg.str());
      }
      values[k] = std::log(shifted);
    }
  }

  if (spec.scale_columns) {
    for (int j = 0; j < m; ++j) {
      double lo = values[static_cast<std::size_t>(j)];
      double hi = lo;
      for (int i = 1; i < n; ++i) {
        const double v = values[static_cast<std::size_t>(i) * m + j];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      const double range = hi - lo;
      for (int i = 0; i < n; ++i) {
        double& v = values[static_cast<std::size_t>(i) * m + j];
        v = range > 0.0 ? (v - lo) / range : 0.0;
      }
    }
  }

  DataMatrix out(n, m, std::move(values));
  out.set_row_labels(a.row_labels());
  out.set_col_labels(a.col_labels());
  return out;
}

/// One bicluster per record. jsonl: {"rows":[...],"cols":[...]} per line;
/// csv: two comma-separated fields, each a semicolon-joined index list.
inline void write_bicluster_record(std::ostream& out, const Bicluster& b, BiclusterFormat format) {
  std::string line;
  if (format == BiclusterFormat::jsonl) {
    line = "{\"rows\":[";
    detail::append_index_list(line, b.rows, ',');
    line += "],\"cols\":[";
    detail::append_index_list(line, b.cols, ',');
    line += "]}";
  } else {
    detail::append_index_list(line, b.rows, ';');
    line.push_back(',');
    detail::append_index_list(line, b.cols, ';');
  }
  out << line << '\n';
}

template <class Range>
inline void write_biclusters(const Range& biclusters, std::ostream& out, BiclusterFormat format) {
  for (const Bicluster& b : biclusters) write_bicluster_record(out, b, format);
}

template <class Range>
inline void write_biclusters(const Range& biclusters, const std::string& path,
                             BiclusterFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_biclusters: cannot open '" + path + "' for writing");
  write_biclusters(biclusters, out, format);
  if (!out) throw std::runtime_error("write_biclusters: failed writing '" + path + "'");
}

/// Streams each mined bicluster straight to a file, no buffering of the
/// whole solution.
class StreamingBiclusterWriter final : public BiclusterSink {
 public:
  StreamingBiclusterWriter(const std::string& path, BiclusterFormat format)
      : out_(path), format_(format), path_(path) {
    if (!out_)
      throw std::runtime_error("StreamingBiclusterWriter: cannot open '" + path +
                               "' for writing");
  }

  void emit(const Bicluster& b) override {
    write_bicluster_record(out_, b, format_);
    ++count_;
  }

  std::uint64_t count() const noexcept { return count_; }

  void close() {
    out_.close();
    if (out_.fail())
      throw std::runtime_error("StreamingBiclusterWriter: failed writing '" + path_ + "'");
  }

 private:
  std::ofstream out_;
  BiclusterFormat format_;
  std::string path_;
  std::uint64_t count_ = 0;
};

namespace detail {

inline IndexSet parse_index_list(const std::string& text, const std::string& where) {
  IndexSet out;
  for (const auto& field : split_fields(text, ';')) {
    const auto t = trim(field);
    if (t.empty()) continue;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || v < 1)
      throw std::runtime_error("read_biclusters: bad index '" + std::string(t) + "' in " + where);
    out.push_back(static_cast<Index>(v));
  }
  return out;
}

inline IndexSet json_index_array(const nlohmann::json& arr, const std::string& where) {
  if (!arr.is_array())
    throw std::runtime_error("read_biclusters: expected an index array in " + where);
  IndexSet out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
      throw std::runtime_error("read_biclusters: bad index in " + where);
    out.push_back(static_cast<Index>(v.get<std::int64_t>()));
  }
  return out;
}

}  // namespace detail

inline std::vector<Bicluster> read_biclusters(const std::string& path, BiclusterFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_biclusters: cannot open '" + path + "'");
  std::vector<Bicluster> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    Bicluster b;
    if (format == BiclusterFormat::jsonl) {
      nlohmann::json record;
      try {
        record = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("read_biclusters: " + where + ": " + e.what());
      }
      b.rows = detail::json_index_array(record.at("rows"), where);
      b.cols = detail::json_index_array(record.at("cols"), where);
    } else {
      const auto fields = detail::split_fields(line, ',');
      if (fields.size() != 2)
        throw std::runtime_error("read_biclusters: " + where + ": expected two fields");
      b.rows = detail::parse_index_list(fields[0], where);
      b.cols = detail::parse_index_list(fields[1], where);
    }
    out.push_back(std::move(b));
  }
  return out;
}

/// Ground truth for a generated dataset: a jsonl file whose first record
/// carries the perturbation bound, followed by the planted biclusters.
inline void write_ground_truth(const std::string& path, const std::vector<Bicluster>& planted,
                               double epsilon) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_ground_truth: cannot open '" + path + "'");
  out << "{\"epsilon\":" << detail::format_double(epsilon) << "}\n";
  write_biclusters(planted, out, BiclusterFormat::jsonl);
  if (!out) throw std::runtime_error("write_ground_truth: failed writing '" + path + "'");
}

struct GroundTruth {
  std::vector<Bicluster> planted;
  double epsilon = 0.0;
};

inline GroundTruth read_ground_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_ground_truth: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_ground_truth: '" + path + "' is empty");
  GroundTruth gt;
  try {
    const auto header = nlohmann::json::parse(line);
    gt.epsilon = header.at("epsilon").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("read_ground_truth: bad header in '" + path + "': " + e.what());
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("read_ground_truth: " + where + ": " + e.what());
    }
    Bicluster b;
    b.rows = detail::json_index_array(record.at("rows"), where);
    b.cols = detail::json_index_array(record.at("cols"), where);
    gt.planted.push_back(std::move(b));
  }
  return gt;
}

}  // namespace rinclose
