#ifndef SVMLASSO_IO_HPP
#define SVMLASSO_IO_HPP

// File formats:
//   matrix   headerless CSV, one matrix row per line
//   vector   one value per line
//   labeled  "label index:value index:value ..." with 1-based indices
//   kernel   CSV kernel matrix over the point list {A_1, ..., A_n, b}
//   report   "key: value" lines; arrays as "key: [a, b, ...]"
// Doubles are written with 17 significant digits so they read back exactly.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kernel.hpp"
#include "problem.hpp"
#include "reductions.hpp"

namespace svmlasso::io {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::string location(const std::string &path, std::size_t line, std::size_t column) {
  return path + ":" + std::to_string(line) + ":" + std::to_string(column);
}

inline double parse_number(std::string_view token, const std::string &where) {
  const std::string s(trim(token));
  if (s.empty()) throw DataError(where + ": empty field");
  errno = 0;
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw DataError(where + ": cannot parse '" + s + "' as a number");
  if (!std::isfinite(v) || errno == ERANGE) throw DataError(where + ": non-finite value '" + s + "'");
  return v;
}

inline std::ifstream open_for_read(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_for_write(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  return out;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

inline Matrix read_matrix_csv(const std::string &path) {
  auto in = detail::open_for_read(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line, ',');
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c)
      row.push_back(detail::parse_number(fields[c], detail::location(path, lineno, c + 1)));
    if (!rows.empty() && row.size() != rows.front().size())
      throw DataError(detail::location(path, lineno, 1) + ": expected " + std::to_string(rows.front().size()) +
                      " fields, found " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path + ": matrix file is empty");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

inline Vector read_vector(const std::string &path) {
  auto in = detail::open_for_read(path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    values.push_back(detail::parse_number(line, detail::location(path, lineno, 1)));
  }
  if (values.empty()) throw DataError(path + ": vector file is empty");
  return Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
}

/// Labeled points; the dimension is the largest index seen unless `dim` > 0.
inline LabeledData read_labeled(const std::string &path, double C, Index dim = 0) {
  auto in = detail::open_for_read(path);
  std::vector<double> labels;
  std::vector<std::vector<std::pair<Index, double>>> points;
  Index max_index = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto content = detail::trim(line);
    if (content.empty()) continue;
    std::istringstream tokens{std::string(content)};
    std::string token;
    tokens >> token;
    const double label = detail::parse_number(token, detail::location(path, lineno, 1));
    if (label != 1.0 && label != -1.0)
      throw DataError(detail::location(path, lineno, 1) + ": label must be +1 or -1, got '" + token + "'");
    std::vector<std::pair<Index, double>> feats;
    std::size_t field = 1;
    while (tokens >> token) {
      ++field;
      const auto where = detail::location(path, lineno, field);
      const auto colon = token.find(':');
      if (colon == std::string::npos) throw DataError(where + ": expected index:value, got '" + token + "'");
      const double idx = detail::parse_number(std::string_view(token).substr(0, colon), where);
      if (idx < 1 || idx != std::floor(idx)) throw DataError(where + ": feature index must be a positive integer");
      const double value = detail::parse_number(std::string_view(token).substr(colon + 1), where);
      feats.emplace_back(static_cast<Index>(idx), value);
      max_index = std::max(max_index, static_cast<Index>(idx));
    }
    labels.push_back(label);
    points.push_back(std::move(feats));
  }
  if (points.empty()) throw DataError(path + ": labeled data file is empty");
  if (dim > 0 && max_index > dim)
    throw DimensionMismatch(path + ": feature index " + std::to_string(max_index) + " exceeds dimension " +
                            std::to_string(dim));
  const Index d = dim > 0 ? dim : std::max<Index>(1, max_index);
  Matrix X = Matrix::Zero(d, static_cast<Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (const auto &[idx, v] : points[i]) X(idx - 1, static_cast<Index>(i)) = v;
  return LabeledData(std::move(X), Eigen::Map<Vector>(labels.data(), static_cast<Index>(labels.size())), C);
}

inline void write_matrix_csv(const std::string &path, const Matrix &m) {
  auto out = detail::open_for_write(path);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
}

inline void write_vector(const std::string &path, const Vector &v) {
  auto out = detail::open_for_write(path);
  for (Index i = 0; i < v.size(); ++i) out << format_double(v(i)) << '\n';
}

inline void write_labeled(const std::string &path, const LabeledData &data) {
  auto out = detail::open_for_write(path);
  for (Index i = 0; i < data.size(); ++i) {
    out << (data.labels()(i) > 0 ? "+1" : "-1");
    for (Index k = 0; k < data.dim(); ++k)
      if (data.points()(k, i) != 0.0) out << ' ' << (k + 1) << ':' << format_double(data.points()(k, i));
    out << '\n';
  }
}

inline LassoInstance read_lasso(const std::string &matrix_path, const std::string &rhs_path, double radius = 1.0) {
  Matrix A = read_matrix_csv(matrix_path);
  Vector b = read_vector(rhs_path);
  if (b.size() != A.rows())
    throw DimensionMismatch(rhs_path + ": rhs has " + std::to_string(b.size()) + " entries but " + matrix_path +
                            " has " + std::to_string(A.rows()) + " rows");
  return LassoInstance(ProblemMatrix(std::move(A)), std::move(b), radius);
}

inline SvmInstance read_svm(const std::string &matrix_path) {
  return SvmInstance{ProblemMatrix(read_matrix_csv(matrix_path)), SvmOrigin::raw};
}

enum class InstanceFormat { lasso, svm, labeled };

struct InstanceSource {
  InstanceFormat format = InstanceFormat::lasso;
  std::string path;      // matrix CSV or labeled file
  std::string rhs_path;  // lasso only
  double radius = 1.0;   // lasso only
  double C = 1.0;        // labeled only
};

using AnyInstance = std::variant<LassoInstance, SvmInstance, LabeledData>;

inline AnyInstance parse_instance(const InstanceSource &src) {
  switch (src.format) {
    case InstanceFormat::lasso:
      return read_lasso(src.path, src.rhs_path, src.radius);
    case InstanceFormat::svm:
      return read_svm(src.path);
    case InstanceFormat::labeled:
      return read_labeled(src.path, src.C);
  }
  throw PreconditionViolation("unknown instance format");
}

/// "linear", "poly:DEG:COEF0", "rbf:GAMMA" or "precomputed:PATH".
inline KernelSpec parse_kernel_spec(const std::string &text) {
  const auto parts = detail::split(text, ':');
  const std::string kind(parts.front());
  const std::string where = "kernel spec '" + text + "'";
  if (kind == "linear" && parts.size() == 1) return KernelSpec::linear();
  if (kind == "poly" && parts.size() == 3) {
    const double deg = detail::parse_number(parts[1], where);
    if (deg < 1 || deg != std::floor(deg)) throw DataError(where + ": degree must be a positive integer");
    return KernelSpec::polynomial(static_cast<int>(deg), detail::parse_number(parts[2], where));
  }
  if (kind == "rbf" && parts.size() == 2) {
    const double gamma = detail::parse_number(parts[1], where);
    if (!(gamma > 0.0)) throw DataError(where + ": gamma must be positive");
    return KernelSpec::rbf(gamma);
  }
  if (kind == "precomputed" && parts.size() >= 2) {
    const auto pos = text.find(':');
    KernelSpec spec = KernelSpec::from_matrix(read_matrix_csv(text.substr(pos + 1)));
    spec.validate();
    return spec;
  }
  throw DataError(where + ": expected linear, poly:DEG:COEF0, rbf:GAMMA or precomputed:PATH");
}

/// Ordered key-value report.
class Report {
 public:
  void set(const std::string &key, const std::string &value) { upsert(key, value); }
  void set(const std::string &key, const char *value) { upsert(key, value); }
  void set(const std::string &key, double value) { upsert(key, format_double(value)); }
  void set(const std::string &key, bool value) { upsert(key, value ? "true" : "false"); }
  template <typename Int, typename = std::enable_if_t<std::is_integral_v<Int> && !std::is_same_v<Int, bool>>>
  void set(const std::string &key, Int value) {
    upsert(key, std::to_string(value));
  }

  void set_array(const std::string &key, const std::vector<std::string> &items) {
    std::string s = "[";
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
    upsert(key, s + "]");
  }
  void set_vector(const std::string &key, const Vector &v) {
    std::vector<std::string> items;
    for (Index i = 0; i < v.size(); ++i) items.push_back(format_double(v(i)));
    set_array(key, items);
  }
  /// Nonzero entries as 1-based "index:value".
  void set_sparse(const std::string &key, const Vector &v) {
    std::vector<std::string> items;
    for (Index i = 0; i < v.size(); ++i)
      if (v(i) != 0.0) items.push_back(std::to_string(i + 1) + ":" + format_double(v(i)));
    set_array(key, items);
  }
  void set_indices(const std::string &key, const std::vector<Index> &idx) {
    std::vector<std::string> items;
    for (Index i : idx) items.push_back(std::to_string(i + 1));
    set_array(key, items);
  }

  bool has(const std::string &key) const { return find(key) != nullptr; }
  const std::string &get(const std::string &key) const {
    if (const auto *v = find(key)) return *v;
    throw DataError("report has no key '" + key + "'");
  }
  double get_double(const std::string &key) const { return detail::parse_number(get(key), "report key " + key); }
  std::vector<std::string> get_array(const std::string &key) const {
    std::string_view s = detail::trim(get(key));
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw DataError("report key " + key + " is not an array");
    s = detail::trim(s.substr(1, s.size() - 2));
    std::vector<std::string> out;
    if (s.empty()) return out;
    for (auto item : detail::split(s, ',')) out.emplace_back(detail::trim(item));
    return out;
  }
  /// Inverse of set_sparse for a vector of length n.
  Vector get_sparse(const std::string &key, Index n) const {
    Vector v = Vector::Zero(n);
    for (const auto &item : get_array(key)) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw DataError("report key " + key + ": bad sparse entry '" + item + "'");
      const double idx = detail::parse_number(std::string_view(item).substr(0, colon), "report key " + key);
      if (idx < 1 || idx > static_cast<double>(n)) throw DataError("report key " + key + ": index out of range");
      v(static_cast<Index>(idx) - 1) = detail::parse_number(std::string_view(item).substr(colon + 1), key);
    }
    return v;
  }
  std::vector<Index> get_indices(const std::string &key) const {
    std::vector<Index> out;
    for (const auto &item : get_array(key)) {
      const double idx = detail::parse_number(item, "report key " + key);
      if (idx < 1) throw DataError("report key " + key + ": indices are 1-based");
      out.push_back(static_cast<Index>(idx) - 1);
    }
    return out;
  }

  const std::vector<std::pair<std::string, std::string>> &entries() const { return entries_; }

  std::string render() const {
    std::string out;
    for (const auto &[k, v] : entries_) out += k + ": " + v + "\n";
    return out;
  }

  static Report parse(const std::string &text) {
    Report r;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (detail::trim(line).empty()) continue;
      const auto colon = line.find(": ");
      if (colon == std::string::npos)
        throw DataError("report line " + std::to_string(lineno) + ": expected 'key: value'");
      r.upsert(line.substr(0, colon), std::string(detail::trim(std::string_view(line).substr(colon + 2))));
    }
    return r;
  }

  static Report read(const std::string &path) {
    auto in = detail::open_for_read(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  void write(const std::string &path) const {
    auto out = detail::open_for_write(path);
    out << render();
  }

 private:
  const std::string *find(const std::string &key) const {
    for (const auto &[k, v] : entries_)
      if (k == key) return &v;
    return nullptr;
  }
  void upsert(const std::string &key, std::string value) {
    for (auto &[k, v] : entries_)
      if (k == key) {
        v = std::move(value);
        return;
      }
    entries_.emplace_back(key, std::move(value));
  }

  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace svmlasso::io

#endif  // SVMLASSO_IO_HPP
