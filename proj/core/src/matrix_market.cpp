#include "ksimplex/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ksimplex/error.hpp"

namespace ksimplex {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct Banner {
  std::string object, format, field, symmetry;
};

Banner parse_banner(const std::string& line) {
  std::istringstream ss(line);
  std::string tag;
  Banner b;
  ss >> tag >> b.object >> b.format >> b.field >> b.symmetry;
  if (tag != "%%MatrixMarket") throw ParseError("Matrix Market: missing %%MatrixMarket banner");
  b.object = lower(b.object);
  b.format = lower(b.format);
  b.field = lower(b.field);
  b.symmetry = lower(b.symmetry);
  if (b.object != "matrix") throw ParseError("Matrix Market: unsupported object '" + b.object + "'");
  if (b.field != "real" && b.field != "integer" && b.field != "double")
    throw ParseError("Matrix Market: unsupported field '" + b.field + "' (only real data)");
  if (b.symmetry != "general" && b.symmetry != "symmetric")
    throw ParseError("Matrix Market: unsupported symmetry '" + b.symmetry + "'");
  return b;
}

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("Matrix Market: empty input");
  const Banner banner = parse_banner(line);
  if (banner.format != "coordinate")
    throw ParseError("Matrix Market: expected coordinate format for a sparse matrix");

  if (!next_data_line(in, line)) throw ParseError("Matrix Market: missing size line");
  Index nrows = 0, ncols = 0, nnz = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> nrows >> ncols >> nnz) || nrows < 0 || ncols < 0 || nnz < 0)
      throw ParseError("Matrix Market: malformed size line '" + line + "'");
  }
  const bool symmetric = banner.symmetry == "symmetric";
  if (symmetric && nrows != ncols) throw ParseError("Matrix Market: symmetric matrix must be square");

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  for (Index e = 0; e < nnz; ++e) {
    if (!next_data_line(in, line)) throw ParseError("Matrix Market: fewer entries than declared");
    std::istringstream ss(line);
    Index i = 0, j = 0;
    double v = 0.0;
    if (!(ss >> i >> j >> v)) throw ParseError("Matrix Market: malformed entry '" + line + "'");
    if (i < 1 || i > nrows || j < 1 || j > ncols)
      throw ParseError("Matrix Market: index (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") out of range");
    entries.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) entries.push_back({j - 1, i - 1, v});
  }
  return SparseMatrix::from_triplets(nrows, ncols, entries);
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_market(in);
}

void write_matrix_market(const SparseMatrix& a, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonzeros() << '\n';
  for (Index i = 0; i < a.rows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t p = 0; p < cols.size(); ++p)
      out << i + 1 << ' ' << cols[p] + 1 << ' ' << format_double(vals[p]) << '\n';
  }
}

void write_matrix_market(const SparseMatrix& a, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_matrix_market(a, out);
}

Vector read_vector(std::istream& in) {
  std::string line;
  std::vector<double> values;
  std::streampos start = in.tellg();
  if (!std::getline(in, line)) return Vector(0);

  if (line.rfind("%%MatrixMarket", 0) == 0) {
    const Banner banner = parse_banner(line);
    if (banner.format != "array") throw ParseError("vector file: expected Matrix Market array format");
    if (!next_data_line(in, line)) throw ParseError("vector file: missing size line");
    Index nrows = 0, ncols = 0;
    std::istringstream ss(line);
    if (!(ss >> nrows >> ncols) || nrows < 0 || ncols != 1)
      throw ParseError("vector file: array must be n x 1, got '" + line + "'");
    values.reserve(static_cast<std::size_t>(nrows));
    for (Index i = 0; i < nrows; ++i) {
      if (!next_data_line(in, line)) throw ParseError("vector file: fewer values than declared");
      std::istringstream vs(line);
      double v = 0.0;
      if (!(vs >> v)) throw ParseError("vector file: malformed value '" + line + "'");
      values.push_back(v);
    }
  } else {
    // Plain text: one value per line, '%' or '#' comments allowed.
    if (start != std::streampos(-1)) {
      in.clear();
      in.seekg(start);
    } else {
      std::istringstream first(line);
      double v = 0.0;
      if (first >> v) values.push_back(v);
    }
    while (std::getline(in, line)) {
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '%' || line[pos] == '#') continue;
      std::istringstream vs(line);
      double v = 0.0;
      if (!(vs >> v)) throw ParseError("vector file: malformed value '" + line + "'");
      values.push_back(v);
    }
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

Vector read_vector(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_vector(in);
}

void write_vector(const Vector& v, std::ostream& out) {
  out << "%%MatrixMarket matrix array real general\n";
  out << v.size() << " 1\n";
  for (Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << '\n';
}

void write_vector(const Vector& v, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_vector(v, out);
}

}  // namespace ksimplex
