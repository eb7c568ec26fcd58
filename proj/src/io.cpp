#include "adlab/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "adlab/errors.hpp"

namespace adlab::io {
namespace {

double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw FormatError("not a number: '" + std::string(s) + "'");
  return v;
}

Index parse_index(const std::string& s) {
  Index v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) throw FormatError("bad size field: '" + s + "'");
  return v;
}

struct Header {
  std::map<std::string, std::string> fields;

  const std::string& get(const std::string& key) const {
    const auto it = fields.find(key);
    if (it == fields.end()) throw FormatError("header is missing '" + key + "='");
    return it->second;
  }
};

Header read_header(std::istream& is, const std::string& tag) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("empty input, expected '# " + tag + " v1' header");
  std::istringstream ss(line);
  std::string hash, name, version;
  ss >> hash >> name >> version;
  if (hash != "#" || name != tag) throw FormatError("expected '# " + tag + "' header, got '" + line + "'");
  if (version != "v1") throw FormatError("unsupported " + tag + " version '" + version + "'");
  Header h;
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw FormatError("malformed header field '" + tok + "'");
    h.fields[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return h;
}

std::vector<double> read_row(std::istream& is, std::size_t expected, Index row) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing data row " + std::to_string(row));
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    values.push_back(parse_double(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (values.size() != expected) {
    throw FormatError("row " + std::to_string(row) + " has " + std::to_string(values.size()) + " values, expected " +
                      std::to_string(expected));
  }
  return values;
}

void expect_end(std::istream& is) {
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw FormatError("unexpected trailing data");
  }
}

void write_complex_row(std::ostream& os, const auto& row) {
  for (Index j = 0; j < row.size(); ++j) {
    if (j > 0) os << ',';
    os << format_double(row[j].real()) << ',' << format_double(row[j].imag());
  }
  os << '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_signal(std::ostream& os, const Signal& x) {
  os << "# adlab-signal v1 M=" << x.size() << " dt=" << format_double(x.dt());
  if (x.origin() != 0.0) os << " origin=" << format_double(x.origin());
  os << '\n';
  for (Index n = 0; n < x.size(); ++n) {
    os << format_double(x[n].real()) << ',' << format_double(x[n].imag()) << '\n';
  }
}

void write_matrix(std::ostream& os, const CMatrix& A) {
  if (A.rows() != A.cols()) throw DimError("matrix CSV holds square matrices only");
  os << "# adlab-matrix v1 M=" << A.rows() << '\n';
  for (Index i = 0; i < A.rows(); ++i) write_complex_row(os, A.row(i));
}

void write_grid(std::ostream& os, const RMatrix& values, const std::string& row_axis,
                const std::string& col_axis) {
  os << "# adlab-grid v1 rows=" << values.rows() << " cols=" << values.cols() << " values=real row-axis=" << row_axis
     << " col-axis=" << col_axis << '\n';
  for (Index i = 0; i < values.rows(); ++i) {
    for (Index j = 0; j < values.cols(); ++j) os << (j > 0 ? "," : "") << format_double(values(i, j));
    os << '\n';
  }
}

void write_grid(std::ostream& os, const CMatrix& values, const std::string& row_axis,
                const std::string& col_axis) {
  os << "# adlab-grid v1 rows=" << values.rows() << " cols=" << values.cols()
     << " values=complex row-axis=" << row_axis << " col-axis=" << col_axis << '\n';
  for (Index i = 0; i < values.rows(); ++i) write_complex_row(os, values.row(i));
}

Signal read_signal(std::istream& is) {
  const Header h = read_header(is, "adlab-signal");
  const Index M = parse_index(h.get("M"));
  const double dt = parse_double(h.get("dt"));
  const double origin = h.fields.count("origin") ? parse_double(h.get("origin")) : 0.0;
  if (!(dt > 0.0)) throw FormatError("dt must be positive");
  CVector x(M);
  for (Index n = 0; n < M; ++n) {
    const auto v = read_row(is, 2, n);
    x[n] = Complex(v[0], v[1]);
  }
  expect_end(is);
  return Signal(std::move(x), dt, origin);
}

CMatrix read_matrix(std::istream& is) {
  const Header h = read_header(is, "adlab-matrix");
  const Index M = parse_index(h.get("M"));
  CMatrix A(M, M);
  for (Index i = 0; i < M; ++i) {
    const auto v = read_row(is, static_cast<std::size_t>(2 * M), i);
    for (Index j = 0; j < M; ++j) {
      A(i, j) = Complex(v[static_cast<std::size_t>(2 * j)], v[static_cast<std::size_t>(2 * j + 1)]);
    }
  }
  expect_end(is);
  return A;
}

Grid read_grid(std::istream& is) {
  const Header h = read_header(is, "adlab-grid");
  Grid g;
  const Index rows = parse_index(h.get("rows"));
  const Index cols = parse_index(h.get("cols"));
  const std::string& kind = h.get("values");
  if (kind != "real" && kind != "complex") throw FormatError("values must be real or complex");
  g.complex = kind == "complex";
  g.row_axis = h.get("row-axis");
  g.col_axis = h.get("col-axis");
  g.values.resize(rows, cols);
  const Index stride = g.complex ? 2 : 1;
  for (Index i = 0; i < rows; ++i) {
    const auto v = read_row(is, static_cast<std::size_t>(stride * cols), i);
    for (Index j = 0; j < cols; ++j) {
      const auto k = static_cast<std::size_t>(stride * j);
      g.values(i, j) = g.complex ? Complex(v[k], v[k + 1]) : Complex(v[k], 0.0);
    }
  }
  expect_end(is);
  return g;
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

}  // namespace

void save_signal(const std::string& path, const Signal& x) {
  auto f = open_out(path);
  write_signal(f, x);
  if (!f) throw IoError("write to '" + path + "' failed");
}

void save_matrix(const std::string& path, const CMatrix& A) {
  auto f = open_out(path);
  write_matrix(f, A);
  if (!f) throw IoError("write to '" + path + "' failed");
}

Signal load_signal(const std::string& path) {
  auto f = open_in(path);
  return read_signal(f);
}

CMatrix load_matrix(const std::string& path) {
  auto f = open_in(path);
  return read_matrix(f);
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path == "-") {
    fallback << text;
    return;
  }
  auto f = open_out(path);
  f << text;
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace adlab::io
