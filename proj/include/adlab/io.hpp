#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "adlab/model.hpp"
#include "adlab/types.hpp"

namespace adlab::io {

// Plain-text CSV formats. Every file starts with a '#' header line naming the
// format and version; numbers are written with 17 significant digits so a
// write/read round trip reproduces every double exactly.
//
//   # adlab-signal v1 M=<M> dt=<dt> [origin=<t0>]     then M lines "re,im"
//   # adlab-matrix v1 M=<M>                           then M lines of 2M values re,im,re,im,...
//   # adlab-grid v1 rows=<J> cols=<N> values=<real|complex> row-axis=<name> col-axis=<name>
//                                                     then J lines of N (or 2N) values

std::string format_double(double v);

void write_signal(std::ostream& os, const Signal& x);
void write_matrix(std::ostream& os, const CMatrix& A);
void write_grid(std::ostream& os, const RMatrix& values, const std::string& row_axis,
                const std::string& col_axis);
void write_grid(std::ostream& os, const CMatrix& values, const std::string& row_axis,
                const std::string& col_axis);

// FormatError on a malformed header or body.
Signal read_signal(std::istream& is);
CMatrix read_matrix(std::istream& is);

struct Grid {
  std::string row_axis;
  std::string col_axis;
  bool complex = false;
  CMatrix values;  // real grids have zero imaginary parts
};
Grid read_grid(std::istream& is);

// File wrappers; IoError when the file cannot be opened.
void save_signal(const std::string& path, const Signal& x);
void save_matrix(const std::string& path, const CMatrix& A);
Signal load_signal(const std::string& path);
CMatrix load_matrix(const std::string& path);

// Writes `text` to `path`, or to `fallback` when path is "-".
void write_text(const std::string& path, const std::string& text, std::ostream& fallback);

}  // namespace adlab::io
