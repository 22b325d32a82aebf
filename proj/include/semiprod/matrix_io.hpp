#pragma once

// Plain-text matrix files.
//
//   <kind> <rows> <cols> [fill=inf|-inf]
//   <i> <j> [<value>]
//   ...
//
// kind is "bool" or "extint". Indices are 1-based. Bool entries carry no
// value; extint values are integers or the literals inf / -inf. Entries not
// listed take the absent value: 0 for bool, the fill for extint. Blank lines
// and lines starting with '#' are ignored.

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "semiprod/core.hpp"

namespace semiprod {

enum class MatrixKind { Bool, ExtInt };

struct ParseError : std::runtime_error {
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

struct MatrixFile {
  MatrixKind kind = MatrixKind::Bool;
  BoolMatrix bits;  // kind == Bool
  ExtMatrix values;  // kind == ExtInt
  ExtInt fill = ExtInt::inf();
};

// `default_fill` applies to extint files whose header names no fill.
MatrixFile parse_matrix(std::istream& in, const std::string& source, ExtInt default_fill = ExtInt::inf());
MatrixFile parse_matrix_file(const std::string& path, ExtInt default_fill = ExtInt::inf());

// Entries equal to `fill` are left out.
void write_matrix(std::ostream& out, const ExtMatrix& m, ExtInt fill);
void write_matrix(std::ostream& out, const BoolMatrix& m);

ExtInt parse_ext(const std::string& token);

}  // namespace semiprod
