#include "semiprod/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace semiprod {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

bool parse_count(const std::string& s, std::size_t& out) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && p == end;
}

}  // namespace

ExtInt parse_ext(const std::string& token) {
  if (token == "inf" || token == "+inf") return ExtInt::inf();
  if (token == "-inf") return ExtInt::neg_inf();
  std::int64_t v = 0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (begin != end && *begin == '+') ++begin;
  auto [p, ec] = std::from_chars(begin, end, v);
  if (ec == std::errc::result_out_of_range) throw RangeError("value '" + token + "' does not fit in 64 bits");
  if (ec != std::errc() || p != end || begin == end) throw std::invalid_argument("bad value '" + token + "'");
  return v;
}

MatrixFile parse_matrix(std::istream& in, const std::string& source, ExtInt default_fill) {
  MatrixFile f;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t rows = 0, cols = 0;
  std::set<std::pair<std::size_t, std::size_t>> seen;

  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokens(line);
    if (tok.empty() || tok[0][0] == '#') continue;

    if (!have_header) {
      if (tok.size() < 3 || tok.size() > 4) throw ParseError(source, lineno, "header must be '<kind> <rows> <cols> [fill=...]'");
      if (tok[0] == "bool") {
        f.kind = MatrixKind::Bool;
      } else if (tok[0] == "extint") {
        f.kind = MatrixKind::ExtInt;
      } else {
        throw ParseError(source, lineno, "unknown kind '" + tok[0] + "'");
      }
      if (!parse_count(tok[1], rows) || !parse_count(tok[2], cols)) throw ParseError(source, lineno, "bad dimensions");
      f.fill = default_fill;
      if (tok.size() == 4) {
        if (f.kind == MatrixKind::Bool) throw ParseError(source, lineno, "bool matrices take no fill");
        if (tok[3] == "fill=inf") {
          f.fill = ExtInt::inf();
        } else if (tok[3] == "fill=-inf") {
          f.fill = ExtInt::neg_inf();
        } else {
          throw ParseError(source, lineno, "fill must be 'fill=inf' or 'fill=-inf'");
        }
      }
      if (f.kind == MatrixKind::Bool) {
        f.bits = BoolMatrix(rows, cols);
      } else {
        f.values = ExtMatrix(rows, cols, f.fill);
      }
      have_header = true;
      continue;
    }

    const std::size_t want = f.kind == MatrixKind::Bool ? 2 : 3;
    if (tok.size() != want) {
      throw ParseError(source, lineno, f.kind == MatrixKind::Bool ? "expected '<i> <j>'" : "expected '<i> <j> <value>'");
    }
    std::size_t i = 0, j = 0;
    if (!parse_count(tok[0], i) || !parse_count(tok[1], j)) throw ParseError(source, lineno, "bad index");
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw ParseError(source, lineno,
                       "index (" + tok[0] + ", " + tok[1] + ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!seen.emplace(i, j).second) throw ParseError(source, lineno, "duplicate entry (" + tok[0] + ", " + tok[1] + ")");
    if (f.kind == MatrixKind::Bool) {
      f.bits.set(i - 1, j - 1);
    } else {
      try {
        f.values(i - 1, j - 1) = parse_ext(tok[2]);
      } catch (const std::exception& e) {
        throw ParseError(source, lineno, e.what());
      }
    }
  }
  if (!have_header) throw ParseError(source, lineno, "missing header");
  return f;
}

MatrixFile parse_matrix_file(const std::string& path, ExtInt default_fill) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_matrix(in, path, default_fill);
}

void write_matrix(std::ostream& out, const ExtMatrix& m, ExtInt fill) {
  if (fill.is_finite()) throw std::invalid_argument("fill must be inf or -inf");
  out << "extint " << m.rows() << ' ' << m.cols() << (fill.is_pos_inf() ? " fill=inf" : " fill=-inf") << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != fill) out << i + 1 << ' ' << j + 1 << ' ' << m(i, j).to_string() << '\n';
}

void write_matrix(std::ostream& out, const BoolMatrix& m) {
  out << "bool " << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j)) out << i + 1 << ' ' << j + 1 << '\n';
}

}  // namespace semiprod
