#include "qstoch/qmat_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qstoch/error.hpp"

namespace qstoch {

namespace {

std::string format_real(double v) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

double parse_real(const std::string& tok) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (tok.empty() || end != tok.c_str() + tok.size()) throw Error(ErrorKind::Parse, "bad real '" + tok + "'");
  return v;
}

// Skips whitespace; returns false at end of stream.
bool skip_blank(std::istream& is) {
  is >> std::ws;
  return is.peek() != std::char_traits<char>::eof();
}

}  // namespace

void write_qmat(std::ostream& os, const QMatrix& m) {
  os << "qmat " << m.rows() << ' ' << m.cols() << '\n';
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) os << (c ? " " : "") << format_literal(m(r, c));
    os << '\n';
  }
}

void write_rmat(std::ostream& os, const Eigen::MatrixXd& m) {
  os << "rmat " << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? " " : "") << format_real(m(r, c));
    os << '\n';
  }
}

QMatrix read_matrix(std::istream& is) {
  std::string kind;
  int rows = -1;
  int cols = -1;
  if (!(is >> kind)) throw Error(ErrorKind::Parse, "missing matrix header");
  if (kind != "qmat" && kind != "rmat") throw Error(ErrorKind::Parse, "unknown matrix header '" + kind + "'");
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) throw Error(ErrorKind::Parse, "bad dimensions after " + kind);
  QMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      std::string tok;
      if (!(is >> tok)) {
        throw Error(ErrorKind::Parse, "expected " + std::to_string(rows * cols) + " entries, stream ended early");
      }
      if (kind == "rmat") {
        m(r, c) = parse_real(tok);
      } else {
        // A literal never contains whitespace, but tolerate "( 1, 0, 0, 0 )".
        while (tok.front() == '(' && tok.back() != ')') {
          std::string more;
          if (!(is >> more)) throw Error(ErrorKind::Parse, "unterminated quaternion literal");
          tok += more;
        }
        m(r, c) = parse_literal(tok);
      }
    }
  }
  return m;
}

std::vector<QMatrix> read_matrices(std::istream& is) {
  std::vector<QMatrix> out;
  while (skip_blank(is)) out.push_back(read_matrix(is));
  return out;
}

QMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return read_matrix(in);
}

std::vector<QMatrix> load_matrices(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  auto ms = read_matrices(in);
  if (ms.empty()) throw Error(ErrorKind::Parse, path + " holds no matrix");
  return ms;
}

std::string to_qmat_string(const QMatrix& m) {
  std::ostringstream os;
  write_qmat(os, m);
  return os.str();
}

QMatrix from_qmat_string(const std::string& text) {
  std::istringstream is(text);
  return read_matrix(is);
}

}  // namespace qstoch
