#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qstoch/qmatrix.hpp"

namespace qstoch {

/// QMAT text format:
///
///   qmat <rows> <cols>
///   (w,x,y,z) (w,x,y,z) ...     row-major, whitespace separated
///
/// or, for real matrices, `rmat <rows> <cols>` followed by plain decimals.
/// Numbers are written with 17 significant digits so a write/read cycle is
/// bit-exact.
void write_qmat(std::ostream& os, const QMatrix& m);
void write_rmat(std::ostream& os, const Eigen::MatrixXd& m);

/// Reads one block (either header). rmat blocks come back as real QMatrix.
/// Throws Parse on malformed input.
QMatrix read_matrix(std::istream& is);
/// Reads every block in the stream, e.g. a MubSet file.
std::vector<QMatrix> read_matrices(std::istream& is);

QMatrix load_matrix(const std::string& path);
std::vector<QMatrix> load_matrices(const std::string& path);

std::string to_qmat_string(const QMatrix& m);
QMatrix from_qmat_string(const std::string& text);

}  // namespace qstoch
