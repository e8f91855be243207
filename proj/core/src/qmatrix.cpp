#include "qstoch/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qstoch/error.hpp"

namespace qstoch {

QMatrix::QMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
  if (rows < 0 || cols < 0) throw Error(ErrorKind::DimensionMismatch, "negative matrix dimension");
}

QMatrix::QMatrix(int rows, int cols, std::vector<Quaternion> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows < 0 || cols < 0 || data_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw Error(ErrorKind::DimensionMismatch, "entry count does not match " + std::to_string(rows) + "x" +
                                                  std::to_string(cols));
  }
}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_));
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

QMatrix QMatrix::from_real(const Eigen::MatrixXd& m) {
  QMatrix q(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int r = 0; r < q.rows(); ++r) {
    for (int c = 0; c < q.cols(); ++c) q(r, c) = m(r, c);
  }
  return q;
}

Eigen::MatrixXd QMatrix::real_part() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).w;
  }
  return m;
}

Eigen::MatrixXd QMatrix::squared_norms() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).norm2();
  }
  return m;
}

QMatrix QMatrix::column(int c) const {
  QMatrix out(rows_, 1);
  for (int r = 0; r < rows_; ++r) out(r, 0) = (*this)(r, c);
  return out;
}

QMatrix QMatrix::row(int r) const {
  QMatrix out(1, cols_);
  for (int c = 0; c < cols_; ++c) out(0, c) = (*this)(r, c);
  return out;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  for (auto& q : data_) q *= s;
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(double s, QMatrix a) { return a *= s; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "matmul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                                  " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  QMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const Quaternion aij = a(i, j);
      for (int k = 0; k < b.cols(); ++k) c(i, k) += aij * b(j, k);
    }
  }
  return c;
}

QMatrix matmul(const QMatrix& a, const QMatrix& b) { return a * b; }

QMatrix scale_left(const Quaternion& q, const QMatrix& m) {
  QMatrix out = m;
  for (auto& e : out.entries()) e = q * e;
  return out;
}

QMatrix scale_right(const QMatrix& m, const Quaternion& q) {
  QMatrix out = m;
  for (auto& e : out.entries()) e = e * q;
  return out;
}

QMatrix adjoint(const QMatrix& m) {
  QMatrix out(m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out(c, r) = m(r, c).conj();
  }
  return out;
}

double max_entry_distance(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix distance");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    worst = std::max(worst, (a.entries()[k] - b.entries()[k]).norm());
  }
  return worst;
}

double frobenius_norm(const QMatrix& m) {
  double s = 0.0;
  for (const auto& q : m.entries()) s += q.norm2();
  return std::sqrt(s);
}

Field field_of(const QMatrix& m, double tol) {
  Field f = Field::Real;
  for (const auto& q : m.entries()) {
    if (!q.is_complex(tol)) return Field::Quaternion;
    if (!q.is_real(tol)) f = Field::Complex;
  }
  return f;
}

double unitarity_defect(const QMatrix& w) {
  if (!w.is_square()) throw Error(ErrorKind::DimensionMismatch, "unitarity needs a square matrix");
  return max_entry_distance(adjoint(w) * w, QMatrix::identity(w.rows()));
}

bool is_symplectic(const QMatrix& w, double tol) { return w.is_square() && unitarity_defect(w) <= tol; }

bool is_hadamard(const QMatrix& h, double tol) {
  if (!h.is_square()) return false;
  for (const auto& q : h.entries()) {
    if (std::abs(q.norm() - 1.0) > tol) return false;
  }
  const QMatrix target = QMatrix::identity(h.rows()) * static_cast<double>(h.rows());
  return max_entry_distance(adjoint(h) * h, target) <= tol;
}

QMatrix diag(std::span<const Quaternion> d) {
  const int n = static_cast<int>(d.size());
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

QMatrix diag(std::initializer_list<Quaternion> d) { return diag(std::span<const Quaternion>(d.begin(), d.size())); }

QMatrix permutation_matrix(const Permutation& p) {
  QMatrix m(p.size(), p.size());
  for (int j = 0; j < p.size(); ++j) m(p(j), j) = 1.0;
  return m;
}

QMatrix direct_sum(const QMatrix& a, const QMatrix& b) {
  QMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  }
  for (int r = 0; r < b.rows(); ++r) {
    for (int c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
  }
  return m;
}

QMatrix fourier(int n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "fourier needs n >= 1");
  QMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      // Reduce the exponent mod n so large products do not lose phase accuracy.
      const int e = (r * c) % n;
      f(r, c) = Quaternion::exp_i(2.0 * std::numbers::pi * e / n) * scale;
    }
  }
  return f;
}

MonomialTransform MonomialTransform::diagonal(std::vector<Quaternion> phases, Side side) {
  MonomialTransform t;
  t.permutation = Permutation::identity(static_cast<int>(phases.size()));
  t.phases = std::move(phases);
  t.side = side;
  return t;
}

QMatrix MonomialTransform::matrix() const {
  return permutation_matrix(permutation) * diag(std::span<const Quaternion>(phases));
}

QMatrix MonomialTransform::apply(const QMatrix& m) const {
  QMatrix out = side == Side::Left ? matrix() * m : m * matrix();
  if (conjugator) out = entrywise_conjugate(out, *conjugator);
  return out;
}

DephaseResult dephase(const QMatrix& m, double tol) {
  if (!m.is_square() || m.rows() == 0) throw Error(ErrorKind::DimensionMismatch, "dephase needs a square matrix");
  const int n = m.rows();
  for (int k = 0; k < n; ++k) {
    if (m(k, 0).norm() <= tol || m(0, k).norm() <= tol) {
      throw Error(ErrorKind::ZeroInFrame, "first row/column entry " + std::to_string(k) + " vanishes");
    }
  }
  std::vector<Quaternion> left(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) left[static_cast<std::size_t>(i)] = m(i, 0).conj() / m(i, 0).norm();
  const MonomialTransform dl = MonomialTransform::diagonal(left, MonomialTransform::Side::Left);
  QMatrix out = dl.apply(m);

  std::vector<Quaternion> right(static_cast<std::size_t>(n), Quaternion{1.0});
  for (int j = 1; j < n; ++j) right[static_cast<std::size_t>(j)] = out(0, j).conj() / out(0, j).norm();
  const MonomialTransform dr = MonomialTransform::diagonal(right, MonomialTransform::Side::Right);
  out = dr.apply(out);
  return {std::move(out), dl, dr};
}

QMatrix entrywise_conjugate(const QMatrix& m, const Quaternion& x) {
  QMatrix out = m;
  for (auto& e : out.entries()) e = conjugate_by(e, x);
  return out;
}

Quaternion complexifying_conjugator(const Quaternion& q) {
  const Quaternion v = q.pure();
  const double len = v.norm();
  if (len == 0.0) return Quaternion{1.0};
  const Quaternion u = v / len;
  // For unit pure a, b the product 1 - b a = 1 + <a,b> + a x b is a (scaled)
  // rotor taking a to b; it degenerates only for antipodal a = -b.
  const Quaternion rotor = Quaternion{1.0} - Quaternion::i() * u;
  if (rotor.norm() < 1e-12) return Quaternion::j();
  return rotor.normalized();
}

bool splits(const QMatrix& m, double tol) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "splits needs a square matrix");
  const int n = m.rows();
  if (n <= 1) return false;
  // Union-find over rows [0, n) and columns [n, 2n).
  std::vector<int> parent(static_cast<std::size_t>(2 * n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  int components = 2 * n;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (m(r, c).norm() <= tol) continue;
      const int a = find(r);
      const int b = find(n + c);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --components;
      }
    }
  }
  return components > 1;
}

QMatrix gram_schmidt(const QMatrix& m) {
  QMatrix q = m;
  const int rows = q.rows();
  for (int c = 0; c < q.cols(); ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int p = 0; p < c; ++p) {
        // coefficient <u_p, v_c> = sum conj(u_p[r]) v_c[r]; subtract u_p * coeff.
        Quaternion coeff;
        for (int r = 0; r < rows; ++r) coeff += q(r, p).conj() * q(r, c);
        for (int r = 0; r < rows; ++r) q(r, c) -= q(r, p) * coeff;
      }
    }
    double len2 = 0.0;
    for (int r = 0; r < rows; ++r) len2 += q(r, c).norm2();
    const double len = std::sqrt(len2);
    if (!(len > 1e-13)) throw Error(ErrorKind::NotUnitary, "gram_schmidt: dependent column " + std::to_string(c));
    for (int r = 0; r < rows; ++r) q(r, c) /= len;
  }
  return q;
}

QMatrix expm(const QMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "expm needs a square matrix");
  const int n = m.rows();
  const double norm = frobenius_norm(m);
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const QMatrix a = m * std::ldexp(1.0, -squarings);
  QMatrix result = QMatrix::identity(n);
  QMatrix term = QMatrix::identity(n);
  for (int k = 1; k <= 18; ++k) {
    term = term * a * (1.0 / k);
    result += term;
    if (frobenius_norm(term) < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace qstoch
