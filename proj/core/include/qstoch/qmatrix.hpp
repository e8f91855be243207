#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qstoch/permutation.hpp"
#include "qstoch/quaternion.hpp"

namespace qstoch {

/// Smallest of R, C, H containing every entry of a matrix.
enum class Field { Real, Complex, Quaternion };

/// Dense row-major quaternion matrix. Columns are vectors of the right
/// H-vector space H^rows, so scalars act on the right of columns.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols);
  /// Throws DimensionMismatch unless entries.size() == rows * cols.
  QMatrix(int rows, int cols, std::vector<Quaternion> entries);
  QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static QMatrix identity(int n);
  static QMatrix from_real(const Eigen::MatrixXd& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Quaternion& operator()(int r, int c) { return data_[index(r, c)]; }
  const Quaternion& operator()(int r, int c) const { return data_[index(r, c)]; }

  std::span<const Quaternion> entries() const { return data_; }
  std::span<Quaternion> entries() { return data_; }

  /// Scalar parts as a real matrix.
  Eigen::MatrixXd real_part() const;
  /// Entrywise squared norms.
  Eigen::MatrixXd squared_norms() const;

  QMatrix column(int c) const;
  QMatrix row(int r) const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(double s);

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Quaternion> data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator*(QMatrix a, double s);
QMatrix operator*(double s, QMatrix a);
/// Matrix product; entry products are taken as A(i,j) * B(j,k) in that order.
/// Throws DimensionMismatch.
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix matmul(const QMatrix& a, const QMatrix& b);

/// q * M entrywise (left scalar action).
QMatrix scale_left(const Quaternion& q, const QMatrix& m);
/// M * q entrywise (right scalar action).
QMatrix scale_right(const QMatrix& m, const Quaternion& q);

/// Conjugate transpose.
QMatrix adjoint(const QMatrix& m);

/// Largest quaternion norm of an entry of a - b. Throws DimensionMismatch.
double max_entry_distance(const QMatrix& a, const QMatrix& b);
double frobenius_norm(const QMatrix& m);

Field field_of(const QMatrix& m, double tol = kDefaultTol);

/// Max-entry deviation of W* W from the identity.
double unitarity_defect(const QMatrix& w);
bool is_symplectic(const QMatrix& w, double tol = kDefaultTol);
/// Unit-norm entries and H* H = n I, both within tol.
bool is_hadamard(const QMatrix& h, double tol = kDefaultTol);

QMatrix diag(std::span<const Quaternion> d);
QMatrix diag(std::initializer_list<Quaternion> d);
QMatrix permutation_matrix(const Permutation& p);
QMatrix direct_sum(const QMatrix& a, const QMatrix& b);

/// Unitary Fourier matrix, entries omega^{(i-1)(j-1)} / sqrt(n) with
/// omega = exp(2 pi i / n).
QMatrix fourier(int n);

/// Monomial matrix data: the matrix is P_permutation * diag(phases), applied on
/// the given side, followed by entrywise conjugation by `conjugator` if set.
struct MonomialTransform {
  enum class Side { Left, Right };

  Permutation permutation;
  std::vector<Quaternion> phases;
  Side side = Side::Left;
  std::optional<Quaternion> conjugator;

  static MonomialTransform diagonal(std::vector<Quaternion> phases, Side side);

  QMatrix matrix() const;
  QMatrix apply(const QMatrix& m) const;
};

struct DephaseResult {
  QMatrix matrix;
  MonomialTransform left;
  MonomialTransform right;
};

/// D_L * M * D_R with first row and column real and nonnegative. D_L makes
/// column 1 positive real, D_R then fixes row 1; entry (1,1) becomes |M_11|.
/// Throws ZeroInFrame when a first-row or first-column entry has norm <= tol.
DephaseResult dephase(const QMatrix& m, double tol = kDefaultTol);

/// x * M_ij * x^{-1} for every entry. Throws NonUnitConjugator.
QMatrix entrywise_conjugate(const QMatrix& m, const Quaternion& x);

/// Unit quaternion x with x * q * x^{-1} complex with nonnegative i part.
/// Returns 1 for q already complex with x >= 0.
Quaternion complexifying_conjugator(const Quaternion& q);

/// True iff the bipartite row/column graph of entries with norm > tol has more
/// than one connected component.
bool splits(const QMatrix& m, double tol = kDefaultTol);

/// Column-by-column Gram-Schmidt with right scalar multiplication, run twice.
/// Throws NotUnitary when a column is numerically dependent.
QMatrix gram_schmidt(const QMatrix& m);

/// Matrix exponential by scaling and squaring of a Taylor series.
QMatrix expm(const QMatrix& m);

/// Haar-like symplectic matrix: quaternion Gaussian entries orthonormalized by
/// gram_schmidt. Deterministic per seed.
QMatrix random_symplectic(int n, std::uint64_t seed);

}  // namespace qstoch
