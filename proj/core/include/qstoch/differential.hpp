#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qstoch/qmatrix.hpp"

namespace qstoch {

/// phi_r on O(n), phi_c on U(n), phi_h on Sp(n).
enum class MapKind { R, C, H };

char to_char(MapKind kind);
/// Accepts "r", "c", "h". Throws BadParams otherwise.
MapKind parse_map_kind(const std::string& s);

/// Tangent-space bases for size n (0-based indices, lexicographic order).
///   a: A^{ij}, i<j, +1 at (i,j) and -1 at (j,i)
///   c: C^{ij}, i<=j, +1 at (i,j) and (j,i)
///   b: B^{ij}, i,j < n-1, +1 at (i,j),(n-1,n-1), -1 at (i,n-1),(n-1,j)
struct TangentBases {
  std::vector<Eigen::MatrixXd> a;
  std::vector<Eigen::MatrixXd> c;
  std::vector<Eigen::MatrixXd> b;
};

TangentBases tangent_bases(int n);

/// Coordinates of a zero row/column-sum matrix in the B basis: the entries
/// M(i,j), i,j < n-1, row-major.
Eigen::VectorXd b_coordinates(const Eigen::MatrixXd& m);

/// n(n-1)/2, n^2, n(2n+1).
int domain_dimension(MapKind kind, int n);
inline int codomain_dimension(int n) { return (n - 1) * (n - 1); }

/// Lie-algebra element E for Jacobian column `index`: A^{ij} first, then
/// i C^{ij}, then (for h) j C^{ij} and k C^{ij}.
QMatrix tangent_generator(MapKind kind, int n, int index);

struct JacobianMatrix {
  MapKind kind = MapKind::R;
  int n = 0;
  /// (n-1)^2 x domain_dimension(kind, n). Column for E is the B coordinate
  /// vector of Re(conj(P) o (E P)); the constant factor 2 is dropped.
  Eigen::MatrixXd entries;
};

/// Throws NotInGroup when P*P deviates from I by more than 1e-8, and
/// WrongScalarField when P has entries outside R (kind r) or C (kind c).
JacobianMatrix jacobian(MapKind kind, const QMatrix& p);

struct RankReport {
  int rank = 0;
  Eigen::VectorXd singular_values;  // descending
  double threshold = 0.0;
  /// sigma_rank / max(sigma_{rank+1}, threshold); infinite when that is 0.
  double gap = 0.0;
};

/// Singular values above tol * max(sigma_max, scale_floor) * max(rows, cols).
RankReport rank_report(const Eigen::MatrixXd& m, double tol = 1e-10, double scale_floor = 0.0);
int numerical_rank(const Eigen::MatrixXd& m, double tol = 1e-10);
/// Jacobian entries are O(1) on the group, so the scale is floored at 1: an
/// all-roundoff Jacobian has rank 0 rather than rank min(rows, cols).
RankReport rank_report(const JacobianMatrix& j, double tol = 1e-10);
int numerical_rank(const JacobianMatrix& j, double tol = 1e-10);

enum class PointVerdict { Singular, Critical, Regular };
enum class CrossCheck { Agrees, Disagrees, UnsupportedSize };

std::string to_string(PointVerdict v);
std::string to_string(CrossCheck c);

struct Classification {
  PointVerdict verdict = PointVerdict::Regular;
  RankReport rank;
  int dim_domain = 0;
  int dim_codomain = 0;
  bool splits = false;
  /// Verdict predicted by the zero pattern / normal form where a
  /// classification is known; empty otherwise.
  std::optional<PointVerdict> expected;
  CrossCheck cross_check = CrossCheck::UnsupportedSize;
  std::string reason;
};

/// Rank verdict (singular for r when the rank is below n(n-1)/2, critical for
/// c and h when it is below (n-1)^2) plus a cross-check against the known
/// classifications: n = 2 (diagonal or anti-diagonal), n = 3 r (splits),
/// n = 3 c/h (splits or equivalent to a real matrix), n = 4 r (splits or a
/// permutation pattern of exactly four zeros). Split matrices are checked at
/// every n.
Classification classify_point(MapKind kind, const QMatrix& p);

/// True when P (3x3, unitary) is equivalent to a real matrix: a row and a
/// column without zeros are moved to the front, then the dephased form must
/// be real within tol.
bool equivalent_to_real(const QMatrix& p, double tol = 1e-7);

}  // namespace qstoch
