#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qstoch/qmatrix.hpp"

namespace qstoch {

/// Ordered list of pairwise unbiased orthonormal bases of H^n, one basis per
/// column set of a symplectic matrix.
struct MubSet {
  int n = 0;
  std::vector<QMatrix> bases;
};

/// Validates and wraps. Throws DimensionMismatch for mixed sizes,
/// NotSymplectic for a non-orthonormal basis, BadParams for a biased pair or
/// more than 2n + 1 bases.
MubSet make_mub_set(std::vector<QMatrix> bases, double tol = 1e-9);

/// Max over i, j of | |(A* B)_ij|^2 - 1/n |. Throws DimensionMismatch, and
/// NotSymplectic when either matrix is off Sp(n) by more than 1e-8.
double unbiasedness_defect(const QMatrix& a, const QMatrix& b);
bool is_unbiased(const QMatrix& a, const QMatrix& b, double tol = 1e-9);

/// Largest pairwise defect over a list of bases.
double mub_defect(const std::vector<QMatrix>& bases);

/// {I, H, H_i, H_j, H_k}, H_q = [[1, 1], [q, -q]] / sqrt2 (H = H_1).
MubSet complete_mub_h2();

/// {I, F_3, A(s,t)/sqrt3, A(-s,-t)/sqrt3}, A(s,t) the circulant with z on the
/// diagonal and 1 elsewhere. Throws BadParams off the circle s^2 + t^2 = 3/4.
MubSet one_param_h3(double s, double t);

/// {I, F_3, A/sqrt3, B/sqrt3} with
///   A = [[1,1,1], [1,a,a^2], [b, b a^2, b a]]
///   B = [[1,1,1], [1,c,c^2], [conj b, conj b c^2, conj b c]].
/// Throws BadParams unless each of a, b, c is -1/2 + s i + t j on the circle.
MubSet three_param_h3(const Quaternion& a, const Quaternion& b, const Quaternion& c);

/// max |Tr(E_i F_j)| over basis vectors e_i, f_j from different bases, with
/// E = |e><e| - I/n and Tr X = 2 sum Re X_kk.
double operator_frame_orthogonality(const std::vector<QMatrix>& bases);
inline double operator_frame_orthogonality(const MubSet& s) { return operator_frame_orthogonality(s.bases); }

struct ExtendOptions {
  int grid = 64;
  int conj_grid = 32;
  int threads = 1;
  double accept_tol = 1e-6;
  double near_miss_tol = 1e-3;
  double polish_tol = 1e-9;
};

struct ExtendResult {
  std::optional<QMatrix> basis;  // the new basis (symplectic), if found
  std::string hit;               // family, parameters and move of the hit
  double best_violation = 0.0;   // smallest raw grid violation seen
  long near_misses = 0;          // grid candidates within near_miss_tol
  long candidates = 0;           // (family point, move) pairs tested
  int grid = 0;
  int conj_grid = 0;
};

/// The 18 monomial matrices Pc^u R^r D^d (mod complex phase) that map F_3 to
/// F_3 times a monomial: Pc the cyclic shift, R the swap of rows 2 and 3,
/// D = diag(1, w, w^2).
std::vector<QMatrix> f3_stabilizer();

/// Searches for a basis unbiased to every member of S, which must start with
/// I_3 and F_3 (else NotNormalized). Candidates are x (M A) x^{-1} / sqrt3 for
/// A in the six families on a grid, M in f3_stabilizer(), and x = e^{i th} or
/// j e^{i th} with th = pi m / conj_grid. The first candidate (in enumeration
/// order) within accept_tol, or a near miss that polishes to polish_tol, is
/// returned. Result is independent of the thread count.
ExtendResult extend_search(const std::vector<QMatrix>& bases, const ExtendOptions& opts);

struct MaximalityResult {
  double violation = 0.0;  // best max | |(W* B)_ij|^2 - 1/n | over restarts
  QMatrix witness;
  int restarts = 0;
};

/// Riemannian descent of sum (|(W* B)_ij|^2 - 1/n)^2 over Sp(n) from random
/// symplectic starts, retracting by Gram-Schmidt.
MaximalityResult direct_maximality_search(const std::vector<QMatrix>& bases, int restarts, std::uint64_t seed,
                                          int threads = 1);

/// Local descent from a given start; used to polish near misses.
QMatrix polish_unbiased(const std::vector<QMatrix>& bases, QMatrix start, int max_iterations = 2000);

/// Violation of W against every basis: max | |(W* B)_ij|^2 - 1/n |.
double violation_against(const QMatrix& w, const std::vector<QMatrix>& bases);

}  // namespace qstoch
