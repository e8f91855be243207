#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qstoch/permutation.hpp"
#include "qstoch/qmatrix.hpp"

namespace qstoch {

/// Square nonnegative real matrix with unit row and column sums.
class BistochasticMatrix {
 public:
  /// Throws NotBistochastic when a row or column sum is off by more than tol
  /// or an entry is below -1e-12.
  explicit BistochasticMatrix(Eigen::MatrixXd m, double tol = 1e-9);

  static bool check(const Eigen::MatrixXd& m, double tol = 1e-9);

  int n() const { return static_cast<int>(m_.rows()); }
  double operator()(int r, int c) const { return m_(r, c); }
  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

/// n x n matrix of +-1.
struct SignPattern {
  Eigen::MatrixXi signs;
  int n() const { return static_cast<int>(signs.rows()); }
};

/// Entrywise squared norms of a unitary/orthogonal/symplectic matrix. Throws
/// NotUnitary when W*W deviates from I by more than 1e-8.
BistochasticMatrix phi(const QMatrix& m);

/// The constant matrix J_n = 1/n.
BistochasticMatrix van_der_waerden(int n);

/// (1-x-y-z-w+xw+yz)^2 - 4xyzw on the top-left 2x2 block (x y / z w).
/// Throws WrongSize unless n = 3.
double ortho3_residual(const BistochasticMatrix& b);
bool ortho3_test(const BistochasticMatrix& b);

/// The twelve polynomial sign conditions for n = 4: six column pairs
/// (1,2),(1,3),(1,4),(2,3),(2,4),(3,4), then the same six row pairs. For a
/// pair with products m_k = B_ki B_kj the residual is
///   [(m1+m2-m3-m4)^2 - 4 m1 m2 - 4 m3 m4]^2 - 64 m1 m2 m3 m4,
/// which vanishes iff some signs give sum +-sqrt(m_k) = 0.
std::array<double, 12> sigma_poly_4(const BistochasticMatrix& b);

/// True iff some eps in {+-1}^m has |sum eps_k t_k| <= tol. Gray-code walk
/// over 2^(m'-1) patterns where m' counts the nonzero t_k.
bool signs_balance(std::span<const double> t, double tol = 1e-9);

struct SigmaPair {
  bool rows = false;  // false: column pair
  int i = 0;
  int j = 0;
};

struct SigmaReport {
  bool satisfied = true;
  int pairs_checked = 0;
  std::optional<SigmaPair> first_failure;
};

/// The n(n-1) sign conditions over all column pairs and row pairs, with
/// t_k = sqrt(B_ki B_kj). Throws TooLarge for n > 24.
SigmaReport sigma_report(const BistochasticMatrix& b, int threads = 1);
bool sigma_check(const BistochasticMatrix& b, int threads = 1);

/// Exhaustive search for signs S (first row and column +1) making
/// S o sqrt(B) orthogonal within 1e-8. Throws TooLarge for n > 5.
std::optional<SignPattern> orthostochastic_bruteforce(const BistochasticMatrix& b);

enum class SegmentVerdict { Orthostochastic, NotQustochastic };

struct SegmentAnalysis {
  SegmentVerdict verdict = SegmentVerdict::Orthostochastic;
  /// Cycle type of sigma^{-1} tau.
  std::vector<int> cycle_type;
  /// p P_sigma + (1-p) P_tau, with p replaced by 1/2 for the negative verdict.
  Eigen::MatrixXd point;
  /// Orthogonal X with phi(X) = point; present for the positive verdict.
  std::optional<Eigen::MatrixXd> witness;
};

/// Throws BadParams unless 0 < p < 1 and the permutations have equal size.
SegmentAnalysis segment_block_analysis(const Permutation& sigma, const Permutation& tau, double p);

/// Weights a_g, g in (Z/2)^4 in integer order. Non-identity weights are p/656
/// for the first 15 primes p, the identity takes the remaining 1/2. A nonzero
/// seed shuffles which group element receives which weight.
std::array<double, 16> hurwitz_radon_weights(std::uint64_t seed = 0);

/// X_{a,b} = weight of a XOR b, i.e. sum_g a_g R_g over the regular
/// representation of (Z/2)^4.
BistochasticMatrix hurwitz_radon_matrix(std::uint64_t seed = 0);

struct DistanceResult {
  double distance = 0.0;
  Eigen::MatrixXd minimizer;  // phi_r of the best rotation
  Eigen::Matrix3d rotation;
  long iterations = 0;  // summed over restarts
  int restarts = 0;
};

/// Minimizes ||phi_r(X) - J_3||_F over SO(3) by Armijo descent along
/// X exp(-t hat(g)) from `restarts` Haar starts. The best restart wins, ties
/// go to the lower restart index.
DistanceResult distance_j3(int restarts = 100, std::uint64_t seed = 0, int threads = 1);

}  // namespace qstoch
