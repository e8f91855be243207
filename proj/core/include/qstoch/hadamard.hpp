#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qstoch/qmatrix.hpp"

namespace qstoch {

/// a in span{1, i}, b in span{1, j}, both unit.
struct Special4Params {
  Quaternion a{1.0};
  Quaternion b{1.0};
};

/// a = a1 + a2 i + a3 j (unit, a != -1), x = x2 i + x3 j (unit).
struct Generic4Params {
  Quaternion a{1.0};
  Quaternion x = Quaternion::i();
};

/// Rows [1,1,1,1], [1,-1,b,-b], [1,a,x,z], [1,-a,y,w] with
///   x = -(1+a+b-ab)/2   z = -(1+a-b+ab)/2
///   y = -(1-a+b+ab)/2   w = -(1-a-b-ab)/2.
/// Throws BadParams when the parameters leave their subspaces or the unit
/// sphere.
QMatrix special4(const Special4Params& p);

/// Rows [1,1,1,1], [1,a,b,-1-a-b], [1,c,d,-1-c-d],
/// [1,-1-a-c,-1-b-d,1+a+b+c+d] with, for u = (1+ah)/|1+ah| and ah = a1 + a2 i,
///   b = (u i)^2,  c = (x (1+a)/|1+a|)^2,  d = (x u i)^2.
/// Throws BadParams (including the pole a = -1).
QMatrix generic4(const Generic4Params& p);

// ---------------------------------------------------------------------------
// 3x3 matrices unbiased to F_3:
//   [[1, 1, 1], [a, a z, a z^2], [b, b z^2, b z]],  z = -1/2 + s i + t j.

/// exp(2 pi i / 3).
Quaternion omega3();
/// -1/2 + s i + t j.
inline Quaternion zeta(double s, double t) { return {-0.5, s, t, 0.0}; }

QMatrix family3_matrix(const Quaternion& a, const Quaternion& b, double s, double t);

/// (a3^2 + a4^2) s + (a1 a4 - a2 a3) t
double p_value(const Quaternion& a, double s, double t);

struct PhiCoefficients {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};
PhiCoefficients phi_coefficients(const Quaternion& a);
/// 4 alpha0 s^2 + 8 alpha1 s t + alpha2.
double phi_value(const Quaternion& a, double s, double t);

/// The four conditions <1 + w^{-i} a z^j, 1 + w^i b z^{-j}> = 1, i, j in {0,1},
/// written as B (b1..b4)^T = v. Rows are ordered (i,j) = (0,0),(0,1),(1,0),(1,1).
/// d[k] is the determinant of [B | v] with column k dropped, so d[4] = det B.
struct UnbiasedSystem {
  Eigen::Matrix4d B;
  Eigen::Vector4d v;
  std::array<double, 5> d{};
};

/// Throws BadParams unless |a| = 1 and s^2 + t^2 = 3/4 within 1e-9.
UnbiasedSystem unbiased_system(const Quaternion& a, double s, double t);

/// Cramer solution b_k = (-1)^k d_k / d_5 (1-based k), checked for |b| = 1 and
/// residual 1e-9, with a least-squares solve as fallback.
Quaternion solve_unbiased_b(const UnbiasedSystem& sys);

enum class Family3 { Generic, S1, S2, S3, S4, S5 };
std::string to_string(Family3 f);
/// "generic", "s1" ... "s5". Throws BadParams.
Family3 parse_family3(const std::string& s);

struct Family3Params {
  Family3 family = Family3::Generic;
  Quaternion a{1.0};
  Quaternion b{1.0};
  double s = 0.0;
  double t = 0.0;
};

QMatrix family3_matrix(const Family3Params& p);

enum class Branch { Plus, Minus };

/// Roots theta in [0, 2 pi) of phi(a, (sqrt3/2) cos theta, (sqrt3/2) sin theta),
/// bracketed on a 720-point scan and refined by bisection, in scan order.
std::vector<double> phi_roots(const Quaternion& a);

/// Every generic-family completion of `a`, one per root with |p| > 1e-6.
std::vector<Family3Params> generic3_all(const Quaternion& a);

/// Branch + uses the first root in [0, pi), branch - its antipode. Returns
/// nothing when phi has no real root. Throws DegenerateP when |p| <= 1e-6
/// at the chosen root, BadParams unless |a| = 1.
std::optional<Family3Params> generic3_params(const Quaternion& a, Branch branch);
std::optional<QMatrix> generic3(const Quaternion& a, Branch branch);

/// Free parameters of the special families.
///   theta: angle of z on the circle, s = (sqrt3/2) cos theta, t = (sqrt3/2) sin theta
///          (s1, s2, s3; forced for s4 and s5)
///   psi:   angle on the circle or ellipse of admissible b
///   selector: s2 picks a = z (0) or z^2 (1); s3 picks a = w (0) or w^2 (1)
///   a1:    s5 only, in (-1/2, 1)
///   signs: s4 uses {sign a2, sign a3, sign t}; s5 uses {sign a2, sign a3,
///          sign a4, sign t}
struct Special3Args {
  Family3 family = Family3::S1;
  double theta = 0.0;
  double psi = 0.0;
  int selector = 0;
  double a1 = 0.25;
  std::array<int, 4> signs{1, 1, 1, 1};
};

/// Throws BadParams for out-of-range arguments and NoRealSolution when the
/// constraints admit no real completion (s5 with sign a2 * sign a4 != sign a3).
Family3Params special3_params(const Special3Args& args);
QMatrix special3(const Special3Args& args);

/// Max over k, l of | |(F_3^* M / sqrt3)_kl|^2 - 1/3 |.
double f3_unbiasedness_defect(const QMatrix& m);

/// Reads a = M(1,0), b = M(2,0), z = conj(a) M(1,1) and checks the common
/// form plus the constraints of the named family, each within tol.
bool verify_family3(const QMatrix& m, Family3 family, double tol = 1e-9);

}  // namespace qstoch
