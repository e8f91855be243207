#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace qstoch {

/// Default absolute tolerance for predicates on order-one quantities.
inline constexpr double kDefaultTol = 1e-9;

/// Real quaternion w + x i + y j + z k in double precision.
///
/// Multiplication is the Hamilton product (i^2 = j^2 = k^2 = ijk = -1) and is
/// not commutative; every formula that multiplies quaternions fixes an order.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_) : w(w_) {}  // NOLINT: reals embed implicitly
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  /// cos(theta) + sin(theta) i
  static Quaternion exp_i(double theta) { return {std::cos(theta), std::sin(theta), 0.0, 0.0}; }

  constexpr double scalar() const { return w; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr Quaternion pure() const { return {0.0, x, y, z}; }
  Quaternion inverse() const {
    const double n2 = norm2();
    return {w / n2, -x / n2, -y / n2, -z / n2};
  }
  Quaternion normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  /// True when the i, j, k parts are all within tol of zero.
  bool is_real(double tol = kDefaultTol) const {
    return std::abs(x) <= tol && std::abs(y) <= tol && std::abs(z) <= tol;
  }
  /// True when the j and k parts vanish (a complex number a + b i).
  bool is_complex(double tol = kDefaultTol) const { return std::abs(y) <= tol && std::abs(z) <= tol; }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(double s) {
    w /= s; x /= s; y /= s; z /= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }

/// Hamilton product.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion mul(const Quaternion& p, const Quaternion& q) { return p * q; }

inline Quaternion conj(const Quaternion& q) { return q.conj(); }
inline double norm(const Quaternion& q) { return q.norm(); }

/// Euclidean inner product on H = R^4, equal to Re(conj(p) q).
constexpr double dot(const Quaternion& p, const Quaternion& q) {
  return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}

/// Max-coordinate distance.
double distance_inf(const Quaternion& p, const Quaternion& q);

/// The pure (vector) part x i + y j + z k.
constexpr Quaternion pure_part(const Quaternion& q) { return q.pure(); }

/// x q x^{-1} for a unit quaternion x. Throws NonUnitConjugator when
/// |norm(x) - 1| > 1e-9.
Quaternion conjugate_by(const Quaternion& q, const Quaternion& x);

/// Dot and cross product of the vector parts of two pure quaternions, so that
/// p q = -dot + cross. Throws NotPure when a scalar part exceeds 1e-9.
std::pair<double, Quaternion> pure_dot_cross(const Quaternion& p, const Quaternion& q);

/// Integer power, negative exponents through the inverse.
Quaternion pow(const Quaternion& q, int exponent);

/// Textual literal `(w,x,y,z)` with 17 significant digits.
std::string format_literal(const Quaternion& q);
/// Parses `(w,x,y,z)`; the parentheses are optional so `w,x,y,z` also works.
Quaternion parse_literal(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qstoch
