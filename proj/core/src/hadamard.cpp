#include "qstoch/hadamard.hpp"

#include <cmath>
#include <numbers>

#include "qstoch/error.hpp"

namespace qstoch {

namespace {

constexpr double kUnitTol = 1e-9;
const double kHalfSqrt3 = std::sqrt(3.0) / 2.0;

void require_unit(const Quaternion& q, const char* name) {
  if (std::abs(q.norm() - 1.0) > kUnitTol) {
    throw Error(ErrorKind::BadParams, std::string(name) + " must have unit norm, got " + format_literal(q));
  }
}

}  // namespace

QMatrix special4(const Special4Params& p) {
  const Quaternion& a = p.a;
  const Quaternion& b = p.b;
  require_unit(a, "a");
  require_unit(b, "b");
  if (a.y != 0.0 || a.z != 0.0) throw Error(ErrorKind::BadParams, "special4: a must lie in span{1, i}");
  if (b.x != 0.0 || b.z != 0.0) throw Error(ErrorKind::BadParams, "special4: b must lie in span{1, j}");
  const Quaternion ab = a * b;
  const Quaternion one{1.0};
  const Quaternion x = -0.5 * (one + a + b - ab);
  const Quaternion z = -0.5 * (one + a - b + ab);
  const Quaternion y = -0.5 * (one - a + b + ab);
  const Quaternion w = -0.5 * (one - a - b - ab);
  return QMatrix{{1, 1, 1, 1}, {1, -1, b, -b}, {1, a, x, z}, {1, -a, y, w}};
}

QMatrix generic4(const Generic4Params& p) {
  const Quaternion& a = p.a;
  const Quaternion& x = p.x;
  require_unit(a, "a");
  require_unit(x, "x");
  if (a.z != 0.0) throw Error(ErrorKind::BadParams, "generic4: a must lie in span{1, i, j}");
  if (x.w != 0.0 || x.z != 0.0) throw Error(ErrorKind::BadParams, "generic4: x must lie in span{i, j}");
  const Quaternion one{1.0};
  const Quaternion ahat{a.w, a.x, 0.0, 0.0};
  if ((one + a).norm() <= kUnitTol || (one + ahat).norm() <= kUnitTol) {
    throw Error(ErrorKind::BadParams, "generic4: a = -1 is excluded");
  }
  const Quaternion u = (one + ahat).normalized();
  const Quaternion ui = u * Quaternion::i();
  const Quaternion xa = x * (one + a).normalized();
  const Quaternion xui = x * ui;
  const Quaternion b = ui * ui;
  const Quaternion c = xa * xa;
  const Quaternion d = xui * xui;
  return QMatrix{{1, 1, 1, 1},
                 {1, a, b, -one - a - b},
                 {1, c, d, -one - c - d},
                 {1, -one - a - c, -one - b - d, one + a + b + c + d}};
}

Quaternion omega3() { return {-0.5, kHalfSqrt3, 0.0, 0.0}; }

QMatrix family3_matrix(const Quaternion& a, const Quaternion& b, double s, double t) {
  const Quaternion z = zeta(s, t);
  const Quaternion z2 = z * z;
  return QMatrix{{1, 1, 1}, {a, a * z, a * z2}, {b, b * z2, b * z}};
}

QMatrix family3_matrix(const Family3Params& p) { return family3_matrix(p.a, p.b, p.s, p.t); }

double p_value(const Quaternion& a, double s, double t) {
  return (a.y * a.y + a.z * a.z) * s + (a.w * a.z - a.x * a.y) * t;
}

PhiCoefficients phi_coefficients(const Quaternion& a) {
  const double a1 = a.w, a2 = a.x, a3 = a.y, a4 = a.z;
  PhiCoefficients c;
  c.alpha0 = 1 - a1 + 4 * a1 * a2 * a2 + 2 * a1 * a4 * a4 + 2 * a2 * a3 * a4 - 2 * a3 * a3 - 2 * a4 * a4;
  c.alpha1 = a1 * a1 * a4 - a2 * a2 * a4 + 2 * a1 * a2 * a3 - a1 * a4 + a2 * a3;
  c.alpha2 = 1 - a1 + 4 * a1 * a2 * a2 + 4 * a1 * a3 * a3 - 2 * a1 * a4 * a4 - 6 * a2 * a3 * a4;
  return c;
}

double phi_value(const Quaternion& a, double s, double t) {
  const PhiCoefficients c = phi_coefficients(a);
  return 4 * c.alpha0 * s * s + 8 * c.alpha1 * s * t + c.alpha2;
}

UnbiasedSystem unbiased_system(const Quaternion& a, double s, double t) {
  require_unit(a, "a");
  if (std::abs(s * s + t * t - 0.75) > kUnitTol) {
    throw Error(ErrorKind::BadParams, "(s, t) must satisfy s^2 + t^2 = 3/4");
  }
  const Quaternion z = zeta(s, t);
  const Quaternion w = omega3();
  UnbiasedSystem sys;
  int row = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j, ++row) {
      const Quaternion p = Quaternion{1.0} + pow(w, -i) * a * pow(z, j);
      // Re(conj(P) w^i b z^-j) = Re(g b) with g = z^-j conj(P) w^i.
      const Quaternion g = pow(z, -j) * p.conj() * pow(w, i);
      sys.B.row(row) << g.w, -g.x, -g.y, -g.z;
      sys.v(row) = 1.0 - p.w;
    }
  }
  Eigen::Matrix<double, 4, 5> aug;
  aug << sys.B, sys.v;
  for (int k = 0; k < 5; ++k) {
    Eigen::Matrix4d m;
    for (int c = 0, dst = 0; c < 5; ++c) {
      if (c != k) m.col(dst++) = aug.col(c);
    }
    sys.d[static_cast<std::size_t>(k)] = m.determinant();
  }
  return sys;
}

Quaternion solve_unbiased_b(const UnbiasedSystem& sys) {
  auto acceptable = [&](const Eigen::Vector4d& b) {
    return std::abs(b.norm() - 1.0) <= kUnitTol && (sys.B * b - sys.v).norm() < kUnitTol;
  };
  const double d5 = sys.d[4];
  Eigen::Vector4d b;
  if (d5 != 0.0) {
    // Dropping column k (0-based) and moving v back into slot k takes 3 - k
    // column swaps.
    for (int k = 0; k < 4; ++k) {
      const double sign = (3 - k) % 2 == 0 ? 1.0 : -1.0;
      b(k) = sign * sys.d[static_cast<std::size_t>(k)] / d5;
    }
    if (acceptable(b)) return {b(0), b(1), b(2), b(3)};
  }
  b = sys.B.colPivHouseholderQr().solve(sys.v);
  return {b(0), b(1), b(2), b(3)};
}

std::string to_string(Family3 f) {
  switch (f) {
    case Family3::Generic: return "generic";
    case Family3::S1: return "s1";
    case Family3::S2: return "s2";
    case Family3::S3: return "s3";
    case Family3::S4: return "s4";
    case Family3::S5: return "s5";
  }
  return "?";
}

Family3 parse_family3(const std::string& s) {
  for (Family3 f : {Family3::Generic, Family3::S1, Family3::S2, Family3::S3, Family3::S4, Family3::S5}) {
    if (to_string(f) == s) return f;
  }
  throw Error(ErrorKind::BadParams, "unknown family '" + s + "'");
}

std::vector<double> phi_roots(const Quaternion& a) {
  constexpr int kScan = 720;
  const double step = 2.0 * std::numbers::pi / kScan;
  auto f = [&](double th) { return phi_value(a, kHalfSqrt3 * std::cos(th), kHalfSqrt3 * std::sin(th)); };
  std::vector<double> roots;
  double lo_val = f(0.0);
  for (int k = 0; k < kScan; ++k) {
    double lo = k * step;
    double hi = (k + 1) * step;
    const double hi_val = f(hi);
    if (lo_val == 0.0) {
      roots.push_back(lo);
    } else if ((lo_val < 0.0) != (hi_val < 0.0) && hi_val != 0.0) {
      double flo = lo_val;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    lo_val = hi_val;
  }
  return roots;
}

namespace {

Family3Params generic_at(const Quaternion& a, double theta) {
  Family3Params p;
  p.family = Family3::Generic;
  p.a = a;
  p.s = kHalfSqrt3 * std::cos(theta);
  p.t = kHalfSqrt3 * std::sin(theta);
  if (std::abs(p_value(a, p.s, p.t)) <= 1e-6) {
    throw Error(ErrorKind::DegenerateP, "p(a, s, t) vanishes at the phi root; use a special family");
  }
  const UnbiasedSystem sys = unbiased_system(a, p.s, p.t);
  p.b = solve_unbiased_b(sys);
  if (std::abs(p.b.norm() - 1.0) > 1e-6) {
    throw Error(ErrorKind::InternalInconsistency, "solved b has norm " + std::to_string(p.b.norm()));
  }
  return p;
}

}  // namespace

std::vector<Family3Params> generic3_all(const Quaternion& a) {
  require_unit(a, "a");
  std::vector<Family3Params> out;
  for (double th : phi_roots(a)) {
    try {
      out.push_back(generic_at(a, th));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateP) throw;
    }
  }
  return out;
}

std::optional<Family3Params> generic3_params(const Quaternion& a, Branch branch) {
  require_unit(a, "a");
  const auto roots = phi_roots(a);
  if (roots.empty()) return std::nullopt;
  // Roots come in antipodal pairs (phi is even in (s, t)); the first one in
  // [0, pi) is always present.
  double theta = roots.front();
  for (double r : roots) {
    if (r < std::numbers::pi) {
      theta = r;
      break;
    }
  }
  if (branch == Branch::Minus) theta += std::numbers::pi;
  return generic_at(a, theta);
}

std::optional<QMatrix> generic3(const Quaternion& a, Branch branch) {
  const auto p = generic3_params(a, branch);
  if (!p) return std::nullopt;
  return family3_matrix(*p);
}

namespace {

// Points b = b0 + L w (w in R^2) with |b| = 1, parameterized by psi.
Quaternion ellipse_point(const Eigen::Vector4d& b0, const Eigen::Matrix<double, 4, 2>& l, double psi) {
  const Eigen::Matrix2d g = l.transpose() * l;
  const Eigen::Vector2d wc = -g.ldlt().solve(l.transpose() * b0);
  const double r = wc.dot(g * wc) - b0.squaredNorm() + 1.0;
  if (r < 0.0) throw Error(ErrorKind::NoRealSolution, "no unit b satisfies the family constraints");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(g);
  const Eigen::Vector2d unit(std::cos(psi), std::sin(psi));
  const Eigen::Vector2d w =
      wc + eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * (std::sqrt(r) * unit);
  const Eigen::Vector4d b = b0 + l * w;
  return {b(0), b(1), b(2), b(3)};
}

int sign_of(int s) {
  if (s != 1 && s != -1) throw Error(ErrorKind::BadParams, "signs must be +1 or -1");
  return s;
}

}  // namespace

Family3Params special3_params(const Special3Args& args) {
  Family3Params p;
  p.family = args.family;
  p.s = kHalfSqrt3 * std::cos(args.theta);
  p.t = kHalfSqrt3 * std::sin(args.theta);
  const double cp = std::cos(args.psi);
  const double sp = std::sin(args.psi);
  if ((args.family == Family3::S2 || args.family == Family3::S3) && args.selector != 0 && args.selector != 1) {
    throw Error(ErrorKind::BadParams, "selector must be 0 or 1");
  }
  switch (args.family) {
    case Family3::S1: {
      p.a = 1.0;
      p.b = {-0.5, kHalfSqrt3 * cp, kHalfSqrt3 * sp, 0.0};
      break;
    }
    case Family3::S2: {
      const Quaternion z = zeta(p.s, p.t);
      p.a = args.selector == 0 ? z : z * z;
      const double a2 = p.a.x, a3 = p.a.y;
      const double c = a2 * cp + a3 * sp;
      const double b2 = c * cp, b3 = c * sp;
      p.b = {1.0 - 2.0 * (a2 * b2 + a3 * b3), b2, b3, 2.0 * (a3 * b2 - a2 * b3)};
      break;
    }
    case Family3::S3: {
      const Quaternion w = omega3();
      p.a = args.selector == 0 ? w : w * w;
      const double a2 = p.a.x;
      const double b2 = a2 / 2.0 + std::sqrt(3.0) / 4.0 * cp;
      const double b3 = std::sqrt(3.0) / 4.0 * sp;
      p.b = {1.0 - 2.0 * a2 * b2, b2, b3, 2.0 * a2 * b3};
      break;
    }
    case Family3::S4: {
      const int s2 = sign_of(args.signs[0]), s3 = sign_of(args.signs[1]), st = sign_of(args.signs[2]);
      const double a2 = s2 * std::sqrt(3.0) / 4.0;
      const double a3 = s3 * std::sqrt(3.0) / 4.0;
      const double a4 = 4.0 * a2 * a3;
      p.a = {0.25, a2, a3, a4};
      p.s = 0.0;
      p.t = st * kHalfSqrt3;
      // Free coordinates w = (b2, b4); b1 and b3 follow linearly.
      Eigen::Vector4d b0(-0.5, 0.0, 2.0 * a3, 0.0);
      Eigen::Matrix<double, 4, 2> l;
      l << 0.0, -4.0 / 3.0 * a4,
           1.0, 0.0,
           -16.0 / 3.0 * a2 * a3, 32.0 / 9.0 * a3 * a4,
           0.0, 1.0;
      p.b = ellipse_point(b0, l, args.psi);
      break;
    }
    case Family3::S5: {
      const double a1 = args.a1;
      if (!(a1 > -0.5 && a1 < 1.0)) throw Error(ErrorKind::BadParams, "s5 needs a1 in (-1/2, 1)");
      const int s2 = sign_of(args.signs[0]), s3 = sign_of(args.signs[1]);
      const int s4 = sign_of(args.signs[2]), st = sign_of(args.signs[3]);
      const double a2 = s2 * (1.0 - a1) / std::sqrt(3.0);
      const double a3 = s3 * std::sqrt((1.0 - a1) * (1.0 + 2.0 * a1) / 6.0);
      const double a4 = s4 * std::sqrt(3.0) * std::abs(a3);
      p.a = {a1, a2, a3, a4};
      p.t = st * 2.0 * std::abs(a3);
      p.s = -(a1 * a4 - a2 * a3) * p.t / (a3 * a3 + a4 * a4);
      if (std::abs(p.s * p.s + p.t * p.t - 0.75) > kUnitTol) {
        throw Error(ErrorKind::NoRealSolution, "s5: this sign choice puts zeta off the circle");
      }
      // Free coordinates w = (b3, b4).
      Eigen::Vector4d b0(-0.5, (1.0 - a1) / (2.0 * a2), 0.0, 0.0);
      Eigen::Matrix<double, 4, 2> l;
      l << 0.0, -a2 / a3,
           -a3 / a2, 1.0 / (2.0 * a3),
           1.0, 0.0,
           0.0, 1.0;
      p.b = ellipse_point(b0, l, args.psi);
      break;
    }
    case Family3::Generic:
      throw Error(ErrorKind::BadParams, "special3 takes s1..s5; use generic3 for the generic family");
  }
  return p;
}

QMatrix special3(const Special3Args& args) { return family3_matrix(special3_params(args)); }

double f3_unbiasedness_defect(const QMatrix& m) {
  if (m.rows() != 3 || m.cols() != 3) throw Error(ErrorKind::DimensionMismatch, "expected a 3x3 matrix");
  const QMatrix g = adjoint(fourier(3)) * m * (1.0 / std::sqrt(3.0));
  double worst = 0.0;
  for (const auto& e : g.entries()) worst = std::max(worst, std::abs(e.norm2() - 1.0 / 3.0));
  return worst;
}

bool verify_family3(const QMatrix& m, Family3 family, double tol) {
  if (m.rows() != 3 || m.cols() != 3) return false;
  const Quaternion a = m(1, 0);
  const Quaternion b = m(2, 0);
  if (std::abs(a.norm() - 1.0) > tol || std::abs(b.norm() - 1.0) > tol) return false;
  const Quaternion z = a.conj() * m(1, 1);
  const double s = z.x, t = z.y;
  auto near = [tol](double u, double v) { return std::abs(u - v) <= tol; };
  if (!near(z.w, -0.5) || !near(z.z, 0.0) || !near(s * s + t * t, 0.75)) return false;
  const QMatrix form = family3_matrix(a, b, s, t);
  if (max_entry_distance(form, m) > tol) return false;

  const double a1 = a.w, a2 = a.x, a3 = a.y, a4 = a.z;
  const double b1 = b.w, b2 = b.x, b3 = b.y, b4 = b.z;
  switch (family) {
    case Family3::Generic: {
      if (!near(phi_value(a, s, t), 0.0) || std::abs(p_value(a, s, t)) <= tol) return false;
      const UnbiasedSystem sys = unbiased_system(a.normalized(), s, t);
      const Eigen::Vector4d bv(b1, b2, b3, b4);
      return (sys.B * bv - sys.v).cwiseAbs().maxCoeff() <= tol;
    }
    case Family3::S1:
      return distance_inf(a, 1.0) <= tol && near(b1, -0.5) && near(b4, 0.0);
    case Family3::S2:
      return (distance_inf(a, z) <= tol || distance_inf(a, z * z) <= tol) &&
             near(b1, 1.0 - 2.0 * (a2 * b2 + a3 * b3)) && near(b4, 2.0 * (a3 * b2 - a2 * b3));
    case Family3::S3: {
      const Quaternion w = omega3();
      return (distance_inf(a, w) <= tol || distance_inf(a, w * w) <= tol) && near(b1, 1.0 - 2.0 * a2 * b2) &&
             near(b4, 2.0 * a2 * b3);
    }
    case Family3::S4:
      return near(a1, 0.25) && near(a2 * a2, 3.0 / 16.0) && near(a3 * a3, 3.0 / 16.0) && near(a4, 4.0 * a2 * a3) &&
             near(b1, -0.5 - 4.0 / 3.0 * a4 * b4) && near(b3, 2.0 * a3 / 3.0 * (1.0 - 4.0 * b1 - 8.0 * a2 * b2)) &&
             near(s, 0.0);
    case Family3::S5:
      // The b1, b2 conditions are multiplied through by a3 and a2 a3.
      return near(3.0 * a2 * a2, (1.0 - a1) * (1.0 - a1)) && near(6.0 * a3 * a3, (1.0 - a1) * (1.0 + 2.0 * a1)) &&
             near(a4 * a4, 3.0 * a3 * a3) && near(p_value(a, s, t), 0.0) && near(a3 * b1, -0.5 * a3 - a2 * b4) &&
             near(2.0 * a2 * a3 * b2, a3 * (1.0 - a1) - 2.0 * a3 * a3 * b3 + a2 * b4) && near(t * t, 4.0 * a3 * a3);
  }
  return false;
}

}  // namespace qstoch
