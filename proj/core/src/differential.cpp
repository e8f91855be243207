#include "qstoch/differential.hpp"

#include <cmath>
#include <limits>

#include "qstoch/error.hpp"

namespace qstoch {

char to_char(MapKind kind) {
  switch (kind) {
    case MapKind::R: return 'r';
    case MapKind::C: return 'c';
    case MapKind::H: return 'h';
  }
  return '?';
}

MapKind parse_map_kind(const std::string& s) {
  if (s == "r") return MapKind::R;
  if (s == "c") return MapKind::C;
  if (s == "h") return MapKind::H;
  throw Error(ErrorKind::BadParams, "map kind must be r, c or h, got '" + s + "'");
}

TangentBases tangent_bases(int n) {
  if (n < 2) throw Error(ErrorKind::BadParams, "tangent bases need n >= 2");
  TangentBases t;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
      a(i, j) = 1.0;
      a(j, i) = -1.0;
      t.a.push_back(std::move(a));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
      c(i, j) = 1.0;
      c(j, i) = 1.0;
      t.c.push_back(std::move(c));
    }
  }
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < n - 1; ++j) {
      Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
      b(i, j) += 1.0;
      b(n - 1, n - 1) += 1.0;
      b(i, n - 1) -= 1.0;
      b(n - 1, j) -= 1.0;
      t.b.push_back(std::move(b));
    }
  }
  return t;
}

Eigen::VectorXd b_coordinates(const Eigen::MatrixXd& m) {
  const Eigen::Index k = m.rows() - 1;
  Eigen::VectorXd v(k * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) v(i * k + j) = m(i, j);
  }
  return v;
}

int domain_dimension(MapKind kind, int n) {
  switch (kind) {
    case MapKind::R: return n * (n - 1) / 2;
    case MapKind::C: return n * n;
    case MapKind::H: return n * (2 * n + 1);
  }
  return 0;
}

QMatrix tangent_generator(MapKind kind, int n, int index) {
  const int na = n * (n - 1) / 2;
  const int nc = n * (n + 1) / 2;
  if (index < 0 || index >= domain_dimension(kind, n)) {
    throw Error(ErrorKind::BadParams, "tangent index " + std::to_string(index) + " out of range");
  }
  auto pair_at = [n](int k, bool strict) {
    for (int i = 0; i < n; ++i) {
      for (int j = strict ? i + 1 : i; j < n; ++j) {
        if (k-- == 0) return std::pair{i, j};
      }
    }
    return std::pair{0, 0};
  };
  QMatrix e(n, n);
  if (index < na) {
    const auto [i, j] = pair_at(index, true);
    e(i, j) = 1.0;
    e(j, i) = -1.0;
    return e;
  }
  const int rest = index - na;
  const Quaternion unit = rest < nc ? Quaternion::i() : rest < 2 * nc ? Quaternion::j() : Quaternion::k();
  const auto [i, j] = pair_at(rest % nc, false);
  e(i, j) = unit;
  e(j, i) = unit;
  return e;
}

JacobianMatrix jacobian(MapKind kind, const QMatrix& p) {
  if (!p.is_square() || p.rows() < 2) throw Error(ErrorKind::NotInGroup, "jacobian needs a square matrix, n >= 2");
  const double defect = unitarity_defect(p);
  if (!(defect <= 1e-8)) throw Error(ErrorKind::NotInGroup, "P*P - I is " + std::to_string(defect));
  const Field f = field_of(p);
  if (kind == MapKind::R && f != Field::Real) throw Error(ErrorKind::WrongScalarField, "map r needs a real matrix");
  if (kind == MapKind::C && f == Field::Quaternion) {
    throw Error(ErrorKind::WrongScalarField, "map c needs a complex matrix");
  }

  const int n = p.rows();
  const int dim = domain_dimension(kind, n);
  JacobianMatrix jac{kind, n, Eigen::MatrixXd::Zero(codomain_dimension(n), dim)};
  for (int col = 0; col < dim; ++col) {
    const QMatrix t = tangent_generator(kind, n, col) * p;
    for (int k = 0; k < n - 1; ++k) {
      for (int l = 0; l < n - 1; ++l) jac.entries(k * (n - 1) + l, col) = dot(p(k, l), t(k, l));
    }
  }
  return jac;
}

RankReport rank_report(const Eigen::MatrixXd& m, double tol, double scale_floor) {
  RankReport r;
  if (m.size() == 0) {
    r.gap = std::numeric_limits<double>::infinity();
    return r;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  r.singular_values = svd.singularValues();
  const double smax = r.singular_values.size() ? r.singular_values(0) : 0.0;
  r.threshold = tol * std::max(smax, scale_floor) * static_cast<double>(std::max(m.rows(), m.cols()));
  for (Eigen::Index k = 0; k < r.singular_values.size(); ++k) {
    if (r.singular_values(k) > r.threshold) ++r.rank;
  }
  const double next = r.rank < r.singular_values.size() ? r.singular_values(r.rank) : 0.0;
  const double denom = std::max(next, r.threshold);
  const double top = r.rank > 0 ? r.singular_values(r.rank - 1) : 0.0;
  r.gap = denom > 0.0 ? top / denom : std::numeric_limits<double>::infinity();
  return r;
}

int numerical_rank(const Eigen::MatrixXd& m, double tol) { return rank_report(m, tol).rank; }

RankReport rank_report(const JacobianMatrix& j, double tol) { return rank_report(j.entries, tol, 1.0); }

int numerical_rank(const JacobianMatrix& j, double tol) { return rank_report(j, tol).rank; }

std::string to_string(PointVerdict v) {
  switch (v) {
    case PointVerdict::Singular: return "singular";
    case PointVerdict::Critical: return "critical";
    case PointVerdict::Regular: return "regular";
  }
  return "?";
}

std::string to_string(CrossCheck c) {
  switch (c) {
    case CrossCheck::Agrees: return "agrees";
    case CrossCheck::Disagrees: return "disagrees";
    case CrossCheck::UnsupportedSize: return "unsupported_size";
  }
  return "?";
}

bool equivalent_to_real(const QMatrix& p, double tol) {
  const int n = p.rows();
  constexpr double zero = 1e-9;
  int full_row = -1;
  int full_col = -1;
  for (int i = 0; i < n && full_row < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n; ++j) ok = ok && p(i, j).norm() > zero;
    if (ok) full_row = i;
  }
  for (int j = 0; j < n && full_col < 0; ++j) {
    bool ok = true;
    for (int i = 0; i < n; ++i) ok = ok && p(i, j).norm() > zero;
    if (ok) full_col = j;
  }
  if (full_row < 0 || full_col < 0) return false;
  QMatrix q = p;
  for (int j = 0; j < n; ++j) std::swap(q(0, j), q(full_row, j));
  for (int i = 0; i < n; ++i) std::swap(q(i, 0), q(i, full_col));
  const QMatrix d = dephase(q, zero).matrix;
  for (const auto& e : d.entries()) {
    if (!e.is_real(tol)) return false;
  }
  return true;
}

namespace {

bool diagonal_or_antidiagonal(const QMatrix& p) {
  constexpr double zero = 1e-9;
  const bool diag = p(0, 1).norm() <= zero && p(1, 0).norm() <= zero;
  const bool anti = p(0, 0).norm() <= zero && p(1, 1).norm() <= zero;
  return diag || anti;
}

// Exactly one zero in every row and column, all other entries nonzero.
bool zero_permutation_pattern(const QMatrix& p) {
  constexpr double zero = 1e-9;
  const int n = p.rows();
  std::vector<int> col_zeros(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    int row_zeros = 0;
    for (int j = 0; j < n; ++j) {
      if (p(i, j).norm() <= zero) {
        ++row_zeros;
        ++col_zeros[static_cast<std::size_t>(j)];
      }
    }
    if (row_zeros != 1) return false;
  }
  for (int c : col_zeros) {
    if (c != 1) return false;
  }
  return true;
}

}  // namespace

Classification classify_point(MapKind kind, const QMatrix& p) {
  const JacobianMatrix jac = jacobian(kind, p);
  const int n = p.rows();
  Classification out;
  out.rank = rank_report(jac);
  out.dim_domain = domain_dimension(kind, n);
  out.dim_codomain = codomain_dimension(n);
  const PointVerdict degenerate = kind == MapKind::R ? PointVerdict::Singular : PointVerdict::Critical;
  const int needed = kind == MapKind::R ? out.dim_domain : out.dim_codomain;
  out.verdict = out.rank.rank < needed ? degenerate : PointVerdict::Regular;
  out.splits = splits(p);

  if (n == 2) {
    const bool hit = diagonal_or_antidiagonal(p);
    out.expected = hit ? degenerate : PointVerdict::Regular;
    out.reason = hit ? "diagonal or anti-diagonal" : "no zero entries";
  } else if (out.splits) {
    out.expected = degenerate;
    out.reason = "splits";
  } else if (n == 3 && kind == MapKind::R) {
    out.expected = PointVerdict::Regular;
    out.reason = "does not split";
  } else if (n == 3) {
    const bool real = equivalent_to_real(p);
    out.expected = real ? degenerate : PointVerdict::Regular;
    out.reason = real ? "equivalent to a real orthogonal matrix" : "not equivalent to a real matrix";
  } else if (n == 4 && kind == MapKind::R) {
    const bool pattern = zero_permutation_pattern(p);
    out.expected = pattern ? degenerate : PointVerdict::Regular;
    out.reason = pattern ? "zero diagonal up to permutation" : "does not split, no zero-diagonal form";
  } else {
    out.reason = "no known classification at this size";
  }

  if (out.expected) out.cross_check = *out.expected == out.verdict ? CrossCheck::Agrees : CrossCheck::Disagrees;
  return out;
}

}  // namespace qstoch
