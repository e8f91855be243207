#include "qstoch/stochastic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "qstoch/detail/parallel.hpp"
#include "qstoch/error.hpp"
#include "qstoch/random.hpp"

namespace qstoch {

BistochasticMatrix::BistochasticMatrix(Eigen::MatrixXd m, double tol) : m_(std::move(m)) {
  if (!check(m_, tol)) throw Error(ErrorKind::NotBistochastic, "row/column sums or signs out of tolerance");
}

bool BistochasticMatrix::check(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  if (m.minCoeff() < -1e-12) return false;
  const double row_err = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double col_err = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
  return row_err <= tol && col_err <= tol;
}

BistochasticMatrix phi(const QMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NotUnitary, "phi needs a square matrix");
  const double defect = unitarity_defect(m);
  if (!(defect <= 1e-8)) throw Error(ErrorKind::NotUnitary, "W*W - I is " + std::to_string(defect));
  return BistochasticMatrix(m.squared_norms(), 1e-8);
}

BistochasticMatrix van_der_waerden(int n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "n must be >= 1");
  return BistochasticMatrix(Eigen::MatrixXd::Constant(n, n, 1.0 / n));
}

double ortho3_residual(const BistochasticMatrix& b) {
  if (b.n() != 3) throw Error(ErrorKind::WrongSize, "ortho3 needs n = 3, got " + std::to_string(b.n()));
  const double x = b(0, 0), y = b(0, 1), z = b(1, 0), w = b(1, 1);
  const double s = 1.0 - x - y - z - w + x * w + y * z;
  return s * s - 4.0 * x * y * z * w;
}

bool ortho3_test(const BistochasticMatrix& b) { return std::abs(ortho3_residual(b)) <= 1e-9; }

namespace {

double sigma4_residual(double m1, double m2, double m3, double m4) {
  const double s = m1 + m2 - m3 - m4;
  const double inner = s * s - 4.0 * m1 * m2 - 4.0 * m3 * m4;
  return inner * inner - 64.0 * m1 * m2 * m3 * m4;
}

constexpr std::array<std::pair<int, int>, 6> kPairs4{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

}  // namespace

std::array<double, 12> sigma_poly_4(const BistochasticMatrix& b) {
  if (b.n() != 4) throw Error(ErrorKind::WrongSize, "sigma_poly_4 needs n = 4, got " + std::to_string(b.n()));
  std::array<double, 12> out{};
  for (std::size_t p = 0; p < kPairs4.size(); ++p) {
    const auto [i, j] = kPairs4[p];
    std::array<double, 4> col{};
    std::array<double, 4> row{};
    for (int k = 0; k < 4; ++k) {
      col[static_cast<std::size_t>(k)] = b(k, i) * b(k, j);
      row[static_cast<std::size_t>(k)] = b(i, k) * b(j, k);
    }
    out[p] = sigma4_residual(col[0], col[1], col[2], col[3]);
    out[p + 6] = sigma4_residual(row[0], row[1], row[2], row[3]);
  }
  return out;
}

bool signs_balance(std::span<const double> t, double tol) {
  std::vector<double> v;
  v.reserve(t.size());
  for (double x : t) {
    if (std::abs(x) > 1e-15) v.push_back(x);
  }
  double sum = std::accumulate(v.begin(), v.end(), 0.0);
  if (std::abs(sum) <= tol) return true;
  if (v.size() <= 1) return false;
  if (v.size() > 63) throw Error(ErrorKind::TooLarge, "too many terms for sign enumeration");
  // v[0] keeps its + sign; Gray code over the remaining signs flips one term
  // per step, so each pattern costs O(1).
  std::vector<int> sign(v.size(), 1);
  const std::uint64_t patterns = std::uint64_t{1} << (v.size() - 1);
  for (std::uint64_t g = 1; g < patterns; ++g) {
    const std::size_t k = static_cast<std::size_t>(std::countr_zero(g)) + 1;
    sum -= 2.0 * sign[k] * v[k];
    sign[k] = -sign[k];
    if (std::abs(sum) <= tol) return true;
  }
  return false;
}

SigmaReport sigma_report(const BistochasticMatrix& b, int threads) {
  const int n = b.n();
  if (n > 24) throw Error(ErrorKind::TooLarge, "sigma_check supports n <= 24, got " + std::to_string(n));
  std::vector<SigmaPair> pairs;
  for (int rows = 0; rows < 2; ++rows) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) pairs.push_back({rows == 1, i, j});
    }
  }
  std::vector<char> ok(pairs.size(), 0);
  detail::parallel_for(pairs.size(), threads, [&](std::size_t p) {
    const SigmaPair& pr = pairs[p];
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const double prod = pr.rows ? b(pr.i, k) * b(pr.j, k) : b(k, pr.i) * b(k, pr.j);
      t[static_cast<std::size_t>(k)] = std::sqrt(std::max(prod, 0.0));
    }
    ok[p] = signs_balance(t) ? 1 : 0;
  });
  SigmaReport report;
  report.pairs_checked = static_cast<int>(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (!ok[p]) {
      report.satisfied = false;
      report.first_failure = pairs[p];
      break;
    }
  }
  return report;
}

bool sigma_check(const BistochasticMatrix& b, int threads) { return sigma_report(b, threads).satisfied; }

namespace {

struct OrthoSearch {
  int n;
  Eigen::MatrixXd root;  // sqrt of B
  Eigen::MatrixXi signs;
  double tol;

  bool column_ok(int c) const {
    for (int p = 0; p < c; ++p) {
      double ip = 0.0;
      for (int r = 0; r < n; ++r) ip += signs(r, p) * root(r, p) * signs(r, c) * root(r, c);
      if (std::abs(ip) > tol) return false;
    }
    return true;
  }

  bool search(int c) {
    if (c == n) return true;
    // Row 0 stays +1; the other n-1 signs run over a bitmask.
    const int patterns = 1 << (n - 1);
    for (int mask = 0; mask < patterns; ++mask) {
      for (int r = 1; r < n; ++r) signs(r, c) = (mask >> (r - 1)) & 1 ? -1 : 1;
      if (column_ok(c) && search(c + 1)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<SignPattern> orthostochastic_bruteforce(const BistochasticMatrix& b) {
  const int n = b.n();
  if (n > 5) throw Error(ErrorKind::TooLarge, "bruteforce supports n <= 5, got " + std::to_string(n));
  OrthoSearch s{n, b.matrix().cwiseMax(0.0).cwiseSqrt(), Eigen::MatrixXi::Ones(n, n), 1e-8};
  // Column 0 is all +1, matching the fixed first row and column.
  if (!s.search(1)) return std::nullopt;
  const Eigen::MatrixXd x = s.signs.cast<double>().cwiseProduct(s.root);
  const double defect = (x.transpose() * x - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-8) return std::nullopt;
  return SignPattern{s.signs};
}

SegmentAnalysis segment_block_analysis(const Permutation& sigma, const Permutation& tau, double p) {
  if (sigma.size() != tau.size()) throw Error(ErrorKind::BadParams, "permutation sizes differ");
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::BadParams, "p must lie in (0, 1)");
  const int n = sigma.size();
  const Permutation pi = sigma.inverse() * tau;

  SegmentAnalysis out;
  out.cycle_type = pi.cycle_type();
  const bool involution = pi.is_involution();
  const double weight = involution ? p : 0.5;
  out.point = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    out.point(sigma(j), j) += weight;
    out.point(tau(j), j) += 1.0 - weight;
  }
  if (!involution) {
    out.verdict = SegmentVerdict::NotQustochastic;
    return out;
  }
  out.verdict = SegmentVerdict::Orthostochastic;
  // P_tau = P_sigma P_pi, so the point is P_sigma (p I + (1-p) P_pi); each
  // 2-cycle of pi gets a rotation block, fixed points get 1.
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
  const double c = std::sqrt(p);
  const double s = std::sqrt(1.0 - p);
  for (int a = 0; a < n; ++a) {
    const int b = pi(a);
    if (b == a) {
      y(a, a) = 1.0;
    } else if (a < b) {
      y(a, a) = c;
      y(a, b) = -s;
      y(b, a) = s;
      y(b, b) = c;
    }
  }
  Eigen::MatrixXd ps = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) ps(sigma(j), j) = 1.0;
  out.witness = ps * y;
  return out;
}

std::array<double, 16> hurwitz_radon_weights(std::uint64_t seed) {
  constexpr std::array<int, 15> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  std::array<double, 16> base{};
  double rest = 1.0;
  for (std::size_t g = 1; g < 16; ++g) {
    base[g] = primes[g - 1] / 656.0;
    rest -= base[g];
  }
  base[0] = rest;
  if (seed == 0) return base;
  Rng rng = make_rng(seed);
  const Permutation shuffle = Permutation::random(16, rng);
  std::array<double, 16> out{};
  for (int g = 0; g < 16; ++g) out[static_cast<std::size_t>(shuffle(g))] = base[static_cast<std::size_t>(g)];
  return out;
}

BistochasticMatrix hurwitz_radon_matrix(std::uint64_t seed) {
  const auto a = hurwitz_radon_weights(seed);
  Eigen::MatrixXd x(16, 16);
  for (int alpha = 0; alpha < 16; ++alpha) {
    for (int beta = 0; beta < 16; ++beta) x(alpha, beta) = a[static_cast<std::size_t>(alpha ^ beta)];
  }
  return BistochasticMatrix(std::move(x));
}

}  // namespace qstoch
