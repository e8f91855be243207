#include "qstoch/mub.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qstoch/detail/parallel.hpp"
#include "qstoch/error.hpp"
#include "qstoch/random.hpp"

namespace qstoch {

namespace {

double raw_defect(const QMatrix& w, const QMatrix& b) {
  const QMatrix g = adjoint(w) * b;
  const double target = 1.0 / w.rows();
  double worst = 0.0;
  for (const auto& e : g.entries()) worst = std::max(worst, std::abs(e.norm2() - target));
  return worst;
}

void require_cube_root(const Quaternion& q, const char* name) {
  if (std::abs(q.w + 0.5) > 1e-9 || std::abs(q.z) > 1e-9 || std::abs(q.x * q.x + q.y * q.y - 0.75) > 1e-9) {
    throw Error(ErrorKind::BadParams, std::string(name) + " must be -1/2 + s i + t j with s^2 + t^2 = 3/4");
  }
}

}  // namespace

double unbiasedness_defect(const QMatrix& a, const QMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "bases must be square of the same size");
  }
  if (!(unitarity_defect(a) <= 1e-8) || !(unitarity_defect(b) <= 1e-8)) {
    throw Error(ErrorKind::NotSymplectic, "basis matrix is not symplectic within 1e-8");
  }
  return raw_defect(a, b);
}

bool is_unbiased(const QMatrix& a, const QMatrix& b, double tol) { return unbiasedness_defect(a, b) <= tol; }

double mub_defect(const std::vector<QMatrix>& bases) {
  double worst = 0.0;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) worst = std::max(worst, unbiasedness_defect(bases[i], bases[j]));
  }
  return worst;
}

MubSet make_mub_set(std::vector<QMatrix> bases, double tol) {
  if (bases.empty()) throw Error(ErrorKind::BadParams, "a MUB needs at least one basis");
  const int n = bases.front().rows();
  for (const auto& b : bases) {
    if (b.rows() != n || b.cols() != n) throw Error(ErrorKind::DimensionMismatch, "bases differ in size");
    if (!is_symplectic(b, tol)) throw Error(ErrorKind::NotSymplectic, "basis matrix is not symplectic");
  }
  if (static_cast<int>(bases.size()) > 2 * n + 1) {
    throw Error(ErrorKind::BadParams, std::to_string(bases.size()) + " bases exceed the bound 2n+1 = " +
                                          std::to_string(2 * n + 1));
  }
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      if (!is_unbiased(bases[i], bases[j], tol)) {
        throw Error(ErrorKind::BadParams,
                    "bases " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are not unbiased");
      }
    }
  }
  return MubSet{n, std::move(bases)};
}

MubSet complete_mub_h2() {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<QMatrix> bases{QMatrix::identity(2)};
  for (const Quaternion q : {Quaternion{1.0}, Quaternion::i(), Quaternion::j(), Quaternion::k()}) {
    bases.push_back(QMatrix{{1, 1}, {q, -q}} * r);
  }
  return make_mub_set(std::move(bases));
}

MubSet one_param_h3(double s, double t) {
  if (std::abs(s * s + t * t - 0.75) > 1e-9) throw Error(ErrorKind::BadParams, "(s, t) must lie on s^2 + t^2 = 3/4");
  auto circulant = [](const Quaternion& z) {
    return QMatrix{{z, 1, 1}, {1, z, 1}, {1, 1, z}} * (1.0 / std::sqrt(3.0));
  };
  return make_mub_set({QMatrix::identity(3), fourier(3), circulant({-0.5, s, t, 0.0}), circulant({-0.5, -s, -t, 0.0})},
                      1e-9);
}

MubSet three_param_h3(const Quaternion& a, const Quaternion& b, const Quaternion& c) {
  require_cube_root(a, "a");
  require_cube_root(b, "b");
  require_cube_root(c, "c");
  const Quaternion a2 = a * a;
  const Quaternion c2 = c * c;
  const Quaternion bc = b.conj();
  const double r = 1.0 / std::sqrt(3.0);
  const QMatrix ma = QMatrix{{1, 1, 1}, {1, a, a2}, {b, b * a2, b * a}} * r;
  const QMatrix mb = QMatrix{{1, 1, 1}, {1, c, c2}, {bc, bc * c2, bc * c}} * r;
  return make_mub_set({QMatrix::identity(3), fourier(3), ma, mb}, 1e-9);
}

double operator_frame_orthogonality(const std::vector<QMatrix>& bases) {
  if (bases.empty()) return 0.0;
  const int n = bases.front().rows();
  // Projector-minus-identity operators for every basis vector.
  std::vector<std::vector<QMatrix>> frames;
  for (const auto& b : bases) {
    std::vector<QMatrix> ops;
    for (int c = 0; c < b.cols(); ++c) {
      const QMatrix e = b.column(c);
      ops.push_back(e * adjoint(e) - QMatrix::identity(n) * (1.0 / n));
    }
    frames.push_back(std::move(ops));
  }
  double worst = 0.0;
  for (std::size_t x = 0; x < frames.size(); ++x) {
    for (std::size_t y = x + 1; y < frames.size(); ++y) {
      for (const auto& e : frames[x]) {
        for (const auto& f : frames[y]) {
          const QMatrix prod = e * f;
          double tr = 0.0;
          for (int k = 0; k < n; ++k) tr += 2.0 * prod(k, k).w;
          worst = std::max(worst, std::abs(tr));
        }
      }
    }
  }
  return worst;
}

double violation_against(const QMatrix& w, const std::vector<QMatrix>& bases) {
  double worst = 0.0;
  for (const auto& b : bases) worst = std::max(worst, raw_defect(w, b));
  return worst;
}

namespace {

// Loss sum (|G_ij|^2 - 1/n)^2 over G = W* B, and its Euclidean gradient
// 4 sum_B B (r o G)^* with r_ij = |G_ij|^2 - 1/n.
double loss_and_gradient(const QMatrix& w, const std::vector<QMatrix>& bases, QMatrix* grad) {
  const int n = w.rows();
  const double target = 1.0 / n;
  double loss = 0.0;
  if (grad) *grad = QMatrix(n, n);
  const QMatrix wa = adjoint(w);
  for (const auto& b : bases) {
    QMatrix g = wa * b;
    for (auto& e : g.entries()) {
      const double r = e.norm2() - target;
      loss += r * r;
      e *= r;
    }
    if (grad) *grad += b * adjoint(g) * 4.0;
  }
  return loss;
}

struct DescentOutcome {
  QMatrix w;
  double loss = 0.0;
};

DescentOutcome descend(const std::vector<QMatrix>& bases, QMatrix w, int max_iterations) {
  QMatrix egrad;
  double loss = loss_and_gradient(w, bases, &egrad);
  double step = 0.1;
  for (int it = 0; it < max_iterations && loss > 1e-28; ++it) {
    const QMatrix m = adjoint(w) * egrad;
    const QMatrix omega = (m - adjoint(m)) * 0.5;
    const double g2 = frobenius_norm(omega) * frobenius_norm(omega);
    if (g2 < 1e-30) break;
    step = std::min(step * 2.0, 10.0);
    bool moved = false;
    while (step > 1e-12) {
      QMatrix trial;
      try {
        trial = gram_schmidt(w - w * omega * step);
      } catch (const Error&) {
        step *= 0.5;
        continue;
      }
      const double lt = loss_and_gradient(trial, bases, nullptr);
      if (lt <= loss - 1e-4 * step * g2) {
        w = std::move(trial);
        loss = loss_and_gradient(w, bases, &egrad);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return {std::move(w), loss};
}

}  // namespace

QMatrix polish_unbiased(const std::vector<QMatrix>& bases, QMatrix start, int max_iterations) {
  return descend(bases, std::move(start), max_iterations).w;
}

MaximalityResult direct_maximality_search(const std::vector<QMatrix>& bases, int restarts, std::uint64_t seed,
                                          int threads) {
  if (bases.empty()) throw Error(ErrorKind::BadParams, "need at least one basis");
  if (restarts < 1) throw Error(ErrorKind::BadParams, "restarts must be >= 1");
  const int n = bases.front().rows();
  std::vector<QMatrix> found(static_cast<std::size_t>(restarts));
  std::vector<double> violation(static_cast<std::size_t>(restarts));
  detail::parallel_for(found.size(), threads, [&](std::size_t r) {
    Rng rng = make_rng(seed, r);
    const QMatrix start = random_haar(Field::Quaternion, n, rng);
    found[r] = descend(bases, start, 3000).w;
    violation[r] = violation_against(found[r], bases);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < found.size(); ++r) {
    if (violation[r] < violation[best]) best = r;
  }
  return {violation[best], found[best], restarts};
}

}  // namespace qstoch
