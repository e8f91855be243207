#include <cmath>
#include <limits>

#include "qstoch/detail/parallel.hpp"
#include "qstoch/error.hpp"
#include "qstoch/random.hpp"
#include "qstoch/stochastic.hpp"

namespace qstoch {

namespace {

using Mat3 = Eigen::Matrix3d;

double objective(const Mat3& x) { return (x.cwiseProduct(x).array() - 1.0 / 3.0).square().sum(); }

// Skew matrix Omega with <X^T G, A> = <Omega, A> for every skew A.
Mat3 riemannian_gradient(const Mat3& x) {
  const Mat3 g = 4.0 * (x.cwiseProduct(x).array() - 1.0 / 3.0).matrix().cwiseProduct(x);
  const Mat3 m = x.transpose() * g;
  return 0.5 * (m - m.transpose());
}

// Rodrigues formula for exp of a 3x3 skew matrix.
Mat3 exp_skew(const Mat3& a) {
  const Eigen::Vector3d w(a(2, 1), a(0, 2), a(1, 0));
  const double theta = w.norm();
  if (theta < 1e-12) return Mat3::Identity() + a + 0.5 * a * a;
  return Mat3::Identity() + std::sin(theta) / theta * a + (1.0 - std::cos(theta)) / (theta * theta) * a * a;
}

struct Descent {
  Mat3 x;
  double f = 0.0;
  long iterations = 0;
};

Descent descend(Mat3 x) {
  constexpr long kMaxIterations = 200000;
  double f = objective(x);
  double step = 1.0;
  long it = 0;
  for (; it < kMaxIterations; ++it) {
    const Mat3 omega = riemannian_gradient(x);
    const double g2 = omega.squaredNorm();
    // ||Omega||_F^2 = g2, and the directional derivative along X Omega is g2.
    if (std::sqrt(g2) < 1e-10) break;
    step = std::min(step * 2.0, 10.0);
    for (;;) {
      const Mat3 trial = x * exp_skew(-step * omega);
      const double ft = objective(trial);
      if (ft <= f - 1e-4 * step * g2 || step < 1e-14) {
        x = trial;
        f = ft;
        break;
      }
      step *= 0.5;
    }
    if (step < 1e-14) break;
  }
  return {x, f, it};
}

}  // namespace

DistanceResult distance_j3(int restarts, std::uint64_t seed, int threads) {
  if (restarts < 1) throw Error(ErrorKind::BadParams, "restarts must be >= 1");
  std::vector<Descent> runs(static_cast<std::size_t>(restarts));
  detail::parallel_for(runs.size(), threads, [&](std::size_t r) {
    Rng rng = make_rng(seed, r);
    const QMatrix start = random_haar(Field::Real, 3, rng);
    Mat3 x = start.real_part();
    if (x.determinant() < 0) x.col(0) *= -1.0;
    runs[r] = descend(x);
  });

  std::size_t best = 0;
  long total = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    total += runs[r].iterations;
    if (runs[r].f < runs[best].f) best = r;
  }
  DistanceResult out;
  out.distance = std::sqrt(runs[best].f);
  out.rotation = runs[best].x;
  out.minimizer = runs[best].x.cwiseProduct(runs[best].x);
  out.iterations = total;
  out.restarts = restarts;
  return out;
}

}  // namespace qstoch
