#include "qstoch/random.hpp"

#include "qstoch/error.hpp"
#include "qstoch/permutation.hpp"

namespace qstoch {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

Quaternion random_unit_quaternion(Rng& rng) { return random_unit(Field::Quaternion, rng); }

Quaternion random_unit(Field field, Rng& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    Quaternion q{g(rng), 0.0, 0.0, 0.0};
    if (field != Field::Real) q.x = g(rng);
    if (field == Field::Quaternion) {
      q.y = g(rng);
      q.z = g(rng);
    }
    if (q.norm() > 1e-6) return q.normalized();
  }
}

QMatrix random_haar(Field field, int n, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::BadParams, "random matrix size must be >= 1");
  std::normal_distribution<double> g;
  for (;;) {
    QMatrix m(n, n);
    for (auto& e : m.entries()) {
      e.w = g(rng);
      if (field != Field::Real) e.x = g(rng);
      if (field == Field::Quaternion) {
        e.y = g(rng);
        e.z = g(rng);
      }
    }
    try {
      return gram_schmidt(m);
    } catch (const Error&) {
      // Singular Gaussian draw; probability zero, but retry rather than fail.
    }
  }
}

QMatrix random_symplectic(int n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_haar(Field::Quaternion, n, rng);
}

Eigen::MatrixXd random_birkhoff(int n, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::BadParams, "random matrix size must be >= 1");
  std::uniform_int_distribution<int> count(1, n * n);
  std::exponential_distribution<double> expo(1.0);
  const int k = count(rng);
  std::vector<double> w(static_cast<std::size_t>(k));
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int t = 0; t < k; ++t) {
    const Permutation p = Permutation::random(n, rng);
    for (int j = 0; j < n; ++j) b(p(j), j) += w[static_cast<std::size_t>(t)] / total;
  }
  return b;
}

}  // namespace qstoch
