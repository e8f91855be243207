#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "qstoch/qmatrix.hpp"

namespace qstoch {

using Rng = std::mt19937_64;

/// Generator for stream `stream` of a seeded computation. Restarts and grid
/// workers each take their own stream, so results do not depend on how work
/// is scheduled.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

Quaternion random_unit_quaternion(Rng& rng);
/// Unit quaternion in the span of the given field (1 for Real is +-1).
Quaternion random_unit(Field field, Rng& rng);

/// Haar-distributed O(n), U(n) or Sp(n): Gaussian entries in the field,
/// orthonormalized by gram_schmidt.
QMatrix random_haar(Field field, int n, Rng& rng);

/// Convex combination of k random permutation matrices, k uniform in
/// [1, n^2], with Dirichlet(1, ..., 1) weights.
Eigen::MatrixXd random_birkhoff(int n, Rng& rng);

}  // namespace qstoch
