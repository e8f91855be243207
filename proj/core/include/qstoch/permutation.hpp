#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace qstoch {

/// Bijection on {0, ..., n-1}. `p(j)` is the image of j.
///
/// The associated matrix has (P_p)_{i,j} = 1 iff i = p(j), so that
/// P_p * P_q = P_{p*q} with (p*q)(j) = p(q(j)).
class Permutation {
 public:
  Permutation() = default;
  /// Throws BadParams unless `images` is a bijection.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// The cycle (c0 c1 ... cm) on n points, 0-based.
  static Permutation cycle(int n, std::initializer_list<int> points);
  static Permutation random(int n, std::mt19937_64& rng);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int j) const { return images_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  /// Sorted cycle lengths, fixed points included as 1.
  std::vector<int> cycle_type() const;
  /// True when every cycle has length at most 2 (the identity included).
  bool is_involution() const;

  std::string to_string() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

}  // namespace qstoch
