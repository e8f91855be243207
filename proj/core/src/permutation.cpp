#include "qstoch/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qstoch/error.hpp"

namespace qstoch {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorKind::BadParams, "not a permutation: " + to_string());
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::cycle(int n, std::initializer_list<int> points) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  const std::vector<int> pts(points);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    v[static_cast<std::size_t>(pts[k])] = pts[(k + 1) % pts.size()];
  }
  return Permutation(std::move(v));
}

Permutation Permutation::random(int n, std::mt19937_64& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  // Fisher-Yates with an explicit uniform draw rather than std::shuffle.
  for (int k = n - 1; k > 0; --k) {
    std::uniform_int_distribution<int> pick(0, k);
    std::swap(v[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(pick(rng))]);
  }
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int j = 0; j < size(); ++j) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(j)])] = j;
  return Permutation(std::move(inv));
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    int len = 0;
    for (int j = start; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      seen[static_cast<std::size_t>(j)] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

bool Permutation::is_involution() const {
  for (int j = 0; j < size(); ++j) {
    if ((*this)((*this)(j)) != j) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < images_.size(); ++k) os << (k ? "," : "") << images_[k];
  os << ']';
  return os.str();
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw Error(ErrorKind::DimensionMismatch, "permutation sizes differ");
  std::vector<int> v(static_cast<std::size_t>(p.size()));
  for (int j = 0; j < p.size(); ++j) v[static_cast<std::size_t>(j)] = p(q(j));
  return Permutation(std::move(v));
}

}  // namespace qstoch
