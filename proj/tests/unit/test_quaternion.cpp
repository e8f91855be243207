#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qstoch/error.hpp"
#include "qstoch/quaternion.hpp"
#include "qstoch/random.hpp"

using namespace qstoch;

namespace {

Quaternion gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng), g(rng), g(rng)};
}

double diff(const Quaternion& a, const Quaternion& b) { return distance_inf(a, b); }

}  // namespace

TEST_CASE("unit table") {
  const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  CHECK(i * i == Quaternion(-1.0));
  CHECK(j * j == Quaternion(-1.0));
  CHECK(k * k == Quaternion(-1.0));
  CHECK(i * j == k);
  CHECK(j * i == -k);
  CHECK(j * k == i);
  CHECK(k * i == j);
  CHECK(i * j * k == Quaternion(-1.0));
}

TEST_CASE("Hamilton product matches the left-regular matrix") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion p = gaussian(rng), q = gaussian(rng), r = gaussian(rng);
    CHECK(diff(p * q, oracle::product(p, q)) < 1e-12);
    CHECK(diff((p * q) * r, p * (q * r)) < 1e-11);
    CHECK(std::abs((p * q).norm() - p.norm() * q.norm()) < 1e-11);
    CHECK(diff((p * q).conj(), q.conj() * p.conj()) < 1e-12);
  }
}

TEST_CASE("inverse and conjugation") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    const Quaternion q = gaussian(rng);
    CHECK(diff(q * q.inverse(), Quaternion(1.0)) < 1e-12);
    const Quaternion x = gaussian(rng).normalized();
    const Quaternion c = conjugate_by(q, x);
    CHECK(std::abs(c.w - q.w) < 1e-12);
    CHECK(std::abs(c.norm() - q.norm()) < 1e-12);
  }
  CHECK_THROWS_AS(conjugate_by(Quaternion::i(), Quaternion(2.0)), Error);
}

TEST_CASE("pure dot and cross") {
  const auto [d, c] = pure_dot_cross(Quaternion::i(), Quaternion::j());
  CHECK(d == 0.0);
  CHECK(c == Quaternion::k());
  std::mt19937_64 rng(5);
  for (int n = 0; n < 100; ++n) {
    const Quaternion p = gaussian(rng).pure(), q = gaussian(rng).pure();
    const auto [dd, cc] = pure_dot_cross(p, q);
    CHECK(diff(p * q, Quaternion(-dd) + cc) < 1e-12);
  }
  try {
    pure_dot_cross(Quaternion(1.0), Quaternion::i());
    FAIL("expected NotPure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPure);
  }
}

TEST_CASE("integer powers") {
  const Quaternion w = {-0.5, std::sqrt(3.0) / 2.0, 0.0, 0.0};
  CHECK(diff(pow(w, 3), Quaternion(1.0)) < 1e-12);
  CHECK(diff(pow(w, -1), w.conj()) < 1e-12);
  CHECK(pow(Quaternion::j(), 0) == Quaternion(1.0));
  CHECK(diff(pow(Quaternion::k(), 2), Quaternion(-1.0)) < 1e-15);
}

TEST_CASE("literal round trip is exact") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 100; ++n) {
    const Quaternion q = gaussian(rng);
    CHECK(parse_literal(format_literal(q)) == q);
  }
  CHECK(parse_literal("1,2,3,4") == Quaternion(1, 2, 3, 4));
  CHECK(parse_literal(" ( 0.5 , -1 , 0 , 2e-3 ) ") == Quaternion(0.5, -1, 0, 2e-3));
  CHECK_THROWS_AS(parse_literal("(1,2,3)"), Error);
  CHECK_THROWS_AS(parse_literal("(a,b,c,d)"), Error);
}

TEST_CASE("random unit quaternions are unit and seeded") {
  Rng a = make_rng(42), b = make_rng(42), c = make_rng(42, 1);
  const Quaternion qa = random_unit_quaternion(a), qb = random_unit_quaternion(b), qc = random_unit_quaternion(c);
  CHECK(qa == qb);
  CHECK(!(qa == qc));
  CHECK(std::abs(qa.norm() - 1.0) < 1e-14);
}
