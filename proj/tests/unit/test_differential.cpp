#include <doctest.h>

#include "oracles.hpp"
#include "qstoch/differential.hpp"
#include "qstoch/error.hpp"
#include "qstoch/hadamard.hpp"
#include "qstoch/random.hpp"

using namespace qstoch;

namespace {

Field field_for(MapKind k) {
  return k == MapKind::R ? Field::Real : k == MapKind::C ? Field::Complex : Field::Quaternion;
}

int units_for(MapKind k) { return k == MapKind::R ? 0 : k == MapKind::C ? 1 : 3; }

}  // namespace

TEST_CASE("dimensions") {
  CHECK(domain_dimension(MapKind::R, 4) == 6);
  CHECK(domain_dimension(MapKind::C, 4) == 16);
  CHECK(domain_dimension(MapKind::H, 4) == 36);
  CHECK(codomain_dimension(4) == 9);
  const TangentBases t = tangent_bases(4);
  CHECK(t.a.size() == 6);
  CHECK(t.c.size() == 10);
  CHECK(t.b.size() == 9);
  for (const auto& b : t.b) {
    CHECK(b.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    CHECK(b.colwise().sum().cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(parse_map_kind("c") == MapKind::C);
  CHECK_THROWS_AS(parse_map_kind("q"), Error);
}

TEST_CASE("b_coordinates reconstruct the matrix") {
  const TangentBases t = tangent_bases(3);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  Eigen::VectorXd coeff(4);
  coeff << 0.5, -1.0, 2.0, 0.25;
  for (int k = 0; k < 4; ++k) m += coeff(k) * t.b[static_cast<std::size_t>(k)];
  CHECK((b_coordinates(m) - coeff).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("generators agree with the oracle order") {
  for (MapKind k : {MapKind::R, MapKind::C, MapKind::H}) {
    const auto gens = oracle::generators(3, units_for(k));
    REQUIRE(static_cast<int>(gens.size()) == domain_dimension(k, 3));
    for (int c = 0; c < domain_dimension(k, 3); ++c) CHECK(tangent_generator(k, 3, c) == gens[static_cast<std::size_t>(c)]);
  }
}

TEST_CASE("Jacobian matches central finite differences") {
  Rng rng = make_rng(1);
  for (MapKind k : {MapKind::R, MapKind::C, MapKind::H}) {
    for (int n = 2; n <= 4; ++n) {
      for (int t = 0; t < 3; ++t) {
        const QMatrix p = random_haar(field_for(k), n, rng);
        const Eigen::MatrixXd j = jacobian(k, p).entries;
        const Eigen::MatrixXd fd = oracle::fd_jacobian(p, units_for(k));
        CHECK((j - fd).norm() / j.norm() < 1e-6);
      }
    }
  }
}

TEST_CASE("rank agrees with Gaussian elimination") {
  Rng rng = make_rng(2);
  for (MapKind k : {MapKind::R, MapKind::C, MapKind::H}) {
    for (int n = 2; n <= 5; ++n) {
      const JacobianMatrix j = jacobian(k, random_haar(field_for(k), n, rng));
      CHECK(numerical_rank(j) == oracle::gauss_rank(j.entries));
    }
  }
  Eigen::MatrixXd low = Eigen::MatrixXd::Random(6, 3) * Eigen::MatrixXd::Random(3, 7);
  CHECK(numerical_rank(low) == 3);
  CHECK(oracle::gauss_rank(low) == 3);
  CHECK(numerical_rank(Eigen::MatrixXd::Zero(3, 3)) == 0);
}

TEST_CASE("rank-9 witness at the special4 point") {
  const QMatrix h = special4({Quaternion::i(), Quaternion(1.0, 0.0, 1.0, 0.0) / std::sqrt(2.0)});
  const QMatrix p = h * 0.5;
  const JacobianMatrix j = jacobian(MapKind::H, p);
  CHECK(j.entries.rows() == 9);
  CHECK(j.entries.cols() == 36);
  const RankReport r = rank_report(j.entries);
  CHECK(r.rank == 9);
  CHECK(oracle::gauss_rank(j.entries) == 9);
  // Frozen from an independent computation.
  CHECK(r.singular_values(0) == doctest::Approx(0.6377).epsilon(1e-3));
  CHECK(r.singular_values(8) == doctest::Approx(0.1156).epsilon(1e-3));
  CHECK(r.gap > 1e3);
}

TEST_CASE("jacobian preconditions") {
  QMatrix bad = QMatrix::identity(3);
  bad(0, 0) = 1.1;
  try {
    jacobian(MapKind::H, bad);
    FAIL("expected NotInGroup");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInGroup);
  }
  Rng rng = make_rng(3);
  try {
    jacobian(MapKind::R, random_haar(Field::Complex, 3, rng));
    FAIL("expected WrongScalarField");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongScalarField);
  }
}

TEST_CASE("complex and quaternion ranks coincide on U(n)") {
  Rng rng = make_rng(4);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 4;
    const QMatrix u = random_haar(Field::Complex, n, rng);
    CHECK(numerical_rank(jacobian(MapKind::C, u)) == numerical_rank(jacobian(MapKind::H, u)));
  }
}

TEST_CASE("classification, n = 2") {
  const Quaternion one(1.0);
  for (double s1 : {1.0, -1.0})
    for (double s2 : {1.0, -1.0}) {
      const QMatrix d{{one * s1, 0.0}, {0.0, one * s2}};
      const QMatrix a{{0.0, one * s1}, {one * s2, 0.0}};
      for (MapKind k : {MapKind::R, MapKind::C, MapKind::H}) {
        for (const QMatrix& m : {d, a}) {
          const Classification c = classify_point(k, m);
          CHECK(c.verdict != PointVerdict::Regular);
          CHECK(c.cross_check == CrossCheck::Agrees);
        }
      }
    }
  Rng rng = make_rng(5);
  for (int t = 0; t < 50; ++t) {
    const Classification c = classify_point(MapKind::H, random_haar(Field::Quaternion, 2, rng));
    CHECK(c.verdict == PointVerdict::Regular);
    CHECK(c.cross_check == CrossCheck::Agrees);
  }
}

TEST_CASE("classification, n = 3") {
  Rng rng = make_rng(6);
  for (int t = 0; t < 50; ++t) {
    const Classification c = classify_point(MapKind::R, random_haar(Field::Real, 3, rng));
    CHECK(c.verdict == PointVerdict::Regular);
    CHECK(c.cross_check == CrossCheck::Agrees);
  }
  // A real matrix seen through phi_c: critical, and the normal-form check agrees.
  const QMatrix x = random_haar(Field::Real, 3, rng);
  const Classification cc = classify_point(MapKind::C, x);
  CHECK(cc.verdict == PointVerdict::Critical);
  CHECK(cc.cross_check == CrossCheck::Agrees);
  // Generic complex unitary: regular.
  const Classification gc = classify_point(MapKind::C, random_haar(Field::Complex, 3, rng));
  CHECK(gc.verdict == PointVerdict::Regular);
  CHECK(gc.cross_check == CrossCheck::Agrees);
  // Real up to monomial factors is still critical.
  const QMatrix dl = diag({Quaternion::exp_i(0.4), Quaternion::j(), Quaternion::exp_i(-1.0)});
  const QMatrix dr = diag({Quaternion::k(), Quaternion::exp_i(2.0), 1.0});
  const Classification hc = classify_point(MapKind::H, dl * x * dr);
  CHECK(hc.verdict == PointVerdict::Critical);
  CHECK(hc.cross_check == CrossCheck::Agrees);
  CHECK(equivalent_to_real(dl * x * dr));
}

TEST_CASE("classification, n = 4 zero-diagonal orthogonal") {
  const QMatrix l = QMatrix::from_real(oracle::left_matrix(Quaternion(0.0, 0.48, 0.6, 0.64)));
  const Classification c = classify_point(MapKind::R, l);
  CHECK(c.verdict == PointVerdict::Singular);
  CHECK(c.cross_check == CrossCheck::Agrees);
}

TEST_CASE("split matrices are degenerate for every map") {
  Rng rng = make_rng(7);
  const QMatrix s = direct_sum(random_haar(Field::Real, 2, rng), random_haar(Field::Real, 2, rng));
  for (MapKind k : {MapKind::R, MapKind::C, MapKind::H}) {
    const Classification c = classify_point(k, s);
    CHECK(c.splits);
    CHECK(c.verdict != PointVerdict::Regular);
    CHECK(c.cross_check != CrossCheck::Disagrees);
  }
}
