// Acceptance suite: one PASS/FAIL line per criterion. Tolerances, sample
// counts and time limits are fixed here and are not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "qstoch/differential.hpp"
#include "qstoch/error.hpp"
#include "qstoch/hadamard.hpp"
#include "qstoch/mub.hpp"
#include "qstoch/random.hpp"
#include "qstoch/stochastic.hpp"

using namespace qstoch;

namespace {

constexpr double kPi = std::numbers::pi;
const double kR = std::sqrt(3.0) / 2.0;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 = no limit
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int hw_threads() { return std::max(1U, std::thread::hardware_concurrency()); }

Field field_for(MapKind k) {
  return k == MapKind::R ? Field::Real : k == MapKind::C ? Field::Complex : Field::Quaternion;
}
int units_for(MapKind k) { return k == MapKind::R ? 0 : k == MapKind::C ? 1 : 3; }

// 1 -------------------------------------------------------------------------
Outcome distance_criterion() {
  const DistanceResult r = distance_j3(100, 1, hw_threads());
  const double target = std::sqrt(2.0) / 3.0;
  Eigen::Matrix3d expected = Eigen::Matrix3d::Constant(4.0 / 9.0);
  expected.diagonal().setConstant(1.0 / 9.0);
  double best = 1e9;
  std::vector<int> rp{0, 1, 2};
  do {
    std::vector<int> cp{0, 1, 2};
    do {
      double d = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(r.minimizer(rp[i], cp[j]) - expected(i, j)));
      best = std::min(best, d);
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  const double err = std::abs(r.distance - target);
  return {err <= 1e-6 && best <= 1e-5,
          "distance=" + fmt("%.10f", r.distance) + " |d-sqrt2/3|=" + fmt("%.2e", err) +
              " minimizer_err=" + fmt("%.2e", best)};
}

// 2 -------------------------------------------------------------------------
Outcome rank_witness_criterion() {
  const QMatrix p = special4({Quaternion::i(), Quaternion(1.0, 0.0, 1.0, 0.0) / std::sqrt(2.0)}) * 0.5;
  const RankReport r = rank_report(jacobian(MapKind::H, p), 1e-10);
  return {r.rank == 9 && r.gap > 1e3, "rank=" + std::to_string(r.rank) + " gap=" + fmt("%.3g", r.gap)};
}

// 3 -------------------------------------------------------------------------
Outcome ortho3_oracle_criterion() {
  Rng rng = make_rng(3);
  int disagree = 0, positives = 0;
  for (int t = 0; t < 10000; ++t) {
    const BistochasticMatrix b = t < 5000 ? phi(random_haar(Field::Real, 3, rng)) : BistochasticMatrix(random_birkhoff(3, rng));
    const bool fast = ortho3_test(b);
    const bool slow = orthostochastic_bruteforce(b).has_value();
    positives += slow ? 1 : 0;
    disagree += fast != slow ? 1 : 0;
  }
  return {disagree == 0, "samples=10000 disagreements=" + std::to_string(disagree) +
                             " orthostochastic=" + std::to_string(positives)};
}

// 4 -------------------------------------------------------------------------
Outcome hadamard_families_criterion() {
  int bad = 0, total = 0;
  for (int u = 0; u < 20; ++u)
    for (int v = 0; v < 20; ++v) {
      const Quaternion a = Quaternion::exp_i(2 * kPi * u / 20);
      const Quaternion b = {std::cos(2 * kPi * v / 20), 0.0, std::sin(2 * kPi * v / 20), 0.0};
      bad += is_hadamard(special4({a, b}), 1e-9) ? 0 : 1;
      ++total;
    }
  for (int u = 0; u < 12; ++u)
    for (int v = 0; v < 12; ++v)
      for (int w = 0; w < 12; ++w) {
        // Polar angle offset by half a step keeps away from the pole a = -1.
        const double th = kPi * (u + 0.5) / 12, ph = 2 * kPi * v / 12, xi = 2 * kPi * w / 12;
        const Quaternion a = {std::cos(th), std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), 0.0};
        const Quaternion x = {0.0, std::cos(xi), std::sin(xi), 0.0};
        bad += is_hadamard(generic4({a, x}), 1e-9) ? 0 : 1;
        ++total;
      }
  return {bad == 0, "matrices=" + std::to_string(total) + " failures=" + std::to_string(bad)};
}

// 5 -------------------------------------------------------------------------
Outcome determinant_identities_criterion() {
  Rng rng = make_rng(5);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  double e1 = 0.0, e2 = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const Quaternion a = random_unit_quaternion(rng);
    const double th = ang(rng), s = kR * std::cos(th), tt = kR * std::sin(th);
    const UnbiasedSystem sys = unbiased_system(a, s, tt);
    const double p = p_value(a, s, tt);
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) sum += sys.d[static_cast<std::size_t>(k)] * sys.d[static_cast<std::size_t>(k)];
    e1 = std::max(e1, std::abs(sys.d[4] - 3 * p * p));
    e2 = std::max(e2, std::abs(8 * (sum - sys.d[4] * sys.d[4]) - 9 * sys.d[4] * phi_value(a, s, tt)));
  }
  return {e1 <= 1e-9 && e2 <= 1e-8, "max|d5-3p^2|=" + fmt("%.2e", e1) + " max|second|=" + fmt("%.2e", e2)};
}

// 6 -------------------------------------------------------------------------
Outcome six_families_criterion() {
  Rng rng = make_rng(6);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  double worst = 0.0;
  int bad = 0, generic = 0, attempts = 0;
  auto record = [&](const QMatrix& m) {
    const double d = f3_unbiasedness_defect(m);
    worst = std::max(worst, d);
    if (!is_hadamard(m, 1e-9) || d > 1e-9) ++bad;
  };
  while (generic < 50 && attempts < 10000) {
    ++attempts;
    const Quaternion a = random_unit_quaternion(rng);
    try {
      const auto m = generic3(a, (attempts & 1) ? Branch::Plus : Branch::Minus);
      if (!m) continue;
      record(*m);
      ++generic;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateP) throw;
    }
  }
  for (Family3 f : {Family3::S1, Family3::S2, Family3::S3, Family3::S4, Family3::S5}) {
    for (int t = 0; t < 20; ++t) {
      Special3Args args;
      args.family = f;
      args.theta = ang(rng);
      args.psi = ang(rng);
      args.selector = t % 2;
      args.a1 = std::uniform_real_distribution<double>(-0.49, 0.99)(rng);
      for (auto& s : args.signs) s = (rng() & 1U) ? 1 : -1;
      if (f == Family3::S5) args.signs[2] = args.signs[0] * args.signs[1];
      record(special3(args));
    }
  }
  return {bad == 0 && generic == 50, "generic=" + std::to_string(generic) + "/50 special=100 failures=" +
                                         std::to_string(bad) + " max_defect=" + fmt("%.2e", worst)};
}

// 7 -------------------------------------------------------------------------
Outcome complete_h2_criterion() {
  const MubSet s = complete_mub_h2();
  double worst = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < s.bases.size(); ++i)
    for (std::size_t j = i + 1; j < s.bases.size(); ++j, ++pairs)
      worst = std::max(worst, unbiasedness_defect(s.bases[i], s.bases[j]));
  const double frame = operator_frame_orthogonality(s);
  return {s.bases.size() == 5 && pairs == 10 && worst <= 1e-12 && frame <= 1e-12,
          "bases=" + std::to_string(s.bases.size()) + " pairs=" + std::to_string(pairs) +
              " defect=" + fmt("%.2e", worst) + " frame=" + fmt("%.2e", frame)};
}

// 8 -------------------------------------------------------------------------
Outcome h3_families_criterion() {
  double worst = 0.0;
  int sets = 0;
  for (int k = 0; k < 16; ++k) {
    const double th = 2 * kPi * k / 16;
    const MubSet s = make_mub_set(one_param_h3(kR * std::cos(th), kR * std::sin(th)).bases, 1e-10);
    worst = std::max(worst, mub_defect(s.bases));
    sets += s.bases.size() == 4 ? 1 : 0;
  }
  // Three cube roots of unity of the form -1/2 + s i + t j.
  const Quaternion roots[3] = {zeta(kR, 0.0), zeta(-kR / 2, 0.75), zeta(-kR / 2, -0.75)};
  for (const auto& a : roots)
    for (const auto& b : roots)
      for (const auto& c : roots) {
        const MubSet s = make_mub_set(three_param_h3(a, b, c).bases, 1e-10);
        worst = std::max(worst, mub_defect(s.bases));
        sets += s.bases.size() == 4 ? 1 : 0;
      }
  return {sets == 43 && worst <= 1e-10, "sets=" + std::to_string(sets) + "/43 defect=" + fmt("%.2e", worst)};
}

// 9 -------------------------------------------------------------------------
Outcome maximality_criterion() {
  const MubSet s = one_param_h3(kR, 0.0);
  ExtendOptions opts;
  opts.grid = 64;
  opts.conj_grid = 32;
  opts.threads = hw_threads();
  const ExtendResult e = extend_search(s.bases, opts);
  const MaximalityResult m = direct_maximality_search(s.bases, 50, 0, hw_threads());
  return {!e.basis.has_value() && m.violation >= 1e-3,
          std::string("extend=") + (e.basis ? "found" : "none") + " candidates=" + std::to_string(e.candidates) +
              " grid_best=" + fmt("%.3g", e.best_violation) + " descent_violation=" + fmt("%.4g", m.violation)};
}

// 10 ------------------------------------------------------------------------
Outcome hurwitz_radon_criterion() {
  const BistochasticMatrix x = hurwitz_radon_matrix();
  const auto a = hurwitz_radon_weights();
  bool structure = true;
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) structure = structure && x(r, c) == a[static_cast<std::size_t>(r ^ c)];
  const bool bistochastic = BistochasticMatrix::check(x.matrix(), 1e-12);
  const SigmaReport rep = sigma_report(x, hw_threads());
  return {structure && bistochastic && rep.satisfied && rep.pairs_checked == 240,
          std::string("structure=") + (structure ? "ok" : "bad") + " bistochastic=" + (bistochastic ? "ok" : "bad") +
              " sigma=" + (rep.satisfied ? "satisfied" : "violated") + " pairs=" + std::to_string(rep.pairs_checked)};
}

// 11 ------------------------------------------------------------------------
bool diagonal_or_anti(const QMatrix& m) {
  return (m(0, 1).norm() < 1e-12 && m(1, 0).norm() < 1e-12) || (m(0, 0).norm() < 1e-12 && m(1, 1).norm() < 1e-12);
}

Outcome classification_criterion() {
  Rng rng = make_rng(11);
  int bad_a = 0, bad_b = 0, bad_c = 0, splits_tested = 0;

  // (a) generic real 3x3 points are regular; split matrices are degenerate.
  for (int t = 0; t < 1000; ++t) {
    if (classify_point(MapKind::R, random_haar(Field::Real, 3, rng)).verdict != PointVerdict::Regular) ++bad_a;
  }
  for (int n = 2; n <= 4; ++n) {
    for (Field f : {Field::Real, Field::Complex, Field::Quaternion}) {
      for (int t = 0; t < 10; ++t) {
        const int k = 1 + t % (n - 1);
        const QMatrix blocks = direct_sum(random_haar(f, k, rng), random_haar(f, n - k, rng));
        const QMatrix s = permutation_matrix(Permutation::random(n, rng)) * blocks *
                          permutation_matrix(Permutation::random(n, rng));
        for (MapKind kind : {MapKind::R, MapKind::C, MapKind::H}) {
          if (static_cast<int>(field_for(kind)) < static_cast<int>(f)) continue;
          ++splits_tested;
          const Classification c = classify_point(kind, s);
          if (c.verdict == PointVerdict::Regular || !c.splits) ++bad_a;
        }
      }
    }
  }

  // (b) n = 2: degenerate exactly on diagonal and anti-diagonal matrices.
  std::vector<QMatrix> pts;
  for (double s1 : {1.0, -1.0})
    for (double s2 : {1.0, -1.0}) {
      pts.push_back(QMatrix{{s1, 0.0}, {0.0, s2}});
      pts.push_back(QMatrix{{0.0, s1}, {s2, 0.0}});
    }
  for (int t = 0; t < 1000; ++t) pts.push_back(random_haar(field_for(static_cast<MapKind>(t % 3)), 2, rng));
  for (std::size_t t = 0; t < pts.size(); ++t) {
    const MapKind kind = t < 8 ? MapKind::R : static_cast<MapKind>((t - 8) % 3);
    for (MapKind k : {kind, MapKind::H}) {
      const Classification c = classify_point(k, pts[t]);
      if ((c.verdict != PointVerdict::Regular) != diagonal_or_anti(pts[t])) ++bad_b;
      if (c.cross_check != CrossCheck::Agrees) ++bad_b;
    }
  }

  // (c) n = 4 orthogonal matrices with a permutation pattern of zeros.
  std::vector<Eigen::Matrix4d> witnesses;
  for (int t = 0; t < 50; ++t) {
    const Quaternion q = random_unit_quaternion(rng).pure().normalized();
    witnesses.push_back(oracle::left_matrix(q));
    witnesses.push_back(oracle::right_matrix(q));
  }
  Eigen::Matrix4d base;
  base << 0, 1, 1, 1, 1, 0, 1, -1, 1, -1, 0, 1, 1, 1, -1, 0;
  base /= std::sqrt(3.0);
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXd p = QMatrix(permutation_matrix(Permutation::random(4, rng))).real_part();
    Eigen::Vector4d d;
    for (int k = 0; k < 4; ++k) d(k) = (rng() & 1U) ? 1.0 : -1.0;
    witnesses.push_back(d.asDiagonal() * p * base * p.transpose() * d.asDiagonal());
  }
  double worst_minor = 0.0;
  for (const auto& w : witnesses) {
    const Classification c = classify_point(MapKind::R, QMatrix::from_real(w));
    if (c.verdict != PointVerdict::Singular || c.cross_check != CrossCheck::Agrees) ++bad_c;
    for (int drop = 0; drop < 4; ++drop) {
      Eigen::Matrix3d minor;
      for (int i = 0, ri = 0; i < 4; ++i) {
        if (i == drop) continue;
        for (int j = 0, rj = 0; j < 4; ++j) {
          if (j == drop) continue;
          minor(ri, rj++) = w(i, j);
        }
        ++ri;
      }
      worst_minor = std::max(worst_minor, std::abs(minor.determinant()));
    }
  }
  if (worst_minor > 1e-9) ++bad_c;

  return {bad_a == 0 && bad_b == 0 && bad_c == 0,
          "(a) failures=" + std::to_string(bad_a) + " split_cases=" + std::to_string(splits_tested) +
              " (b) failures=" + std::to_string(bad_b) + " (c) failures=" + std::to_string(bad_c) +
              " max_minor=" + fmt("%.1e", worst_minor)};
}

// 12 ------------------------------------------------------------------------
Outcome jacobian_criterion() {
  Rng rng = make_rng(12);
  double worst = 0.0;
  for (MapKind k : {MapKind::R, MapKind::C, MapKind::H})
    for (int n = 2; n <= 4; ++n)
      for (int t = 0; t < 20; ++t) {
        const QMatrix p = random_haar(field_for(k), n, rng);
        const Eigen::MatrixXd j = jacobian(k, p).entries;
        const Eigen::MatrixXd fd = oracle::fd_jacobian(p, units_for(k));
        worst = std::max(worst, (j - fd).norm() / j.norm());
      }
  int mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    const QMatrix u = random_haar(Field::Complex, 2 + t % 4, rng);
    if (numerical_rank(jacobian(MapKind::C, u)) != numerical_rank(jacobian(MapKind::H, u))) ++mismatches;
  }
  return {worst < 1e-6 && mismatches == 0,
          "max_rel_err=" + fmt("%.2e", worst) + " rank_c_vs_h_mismatches=" + std::to_string(mismatches)};
}

// 13 ------------------------------------------------------------------------
Outcome involution_criterion() {
  Rng rng = make_rng(13);
  std::uniform_real_distribution<double> up(0.01, 0.99);
  int involutions = 0, others = 0, bad = 0;
  for (int t = 0; t < 200; ++t) {
    const Permutation s = Permutation::random(6, rng), tau = Permutation::random(6, rng);
    const SegmentAnalysis a = segment_block_analysis(s, tau, up(rng));
    if ((s.inverse() * tau).is_involution()) {
      ++involutions;
      bool ok = a.verdict == SegmentVerdict::Orthostochastic && a.witness.has_value();
      if (ok) {
        const Eigen::MatrixXd& x = *a.witness;
        ok = (x.transpose() * x - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-10 &&
             (x.cwiseAbs2() - a.point).cwiseAbs().maxCoeff() <= 1e-10;
      }
      bad += ok ? 0 : 1;
    } else {
      ++others;
      const bool ok = a.verdict == SegmentVerdict::NotQustochastic && !sigma_check(BistochasticMatrix(a.point));
      bad += ok ? 0 : 1;
    }
  }
  return {bad == 0, "involutions=" + std::to_string(involutions) + " longer_cycles=" + std::to_string(others) +
                        " failures=" + std::to_string(bad)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "distance from J_3 to orthostochastic 3x3", 10.0, distance_criterion},
      {2, "rank-9 witness for phi_h at n = 4", 1.0, rank_witness_criterion},
      {3, "ortho3 test vs brute force", 60.0, ortho3_oracle_criterion},
      {4, "4x4 Hadamard families", 30.0, hadamard_families_criterion},
      {5, "determinant identities", 10.0, determinant_identities_criterion},
      {6, "six 3x3 families unbiased to F_3", 0.0, six_families_criterion},
      {7, "complete MUB in H^2", 0.0, complete_h2_criterion},
      {8, "4-MUB families in H^3", 0.0, h3_families_criterion},
      {9, "maximality evidence for 4-MUB in H^3", 600.0, maximality_criterion},
      {10, "Hurwitz-Radon matrix satisfies the sign conditions", 60.0, hurwitz_radon_criterion},
      {11, "critical point classifications", 0.0, classification_criterion},
      {12, "Jacobian vs finite differences", 0.0, jacobian_criterion},
      {13, "involution dichotomy on segments", 0.0, involution_criterion},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.ok = false;
      o.detail += " (time limit " + fmt("%.0f", c.limit_seconds) + " s exceeded)";
    }
    if (!o.ok) ++failures;
    std::printf("%s [%2d] %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
