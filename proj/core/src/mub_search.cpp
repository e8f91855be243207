#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qstoch/detail/parallel.hpp"
#include "qstoch/error.hpp"
#include "qstoch/hadamard.hpp"
#include "qstoch/mub.hpp"

namespace qstoch {

std::vector<QMatrix> f3_stabilizer() {
  const QMatrix pc = permutation_matrix(Permutation::cycle(3, {0, 1, 2}));
  const QMatrix r = permutation_matrix(Permutation::cycle(3, {1, 2}));
  const Quaternion w = omega3();
  const QMatrix d = diag({Quaternion{1.0}, w, w * w});
  std::vector<QMatrix> out;
  QMatrix pu = QMatrix::identity(3);
  for (int u = 0; u < 3; ++u, pu = pu * pc) {
    QMatrix rr = QMatrix::identity(3);
    for (int rp = 0; rp < 2; ++rp, rr = rr * r) {
      QMatrix dd = QMatrix::identity(3);
      for (int dp = 0; dp < 3; ++dp, dd = dd * d) out.push_back(pu * rr * dd);
    }
  }
  return out;
}

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

struct Move {
  int group = 0;     // index into f3_stabilizer()
  bool flip = false; // x = j e^{i th} instead of e^{i th}
  int angle = 0;
  Quaternion x;
};

struct Point {
  Family3Params params;
  std::string label;
};

// One unit of work: a family and the index of its outermost grid coordinate.
struct Item {
  Family3 family;
  int outer;
};

struct ItemResult {
  double best = std::numeric_limits<double>::infinity();
  long near_misses = 0;
  long candidates = 0;
  std::optional<QMatrix> hit;
  std::string label;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<Point> points_for(const Item& item, int g) {
  std::vector<Point> pts;
  const double two_pi = 2.0 * std::numbers::pi;
  auto push_special = [&](const Special3Args& args, const std::string& label) {
    try {
      pts.push_back({special3_params(args), label});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoRealSolution) throw;
    }
  };
  switch (item.family) {
    case Family3::Generic: {
      // Hyperspherical grid on S^3: outer indexes (chi, theta), inner phi.
      const int ci = item.outer / g;
      const int ti = item.outer % g;
      const double chi = std::numbers::pi * (ci + 0.5) / g;
      const double th = std::numbers::pi * (ti + 0.5) / g;
      for (int pi = 0; pi < g; ++pi) {
        const double ph = two_pi * pi / g;
        const Quaternion a{std::cos(chi), std::sin(chi) * std::cos(th), std::sin(chi) * std::sin(th) * std::cos(ph),
                           std::sin(chi) * std::sin(th) * std::sin(ph)};
        const auto all = generic3_all(a.normalized());
        for (std::size_t k = 0; k < all.size(); ++k) {
          pts.push_back({all[k], "generic a=" + format_literal(all[k].a) + " root=" + std::to_string(k)});
        }
      }
      break;
    }
    case Family3::S1:
    case Family3::S2:
    case Family3::S3: {
      const int selectors = item.family == Family3::S1 ? 1 : 2;
      const int sel = item.outer / g;
      const int ti = item.outer % g;
      if (sel >= selectors) break;
      for (int pi = 0; pi < g; ++pi) {
        Special3Args args;
        args.family = item.family;
        args.selector = sel;
        args.theta = two_pi * ti / g;
        args.psi = two_pi * pi / g;
        push_special(args, to_string(item.family) + " sel=" + std::to_string(sel) + " theta=" + fmt(args.theta) +
                               " psi=" + fmt(args.psi));
      }
      break;
    }
    case Family3::S4: {
      if (item.outer >= 8) break;
      for (int pi = 0; pi < g; ++pi) {
        Special3Args args;
        args.family = Family3::S4;
        args.signs = {item.outer & 1 ? -1 : 1, item.outer & 2 ? -1 : 1, item.outer & 4 ? -1 : 1, 1};
        args.psi = two_pi * pi / g;
        push_special(args, "s4 signs=" + std::to_string(item.outer) + " psi=" + fmt(args.psi));
      }
      break;
    }
    case Family3::S5: {
      const int signs = item.outer / g;
      const int ai = item.outer % g;
      if (signs >= 8) break;
      const int s2 = signs & 1 ? -1 : 1;
      const int s3 = signs & 2 ? -1 : 1;
      const int st = signs & 4 ? -1 : 1;
      for (int pi = 0; pi < g; ++pi) {
        Special3Args args;
        args.family = Family3::S5;
        args.a1 = -0.5 + 1.5 * (ai + 0.5) / g;
        args.signs = {s2, s3, s2 * s3, st};
        args.psi = two_pi * pi / g;
        push_special(args, "s5 signs=" + std::to_string(signs) + " a1=" + fmt(args.a1) + " psi=" + fmt(args.psi));
      }
      break;
    }
  }
  return pts;
}

std::vector<Item> all_items(int g) {
  std::vector<Item> items;
  for (int k = 0; k < g * g; ++k) items.push_back({Family3::Generic, k});
  for (int k = 0; k < g; ++k) items.push_back({Family3::S1, k});
  for (int k = 0; k < 2 * g; ++k) items.push_back({Family3::S2, k});
  for (int k = 0; k < 2 * g; ++k) items.push_back({Family3::S3, k});
  for (int k = 0; k < 8; ++k) items.push_back({Family3::S4, k});
  for (int k = 0; k < 8 * g; ++k) items.push_back({Family3::S5, k});
  return items;
}

// Raw violation of A / sqrt3 against target T (= M^* x^{-1} B x), aborting
// with +inf as soon as one entry exceeds `bound`.
double bounded_violation(const QMatrix& a, const QMatrix& t, double bound) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Quaternion g;
      for (int k = 0; k < 3; ++k) g += a(k, i).conj() * t(k, j);
      const double dev = std::abs(g.norm2() / 3.0 - 1.0 / 3.0);
      if (dev > bound) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, dev);
    }
  }
  return worst;
}

}  // namespace

ExtendResult extend_search(const std::vector<QMatrix>& bases, const ExtendOptions& opts) {
  if (bases.size() < 2 || bases[0].rows() != 3 || bases[0].cols() != 3 ||
      max_entry_distance(bases[0], QMatrix::identity(3)) > 1e-9 || bases[1].rows() != 3 ||
      max_entry_distance(bases[1], fourier(3)) > 1e-9) {
    throw Error(ErrorKind::NotNormalized, "extend_search needs a set starting with I_3 and F_3");
  }
  if (opts.grid < 1 || opts.conj_grid < 1) throw Error(ErrorKind::BadParams, "grid sizes must be >= 1");
  for (const auto& b : bases) {
    if (b.rows() != 3 || b.cols() != 3 || !is_symplectic(b, 1e-8)) {
      throw Error(ErrorKind::NotSymplectic, "every basis must be a 3x3 symplectic matrix");
    }
  }

  const std::vector<QMatrix> group = f3_stabilizer();
  std::vector<Move> moves;
  for (int gi = 0; gi < static_cast<int>(group.size()); ++gi) {
    for (int flip = 0; flip < 2; ++flip) {
      for (int m = 0; m < opts.conj_grid; ++m) {
        const Quaternion e = Quaternion::exp_i(std::numbers::pi * m / opts.conj_grid);
        moves.push_back({gi, flip == 1, m, flip ? Quaternion::j() * e : e});
      }
    }
  }
  // The moves preserve unbiasedness to I_3 and F_3, so only the remaining
  // bases are tested on the grid, through transformed targets.
  const std::vector<QMatrix> extra(bases.begin() + 2, bases.end());
  std::vector<std::vector<QMatrix>> targets(moves.size());
  for (std::size_t mi = 0; mi < moves.size(); ++mi) {
    const QMatrix mstar = adjoint(group[static_cast<std::size_t>(moves[mi].group)]);
    for (const auto& b : extra) targets[mi].push_back(mstar * entrywise_conjugate(b, moves[mi].x.conj()));
  }

  auto candidate = [&](const Point& p, const Move& mv) {
    const QMatrix m = group[static_cast<std::size_t>(mv.group)] * family3_matrix(p.params) * kInvSqrt3;
    return entrywise_conjugate(m, mv.x);
  };

  const std::vector<Item> items = all_items(opts.grid);
  ExtendResult result;
  result.grid = opts.grid;
  result.conj_grid = opts.conj_grid;
  result.best_violation = std::numeric_limits<double>::infinity();

  constexpr std::size_t kBlock = 64;
  for (std::size_t start = 0; start < items.size(); start += kBlock) {
    const std::size_t count = std::min(kBlock, items.size() - start);
    std::vector<ItemResult> block(count);
    detail::parallel_for(count, opts.threads, [&](std::size_t local) {
      ItemResult& out = block[local];
      for (const Point& p : points_for(items[start + local], opts.grid)) {
        const QMatrix a = family3_matrix(p.params);
        for (std::size_t mi = 0; mi < moves.size(); ++mi) {
          ++out.candidates;
          double v = 0.0;
          const double bound = std::max(out.best, opts.near_miss_tol);
          for (const auto& t : targets[mi]) {
            v = std::max(v, bounded_violation(a, t, bound));
            if (!std::isfinite(v)) break;
          }
          if (!std::isfinite(v)) continue;
          out.best = std::min(out.best, v);
          if (v > opts.near_miss_tol) continue;
          const QMatrix c = candidate(p, moves[mi]);
          bool accept = v <= opts.accept_tol;
          QMatrix polished = c;
          if (!accept) {
            ++out.near_misses;
            polished = polish_unbiased(bases, c);
            accept = violation_against(polished, bases) <= opts.polish_tol;
          }
          if (accept) {
            out.hit = polished;
            out.label = p.label + " move=" + std::to_string(moves[mi].group) + (moves[mi].flip ? " flip" : "") +
                        " angle=" + std::to_string(moves[mi].angle) + " raw_violation=" + fmt(v);
            return;
          }
        }
      }
    });
    for (auto& r : block) {
      result.best_violation = std::min(result.best_violation, r.best);
      result.near_misses += r.near_misses;
      result.candidates += r.candidates;
    }
    for (auto& r : block) {
      if (r.hit) {
        result.basis = std::move(r.hit);
        result.hit = r.label;
        return result;
      }
    }
  }
  return result;
}

}  // namespace qstoch
