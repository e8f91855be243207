#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "qstoch/differential.hpp"
#include "qstoch/error.hpp"
#include "qstoch/hadamard.hpp"
#include "qstoch/mub.hpp"
#include "qstoch/qmat_io.hpp"
#include "qstoch/stochastic.hpp"

namespace qstoch::cli {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

// Ordered key/value report printed as `k=v k=v` or as a two-line CSV.
class Report {
 public:
  Report& add(std::string key, std::string value) {
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Report& add(std::string key, double value) { return add(std::move(key), num(value)); }
  Report& add(std::string key, long value) { return add(std::move(key), std::to_string(value)); }
  Report& add(std::string key, int value) { return add(std::move(key), std::to_string(value)); }
  Report& add(std::string key, bool value) { return add(std::move(key), yes_no(value)); }

  void print(std::ostream& out, bool csv) const {
    if (csv) {
      for (std::size_t k = 0; k < fields_.size(); ++k) out << (k ? "," : "") << fields_[k].first;
      out << '\n';
      for (std::size_t k = 0; k < fields_.size(); ++k) out << (k ? "," : "") << fields_[k].second;
      out << '\n';
    } else {
      for (std::size_t k = 0; k < fields_.size(); ++k) out << (k ? " " : "") << fields_[k].first << '=' << fields_[k].second;
      out << '\n';
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

struct Globals {
  std::string format = "text";
  int threads = 1;
  std::uint64_t seed = 0;
  bool csv() const { return format == "csv"; }
};

BistochasticMatrix load_bistochastic(const std::string& path) {
  return BistochasticMatrix(load_matrix(path).real_part());
}

int exit_for(ErrorKind kind) {
  return kind == ErrorKind::Parse ? kUsage : kNumerical;
}

Quaternion parse_q(const std::string& text) { return parse_literal(text); }

std::array<int, 4> parse_signs(const std::string& text) {
  std::array<int, 4> out{1, 1, 1, 1};
  std::size_t k = 0;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') continue;
    if (k >= out.size() || (ch != '+' && ch != '-')) throw Error(ErrorKind::Parse, "signs look like +,-,+ : " + text);
    out[k++] = ch == '+' ? 1 : -1;
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quaternion stochastic matrices, Hadamard families and MUB"};
  app.name("qstoch");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized commands")->capture_default_str();

  std::function<int()> action;

  // Shared option storage; each subcommand binds what it needs.
  std::string file;
  std::vector<std::string> files;
  double tol = 1e-9;
  std::string map = "h";

  auto file_opt = [&](CLI::App* sub) { sub->add_option("--file,file", file, "Matrix file (qmat or rmat)")->required(); };

  // --- qmatrix / stochastic verbs -------------------------------------------
  auto* phi_cmd = app.add_subcommand("phi", "Entrywise squared norms of a unitary matrix");
  file_opt(phi_cmd);
  phi_cmd->callback([&] {
    action = [&] {
      write_rmat(out, phi(load_matrix(file)).matrix());
      return kTrue;
    };
  });

  auto* vh = app.add_subcommand("verify-hadamard", "Unit-norm entries and H*H = nI");
  file_opt(vh);
  vh->add_option("--tol", tol)->capture_default_str();
  vh->callback([&] {
    action = [&] {
      const bool ok = is_hadamard(load_matrix(file), tol);
      Report().add("hadamard", ok).print(out, g.csv());
      return ok ? kTrue : kFalse;
    };
  });

  auto* vs = app.add_subcommand("verify-symplectic", "W*W = I");
  file_opt(vs);
  vs->add_option("--tol", tol)->capture_default_str();
  vs->callback([&] {
    action = [&] {
      const QMatrix w = load_matrix(file);
      const bool ok = is_symplectic(w, tol);
      Report().add("symplectic", ok).add("defect", w.is_square() ? unitarity_defect(w) : INFINITY).print(out, g.csv());
      return ok ? kTrue : kFalse;
    };
  });

  auto* dp = app.add_subcommand("dephase", "Make the first row and column real and nonnegative");
  file_opt(dp);
  dp->callback([&] {
    action = [&] {
      write_qmat(out, dephase(load_matrix(file)).matrix);
      return kTrue;
    };
  });

  auto* sp = app.add_subcommand("splits", "Permutation-equivalent to a direct sum?");
  file_opt(sp);
  sp->add_option("--tol", tol)->capture_default_str();
  sp->callback([&] {
    action = [&] {
      const bool s = splits(load_matrix(file), tol);
      Report().add("splits", s).print(out, g.csv());
      return s ? kTrue : kFalse;
    };
  });

  // --- differential -----------------------------------------------------------
  auto add_map = [&](CLI::App* sub) {
    sub->add_option("--map", map, "r, c or h")->check(CLI::IsMember({"r", "c", "h"}))->capture_default_str();
  };

  auto* jc = app.add_subcommand("jacobian", "Jacobian of phi in the tangent bases, as rmat");
  add_map(jc);
  file_opt(jc);
  jc->callback([&] {
    action = [&] {
      write_rmat(out, jacobian(parse_map_kind(map), load_matrix(file)).entries);
      return kTrue;
    };
  });

  double rank_tol = 1e-10;
  auto* rk = app.add_subcommand("rank", "Numerical rank of the Jacobian");
  add_map(rk);
  file_opt(rk);
  rk->add_option("--tol", rank_tol, "Relative singular value threshold")->capture_default_str();
  rk->callback([&] {
    action = [&] {
      const MapKind kind = parse_map_kind(map);
      const QMatrix p = load_matrix(file);
      const RankReport r = rank_report(jacobian(kind, p), rank_tol);
      const int n = p.rows();
      const int needed = kind == MapKind::R ? domain_dimension(kind, n) : codomain_dimension(n);
      const PointVerdict v = r.rank < needed ? (kind == MapKind::R ? PointVerdict::Singular : PointVerdict::Critical)
                                             : PointVerdict::Regular;
      Report()
          .add("map", std::string(1, to_char(kind)))
          .add("n", n)
          .add("rank", r.rank)
          .add("dim_domain", domain_dimension(kind, n))
          .add("dim_codomain", codomain_dimension(n))
          .add("verdict", to_string(v))
          .print(out, g.csv());
      return kTrue;
    };
  });

  auto* cl = app.add_subcommand("classify", "Rank verdict with a cross-check against the known classifications");
  add_map(cl);
  file_opt(cl);
  cl->callback([&] {
    action = [&] {
      const MapKind kind = parse_map_kind(map);
      const QMatrix p = load_matrix(file);
      const Classification c = classify_point(kind, p);
      Report()
          .add("map", std::string(1, to_char(kind)))
          .add("n", p.rows())
          .add("rank", c.rank.rank)
          .add("dim_domain", c.dim_domain)
          .add("dim_codomain", c.dim_codomain)
          .add("verdict", to_string(c.verdict))
          .add("cross_check", to_string(c.cross_check))
          .add("gap", c.rank.gap)
          .add("reason", "\"" + c.reason + "\"")
          .print(out, g.csv());
      if (c.cross_check == CrossCheck::Disagrees) {
        err << "InternalInconsistency: rank verdict disagrees with the zero-pattern classification\n";
        return kNumerical;
      }
      return kTrue;
    };
  });

  // --- stochastic -------------------------------------------------------------
  auto* o3 = app.add_subcommand("ortho3", "Orthostochastic test for 3x3 bistochastic matrices");
  file_opt(o3);
  o3->callback([&] {
    action = [&] {
      const BistochasticMatrix b = load_bistochastic(file);
      const double r = ortho3_residual(b);
      const bool ok = std::abs(r) <= 1e-9;
      Report().add("orthostochastic", ok).add("residual", r).print(out, g.csv());
      return ok ? kTrue : kFalse;
    };
  });

  auto* sg = app.add_subcommand("sigma", "Sign conditions on all row and column pairs");
  file_opt(sg);
  sg->callback([&] {
    action = [&] {
      const SigmaReport r = sigma_report(load_bistochastic(file), g.threads);
      Report rep;
      rep.add("satisfied", r.satisfied).add("pairs_checked", r.pairs_checked);
      if (r.first_failure) {
        rep.add("failing_pair", std::string(r.first_failure->rows ? "rows:" : "cols:") +
                                    std::to_string(r.first_failure->i + 1) + "-" + std::to_string(r.first_failure->j + 1));
      }
      rep.print(out, g.csv());
      return r.satisfied ? kTrue : kFalse;
    };
  });

  auto* bf = app.add_subcommand("bruteforce-ortho", "Exhaustive sign search for an orthogonal preimage (n <= 5)");
  file_opt(bf);
  bf->callback([&] {
    action = [&] {
      const auto pattern = orthostochastic_bruteforce(load_bistochastic(file));
      Report().add("orthostochastic", pattern.has_value()).print(out, g.csv());
      if (pattern) write_rmat(out, pattern->signs.cast<double>());
      return pattern ? kTrue : kFalse;
    };
  });

  int restarts = 100;
  auto* dj = app.add_subcommand("distance-j3", "Distance from J_3 to the orthostochastic 3x3 matrices");
  dj->add_option("--restarts", restarts)->capture_default_str()->check(CLI::PositiveNumber);
  dj->callback([&] {
    action = [&] {
      const DistanceResult r = distance_j3(restarts, g.seed, g.threads);
      Report().add("distance", r.distance).add("iterations", r.iterations).add("restarts", r.restarts).print(out, g.csv());
      if (!g.csv()) write_rmat(out, r.minimizer);
      return kTrue;
    };
  });

  auto* hr = app.add_subcommand("hurwitz-radon", "16x16 bistochastic matrix built on (Z/2)^4 (seed shuffles weights)");
  hr->callback([&] {
    action = [&] {
      write_rmat(out, hurwitz_radon_matrix(g.seed).matrix());
      return kTrue;
    };
  });

  // --- construct ----------------------------------------------------------------
  auto* cons = app.add_subcommand("construct", "Build Hadamard family members (qmat output)");
  cons->require_subcommand(1);
  bool normalize = false;
  cons->add_flag("--normalize", normalize, "Divide by sqrt(n) to get a symplectic matrix");
  std::string qa = "(1,0,0,0)", qb = "(1,0,0,0)", qx = "(0,1,0,0)", branch = "+";

  auto emit = [&](QMatrix m) {
    if (normalize) m *= 1.0 / std::sqrt(static_cast<double>(m.rows()));
    write_qmat(out, m);
    return kTrue;
  };

  auto* c_s4 = cons->add_subcommand("special4", "a in span{1,i}, b in span{1,j}");
  c_s4->add_option("--a", qa)->capture_default_str();
  c_s4->add_option("--b", qb)->capture_default_str();
  c_s4->add_flag("--normalize", normalize);
  c_s4->callback([&] { action = [&] { return emit(special4({parse_q(qa), parse_q(qb)})); }; });

  auto* c_g4 = cons->add_subcommand("generic4", "a in span{1,i,j}, x in span{i,j}");
  c_g4->add_option("--a", qa)->capture_default_str();
  c_g4->add_option("--x", qx)->capture_default_str();
  c_g4->add_flag("--normalize", normalize);
  c_g4->callback([&] { action = [&] { return emit(generic4({parse_q(qa), parse_q(qx)})); }; });

  auto* c_g3 = cons->add_subcommand("generic3", "3x3 generic family member unbiased to F_3");
  c_g3->add_option("--a", qa)->required();
  c_g3->add_option("--branch", branch)->check(CLI::IsMember({"+", "-"}))->capture_default_str();
  c_g3->add_flag("--normalize", normalize);
  c_g3->callback([&] {
    action = [&]() -> int {
      const auto m = generic3(parse_q(qa), branch == "+" ? Branch::Plus : Branch::Minus);
      if (!m) {
        Report().add("constructed", false).add("reason", std::string("no_real_root")).print(out, g.csv());
        return kFalse;
      }
      return emit(*m);
    };
  });

  std::string family = "s1";
  std::vector<double> params;
  std::string signs = "+,+,+,+";
  Special3Args s3;
  auto* c_s3 = cons->add_subcommand("special3", "3x3 special family member unbiased to F_3");
  c_s3->add_option("--family", family)->check(CLI::IsMember({"s1", "s2", "s3", "s4", "s5"}))->required();
  c_s3->add_option("--params", params,
                   "Shorthand: s1-s3 theta,psi; s4 psi; s5 a1,psi")->delimiter(',');
  c_s3->add_option("--theta", s3.theta)->capture_default_str();
  c_s3->add_option("--psi", s3.psi)->capture_default_str();
  c_s3->add_option("--selector", s3.selector, "s2: a = z (0) or z^2 (1); s3: a = w (0) or w^2 (1)")
      ->capture_default_str();
  c_s3->add_option("--a1", s3.a1)->capture_default_str();
  c_s3->add_option("--signs", signs, "s4: a2,a3,t signs; s5: a2,a3,a4,t signs")->capture_default_str();
  c_s3->add_flag("--normalize", normalize);
  c_s3->callback([&] {
    action = [&] {
      s3.family = parse_family3(family);
      s3.signs = parse_signs(signs);
      if (!params.empty()) {
        if (s3.family == Family3::S4) {
          s3.psi = params.at(0);
        } else if (s3.family == Family3::S5) {
          if (params.size() != 2) throw Error(ErrorKind::Parse, "s5 --params takes a1,psi");
          s3.a1 = params[0];
          s3.psi = params[1];
        } else {
          if (params.size() != 2) throw Error(ErrorKind::Parse, "--params takes theta,psi");
          s3.theta = params[0];
          s3.psi = params[1];
        }
      }
      return emit(special3(s3));
    };
  });

  // --- mub --------------------------------------------------------------------
  auto* mub = app.add_subcommand("mub", "Mutually unbiased bases");
  mub->require_subcommand(1);

  auto* m_check = mub->add_subcommand("check", "Pairwise unbiasedness of the bases in the given files");
  m_check->add_option("files", files, "qmat files (each may hold several blocks)")->required();
  m_check->add_option("--tol", tol)->capture_default_str();
  m_check->callback([&] {
    action = [&] {
      std::vector<QMatrix> bases;
      for (const auto& f : files) {
        for (auto& m : load_matrices(f)) bases.push_back(std::move(m));
      }
      const double defect = mub_defect(bases);
      const bool ok = defect <= tol && static_cast<int>(bases.size()) <= 2 * bases.front().rows() + 1;
      Report()
          .add("mub", ok)
          .add("bases", static_cast<int>(bases.size()))
          .add("defect", defect)
          .add("frame", operator_frame_orthogonality(bases))
          .print(out, g.csv());
      return ok ? kTrue : kFalse;
    };
  });

  auto print_set = [&](const MubSet& s) {
    for (std::size_t k = 0; k < s.bases.size(); ++k) {
      if (k) out << '\n';
      write_qmat(out, s.bases[k]);
    }
    return kTrue;
  };

  auto* m_h2 = mub->add_subcommand("h2-complete", "The complete set of five MUB in H^2");
  m_h2->callback([&] { action = [&] { return print_set(complete_mub_h2()); }; });

  double s_par = std::sqrt(3.0) / 2.0, t_par = 0.0;
  auto* m_one = mub->add_subcommand("h3-one-param", "Four MUB in H^3 on the circle s^2 + t^2 = 3/4");
  m_one->add_option("--s", s_par)->capture_default_str();
  m_one->add_option("--t", t_par)->capture_default_str();
  m_one->callback([&] { action = [&] { return print_set(one_param_h3(s_par, t_par)); }; });

  std::string qc = "(-0.5,0.8660254037844386,0,0)";
  auto* m_three = mub->add_subcommand("h3-three-param", "Four MUB in H^3 from three cube roots of unity");
  m_three->add_option("--a", qa)->required();
  m_three->add_option("--b", qb)->required();
  m_three->add_option("--c", qc)->required();
  m_three->callback([&] { action = [&] { return print_set(three_param_h3(parse_q(qa), parse_q(qb), parse_q(qc))); }; });

  ExtendOptions ext;
  auto* m_ext = mub->add_subcommand("extend", "Grid search for one more basis (set must start with I_3, F_3)");
  m_ext->add_option("files", files)->required();
  m_ext->add_option("--grid", ext.grid)->capture_default_str()->check(CLI::PositiveNumber);
  m_ext->add_option("--conj-grid", ext.conj_grid)->capture_default_str()->check(CLI::PositiveNumber);
  m_ext->callback([&] {
    action = [&] {
      std::vector<QMatrix> bases;
      for (const auto& f : files) {
        for (auto& m : load_matrices(f)) bases.push_back(std::move(m));
      }
      ext.threads = g.threads;
      const ExtendResult r = extend_search(bases, ext);
      Report()
          .add("found", r.basis.has_value())
          .add("grid", r.grid)
          .add("conj_grid", r.conj_grid)
          .add("candidates", r.candidates)
          .add("near_misses", r.near_misses)
          .add("best_violation", r.best_violation)
          .print(out, g.csv());
      if (r.basis) {
        out << "# " << r.hit << '\n';
        write_qmat(out, *r.basis);
      }
      return r.basis ? kTrue : kFalse;
    };
  });

  int mrestarts = 50;
  auto* m_max = mub->add_subcommand("maximality", "Descent over Sp(n) for a basis unbiased to the given set");
  m_max->add_option("files", files)->required();
  m_max->add_option("--restarts", mrestarts)->capture_default_str()->check(CLI::PositiveNumber);
  m_max->callback([&] {
    action = [&] {
      std::vector<QMatrix> bases;
      for (const auto& f : files) {
        for (auto& m : load_matrices(f)) bases.push_back(std::move(m));
      }
      const MaximalityResult r = direct_maximality_search(bases, mrestarts, g.seed, g.threads);
      const bool extension = r.violation < 1e-8;
      Report()
          .add("violation", r.violation)
          .add("restarts", r.restarts)
          .add("extension", extension)
          .print(out, g.csv());
      if (extension && !g.csv()) write_qmat(out, r.witness);
      return extension ? kTrue : kFalse;
    };
  });

  std::vector<const char*> argv{"qstoch"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kTrue;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  if (!action) {
    err << app.help();
    return kUsage;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace qstoch::cli
