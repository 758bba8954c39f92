#include "coset/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "coset/game.hpp"
#include "coset/parallel.hpp"
#include "coset/perms.hpp"
#include "coset/qstate.hpp"
#include "coset/sqrt2.hpp"

namespace coset::verify {

using gf2::BigInt;
using gf2::GF2Vector;
using gf2::Subspace;

namespace {

struct Caps {
  int comb;       // exhaustive combinatorics
  int states;     // statevector identity sweeps
  int spectral;   // eigensolve oracles
  int cj_seeds;   // CJ-equivalence random strategies per (n,k)
  int tri_seeds;  // tripartite pipeline seeds per (n,k)
  int det_seeds;  // deterministic strategies per (n,k)
  int ratio_n;
};

Caps caps_for(Level level) {
  if (level == Level::fast) return Caps{4, 3, 4, 5, 3, 25, 10};
  return Caps{6, 4, 5, 20, 20, 200, 20};
}

class Suite {
 public:
  Suite(Level level, int threads, const Tolerances& tol)
      : caps_(caps_for(level)), threads_(threads), tol_(tol) {
    report_.level = level == Level::fast ? "fast" : "full";
  }

  Report run() {
    check_enumeration();
    check_intersection_histogram();
    check_dual_involution();
    check_coset_rep_invariance();
    check_gaussian_reflexivity();
    check_permutation_families();
    check_matching_partition();
    check_eq3_inner_products();
    check_hadamard_duality();
    check_coset_basis_completeness();
    check_projector_sum_diagonal();
    check_projector_product_sweep();
    check_norm_of_sum_instances();
    check_unentangled_values();
    check_unentangled_oracle();
    check_deterministic_optimality();
    check_cj_equivalence_and_dominance();
    check_duality_transform();
    check_norm_sum_pipeline();
    check_ratio_bounds();
    check_bound_symmetry();
    check_envelope();
    check_bound_vs_unentangled();
    check_envelope_consistency();
    report_.passed = std::all_of(report_.checks.begin(), report_.checks.end(),
                                 [](const CheckResult& c) { return c.passed; });
    return std::move(report_);
  }

 private:
  struct Accumulator {
    bool passed = true;
    long instances = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::string note;

    // value must not exceed bound + tol.
    void expect_le(double value, double bound, double tol, const std::string& what) {
      ++instances;
      worst = std::min(worst, bound - value);
      if (value > bound + tol && passed) {
        passed = false;
        note = what + ": " + std::to_string(value) + " > " + std::to_string(bound);
      }
    }

    void expect_true(bool ok, const std::string& what) {
      ++instances;
      if (!ok && passed) {
        passed = false;
        note = what;
      }
    }
  };

  void push(const std::string& name, const Accumulator& acc, std::string note_if_ok = "") {
    CheckResult res;
    res.name = name;
    res.passed = acc.passed;
    res.instances = acc.instances;
    res.worst_slack = std::isfinite(acc.worst) ? acc.worst : 0.0;
    res.note = acc.passed ? note_if_ok : acc.note;
    report_.checks.push_back(std::move(res));
  }

  template <typename Fn>
  void for_each_nk(int max_n, Fn&& fn) {
    for (int n = 1; n <= max_n; ++n) {
      for (int k = 0; k <= n; ++k) fn(n, k);
    }
  }

  void check_enumeration() {
    Accumulator acc;
    for_each_nk(caps_.comb, [&](int n, int k) {
      const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k);
      acc.expect_true(BigInt(gr.size()) == gf2::gaussian_binomial(n, k),
                      "count mismatch at (" + std::to_string(n) + "," + std::to_string(k) + ")");
      for (std::size_t i = 0; i + 1 < gr.size(); ++i) {
        if (!(gr[i].rows < gr[i + 1].rows)) {
          acc.expect_true(false, "enumeration not strictly sorted");
          return;
        }
      }
      for (const Subspace& w : gr) {
        if (w.k != k) {
          acc.expect_true(false, "rank mismatch in enumeration");
          return;
        }
      }
    });
    push("gf2.enumeration_count", acc);
  }

  void check_intersection_histogram() {
    Accumulator acc;
    for_each_nk(caps_.comb, [&](int n, int k) {
      const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k);
      const std::size_t N = gr.size();
      std::vector<char> ok(N, 1);
      parallel_for(N, threads_, [&](std::size_t wi) {
        std::vector<long long> hist(static_cast<std::size_t>(k) + 1, 0);
        for (std::size_t vi = 0; vi < N; ++vi) {
          ++hist[static_cast<std::size_t>(gf2::intersect_dim(gr[wi], gr[vi]))];
        }
        for (int m = 0; m <= k; ++m) {
          if (BigInt(hist[static_cast<std::size_t>(m)]) != gf2::intersection_count(n, k, m)) {
            ok[wi] = 0;
          }
        }
      });
      for (std::size_t wi = 0; wi < N; ++wi) {
        acc.expect_true(ok[wi] != 0, "histogram mismatch at (" + std::to_string(n) + "," +
                                         std::to_string(k) + ") vertex " + std::to_string(wi));
      }
    });
    push("gf2.intersection_histogram", acc);
  }

  void check_dual_involution() {
    Accumulator acc;
    for_each_nk(caps_.comb, [&](int n, int k) {
      for (const Subspace& w : gf2::enumerate_grassmannian(n, k)) {
        const Subspace d = gf2::dual(w);
        acc.expect_true(d.k == n - k && gf2::dual(d) == w,
                        "dual involution failed at (" + std::to_string(n) + "," +
                            std::to_string(k) + ")");
      }
    });
    push("gf2.dual_involution", acc);
  }

  void check_coset_rep_invariance() {
    Accumulator acc;
    std::uint64_t state = 12345;
    auto next = [&state]() {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return state;
    };
    for_each_nk(caps_.comb, [&](int n, int k) {
      const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k);
      for (int trial = 0; trial < 8; ++trial) {
        const Subspace& w = gr[next() % gr.size()];
        const GF2Vector x(static_cast<std::uint32_t>(next() & ((1u << n) - 1)), n);
        const std::vector<GF2Vector> elems = w.elements();
        const GF2Vector& shift = elems[next() % elems.size()];
        acc.expect_true(gf2::coset_rep(w, x) == gf2::coset_rep(w, x + shift),
                        "coset_rep not constant on a coset");
      }
    });
    push("gf2.coset_rep_invariance", acc);
  }

  void check_gaussian_reflexivity() {
    Accumulator acc;
    for (int n = 0; n <= 30; ++n) {
      for (int k = 0; k <= n; ++k) {
        acc.expect_true(gf2::gaussian_binomial(n, k) == gf2::gaussian_binomial(n, n - k),
                        "reflexivity failed at (" + std::to_string(n) + "," + std::to_string(k) +
                            ")");
      }
    }
    push("gf2.gaussian_reflexivity", acc);
  }

  void check_permutation_families() {
    Accumulator acc;
    for_each_nk(caps_.comb, [&](int n, int k) {
      const perms::PermutationFamily fam = perms::full_family(n, k, gf2::kDefaultGrassmannianCap,
                                                              threads_);
      acc.expect_true(BigInt(fam.size()) == gf2::gaussian_binomial(n, k),
                      "family size mismatch at (" + std::to_string(n) + "," + std::to_string(k) +
                          ")");
      std::map<int, long long> split;
      for (const perms::PermutationEntry& e : fam.entries) ++split[e.m];
      for (int m = 0; m <= k; ++m) {
        acc.expect_true(BigInt(split[m]) == gf2::intersection_count(n, k, m),
                        "per-m split mismatch at (" + std::to_string(n) + "," +
                            std::to_string(k) + "), m=" + std::to_string(m));
      }
      const perms::VerifyReport rep = perms::verify_family(fam);
      acc.expect_true(rep.passed, "verify_family: " + rep.detail);
    });
    push("perms.full_family", acc);
  }

  void check_matching_partition() {
    Accumulator acc;
    const std::vector<std::array<int, 3>> cases = {{2, 1, 0}, {3, 1, 0}, {4, 2, 1}};
    for (const auto& [n, k, m] : cases) {
      const perms::IntersectionGraph g =
          perms::build_intersection_graph(n, k, m, gf2::kDefaultGrassmannianCap, threads_);
      const perms::DirectedGraph d = perms::orient_eulerian(g);
      const std::vector<std::vector<int>> matchings = perms::matching_decomposition(d);
      // Union of matching edges must equal the directed edge set exactly.
      std::map<std::pair<int, int>, int> edges;
      for (int u = 0; u < static_cast<int>(d.out.size()); ++u) {
        for (int v : d.out[static_cast<std::size_t>(u)]) ++edges[{u, v}];
      }
      for (const std::vector<int>& perm : matchings) {
        for (int u = 0; u < static_cast<int>(perm.size()); ++u) {
          auto it = edges.find({u, perm[static_cast<std::size_t>(u)]});
          if (it == edges.end() || it->second == 0) {
            acc.expect_true(false, "matching used a non-edge or reused an edge");
          } else {
            --it->second;
            ++acc.instances;
          }
        }
      }
      for (const auto& [edge, count] : edges) {
        acc.expect_true(count == 0, "directed edge left uncovered");
      }
    }
    push("perms.matching_partition", acc);
  }

  struct StateTable {
    std::vector<Subspace> gr;
    // states[wi][xi][zi]
    std::vector<std::vector<std::vector<qstate::StateVector>>> states;
    std::vector<std::vector<GF2Vector>> xs, zs;
  };

  StateTable build_states(int n, int k) {
    StateTable t;
    t.gr = gf2::enumerate_grassmannian(n, k);
    t.states.resize(t.gr.size());
    t.xs.resize(t.gr.size());
    t.zs.resize(t.gr.size());
    for (std::size_t wi = 0; wi < t.gr.size(); ++wi) {
      t.xs[wi] = gf2::coset_reps(t.gr[wi]);
      t.zs[wi] = gf2::coset_reps(gf2::dual(t.gr[wi]));
      t.states[wi].resize(t.xs[wi].size());
      for (std::size_t xi = 0; xi < t.xs[wi].size(); ++xi) {
        for (std::size_t zi = 0; zi < t.zs[wi].size(); ++zi) {
          t.states[wi][xi].push_back(qstate::coset_state(t.gr[wi], t.xs[wi][xi], t.zs[wi][zi]));
        }
      }
    }
    return t;
  }

  void check_eq3_inner_products() {
    Accumulator acc;
    for_each_nk(caps_.states, [&](int n, int k) {
      const StateTable t = build_states(n, k);
      const std::size_t N = t.gr.size();
      std::vector<double> worst(N, 0.0);
      parallel_for(N, threads_, [&](std::size_t vi) {
        double w = 0;
        for (std::size_t wi = 0; wi < N; ++wi) {
          for (std::size_t xi = 0; xi < t.xs[vi].size(); ++xi) {
            for (std::size_t zi = 0; zi < t.zs[vi].size(); ++zi) {
              for (std::size_t xj = 0; xj < t.xs[wi].size(); ++xj) {
                for (std::size_t zj = 0; zj < t.zs[wi].size(); ++zj) {
                  const double numeric = std::abs(
                      t.states[vi][xi][zi].amps.dot(t.states[wi][xj][zj].amps));
                  const double formula = qstate::inner_product_formula(
                      t.gr[vi], t.gr[wi], t.xs[vi][xi], t.zs[vi][zi], t.xs[wi][xj],
                      t.zs[wi][zj]);
                  w = std::max(w, std::abs(numeric - formula));
                }
              }
            }
          }
        }
        worst[vi] = w;
      });
      for (std::size_t vi = 0; vi < N; ++vi) {
        acc.expect_le(worst[vi], 0.0, tol_.amplitude,
                      "inner product formula deviation at (" + std::to_string(n) + "," +
                          std::to_string(k) + ")");
      }
    });
    push("qstate.eq3_inner_products", acc);
  }

  void check_hadamard_duality() {
    Accumulator acc;
    for_each_nk(caps_.states, [&](int n, int k) {
      const StateTable t = build_states(n, k);
      for (std::size_t wi = 0; wi < t.gr.size(); ++wi) {
        const Subspace d = gf2::dual(t.gr[wi]);
        for (std::size_t xi = 0; xi < t.xs[wi].size(); ++xi) {
          for (std::size_t zi = 0; zi < t.zs[wi].size(); ++zi) {
            const qstate::StateVector lhs = qstate::hadamard_dual(t.states[wi][xi][zi]);
            const qstate::StateVector rhs =
                qstate::coset_state(d, t.zs[wi][zi], t.xs[wi][xi]);
            const double overlap = std::abs(lhs.amps.dot(rhs.amps));
            acc.expect_le(std::abs(overlap - 1.0), 0.0, tol_.amplitude,
                          "Hadamard duality failed");
          }
        }
      }
    });
    push("qstate.hadamard_duality", acc);
  }

  void check_coset_basis_completeness() {
    Accumulator acc;
    for_each_nk(caps_.states, [&](int n, int k) {
      const StateTable t = build_states(n, k);
      const std::ptrdiff_t dim = std::ptrdiff_t(1) << n;
      for (std::size_t wi = 0; wi < t.gr.size(); ++wi) {
        Eigen::MatrixXcd acc_op = Eigen::MatrixXcd::Zero(dim, dim);
        for (const auto& row : t.states[wi]) {
          for (const qstate::StateVector& s : row) acc_op += s.amps * s.amps.adjoint();
        }
        const double dev = (acc_op - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
        acc.expect_le(dev, 0.0, tol_.amplitude, "coset basis incomplete");
      }
    });
    push("qstate.coset_basis_completeness", acc);
  }

  void check_projector_sum_diagonal() {
    Accumulator acc;
    for_each_nk(caps_.states, [&](int n, int k) {
      for (const Subspace& w : gf2::enumerate_grassmannian(n, k)) {
        for (const GF2Vector& x : gf2::coset_reps(w)) {
          const Eigen::MatrixXcd op = qstate::coset_projector_sum_B(w, x).mat();
          const std::ptrdiff_t dim = op.rows();
          Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(dim, dim);
          for (const GF2Vector& u : w.elements()) {
            const std::ptrdiff_t label = x.bits ^ u.bits;
            expected(label, label) = 1.0;
          }
          acc.expect_le((op - expected).cwiseAbs().maxCoeff(), 0.0, tol_.construction,
                        "coset projector sum is not the diagonal coset indicator");
        }
      }
    });
    push("qstate.projector_sum_diagonal", acc);
  }

  void check_projector_product_sweep() {
    Accumulator acc;
    std::string tightness_note;
    for_each_nk(caps_.states, [&](int n, int k) {
      const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k);
      const std::size_t N = gr.size();
      // Precompute both projector-sum tables.
      std::vector<std::vector<Eigen::MatrixXcd>> bsum(N), csum(N);
      std::vector<std::vector<GF2Vector>> xs(N), zs(N);
      for (std::size_t wi = 0; wi < N; ++wi) {
        xs[wi] = gf2::coset_reps(gr[wi]);
        zs[wi] = gf2::coset_reps(gf2::dual(gr[wi]));
        for (const GF2Vector& x : xs[wi]) {
          bsum[wi].push_back(qstate::coset_projector_sum_B(gr[wi], x).mat());
        }
        for (const GF2Vector& z : zs[wi]) {
          csum[wi].push_back(qstate::coset_projector_sum_C(gr[wi], z).mat());
        }
      }
      std::vector<double> worst_violation(N, -std::numeric_limits<double>::infinity());
      std::vector<double> best_tightness(N, std::numeric_limits<double>::infinity());
      parallel_for(N, threads_, [&](std::size_t vi) {
        for (std::size_t wi = 0; wi < N; ++wi) {
          const double bound =
              std::sqrt(std::pow(2.0, gf2::intersect_dim(gr[vi], gr[wi]) - k));
          for (const Eigen::MatrixXcd& c : csum[vi]) {
            for (const Eigen::MatrixXcd& b : bsum[wi]) {
              const double lhs = qstate::spectral_norm(c * b);
              worst_violation[vi] = std::max(worst_violation[vi], lhs - bound);
              best_tightness[vi] = std::min(best_tightness[vi], bound - lhs);
            }
          }
        }
      });
      double violation = -std::numeric_limits<double>::infinity();
      double tightness = std::numeric_limits<double>::infinity();
      long tuples = 0;
      for (std::size_t vi = 0; vi < N; ++vi) {
        violation = std::max(violation, worst_violation[vi]);
        tightness = std::min(tightness, best_tightness[vi]);
        tuples += static_cast<long>(N);
      }
      acc.expect_le(violation, 0.0, tol_.spectral,
                    "projector product bound violated at (" + std::to_string(n) + "," + std::to_string(k) +
                        ")");
      acc.expect_true(tightness <= tol_.spectral,
                      "no tightness witness at (" + std::to_string(n) + "," + std::to_string(k) +
                          ")");
      acc.instances += tuples - 2;  // count tuples, not the two aggregate asserts
    });
    push("qstate.projector_product_sweep", acc, "equality witnessed for every (n,k)");
  }

  void check_norm_of_sum_instances() {
    Accumulator acc;
    const auto family_maps = [](int n, int k) {
      std::vector<std::vector<int>> maps;
      for (const perms::PermutationEntry& e : perms::full_family(n, k).entries) {
        maps.push_back(e.perm);
      }
      return maps;
    };

    {  // three equal rank-1 projectors: equality
      const Subspace w = gf2::subspace_from_vectors({GF2Vector::from_string("11")}, 2);
      const qstate::StateVector s = qstate::subspace_state(w);
      const qstate::HermitianOperator p{Eigen::MatrixXcd(s.amps * s.amps.adjoint())};
      const qstate::NormOfSumReport rep = qstate::check_norm_of_sum_bound({p, p, p}, family_maps(2, 1), tol_);
      acc.expect_true(rep.passed, "equal-projector instance failed");
      acc.expect_le(std::abs(rep.slack), 0.0, tol_.spectral, "equal-projector slack not ~0");
    }
    {  // orthogonal projectors with identity + swap
      Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2), p1 = Eigen::MatrixXcd::Zero(2, 2);
      p0(0, 0) = 1;
      p1(1, 1) = 1;
      const qstate::NormOfSumReport rep = qstate::check_norm_of_sum_bound(
          {qstate::HermitianOperator(p0), qstate::HermitianOperator(p1)}, {{0, 1}, {1, 0}}, tol_);
      acc.expect_true(rep.passed, "orthogonal-projector instance failed");
    }
    {  // seeded random PSD operators
      std::uint64_t state = 99;
      auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
      };
      auto random_psd = [&](int dim) {
        Eigen::MatrixXcd g(dim, dim);
        for (int i = 0; i < dim; ++i) {
          for (int j = 0; j < dim; ++j) {
            g(i, j) = {static_cast<double>(next() % 1000) / 500.0 - 1.0,
                       static_cast<double>(next() % 1000) / 500.0 - 1.0};
          }
        }
        return qstate::HermitianOperator(Eigen::MatrixXcd(g * g.adjoint()));
      };
      for (int trial = 0; trial < 5; ++trial) {
        const std::vector<qstate::HermitianOperator> ops = {random_psd(4), random_psd(4),
                                                            random_psd(4)};
        const qstate::NormOfSumReport rep = qstate::check_norm_of_sum_bound(ops, family_maps(2, 1), tol_);
        acc.expect_true(rep.passed, "random PSD instance failed");
      }
    }
    push("qstate.norm_of_sum_bound", acc);
  }

  void check_unentangled_values() {
    Accumulator acc;
    acc.expect_true(game::unentangled_value_exact(2, 1) == Rational(2, 3),
                    "p_opt^u(2,1) != 2/3");
    acc.expect_true(game::unentangled_value_exact(4, 2) == Rational(2, 5),
                    "p_opt^u(4,2) != 2/5");
    for (int n = 0; n <= 12; ++n) {
      acc.expect_true(game::unentangled_value_exact(std::max(n, 1), 0) == 1,
                      "p_opt^u(n,0) != 1");
    }
    push("game.unentangled_exact_values", acc);
  }

  void check_unentangled_oracle() {
    Accumulator acc;
    for_each_nk(caps_.spectral, [&](int n, int k) {
      const double formula = game::unentangled_value(n, k);
      const double oracle = game::unentangled_value_oracle(n, k);
      acc.expect_le(std::abs(formula - oracle), 0.0, tol_.spectral,
                    "formula/oracle disagree at (" + std::to_string(n) + "," +
                        std::to_string(k) + ")");
    });
    push("game.unentangled_formula_vs_oracle", acc);
  }

  void check_deterministic_optimality() {
    Accumulator acc;
    {  // exhaustive sweep at (2,1): answers matter only through their cosets
      const int n = 2, k = 1;
      const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k);
      const double opt = game::unentangled_value(n, k);
      std::vector<std::vector<GF2Vector>> fx, gz;
      for (const Subspace& w : gr) {
        fx.push_back(gf2::coset_reps(w));
        gz.push_back(gf2::coset_reps(gf2::dual(w)));
      }
      const std::size_t fcount = fx[0].size() * fx[1].size() * fx[2].size();
      const std::size_t gcount = gz[0].size() * gz[1].size() * gz[2].size();
      for (std::size_t fi = 0; fi < fcount; ++fi) {
        for (std::size_t gi = 0; gi < gcount; ++gi) {
          game::DeterministicStrategy ds;
          std::size_t f = fi, g = gi;
          for (std::size_t wi = 0; wi < gr.size(); ++wi) {
            ds.f.push_back(fx[wi][f % fx[wi].size()]);
            f /= fx[wi].size();
            ds.g.push_back(gz[wi][g % gz[wi].size()]);
            g /= gz[wi].size();
          }
          acc.expect_le(game::deterministic_value(ds, n, k), opt, tol_.spectral,
                        "deterministic strategy beats the unentangled optimum at (2,1)");
        }
      }
      // f = g = 0 attains the optimum exactly.
      game::DeterministicStrategy zero;
      zero.f.assign(gr.size(), GF2Vector::zero(n));
      zero.g.assign(gr.size(), GF2Vector::zero(n));
      acc.expect_le(std::abs(game::deterministic_value(zero, n, k) - opt), 0.0, tol_.spectral,
                    "f=g=0 does not attain the optimum at (2,1)");
    }
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}}) {
      const double opt = game::unentangled_value(n, k);
      std::vector<double> values(static_cast<std::size_t>(caps_.det_seeds));
      parallel_for(values.size(), threads_, [&, n = n, k = k](std::size_t seed) {
        const game::DeterministicStrategy ds =
            game::make_random_deterministic_strategy(n, k, seed);
        values[seed] = game::deterministic_value(ds, n, k);
      });
      for (double v : values) {
        acc.expect_le(v, opt, tol_.spectral,
                      "seeded deterministic strategy beats optimum at (" + std::to_string(n) +
                          "," + std::to_string(k) + ")");
      }
      game::DeterministicStrategy zero;
      const auto N = static_cast<std::size_t>(gf2::gaussian_binomial(n, k).convert_to<long>());
      zero.f.assign(N, GF2Vector::zero(n));
      zero.g.assign(N, GF2Vector::zero(n));
      acc.expect_le(std::abs(game::deterministic_value(zero, n, k) - opt), 0.0, tol_.spectral,
                    "f=g=0 does not attain the optimum");
    }
    push("game.deterministic_optimality", acc);
  }

  void check_cj_equivalence_and_dominance() {
    Accumulator cj, dom;
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}}) {
      const double bound = game::winning_bound(n, k);
      std::vector<double> exact(static_cast<std::size_t>(caps_.cj_seeds));
      std::vector<double> extended(exact.size());
      parallel_for(exact.size(), threads_, [&, n = n, k = k](std::size_t seed) {
        const game::Strategy s = game::make_random_pvm_strategy(n, k, seed);
        exact[seed] = game::p_win(s);
        extended[seed] = game::p_win_extended(s);
      });
      for (std::size_t seed = 0; seed < exact.size(); ++seed) {
        cj.expect_le(std::abs(exact[seed] - extended[seed]), 0.0, tol_.spectral,
                     "CJ mismatch at (" + std::to_string(n) + "," + std::to_string(k) +
                         ") seed " + std::to_string(seed));
        dom.expect_le(exact[seed], bound, tol_.spectral,
                      "strategy beats the closed-form bound at (" + std::to_string(n) + "," +
                          std::to_string(k) + ")");
      }
    }
    // Named strategies with known values.
    {
      const game::Strategy s = game::make_computational_bob_strategy(2, 1);
      cj.expect_le(std::abs(game::p_win(s) - 0.5), 0.0, tol_.spectral,
                   "computational-Bob (2,1) value != 1/2");
      cj.expect_le(std::abs(game::p_win_extended(s) - 0.5), 0.0, tol_.spectral,
                   "extended computational-Bob (2,1) value != 1/2");
    }
    for (int n = 2; n <= 3; ++n) {
      const game::Strategy s = game::make_discard_and_guess_strategy(n, 1);
      const double expected = std::pow(2.0, -n);
      cj.expect_le(std::abs(game::p_win(s) - expected), 0.0, tol_.spectral,
                   "discard-and-guess value != 2^-n");
      cj.expect_le(std::abs(game::p_win_extended(s) - expected), 0.0, tol_.spectral,
                   "extended discard-and-guess value != 2^-n");
      dom.expect_le(expected, game::winning_bound(n, 1), tol_.spectral, "dominance");
    }
    {
      const game::Strategy s = game::make_hadamard_charlie_strategy(2);
      cj.expect_le(std::abs(game::p_win(s) - 1.0), 0.0, tol_.spectral,
                   "degenerate k=n game value != 1");
      dom.expect_le(game::p_win(s), game::winning_bound(2, 2), tol_.spectral, "dominance k=n");
    }
    push("game.cj_equivalence", cj);
    push("game.bound_dominance", dom);
  }

  void check_duality_transform() {
    Accumulator acc;
    auto check_pair = [&](const game::Strategy& s, const std::string& what) {
      const double direct = game::p_win(s);
      const game::Strategy d = game::dualize(s);
      const double dual_value = game::p_win(d);
      acc.expect_le(std::abs(direct - dual_value), 0.0, tol_.spectral,
                    what + ": dual game value differs");
      const game::Strategy dd = game::dualize(d);
      acc.expect_le(std::abs(game::p_win(dd) - direct), 0.0, tol_.spectral,
                    what + ": double dual value differs");
    };
    check_pair(game::make_discard_and_guess_strategy(2, 1), "discard-and-guess (2,1)");
    check_pair(game::make_computational_bob_strategy(2, 1), "computational-Bob (2,1)");
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        check_pair(game::make_random_pvm_strategy(n, k, seed),
                   "random (" + std::to_string(n) + "," + std::to_string(k) + ")");
      }
    }
    // Exact symmetry of the closed-form bound under k <-> n-k.
    for (int n = 1; n <= 20; ++n) {
      for (int k = 0; k <= n; ++k) {
        acc.expect_true(game::winning_bound_exact(n, k) == game::winning_bound_exact(n, n - k),
                        "winning_bound not symmetric at (" + std::to_string(n) + "," +
                            std::to_string(k) + ")");
      }
    }
    push("game.duality", acc);
  }

  void check_norm_sum_pipeline() {
    Accumulator acc;
    std::vector<std::pair<int, int>> games = {{2, 1}};
    games.emplace_back(3, 1);
    for (const auto& [n, k] : games) {
      std::vector<game::NormSumBoundReport> reports(static_cast<std::size_t>(caps_.tri_seeds));
      parallel_for(reports.size(), threads_, [&, n = n, k = k](std::size_t seed) {
        reports[seed] = game::norm_sum_bound_check(n, k, seed, tol_);
      });
      for (const game::NormSumBoundReport& rep : reports) {
        for (const game::InequalityCheck& c : rep.checks) {
          acc.expect_le(c.lhs, c.rhs, tol_.spectral,
                        "pipeline stage '" + c.name + "' failed at (" + std::to_string(n) + "," +
                            std::to_string(k) + ") seed " + std::to_string(rep.seed));
        }
      }
    }
    push("game.norm_sum_pipeline", acc);
  }

  void check_ratio_bounds() {
    Accumulator acc;
    for (int n = 2; n <= caps_.ratio_n; ++n) {
      for (int k = 0; 2 * k <= n; ++k) {
        const game::RatioCheckReport rep = game::ratio_check(n, k);
        acc.expect_true(rep.passed, "ratio check failed at (" + std::to_string(n) + "," +
                                        std::to_string(k) + ")");
      }
    }
    push("game.ratio_check", acc);
  }

  void check_bound_symmetry() {
    Accumulator acc;
    for (int n = 1; n <= 20; ++n) {
      for (int k = 0; k <= n; ++k) {
        acc.expect_true(game::winning_bound_exact(n, k) == game::winning_bound_exact(n, n - k),
                        "symmetry failed");
      }
    }
    push("game.bound_symmetry", acc);
  }

  void check_envelope() {
    Accumulator acc;
    acc.expect_le(std::abs(game::winning_rate_envelope(0.5) - std::pow(2.0, -0.25)), 0.0, 1e-12,
                  "envelope at R=1/2");
    acc.expect_le(std::abs(game::winning_rate_envelope(0.0) - 1.0), 0.0, 1e-12,
                  "envelope at R=0");
    acc.expect_le(std::abs(game::winning_rate_envelope(1.0) - 1.0), 0.0, 1e-12,
                  "envelope at R=1");
    acc.expect_le(std::abs(game::winning_rate_envelope(0.25) - std::pow(2.0, -0.125)), 0.0,
                  1e-12, "envelope at R=1/4");
    push("game.envelope_value", acc);
  }

  void check_bound_vs_unentangled() {
    Accumulator acc;
    for (int n = 1; n <= 12; ++n) {
      for (int k = 0; k <= n; ++k) {
        const QSqrt2 g = game::winning_bound_exact(n, k);
        const QSqrt2 u(game::unentangled_value_exact(n, k));
        acc.expect_true(u <= g, "unentangled value exceeds the closed-form bound at (" +
                                    std::to_string(n) + "," + std::to_string(k) + ")");
      }
    }
    push("game.bound_vs_unentangled", acc);
  }

  void check_envelope_consistency() {
    Accumulator acc;
    for (int n = 8; n <= 16; ++n) {
      for (const double rate : {0.25, 0.5}) {
        const int k = static_cast<int>(std::floor(n * rate));
        const double per_qubit = std::pow(game::winning_bound(n, k), 1.0 / n);
        acc.expect_le(per_qubit, game::winning_rate_envelope(rate) + 0.05, 0.0,
                      "finite-n bound strays above the envelope at n=" + std::to_string(n));
      }
    }
    push("game.envelope_consistency", acc);
  }

  Caps caps_;
  int threads_;
  Tolerances tol_;
  Report report_;
};

}  // namespace

Report run_suite(Level level, int threads, const Tolerances& tol) {
  return Suite(level, threads, tol).run();
}

io::Json report_to_json(const Report& rep) {
  io::Json j;
  j["level"] = rep.level;
  j["passed"] = rep.passed;
  io::Json checks = io::Json::array();
  for (const CheckResult& c : rep.checks) {
    io::Json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    cj["instances"] = c.instances;
    cj["worst_slack"] = c.worst_slack;
    cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace coset::verify
