#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coset/gf2.hpp"
#include "coset/qstate.hpp"
#include "coset/sqrt2.hpp"
#include "coset/tolerances.hpp"

namespace coset::game {

// CPTP map from n_in qubits into H_B (x) H_C, given by Kraus operators.
struct Channel {
  Channel(int n_in_, int dim_b_, int dim_c_, std::vector<Eigen::MatrixXcd> kraus_,
          const Tolerances& tol = default_tolerances());

  int n_in;
  int dim_b;
  int dim_c;
  std::vector<Eigen::MatrixXcd> kraus;  // each (dim_b*dim_c) x 2^n_in

  std::ptrdiff_t dim_out() const { return std::ptrdiff_t(dim_b) * dim_c; }
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
};

// Full game strategy: channel plus per-subspace POVMs for both players.
// Subspace index follows the canonical Grassmannian order; Bob's outcome i
// is the i-th canonical representative of CS(W), Charlie's of CS(W^perp).
struct Strategy {
  Strategy(int n_, int k_, Channel channel_, std::vector<std::vector<Eigen::MatrixXcd>> bob_,
           std::vector<std::vector<Eigen::MatrixXcd>> charlie_,
           const Tolerances& tol = default_tolerances(),
           std::uint64_t cap = gf2::kDefaultGrassmannianCap);

  int n;
  int k;
  Channel channel;
  std::vector<std::vector<Eigen::MatrixXcd>> bob;
  std::vector<std::vector<Eigen::MatrixXcd>> charlie;
};

// Bob and Charlie answer with fixed vectors per subspace.
struct DeterministicStrategy {
  std::vector<gf2::GF2Vector> f;  // Bob's answer, indexed by subspace
  std::vector<gf2::GF2Vector> g;  // Charlie's answer
};

// Exact winning probability: uniform expectation over (W, x, z).
double p_win(const Strategy& s, int threads = 1);

// Choi state (Id (x) Phi)|phi><phi| for the unit-norm maximally entangled phi.
qstate::HermitianOperator choi_state(const Channel& c);

// Winning probability evaluated in the extended non-local form on the Choi
// state; equals p_win for every strategy (coset-state amplitudes are real, so
// no transpose correction is needed).
double p_win_extended(const Strategy& s);

// Monte Carlo estimate of p_win: samples (W,x,z) and Born-rule outcomes.
struct McEstimate {
  double value = 0;
  double std_error = 0;
  std::uint64_t shots = 0;
};
McEstimate p_win_mc(const Strategy& s, std::uint64_t shots, std::uint64_t seed);

// g(n,k): the closed-form winning probability upper bound, exact in Q(sqrt2).
QSqrt2 winning_bound_exact(int n, int k);
double winning_bound(int n, int k);

// 2^(-min{R,1-R}/2), the convex per-qubit rate envelope.
double winning_rate_envelope(double rate);

struct RatioCheckReport {
  struct Ratio {
    int m = 0;
    Rational value;
    bool ok = false;  // value <= 2/9
  };
  std::vector<Ratio> ratios;
  QSqrt2 g_value;
  QSqrt2 g_bound;  // (9/(2(9/(2 sqrt2)-1)) + 1) * sqrt(2^-k)
  bool g_bound_ok = false;
  bool passed = false;
};

// Exact-rational verification of the consecutive f-ratio bound and the
// closing geometric-sum bound on g(n,k); requires k <= n/2.
RatioCheckReport ratio_check(int n, int k);

// Optimal unentangled winning probability, closed form (exact) and the
// independent eigensolve oracle ||E_W |W><W|||.
Rational unentangled_value_exact(int n, int k);
double unentangled_value(int n, int k);
double unentangled_value_oracle(int n, int k, std::uint64_t cap = gf2::kDefaultGrassmannianCap);

// ||E_W |W_{f(W),g(W)}><W_{f(W),g(W)}||| for a fixed deterministic strategy.
double deterministic_value(const DeterministicStrategy& ds, int n, int k,
                           std::uint64_t cap = gf2::kDefaultGrassmannianCap);

// The (n, n-k) strategy with swapped Hilbert spaces and Hadamard-conjugated
// channel; achieves the same winning probability.
Strategy dualize(const Strategy& s);

struct InequalityCheck {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs
  bool passed = false;
};

struct NormSumBoundReport {
  std::uint64_t seed = 0;
  double p_win_value = 0;
  std::vector<InequalityCheck> checks;
  bool passed = false;
};

// Builds a seeded random PVM strategy and verifies the full bound pipeline:
// p_win <= (1/N)||sum Pi||, ||Pi^V Pi^W|| <= ||P^V Q^W|| <= intersection
// bound, and the permutation-family chain down to g(n,k).
NormSumBoundReport norm_sum_bound_check(int n, int k, std::uint64_t seed,
                                        const Tolerances& tol = default_tolerances());

// Strategy constructors used by tests and the verification suite.
Strategy make_discard_and_guess_strategy(int n, int k);
Strategy make_computational_bob_strategy(int n, int k);  // Bob exact, Charlie guesses 0
Strategy make_hadamard_charlie_strategy(int n);          // the k = n degenerate game
Strategy make_random_pvm_strategy(int n, int k, std::uint64_t seed);

// Seeded deterministic (f,g) pair with coset-representative answers.
DeterministicStrategy make_random_deterministic_strategy(int n, int k, std::uint64_t seed,
                                                         std::uint64_t cap = gf2::kDefaultGrassmannianCap);

}  // namespace coset::game
