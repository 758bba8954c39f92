#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "coset/gf2.hpp"
#include "coset/tolerances.hpp"

namespace coset::qstate {

inline constexpr int kMaxQubits = 10;  // dense cap, dim <= 1024

using Complex = std::complex<double>;

// Pure state on n qubits; basis label u is the packed GF2Vector word.
struct StateVector {
  int n = 0;
  Eigen::VectorXcd amps;

  std::ptrdiff_t dim() const { return amps.size(); }

  // Checked constructor for unit states.
  static StateVector normalized(int n, Eigen::VectorXcd amps,
                                const Tolerances& tol = default_tolerances());
};

struct HermitianOperator {
  explicit HermitianOperator(Eigen::MatrixXcd m,
                             const Tolerances& tol = default_tolerances());

  const Eigen::MatrixXcd& mat() const { return mat_; }
  std::ptrdiff_t dim() const { return mat_.rows(); }

 private:
  Eigen::MatrixXcd mat_;
};

// |W> : uniform superposition over the elements of W.
StateVector subspace_state(const gf2::Subspace& w);

// |W_{x,z}> = X^x Z^z |W>: amplitude 2^{-k/2} (-1)^{z.u} at label x+u, u in W.
StateVector coset_state(const gf2::Subspace& w, const gf2::GF2Vector& x,
                        const gf2::GF2Vector& z);

// Closed form of |<V_{x,z}|W_{x',z'}>| for V,W of equal dimension.
double inner_product_formula(const gf2::Subspace& v, const gf2::Subspace& w,
                             const gf2::GF2Vector& x, const gf2::GF2Vector& z,
                             const gf2::GF2Vector& x2, const gf2::GF2Vector& z2);

// n-fold Hadamard; hadamard_dual(|W_{x,z}>) == |W^perp_{z,x}> up to phase.
StateVector hadamard_dual(const StateVector& s);

// True iff |<a|b>| = 1 within tol (equality up to a global phase).
bool equal_up_to_phase(const StateVector& a, const StateVector& b,
                       double tol = default_tolerances().amplitude);

// Sum over z' in CS(W^perp) of |W_{x',z'}><W_{x',z'}|; equals the diagonal
// projector onto the computational labels of x'+W.
HermitianOperator coset_projector_sum_B(const gf2::Subspace& w, const gf2::GF2Vector& x_prime);

// Sum over x in CS(V) of |V_{x,z}><V_{x,z}|.
HermitianOperator coset_projector_sum_C(const gf2::Subspace& v, const gf2::GF2Vector& z);

// Largest absolute eigenvalue via full self-adjoint diagonalization.
double operator_norm(const HermitianOperator& h);
double operator_norm(const Eigen::MatrixXcd& hermitian,
                     const Tolerances& tol = default_tolerances());

// Spectral norm of a general (possibly non-Hermitian) matrix as
// sqrt(||A A^dagger||), reusing the Hermitian solver.
double spectral_norm(const Eigen::MatrixXcd& a);

// PSD square root by eigendecomposition; negative ripple below tol clamps to 0.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& psd,
                          const Tolerances& tol = default_tolerances());

struct NormOfSumReport {
  double lhs = 0;    // || sum P_i ||
  double rhs = 0;    // sum_j max_i || sqrt(P_i) sqrt(P_{pi_j(i)}) ||
  double slack = 0;  // rhs - lhs
  bool passed = false;
};

// Numeric check of the norm-of-sum bound for PSD operators under a family of
// mutually orthogonal index permutations (family size must equal op count).
NormOfSumReport check_norm_of_sum_bound(const std::vector<HermitianOperator>& ops,
                           const std::vector<std::vector<int>>& index_maps,
                           const Tolerances& tol = default_tolerances());

struct ProjectorProductResult {
  double lhs = 0;    // || C_sum(V,z) * B_sum(W,x') ||
  double bound = 0;  // sqrt(2^(dim(V /\ W) - k))
  bool within_bound = false;
};

ProjectorProductResult check_projector_product_bound(const gf2::Subspace& v, const gf2::Subspace& w,
                           const gf2::GF2Vector& z, const gf2::GF2Vector& x_prime,
                           const Tolerances& tol = default_tolerances());

}  // namespace coset::qstate
