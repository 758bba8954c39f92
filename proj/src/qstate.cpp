#include "coset/qstate.hpp"

#include <cmath>

namespace coset::qstate {

namespace {

void check_qubit_cap(int n, const char* what) {
  if (n > kMaxQubits) {
    throw ValidationError(std::string(what) + ": n = " + std::to_string(n) +
                          " exceeds the dense cap of " + std::to_string(kMaxQubits));
  }
}

}  // namespace

StateVector StateVector::normalized(int n, Eigen::VectorXcd amps, const Tolerances& tol) {
  check_qubit_cap(n, "StateVector");
  if (amps.size() != (std::ptrdiff_t(1) << n)) {
    throw ValidationError("StateVector: amplitude count is not 2^n");
  }
  if (std::abs(amps.squaredNorm() - 1.0) > tol.construction) {
    throw ValidationError("StateVector: squared norm deviates from 1 beyond tolerance");
  }
  return StateVector{n, std::move(amps)};
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd m, const Tolerances& tol) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) throw ValidationError("HermitianOperator: not square");
  const double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol.construction) {
    throw ValidationError("HermitianOperator: hermiticity deviation " + std::to_string(dev));
  }
}

StateVector subspace_state(const gf2::Subspace& w) {
  check_qubit_cap(w.n, "subspace_state");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(std::ptrdiff_t(1) << w.n);
  const double a = std::pow(2.0, -0.5 * w.k);
  for (const gf2::GF2Vector& u : w.elements()) amps[u.bits] = a;
  return StateVector::normalized(w.n, std::move(amps));
}

StateVector coset_state(const gf2::Subspace& w, const gf2::GF2Vector& x, const gf2::GF2Vector& z) {
  check_qubit_cap(w.n, "coset_state");
  if (x.n != w.n || z.n != w.n) throw ValidationError("coset_state: dimension mismatch");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(std::ptrdiff_t(1) << w.n);
  const double a = std::pow(2.0, -0.5 * w.k);
  for (const gf2::GF2Vector& u : w.elements()) {
    const double sign = dot(z, u) ? -1.0 : 1.0;
    amps[(x.bits ^ u.bits)] = sign * a;
  }
  return StateVector::normalized(w.n, std::move(amps));
}

double inner_product_formula(const gf2::Subspace& v, const gf2::Subspace& w,
                             const gf2::GF2Vector& x, const gf2::GF2Vector& z,
                             const gf2::GF2Vector& x2, const gf2::GF2Vector& z2) {
  if (v.n != w.n) throw ValidationError("inner_product_formula: ambient mismatch");
  if (v.k != w.k) throw ValidationError("inner_product_formula: subspace dimensions differ");
  std::vector<gf2::GF2Vector> sum_basis = v.basis();
  for (const gf2::GF2Vector& b : w.basis()) sum_basis.push_back(b);
  const gf2::Subspace vw = gf2::subspace_from_vectors(sum_basis, v.n);

  std::vector<gf2::GF2Vector> dual_basis = gf2::dual(v).basis();
  for (const gf2::GF2Vector& b : gf2::dual(w).basis()) dual_basis.push_back(b);
  const gf2::Subspace vw_dual = gf2::subspace_from_vectors(dual_basis, v.n);

  if (!gf2::member(vw, x + x2) || !gf2::member(vw_dual, z + z2)) return 0.0;
  return std::pow(2.0, gf2::intersect_dim(v, w) - v.k);
}

StateVector hadamard_dual(const StateVector& s) {
  Eigen::VectorXcd amps = s.amps;
  const double invsqrt2 = 1.0 / std::sqrt(2.0);
  for (int bit = 0; bit < s.n; ++bit) {
    const std::ptrdiff_t stride = std::ptrdiff_t(1) << bit;
    for (std::ptrdiff_t base = 0; base < amps.size(); base += 2 * stride) {
      for (std::ptrdiff_t i = base; i < base + stride; ++i) {
        const Complex lo = amps[i];
        const Complex hi = amps[i + stride];
        amps[i] = (lo + hi) * invsqrt2;
        amps[i + stride] = (lo - hi) * invsqrt2;
      }
    }
  }
  return StateVector{s.n, std::move(amps)};
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.n != b.n) return false;
  return std::abs(std::abs(a.amps.dot(b.amps)) - 1.0) <= tol;
}

namespace {

HermitianOperator projector_sum(const gf2::Subspace& sub, const std::vector<StateVector>& states) {
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << sub.n;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (const StateVector& s : states) acc += s.amps * s.amps.adjoint();
  return HermitianOperator(std::move(acc));
}

}  // namespace

HermitianOperator coset_projector_sum_B(const gf2::Subspace& w, const gf2::GF2Vector& x_prime) {
  check_qubit_cap(w.n, "coset_projector_sum_B");
  std::vector<StateVector> states;
  for (const gf2::GF2Vector& z : gf2::coset_reps(gf2::dual(w))) {
    states.push_back(coset_state(w, x_prime, z));
  }
  return projector_sum(w, states);
}

HermitianOperator coset_projector_sum_C(const gf2::Subspace& v, const gf2::GF2Vector& z) {
  check_qubit_cap(v.n, "coset_projector_sum_C");
  std::vector<StateVector> states;
  for (const gf2::GF2Vector& x : gf2::coset_reps(v)) {
    states.push_back(coset_state(v, x, z));
  }
  return projector_sum(v, states);
}

double operator_norm(const Eigen::MatrixXcd& hermitian, const Tolerances& tol) {
  return operator_norm(HermitianOperator(hermitian, tol));
}

double operator_norm(const HermitianOperator& h) {
  if (h.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.mat(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw InvariantViolation("operator_norm: eigensolver failed to converge");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::MatrixXcd gram = a * a.adjoint();
  // Symmetrize away the product round-off before the self-adjoint solve.
  gram = 0.5 * (gram + gram.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw InvariantViolation("spectral_norm: eigensolver failed to converge");
  }
  const double top = solver.eigenvalues().maxCoeff();
  return top <= 0.0 ? 0.0 : std::sqrt(top);
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& psd, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(psd);
  if (solver.info() != Eigen::Success) {
    throw InvariantViolation("psd_sqrt: eigensolver failed to converge");
  }
  if (solver.eigenvalues().minCoeff() < -tol.povm) {
    throw ValidationError("psd_sqrt: operator is not positive semidefinite");
  }
  Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

NormOfSumReport check_norm_of_sum_bound(const std::vector<HermitianOperator>& ops,
                           const std::vector<std::vector<int>>& index_maps,
                           const Tolerances& tol) {
  const std::size_t count = ops.size();
  if (count == 0) throw std::invalid_argument("check_norm_of_sum_bound: no operators");
  if (index_maps.size() != count) {
    throw std::invalid_argument("check_norm_of_sum_bound: need exactly one permutation per operator");
  }
  const std::ptrdiff_t dim = ops[0].dim();
  for (const HermitianOperator& p : ops) {
    if (p.dim() != dim) throw std::invalid_argument("check_norm_of_sum_bound: dimension mismatch");
  }
  // Mutual orthogonality of the index maps: distinct images at every index.
  for (std::size_t i = 0; i < count; ++i) {
    if (index_maps[i].size() != count) {
      throw std::invalid_argument("check_norm_of_sum_bound: permutation length mismatch");
    }
  }
  for (std::size_t at = 0; at < count; ++at) {
    std::vector<char> seen(count, 0);
    for (const std::vector<int>& pi : index_maps) {
      const int img = pi[at];
      if (img < 0 || static_cast<std::size_t>(img) >= count || seen[static_cast<std::size_t>(img)]) {
        throw std::invalid_argument("check_norm_of_sum_bound: index maps are not mutually orthogonal");
      }
      seen[static_cast<std::size_t>(img)] = 1;
    }
  }

  std::vector<Eigen::MatrixXcd> roots;
  roots.reserve(count);
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const HermitianOperator& p : ops) {
    roots.push_back(psd_sqrt(p.mat(), tol));
    total += p.mat();
  }

  NormOfSumReport rep;
  rep.lhs = operator_norm(HermitianOperator(0.5 * (total + total.adjoint().eval())));
  for (const std::vector<int>& pi : index_maps) {
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      worst = std::max(worst,
                       spectral_norm(roots[i] * roots[static_cast<std::size_t>(pi[i])]));
    }
    rep.rhs += worst;
  }
  rep.slack = rep.rhs - rep.lhs;
  rep.passed = rep.slack >= -tol.spectral;
  return rep;
}

ProjectorProductResult check_projector_product_bound(const gf2::Subspace& v, const gf2::Subspace& w,
                           const gf2::GF2Vector& z, const gf2::GF2Vector& x_prime,
                           const Tolerances& tol) {
  if (v.n != w.n || v.k != w.k) throw ValidationError("check_projector_product_bound: V, W must match in (n,k)");
  const Eigen::MatrixXcd product =
      coset_projector_sum_C(v, z).mat() * coset_projector_sum_B(w, x_prime).mat();
  ProjectorProductResult res;
  res.lhs = spectral_norm(product);
  res.bound = std::sqrt(std::pow(2.0, gf2::intersect_dim(v, w) - v.k));
  res.within_bound = res.lhs <= res.bound + tol.spectral;
  return res;
}

}  // namespace coset::qstate
