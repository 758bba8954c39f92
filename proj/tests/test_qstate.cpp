#include <doctest.h>

#include <cmath>
#include <complex>

#include "coset/gf2.hpp"
#include "coset/qstate.hpp"

using namespace coset;
using gf2::GF2Vector;
using gf2::Subspace;
using qstate::StateVector;

namespace {

GF2Vector v(const std::string& s) { return GF2Vector::from_string(s); }

Subspace span(std::initializer_list<std::string> rows, int n) {
  std::vector<GF2Vector> vecs;
  for (const std::string& r : rows) vecs.push_back(v(r));
  return gf2::subspace_from_vectors(vecs, n);
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

TEST_CASE("subspace states") {
  const StateVector zero = qstate::subspace_state(Subspace::zero(3));
  CHECK(zero.amps[0] == std::complex<double>(1.0));
  CHECK(zero.amps.cwiseAbs().sum() == doctest::Approx(1.0));

  const StateVector plus = qstate::subspace_state(Subspace::full(1));
  CHECK(plus.amps[0].real() == doctest::Approx(kInvSqrt2));
  CHECK(plus.amps[1].real() == doctest::Approx(kInvSqrt2));

  const StateVector bell = qstate::subspace_state(span({"11"}, 2));
  CHECK(bell.amps[0b00].real() == doctest::Approx(kInvSqrt2));
  CHECK(bell.amps[0b11].real() == doctest::Approx(kInvSqrt2));
  CHECK(std::abs(bell.amps[0b01]) == 0.0);
  CHECK(std::abs(bell.amps[0b10]) == 0.0);
}

TEST_CASE("coset states carry X shifts and Z phases") {
  const Subspace w = span({"11"}, 2);
  const StateVector base = qstate::coset_state(w, GF2Vector::zero(2), GF2Vector::zero(2));
  CHECK((base.amps - qstate::subspace_state(w).amps).norm() == doctest::Approx(0.0));

  // z = 01 flips the sign of the |11> branch.
  const StateVector signed_state = qstate::coset_state(w, v("00"), v("01"));
  CHECK(signed_state.amps[0b00].real() == doctest::Approx(kInvSqrt2));
  CHECK(signed_state.amps[0b11].real() == doctest::Approx(-kInvSqrt2));

  // x = 10 relocates the support to the nontrivial coset.
  const StateVector shifted = qstate::coset_state(w, v("10"), v("00"));
  CHECK(shifted.amps[0b10].real() == doctest::Approx(kInvSqrt2));
  CHECK(shifted.amps[0b01].real() == doctest::Approx(kInvSqrt2));

  CHECK(signed_state.amps.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)qstate::coset_state(w, v("100"), v("00")), ValidationError);
}

TEST_CASE("inner product closed form on hand cases") {
  const Subspace w = span({"11"}, 2);
  CHECK(qstate::inner_product_formula(w, w, v("00"), v("00"), v("00"), v("00")) == 1.0);

  const Subspace a = span({"10"}, 2);
  const Subspace b = span({"01"}, 2);
  CHECK(qstate::inner_product_formula(a, b, v("00"), v("00"), v("00"), v("00")) ==
        doctest::Approx(0.5));

  // 10 is not in span{11} + span{11}.
  CHECK(qstate::inner_product_formula(w, w, v("00"), v("00"), v("10"), v("00")) == 0.0);
}

TEST_CASE("inner product closed form matches the numeric overlap everywhere (n <= 3)") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k <= n; ++k) {
      const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k);
      struct Labeled {
        const Subspace* w;
        GF2Vector x, z;
        StateVector state;
      };
      std::vector<Labeled> states;
      for (const Subspace& w : gr) {
        for (const GF2Vector& x : gf2::coset_reps(w)) {
          for (const GF2Vector& z : gf2::coset_reps(gf2::dual(w))) {
            states.push_back({&w, x, z, qstate::coset_state(w, x, z)});
          }
        }
      }
      for (const Labeled& a : states) {
        for (const Labeled& b : states) {
          const double numeric = std::abs(a.state.amps.dot(b.state.amps));
          const double formula =
              qstate::inner_product_formula(*a.w, *b.w, a.x, a.z, b.x, b.z);
          CHECK(std::abs(numeric - formula) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("hadamard transform and the duality relation") {
  const StateVector plus = qstate::subspace_state(Subspace::full(1));
  const StateVector transformed = qstate::hadamard_dual(plus);
  CHECK(transformed.amps[0].real() == doctest::Approx(1.0));
  CHECK(std::abs(transformed.amps[1]) == doctest::Approx(0.0));

  // span{11} is self-dual and its state is Hadamard invariant.
  const StateVector bell = qstate::subspace_state(span({"11"}, 2));
  CHECK(qstate::equal_up_to_phase(qstate::hadamard_dual(bell), bell));

  // Applying the transform twice returns the input.
  const StateVector once = qstate::hadamard_dual(bell);
  const StateVector twice = qstate::hadamard_dual(once);
  CHECK((twice.amps - bell.amps).norm() <= 1e-12);

  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (const Subspace& w : gf2::enumerate_grassmannian(n, k)) {
        const Subspace d = gf2::dual(w);
        for (const GF2Vector& x : gf2::coset_reps(w)) {
          for (const GF2Vector& z : gf2::coset_reps(d)) {
            const StateVector lhs = qstate::hadamard_dual(qstate::coset_state(w, x, z));
            const StateVector rhs = qstate::coset_state(d, z, x);
            CHECK(qstate::equal_up_to_phase(lhs, rhs));
          }
        }
      }
    }
  }
}

TEST_CASE("coset projector sums reduce to diagonal coset indicators") {
  // W = F_2^n: single coset, identity operator.
  const Eigen::MatrixXcd full_op =
      qstate::coset_projector_sum_B(Subspace::full(2), GF2Vector::zero(2)).mat();
  CHECK((full_op - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-12);

  // W = {0}: rank-one projector on |x'>.
  const Eigen::MatrixXcd point =
      qstate::coset_projector_sum_B(Subspace::zero(2), v("10")).mat();
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(2, 2) = 1.0;
  CHECK((point - expected).cwiseAbs().maxCoeff() <= 1e-12);

  // W = span{11}: diagonal projector on {00, 11}.
  const Eigen::MatrixXcd diag =
      qstate::coset_projector_sum_B(span({"11"}, 2), GF2Vector::zero(2)).mat();
  Eigen::MatrixXcd expected2 = Eigen::MatrixXcd::Zero(4, 4);
  expected2(0, 0) = 1.0;
  expected2(3, 3) = 1.0;
  CHECK((diag - expected2).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("coset basis completeness: projectors over (x,z) resolve the identity") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (const Subspace& w : gf2::enumerate_grassmannian(n, k)) {
        const std::ptrdiff_t dim = std::ptrdiff_t(1) << n;
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
        for (const GF2Vector& x : gf2::coset_reps(w)) {
          for (const GF2Vector& z : gf2::coset_reps(gf2::dual(w))) {
            const StateVector s = qstate::coset_state(w, x, z);
            acc += s.amps * s.amps.adjoint();
          }
        }
        CHECK((acc - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
  }
}

TEST_CASE("operator norm") {
  CHECK(qstate::operator_norm(
            qstate::HermitianOperator(Eigen::MatrixXcd::Identity(5, 5))) ==
        doctest::Approx(1.0));

  const StateVector bell = qstate::subspace_state(span({"11"}, 2));
  const Eigen::MatrixXcd proj = bell.amps * bell.amps.adjoint();
  CHECK(qstate::operator_norm(qstate::HermitianOperator(proj)) == doctest::Approx(1.0));

  // Average of the three line-state projectors in F_2^2 has top eigenvalue 2/3.
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(4, 4);
  for (const Subspace& w : gf2::enumerate_grassmannian(2, 1)) {
    const StateVector s = qstate::subspace_state(w);
    acc += s.amps * s.amps.adjoint();
  }
  acc /= 3.0;
  CHECK(qstate::operator_norm(qstate::HermitianOperator(acc)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));

  // Adding a PSD term never shrinks the norm.
  Eigen::MatrixXcd g(4, 4);
  std::uint64_t state = 7;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      g(i, j) = {static_cast<double>(state >> 40) / double(1 << 24),
                 static_cast<double>((state >> 16) & 0xffffff) / double(1 << 24)};
    }
  }
  const Eigen::MatrixXcd psd = g * g.adjoint();
  const double before = qstate::operator_norm(qstate::HermitianOperator(proj));
  const double after = qstate::operator_norm(qstate::HermitianOperator(proj + psd));
  CHECK(after >= before - 1e-9);

  // Hermiticity is part of the type contract.
  Eigen::MatrixXcd skew = Eigen::MatrixXcd::Zero(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(qstate::HermitianOperator{skew}, ValidationError);
}

TEST_CASE("spectral norm of non-square and non-hermitian inputs") {
  Eigen::MatrixXcd a(2, 3);
  a.setZero();
  a(0, 0) = 3.0;
  a(1, 2) = {0.0, 4.0};
  CHECK(qstate::spectral_norm(a) == doctest::Approx(4.0));
}

TEST_CASE("norm-of-sum bound: equality and orthogonal instances") {
  const StateVector bell = qstate::subspace_state(span({"11"}, 2));
  const qstate::HermitianOperator p{Eigen::MatrixXcd(bell.amps * bell.amps.adjoint())};
  // Three copies with three mutually orthogonal permutations: equality.
  const std::vector<std::vector<int>> maps = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  const qstate::NormOfSumReport equal = qstate::check_norm_of_sum_bound({p, p, p}, maps);
  CHECK(equal.passed);
  CHECK(equal.lhs == doctest::Approx(3.0));
  CHECK(std::abs(equal.slack) <= 1e-9);

  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2), p1 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const qstate::NormOfSumReport ortho = qstate::check_norm_of_sum_bound(
      {qstate::HermitianOperator(p0), qstate::HermitianOperator(p1)}, {{0, 1}, {1, 0}});
  CHECK(ortho.passed);
  CHECK(ortho.lhs == doctest::Approx(1.0));

  // Family validation: non-orthogonal maps are rejected.
  CHECK_THROWS_AS((void)qstate::check_norm_of_sum_bound({p, p}, {{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS((void)qstate::check_norm_of_sum_bound({p, p}, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("product-of-coset-projector-sums bound (hand cases and sweep)") {
  const Subspace w = span({"11"}, 2);
  const qstate::ProjectorProductResult same =
      qstate::check_projector_product_bound(w, w, GF2Vector::zero(2), GF2Vector::zero(2));
  CHECK(same.bound == doctest::Approx(1.0));
  CHECK(same.within_bound);
  CHECK(same.lhs == doctest::Approx(1.0));  // tight at V = W

  const qstate::ProjectorProductResult crossed =
      qstate::check_projector_product_bound(span({"10"}, 2), span({"01"}, 2), GF2Vector::zero(2),
                            GF2Vector::zero(2));
  CHECK(crossed.bound == doctest::Approx(kInvSqrt2));
  CHECK(crossed.within_bound);

  // Exhaustive sweep at (3,1).
  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(3, 1);
  for (const Subspace& a : gr) {
    for (const Subspace& b : gr) {
      for (const GF2Vector& z : gf2::coset_reps(gf2::dual(a))) {
        for (const GF2Vector& x : gf2::coset_reps(b)) {
          CHECK(qstate::check_projector_product_bound(a, b, z, x).within_bound);
        }
      }
    }
  }
}

TEST_CASE("state construction guards") {
  Eigen::VectorXcd bad(4);
  bad.setZero();
  bad[0] = 0.5;
  CHECK_THROWS_AS((void)StateVector::normalized(2, bad), ValidationError);
  CHECK_THROWS_AS((void)StateVector::normalized(11, Eigen::VectorXcd::Zero(2048)),
                  ValidationError);
}
