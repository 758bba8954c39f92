#include <doctest.h>

#include <cmath>

#include "coset/game.hpp"
#include "coset/gf2.hpp"
#include "coset/sqrt2.hpp"

using namespace coset;
using gf2::GF2Vector;
using gf2::Subspace;

TEST_CASE("exact Q(sqrt2) arithmetic") {
  const QSqrt2 a(Rational(1, 3), Rational(2, 5));
  const QSqrt2 b(Rational(-1, 2), Rational(1, 7));
  CHECK((a + b) - b == a);
  CHECK(a * b == b * a);
  CHECK((a / b) * b == a);
  CHECK(QSqrt2::sqrt2() * QSqrt2::sqrt2() == QSqrt2(2));
  CHECK(QSqrt2::sqrt_pow2(-3) * QSqrt2::sqrt_pow2(3) == QSqrt2(1));
  CHECK(QSqrt2::sqrt_pow2(4) == QSqrt2(4));

  // Sign resolution when the rational and sqrt2 parts disagree.
  CHECK(QSqrt2(Rational(3), Rational(-2)).sign() == 1);    // 3 > 2 sqrt2
  CHECK(QSqrt2(Rational(-3), Rational(2)).sign() == -1);   // mirrored: 2 sqrt2 < 3
  CHECK(QSqrt2(Rational(-1), Rational(1)).sign() == 1);    // sqrt2 > 1
  CHECK(QSqrt2(Rational(141421356, 100000000), Rational(-1)).sign() == -1);
  CHECK(QSqrt2(0, 0).sign() == 0);
  CHECK(QSqrt2(1).to_double() == 1.0);
  CHECK(QSqrt2::sqrt2().to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("closed-form bound values") {
  CHECK(game::winning_bound(2, 1) ==
        doctest::Approx((1.0 + std::sqrt(2.0)) / 3.0).epsilon(1e-14));
  CHECK(game::winning_bound(7, 0) == doctest::Approx(1.0));
  CHECK(game::winning_bound(4, 2) ==
        doctest::Approx((9.0 + 9.0 * std::sqrt(2.0)) / 35.0).epsilon(1e-14));
  // Exact form: (1 + sqrt2)/3 at (2,1).
  CHECK(game::winning_bound_exact(2, 1) ==
        QSqrt2(Rational(1, 3), Rational(1, 3)));
  for (int n = 1; n <= 20; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(game::winning_bound_exact(n, k) == game::winning_bound_exact(n, n - k));
    }
  }
}

TEST_CASE("rate envelope") {
  CHECK(game::winning_rate_envelope(0.0) == 1.0);
  CHECK(game::winning_rate_envelope(1.0) == 1.0);
  CHECK(std::abs(game::winning_rate_envelope(0.5) - std::pow(2.0, -0.25)) <= 1e-12);
  CHECK(std::abs(game::winning_rate_envelope(0.25) - std::pow(2.0, -0.125)) <= 1e-12);
  CHECK_THROWS_AS((void)game::winning_rate_envelope(1.5), std::invalid_argument);
  CHECK_THROWS_AS((void)game::winning_rate_envelope(-0.1), std::invalid_argument);
}

TEST_CASE("consecutive intersection-count ratios and the geometric-sum bound") {
  const game::RatioCheckReport r84 = game::ratio_check(8, 4);
  CHECK(r84.passed);
  REQUIRE(r84.ratios.size() == 3);
  for (const auto& ratio : r84.ratios) CHECK(ratio.value <= Rational(2, 9));

  const game::RatioCheckReport vacuous = game::ratio_check(2, 1);
  CHECK(vacuous.passed);
  CHECK(vacuous.ratios.empty());

  const game::RatioCheckReport big = game::ratio_check(20, 10);
  CHECK(big.passed);
  CHECK(big.g_bound_ok);
  // g(20,10) <= constant * 2^-5.
  CHECK(big.g_value.to_double() <= 3.063 * std::pow(2.0, -5.0));

  CHECK_THROWS_AS((void)game::ratio_check(4, 3), std::invalid_argument);
}

TEST_CASE("unentangled optimum: closed form and eigensolve oracle") {
  CHECK(game::unentangled_value_exact(2, 1) == Rational(2, 3));
  CHECK(game::unentangled_value_exact(4, 2) == Rational(2, 5));
  CHECK(game::unentangled_value_exact(5, 0) == Rational(1));
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(std::abs(game::unentangled_value(n, k) - game::unentangled_value_oracle(n, k)) <=
            1e-9);
    }
  }
}

TEST_CASE("unentangled oracle agrees with the Gram-matrix eigenvalue route") {
  // ||(1/N) sum |W><W||| equals 1/N times the top eigenvalue of the N x N
  // Gram matrix of the subspace states; an independent algebraic route.
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 2}}) {
    const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k);
    const std::size_t N = gr.size();
    std::vector<Eigen::VectorXcd> states;
    for (const Subspace& w : gr) states.push_back(qstate::subspace_state(w).amps);
    Eigen::MatrixXcd gram(N, N);
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) gram(i, j) = states[i].dot(states[j]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    const double via_gram = es.eigenvalues().maxCoeff() / static_cast<double>(N);
    CHECK(via_gram == doctest::Approx(game::unentangled_value_oracle(n, k)).epsilon(1e-10));
    CHECK(via_gram == doctest::Approx(game::unentangled_value(n, k)).epsilon(1e-10));
  }
}

TEST_CASE("deterministic strategies never beat the unentangled optimum") {
  const int n = 3, k = 1;
  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k);
  const double opt = game::unentangled_value(n, k);

  game::DeterministicStrategy zero;
  zero.f.assign(gr.size(), GF2Vector::zero(n));
  zero.g.assign(gr.size(), GF2Vector::zero(n));
  CHECK(game::deterministic_value(zero, n, k) == doctest::Approx(opt).epsilon(1e-10));

  for (std::uint64_t seed = 0; seed < 32; ++seed) {
    const game::DeterministicStrategy ds = game::make_random_deterministic_strategy(n, k, seed);
    CHECK(game::deterministic_value(ds, n, k) <= opt + 1e-9);
  }

  // (2,1) with f picking a nonmember vector everywhere, g = 0.
  game::DeterministicStrategy shifty;
  for (const Subspace& w : gf2::enumerate_grassmannian(2, 1)) {
    for (std::uint32_t x = 1; x < 4; ++x) {
      if (!gf2::member(w, GF2Vector(x, 2))) {
        shifty.f.emplace_back(x, 2);
        break;
      }
    }
    shifty.g.push_back(GF2Vector::zero(2));
  }
  CHECK(game::deterministic_value(shifty, 2, 1) <= 2.0 / 3.0 + 1e-9);
}

TEST_CASE("named strategies hit their closed-form values") {
  SUBCASE("Bob measures the coset exactly, Charlie guesses zero") {
    const game::Strategy s = game::make_computational_bob_strategy(2, 1);
    CHECK(game::p_win(s) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("discarding channel with uniform guessing wins 2^-n") {
    for (int n = 2; n <= 3; ++n) {
      const game::Strategy s = game::make_discard_and_guess_strategy(n, 1);
      CHECK(game::p_win(s) == doctest::Approx(std::pow(2.0, -n)).epsilon(1e-12));
    }
  }
  SUBCASE("k = n degenerate game is winnable exactly") {
    const game::Strategy s = game::make_hadamard_charlie_strategy(2);
    CHECK(game::p_win(s) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("Charlie-guess value generalizes to 2^-k") {
    const game::Strategy s = game::make_computational_bob_strategy(3, 2);
    CHECK(game::p_win(s) == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("choi states are unit-trace and PSD") {
  SUBCASE("identity channel gives the Bell projector") {
    game::Channel id(1, 2, 1, {Eigen::MatrixXcd::Identity(2, 2)});
    const Eigen::MatrixXcd rho = game::choi_state(id).mat();
    CHECK(rho.trace().real() == doctest::Approx(1.0));
    Eigen::VectorXcd bell(4);
    bell << 1, 0, 0, 1;
    bell /= std::sqrt(2.0);
    CHECK((rho - bell * bell.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("fully depolarizing channel gives the maximally mixed state") {
    std::vector<Eigen::MatrixXcd> kraus;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(2, 2);
        k(i, j) = 1.0 / std::sqrt(2.0);
        kraus.push_back(k);
      }
    }
    game::Channel depol(1, 2, 1, std::move(kraus));
    const Eigen::MatrixXcd rho = game::choi_state(depol).mat();
    CHECK(rho.trace().real() == doctest::Approx(1.0));
    CHECK((rho - Eigen::MatrixXcd::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("random channel is PSD with unit trace") {
    const game::Strategy s = game::make_random_pvm_strategy(2, 1, 11);
    const Eigen::MatrixXcd rho = game::choi_state(s.channel).mat();
    CHECK(rho.trace().real() == doctest::Approx(1.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("extended-game evaluation equals the direct expectation") {
  {
    const game::Strategy s = game::make_discard_and_guess_strategy(2, 1);
    CHECK(game::p_win_extended(s) == doctest::Approx(0.25).epsilon(1e-12));
  }
  {
    const game::Strategy s = game::make_computational_bob_strategy(2, 1);
    CHECK(game::p_win_extended(s) == doctest::Approx(0.5).epsilon(1e-12));
  }
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const game::Strategy s = game::make_random_pvm_strategy(2, 1, seed);
    CHECK(std::abs(game::p_win(s) - game::p_win_extended(s)) <= 1e-9);
  }
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const game::Strategy s = game::make_random_pvm_strategy(3, 1, seed);
    CHECK(std::abs(game::p_win(s) - game::p_win_extended(s)) <= 1e-9);
  }
}

TEST_CASE("dual strategies achieve identical winning probabilities") {
  auto roundtrip = [](const game::Strategy& s) {
    const double direct = game::p_win(s);
    const game::Strategy d = game::dualize(s);
    CHECK(d.n == s.n);
    CHECK(d.k == s.n - s.k);
    CHECK(std::abs(game::p_win(d) - direct) <= 1e-9);
    const game::Strategy dd = game::dualize(d);
    CHECK(std::abs(game::p_win(dd) - direct) <= 1e-9);
  };
  roundtrip(game::make_discard_and_guess_strategy(2, 1));
  roundtrip(game::make_computational_bob_strategy(2, 1));
  roundtrip(game::make_computational_bob_strategy(3, 1));
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    roundtrip(game::make_random_pvm_strategy(2, 1, seed));
  }
  roundtrip(game::make_random_pvm_strategy(3, 2, 5));
}

TEST_CASE("every evaluated strategy respects the closed-form bound") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const game::Strategy s = game::make_random_pvm_strategy(2, 1, seed);
    CHECK(game::p_win(s) <= game::winning_bound(2, 1) + 1e-9);
  }
  CHECK(game::p_win(game::make_computational_bob_strategy(2, 1)) <=
        game::winning_bound(2, 1) + 1e-9);
}

TEST_CASE("norm-sum pipeline inequalities hold for seeded strategies") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const game::NormSumBoundReport rep = game::norm_sum_bound_check(2, 1, seed);
    CHECK(rep.passed);
    REQUIRE(rep.checks.size() == 6);
    for (const game::InequalityCheck& c : rep.checks) CHECK(c.passed);
  }
  const game::NormSumBoundReport rep31 = game::norm_sum_bound_check(3, 1, 1);
  CHECK(rep31.passed);
}

TEST_CASE("extended-game equality holds at (4,2) and for degenerate k") {
  const game::Strategy s42 = game::make_random_pvm_strategy(4, 2, 3);
  CHECK(std::abs(game::p_win(s42) - game::p_win_extended(s42)) <= 1e-9);

  const game::Strategy s20 = game::make_random_pvm_strategy(2, 0, 1);
  CHECK(std::abs(game::p_win(s20) - game::p_win_extended(s20)) <= 1e-9);
  const game::Strategy s22 = game::make_random_pvm_strategy(2, 2, 1);
  CHECK(std::abs(game::p_win(s22) - game::p_win_extended(s22)) <= 1e-9);
}

TEST_CASE("norm-sum pipeline covers k > n/2 and single-subspace games") {
  CHECK(game::norm_sum_bound_check(3, 2, 0).passed);
  CHECK(game::norm_sum_bound_check(2, 2, 0).passed);
  CHECK(game::norm_sum_bound_check(2, 0, 0).passed);
}

TEST_CASE("monte carlo estimate brackets the exact value") {
  const game::Strategy s = game::make_computational_bob_strategy(2, 1);
  const game::McEstimate est = game::p_win_mc(s, 100000, 7);
  const double exact = game::p_win(s);
  CHECK(std::abs(est.value - exact) <= 4.0 * est.std_error);
  CHECK(est.std_error > 0.0);
  CHECK_THROWS_AS((void)game::p_win_mc(s, 0, 7), std::invalid_argument);
}

TEST_CASE("strategy validation rejects malformed POVMs and channels") {
  const std::ptrdiff_t din = 4;
  // Non trace-preserving channel.
  CHECK_THROWS_AS(game::Channel(2, 4, 1, {0.5 * Eigen::MatrixXcd::Identity(din, din)}),
                  ValidationError);

  // POVM that does not resolve the identity.
  game::Channel ch(2, 4, 1, {Eigen::MatrixXcd::Identity(din, din)});
  std::vector<std::vector<Eigen::MatrixXcd>> bob(
      3, std::vector<Eigen::MatrixXcd>(2, 0.25 * Eigen::MatrixXcd::Identity(4, 4)));
  std::vector<std::vector<Eigen::MatrixXcd>> charlie(
      3, std::vector<Eigen::MatrixXcd>(2, 0.5 * Eigen::MatrixXcd::Identity(1, 1)));
  CHECK_THROWS_AS(game::Strategy(2, 1, ch, bob, charlie), ValidationError);
}

TEST_CASE("the closed-form bound dominates the unentangled optimum") {
  for (int n = 1; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(QSqrt2(game::unentangled_value_exact(n, k)) <= game::winning_bound_exact(n, k));
    }
  }
}

TEST_CASE("finite-n bounds stay near the asymptotic envelope") {
  for (int n = 8; n <= 16; ++n) {
    for (const double rate : {0.25, 0.5}) {
      const int k = static_cast<int>(std::floor(n * rate));
      CHECK(std::pow(game::winning_bound(n, k), 1.0 / n) <=
            game::winning_rate_envelope(rate) + 0.05);
    }
  }
}
