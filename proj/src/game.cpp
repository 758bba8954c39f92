#include "coset/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "coset/parallel.hpp"
#include "coset/perms.hpp"

namespace coset::game {

using gf2::BigInt;
using gf2::GF2Vector;
using gf2::Subspace;

namespace {

// Seeded generator with a pinned Gaussian recipe so goldens do not depend on
// the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(next()) * bound) >> 64);
  }

  Eigen::MatrixXcd gaussian_matrix(std::ptrdiff_t rows, std::ptrdiff_t cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
      for (std::ptrdiff_t j = 0; j < cols; ++j) m(i, j) = {gaussian(), gaussian()};
    }
    return m;
  }

  Eigen::MatrixXcd random_unitary(std::ptrdiff_t d) {
    const Eigen::MatrixXcd g = gaussian_matrix(d, d);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::ptrdiff_t j = 0; j < d; ++j) {
      const std::complex<double> diag = r(j, j);
      const double mag = std::abs(diag);
      if (mag > 0) q.col(j) *= diag / mag;
    }
    return q;
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0;
};

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::ptrdiff_t i = 0; i < a.rows(); ++i) {
    for (std::ptrdiff_t j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd kron3(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                       const Eigen::MatrixXcd& c) {
  return kron(a, kron(b, c));
}

// Tr[(B (x) C) Y] without materializing the Kronecker product.
std::complex<double> trace_kron_times(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& c,
                                      const Eigen::MatrixXcd& y) {
  const std::ptrdiff_t db = b.rows(), dc = c.rows();
  std::complex<double> acc = 0;
  for (std::ptrdiff_t i = 0; i < db; ++i) {
    for (std::ptrdiff_t j = 0; j < db; ++j) {
      if (b(i, j) == std::complex<double>(0)) continue;
      acc += b(i, j) * (c * y.block(j * dc, i * dc, dc, dc)).trace();
    }
  }
  return acc;
}

Eigen::MatrixXcd hadamard_matrix(int n) {
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << n;
  const double scale = std::pow(2.0, -0.5 * n);
  Eigen::MatrixXcd h(dim, dim);
  for (std::ptrdiff_t i = 0; i < dim; ++i) {
    for (std::ptrdiff_t j = 0; j < dim; ++j) {
      h(i, j) = (std::popcount(static_cast<std::uint64_t>(i & j)) & 1) ? -scale : scale;
    }
  }
  return h;
}

void check_game_cap(int n, int cap, const char* what) {
  if (n > cap) {
    throw ValidationError(std::string(what) + ": n = " + std::to_string(n) +
                          " exceeds the supported cap of " + std::to_string(cap));
  }
}

BigInt bound_term(int n, int k, int m) {
  return (BigInt(1) << (m * m)) * gf2::gaussian_binomial(n - k, m) * gf2::gaussian_binomial(k, m);
}

}  // namespace

Channel::Channel(int n_in_, int dim_b_, int dim_c_, std::vector<Eigen::MatrixXcd> kraus_,
                 const Tolerances& tol)
    : n_in(n_in_), dim_b(dim_b_), dim_c(dim_c_), kraus(std::move(kraus_)) {
  if (n_in < 1 || n_in > qstate::kMaxQubits) throw ValidationError("Channel: bad input size");
  if (dim_b < 1 || dim_c < 1) throw ValidationError("Channel: output dims must be positive");
  if (kraus.empty()) throw ValidationError("Channel: no Kraus operators");
  const std::ptrdiff_t din = std::ptrdiff_t(1) << n_in;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(din, din);
  for (const Eigen::MatrixXcd& k : kraus) {
    if (k.rows() != dim_out() || k.cols() != din) {
      throw ValidationError("Channel: Kraus operator has wrong shape");
    }
    acc += k.adjoint() * k;
  }
  const double dev = (acc - Eigen::MatrixXcd::Identity(din, din)).cwiseAbs().maxCoeff();
  if (dev > tol.povm) {
    throw ValidationError("Channel: not trace preserving, deviation " + std::to_string(dev));
  }
}

Eigen::MatrixXcd Channel::apply(const Eigen::MatrixXcd& rho) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_out(), dim_out());
  for (const Eigen::MatrixXcd& k : kraus) out += k * rho * k.adjoint();
  return out;
}

namespace {

void validate_povm_list(const std::vector<std::vector<Eigen::MatrixXcd>>& povms,
                        std::size_t subspace_count, std::size_t outcomes, std::ptrdiff_t dim,
                        const Tolerances& tol, const char* who) {
  if (povms.size() != subspace_count) {
    throw ValidationError(std::string(who) + ": POVM collection size != |Gr|");
  }
  for (std::size_t wi = 0; wi < povms.size(); ++wi) {
    const auto& povm = povms[wi];
    if (povm.size() != outcomes) {
      throw ValidationError(std::string(who) + ": subspace " + std::to_string(wi) +
                            " has wrong outcome count");
    }
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t oi = 0; oi < povm.size(); ++oi) {
      const Eigen::MatrixXcd& e = povm[oi];
      if (e.rows() != dim || e.cols() != dim) {
        throw ValidationError(std::string(who) + ": element shape mismatch at subspace " +
                              std::to_string(wi));
      }
      if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol.povm) {
        throw ValidationError(std::string(who) + ": element not Hermitian at subspace " +
                              std::to_string(wi) + ", outcome " + std::to_string(oi));
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -tol.povm) {
        throw ValidationError(std::string(who) + ": element not PSD at subspace " +
                              std::to_string(wi) + ", outcome " + std::to_string(oi));
      }
      acc += e;
    }
    if ((acc - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol.povm) {
      throw ValidationError(std::string(who) + ": POVM does not sum to identity at subspace " +
                            std::to_string(wi));
    }
  }
}

}  // namespace

Strategy::Strategy(int n_, int k_, Channel channel_,
                   std::vector<std::vector<Eigen::MatrixXcd>> bob_,
                   std::vector<std::vector<Eigen::MatrixXcd>> charlie_, const Tolerances& tol,
                   std::uint64_t cap)
    : n(n_), k(k_), channel(std::move(channel_)), bob(std::move(bob_)), charlie(std::move(charlie_)) {
  if (!(0 <= k && k <= n)) throw ValidationError("Strategy: need 0 <= k <= n");
  if (channel.n_in != n) throw ValidationError("Strategy: channel input size != n");
  const BigInt count = gf2::gaussian_binomial(n, k);
  if (count > cap) throw CapExceeded("Strategy: Grassmannian exceeds cap", count.str());
  const auto subspaces = static_cast<std::size_t>(count);
  validate_povm_list(bob, subspaces, std::size_t(1) << (n - k), channel.dim_b, tol, "Strategy(bob)");
  validate_povm_list(charlie, subspaces, std::size_t(1) << k, channel.dim_c, tol,
                     "Strategy(charlie)");
}

double p_win(const Strategy& s, int threads) {
  check_game_cap(s.n, 6, "p_win");
  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(s.n, s.k);
  const std::size_t N = gr.size();
  std::vector<double> partial(N, 0.0);

  parallel_for(N, threads, [&](std::size_t wi) {
    const Subspace& w = gr[wi];
    const std::vector<GF2Vector> xs = gf2::coset_reps(w);
    const std::vector<GF2Vector> zs = gf2::coset_reps(gf2::dual(w));
    double acc = 0;
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      for (std::size_t zi = 0; zi < zs.size(); ++zi) {
        const qstate::StateVector psi = qstate::coset_state(w, xs[xi], zs[zi]);
        const Eigen::MatrixXcd rho_out = s.channel.apply(psi.amps * psi.amps.adjoint());
        acc += std::real(trace_kron_times(s.bob[wi][xi], s.charlie[wi][zi], rho_out));
      }
    }
    partial[wi] = acc;
  });

  const double total = std::accumulate(partial.begin(), partial.end(), 0.0);
  return total / (static_cast<double>(N) * std::pow(2.0, s.n));
}

qstate::HermitianOperator choi_state(const Channel& c) {
  check_game_cap(c.n_in, 5, "choi_state");
  const std::ptrdiff_t din = std::ptrdiff_t(1) << c.n_in;
  const std::ptrdiff_t dout = c.dim_out();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(din * dout, din * dout);
  Eigen::VectorXcd w(din * dout);
  for (const Eigen::MatrixXcd& k : c.kraus) {
    for (std::ptrdiff_t i = 0; i < din; ++i) w.segment(i * dout, dout) = k.col(i);
    rho += w * w.adjoint();
  }
  rho /= static_cast<double>(din);
  return qstate::HermitianOperator(std::move(rho));
}

double p_win_extended(const Strategy& s) {
  check_game_cap(s.n, 4, "p_win_extended");
  const Eigen::MatrixXcd rho = choi_state(s.channel).mat();
  const std::ptrdiff_t dout = s.channel.dim_out();
  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(s.n, s.k);

  double total = 0;
  for (std::size_t wi = 0; wi < gr.size(); ++wi) {
    const Subspace& w = gr[wi];
    const std::vector<GF2Vector> xs = gf2::coset_reps(w);
    const std::vector<GF2Vector> zs = gf2::coset_reps(gf2::dual(w));
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      for (std::size_t zi = 0; zi < zs.size(); ++zi) {
        const qstate::StateVector psi = qstate::coset_state(w, xs[xi], zs[zi]);
        // Y = sum_{a,a'} psi_a conj(psi_a') rho.block(a' dout, a dout)
        Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(dout, dout);
        for (std::ptrdiff_t a = 0; a < psi.dim(); ++a) {
          if (psi.amps[a] == std::complex<double>(0)) continue;
          for (std::ptrdiff_t a2 = 0; a2 < psi.dim(); ++a2) {
            if (psi.amps[a2] == std::complex<double>(0)) continue;
            y += psi.amps[a] * std::conj(psi.amps[a2]) * rho.block(a2 * dout, a * dout, dout, dout);
          }
        }
        total += std::real(trace_kron_times(s.bob[wi][xi], s.charlie[wi][zi], y));
      }
    }
  }
  return total / static_cast<double>(gr.size());
}

McEstimate p_win_mc(const Strategy& s, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("p_win_mc: shots must be >= 1");
  check_game_cap(s.n, 6, "p_win_mc");
  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(s.n, s.k);
  const std::size_t N = gr.size();
  const std::size_t nx = std::size_t(1) << (s.n - s.k);
  const std::size_t nz = std::size_t(1) << s.k;

  // Joint outcome distribution for every (W, x, z) preparation.
  std::vector<std::vector<double>> cumulative(N * nx * nz);
  for (std::size_t wi = 0; wi < N; ++wi) {
    const Subspace& w = gr[wi];
    const std::vector<GF2Vector> xs = gf2::coset_reps(w);
    const std::vector<GF2Vector> zs = gf2::coset_reps(gf2::dual(w));
    for (std::size_t xi = 0; xi < nx; ++xi) {
      for (std::size_t zi = 0; zi < nz; ++zi) {
        const qstate::StateVector psi = qstate::coset_state(w, xs[xi], zs[zi]);
        const Eigen::MatrixXcd rho_out = s.channel.apply(psi.amps * psi.amps.adjoint());
        std::vector<double>& cdf = cumulative[(wi * nx + xi) * nz + zi];
        cdf.reserve(nx * nz);
        double acc = 0;
        for (std::size_t xo = 0; xo < nx; ++xo) {
          for (std::size_t zo = 0; zo < nz; ++zo) {
            acc += std::max(
                0.0, std::real(trace_kron_times(s.bob[wi][xo], s.charlie[wi][zo], rho_out)));
            cdf.push_back(acc);
          }
        }
      }
    }
  }

  Rng rng(seed);
  std::uint64_t wins = 0;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const std::size_t wi = rng.below(N);
    const std::size_t xi = rng.below(nx);
    const std::size_t zi = rng.below(nz);
    const std::vector<double>& cdf = cumulative[(wi * nx + xi) * nz + zi];
    const double draw = rng.uniform() * cdf.back();
    const std::size_t pick = static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), draw) - cdf.begin());
    const std::size_t xo = pick / nz;
    const std::size_t zo = pick % nz;
    if (xo == xi && zo == zi) ++wins;
  }
  McEstimate est;
  est.shots = shots;
  est.value = static_cast<double>(wins) / static_cast<double>(shots);
  est.std_error = std::sqrt(std::max(est.value * (1.0 - est.value), 1e-12) /
                            static_cast<double>(shots));
  return est;
}

QSqrt2 winning_bound_exact(int n, int k) {
  if (!(0 <= k && k <= n && n <= 64)) {
    throw std::invalid_argument("winning_bound: need 0 <= k <= n <= 64");
  }
  QSqrt2 acc(0);
  for (int m = 0; m <= k; ++m) {
    const BigInt t = bound_term(n, k, m);
    if (t == 0) continue;
    acc = acc + QSqrt2(Rational(t)) * QSqrt2::sqrt_pow2(-m);
  }
  return acc / QSqrt2(Rational(gf2::gaussian_binomial(n, k)));
}

double winning_bound(int n, int k) { return winning_bound_exact(n, k).to_double(); }

double winning_rate_envelope(double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("winning_rate_envelope: rate must be in [0,1]");
  }
  const double rstar = std::min(rate, 1.0 - rate);
  return std::exp2(-0.5 * rstar);
}

RatioCheckReport ratio_check(int n, int k) {
  if (!(0 <= k && 2 * k <= n)) {
    throw std::invalid_argument("ratio_check: requires 0 <= k <= n/2");
  }
  RatioCheckReport rep;
  rep.passed = true;
  for (int m = 0; m + 2 <= k; ++m) {
    const BigInt hi = gf2::intersection_count(n, k, k - m);
    const BigInt lo = gf2::intersection_count(n, k, k - m - 1);
    RatioCheckReport::Ratio r;
    r.m = m;
    r.value = Rational(hi, lo);
    r.ok = r.value <= Rational(2, 9);
    rep.passed = rep.passed && r.ok;
    rep.ratios.push_back(std::move(r));
  }
  rep.g_value = winning_bound_exact(n, k);
  const QSqrt2 nine(9), two(2), one(1);
  const QSqrt2 constant = nine / (two * (nine / (two * QSqrt2::sqrt2()) - one)) + one;
  rep.g_bound = constant * QSqrt2::sqrt_pow2(-k);
  rep.g_bound_ok = rep.g_value <= rep.g_bound;
  rep.passed = rep.passed && rep.g_bound_ok;
  return rep;
}

Rational unentangled_value_exact(int n, int k) {
  if (!(0 <= k && k <= n && n <= 64)) {
    throw std::invalid_argument("unentangled_value: need 0 <= k <= n <= 64");
  }
  Rational acc = 0;
  for (int m = 0; m <= k; ++m) {
    const BigInt t = bound_term(n, k, m);
    if (t == 0) continue;
    acc += Rational(t, BigInt(1) << m);
  }
  return acc / Rational(gf2::gaussian_binomial(n, k));
}

double unentangled_value(int n, int k) {
  return unentangled_value_exact(n, k).convert_to<double>();
}

double unentangled_value_oracle(int n, int k, std::uint64_t cap) {
  check_game_cap(n, 5, "unentangled_value_oracle");
  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k, cap);
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << n;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (const Subspace& w : gr) {
    const qstate::StateVector s = qstate::subspace_state(w);
    acc += s.amps * s.amps.adjoint();
  }
  acc /= static_cast<double>(gr.size());
  return qstate::operator_norm(qstate::HermitianOperator(std::move(acc)));
}

double deterministic_value(const DeterministicStrategy& ds, int n, int k, std::uint64_t cap) {
  check_game_cap(n, 5, "deterministic_value");
  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k, cap);
  if (ds.f.size() != gr.size() || ds.g.size() != gr.size()) {
    throw ValidationError("deterministic_value: strategy not defined on every subspace");
  }
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << n;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t wi = 0; wi < gr.size(); ++wi) {
    const qstate::StateVector s = qstate::coset_state(gr[wi], ds.f[wi], ds.g[wi]);
    acc += s.amps * s.amps.adjoint();
  }
  acc /= static_cast<double>(gr.size());
  return qstate::operator_norm(qstate::HermitianOperator(std::move(acc)));
}

Strategy dualize(const Strategy& s) {
  const std::ptrdiff_t db = s.channel.dim_b, dc = s.channel.dim_c;
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(db * dc, db * dc);
  for (std::ptrdiff_t b = 0; b < db; ++b) {
    for (std::ptrdiff_t c = 0; c < dc; ++c) swap(c * db + b, b * dc + c) = 1.0;
  }
  const Eigen::MatrixXcd had = hadamard_matrix(s.n);
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.reserve(s.channel.kraus.size());
  for (const Eigen::MatrixXcd& k : s.channel.kraus) kraus.push_back(swap * k * had);
  Channel dual_channel(s.n, s.channel.dim_c, s.channel.dim_b, std::move(kraus));

  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(s.n, s.k);
  const std::vector<Subspace> gr_dual = gf2::enumerate_grassmannian(s.n, s.n - s.k);
  std::vector<std::vector<Eigen::MatrixXcd>> bob(gr_dual.size());
  std::vector<std::vector<Eigen::MatrixXcd>> charlie(gr_dual.size());
  for (std::size_t wi = 0; wi < gr.size(); ++wi) {
    const Subspace perp = gf2::dual(gr[wi]);
    const auto it = std::lower_bound(
        gr_dual.begin(), gr_dual.end(), perp,
        [](const Subspace& a, const Subspace& b) { return a.rows < b.rows; });
    const std::size_t di = static_cast<std::size_t>(it - gr_dual.begin());
    bob[di] = s.charlie[wi];     // guesses over CS(W^perp)
    charlie[di] = s.bob[wi];     // guesses over CS(W) = CS((W^perp)^perp)
  }
  return Strategy(s.n, s.n - s.k, std::move(dual_channel), std::move(bob), std::move(charlie));
}

Strategy make_discard_and_guess_strategy(int n, int k) {
  const std::ptrdiff_t din = std::ptrdiff_t(1) << n;
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.reserve(static_cast<std::size_t>(din));
  for (std::ptrdiff_t j = 0; j < din; ++j) {
    Eigen::MatrixXcd row = Eigen::MatrixXcd::Zero(1, din);
    row(0, j) = 1.0;
    kraus.push_back(std::move(row));
  }
  Channel ch(n, 1, 1, std::move(kraus));
  const std::size_t N = static_cast<std::size_t>(gf2::gaussian_binomial(n, k));
  const std::size_t nx = std::size_t(1) << (n - k);
  const std::size_t nz = std::size_t(1) << k;
  const Eigen::MatrixXcd bx = Eigen::MatrixXcd::Constant(1, 1, 1.0 / static_cast<double>(nx));
  const Eigen::MatrixXcd cz = Eigen::MatrixXcd::Constant(1, 1, 1.0 / static_cast<double>(nz));
  std::vector<std::vector<Eigen::MatrixXcd>> bob(N, std::vector<Eigen::MatrixXcd>(nx, bx));
  std::vector<std::vector<Eigen::MatrixXcd>> charlie(N, std::vector<Eigen::MatrixXcd>(nz, cz));
  return Strategy(n, k, std::move(ch), std::move(bob), std::move(charlie));
}

Strategy make_computational_bob_strategy(int n, int k) {
  const std::ptrdiff_t din = std::ptrdiff_t(1) << n;
  Channel ch(n, static_cast<int>(din), 1, {Eigen::MatrixXcd::Identity(din, din)});
  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k);
  std::vector<std::vector<Eigen::MatrixXcd>> bob, charlie;
  for (const Subspace& w : gr) {
    std::vector<Eigen::MatrixXcd> povm;
    for (const GF2Vector& x : gf2::coset_reps(w)) {
      Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(din, din);
      for (const GF2Vector& u : w.elements()) {
        const std::ptrdiff_t label = x.bits ^ u.bits;
        proj(label, label) = 1.0;
      }
      povm.push_back(std::move(proj));
    }
    bob.push_back(std::move(povm));

    std::vector<Eigen::MatrixXcd> guess;
    const std::size_t nz = std::size_t(1) << k;
    for (std::size_t zi = 0; zi < nz; ++zi) {
      guess.push_back(Eigen::MatrixXcd::Constant(1, 1, zi == 0 ? 1.0 : 0.0));
    }
    charlie.push_back(std::move(guess));
  }
  return Strategy(n, k, std::move(ch), std::move(bob), std::move(charlie));
}

Strategy make_hadamard_charlie_strategy(int n) {
  const int k = n;
  const std::ptrdiff_t din = std::ptrdiff_t(1) << n;
  Channel ch(n, 1, static_cast<int>(din), {Eigen::MatrixXcd::Identity(din, din)});
  const Eigen::MatrixXcd had = hadamard_matrix(n);
  // Single subspace W = F_2^n; CS(W^perp) is all of F_2^n.
  std::vector<std::vector<Eigen::MatrixXcd>> bob(1), charlie(1);
  bob[0].push_back(Eigen::MatrixXcd::Identity(1, 1));
  for (std::ptrdiff_t z = 0; z < din; ++z) {
    charlie[0].push_back(had.col(z) * had.col(z).adjoint());
  }
  return Strategy(n, k, std::move(ch), std::move(bob), std::move(charlie));
}

namespace {

std::vector<Eigen::MatrixXcd> random_rank1_pvm(Rng& rng, std::ptrdiff_t dim) {
  const Eigen::MatrixXcd u = rng.random_unitary(dim);
  std::vector<Eigen::MatrixXcd> povm;
  povm.reserve(static_cast<std::size_t>(dim));
  for (std::ptrdiff_t i = 0; i < dim; ++i) povm.push_back(u.col(i) * u.col(i).adjoint());
  return povm;
}

}  // namespace

Strategy make_random_pvm_strategy(int n, int k, std::uint64_t seed) {
  Rng rng(seed);
  const std::ptrdiff_t din = std::ptrdiff_t(1) << n;
  const std::ptrdiff_t db = std::ptrdiff_t(1) << (n - k);
  const std::ptrdiff_t dc = std::ptrdiff_t(1) << k;
  Channel ch(n, static_cast<int>(db), static_cast<int>(dc), {rng.random_unitary(din)});
  const std::size_t N = static_cast<std::size_t>(gf2::gaussian_binomial(n, k));
  std::vector<std::vector<Eigen::MatrixXcd>> bob, charlie;
  bob.reserve(N);
  charlie.reserve(N);
  for (std::size_t wi = 0; wi < N; ++wi) {
    bob.push_back(random_rank1_pvm(rng, db));
    charlie.push_back(random_rank1_pvm(rng, dc));
  }
  return Strategy(n, k, std::move(ch), std::move(bob), std::move(charlie));
}

DeterministicStrategy make_random_deterministic_strategy(int n, int k, std::uint64_t seed,
                                                         std::uint64_t cap) {
  Rng rng(seed);
  const BigInt count = gf2::gaussian_binomial(n, k);
  if (count > cap) throw CapExceeded("make_random_deterministic_strategy", count.str());
  DeterministicStrategy ds;
  const std::size_t N = static_cast<std::size_t>(count);
  ds.f.reserve(N);
  ds.g.reserve(N);
  for (std::size_t wi = 0; wi < N; ++wi) {
    ds.f.emplace_back(static_cast<std::uint32_t>(rng.below(std::uint64_t(1) << n)), n);
    ds.g.emplace_back(static_cast<std::uint32_t>(rng.below(std::uint64_t(1) << n)), n);
  }
  return ds;
}

NormSumBoundReport norm_sum_bound_check(int n, int k, std::uint64_t seed, const Tolerances& tol) {
  check_game_cap(n, 3, "norm_sum_bound_check");
  const Strategy s = make_random_pvm_strategy(n, k, seed);
  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k);
  const std::size_t N = gr.size();
  const std::ptrdiff_t db = s.channel.dim_b, dc = s.channel.dim_c;
  const Eigen::MatrixXcd idb = Eigen::MatrixXcd::Identity(db, db);
  const Eigen::MatrixXcd idc = Eigen::MatrixXcd::Identity(dc, dc);

  std::vector<Eigen::MatrixXcd> big_pi(N), big_p(N), big_q(N);
  for (std::size_t wi = 0; wi < N; ++wi) {
    const Subspace& w = gr[wi];
    const std::vector<GF2Vector> xs = gf2::coset_reps(w);
    const std::vector<GF2Vector> zs = gf2::coset_reps(gf2::dual(w));
    const std::ptrdiff_t dim = (std::ptrdiff_t(1) << n) * db * dc;
    Eigen::MatrixXcd pi = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      for (std::size_t zi = 0; zi < zs.size(); ++zi) {
        const qstate::StateVector psi = qstate::coset_state(w, xs[xi], zs[zi]);
        const Eigen::MatrixXcd proj = psi.amps * psi.amps.adjoint();
        pi += kron3(proj, s.bob[wi][xi], s.charlie[wi][zi]);
      }
    }
    for (std::size_t zi = 0; zi < zs.size(); ++zi) {
      p += kron3(qstate::coset_projector_sum_C(w, zs[zi]).mat(), idb, s.charlie[wi][zi]);
    }
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      q += kron3(qstate::coset_projector_sum_B(w, xs[xi]).mat(), s.bob[wi][xi], idc);
    }
    big_pi[wi] = std::move(pi);
    big_p[wi] = std::move(p);
    big_q[wi] = std::move(q);
  }

  NormSumBoundReport rep;
  rep.seed = seed;
  rep.p_win_value = p_win(s);

  Eigen::MatrixXcd total = big_pi[0];
  for (std::size_t wi = 1; wi < N; ++wi) total += big_pi[wi];
  const double sum_norm =
      qstate::operator_norm(qstate::HermitianOperator(0.5 * (total + total.adjoint().eval())));

  auto add_check = [&rep, &tol](std::string name, double lhs, double rhs) {
    InequalityCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rhs - lhs;
    c.passed = lhs <= rhs + tol.spectral;
    rep.checks.push_back(std::move(c));
  };

  add_check("p_win <= sum_norm / N", rep.p_win_value, sum_norm / static_cast<double>(N));

  double worst_product_slack_lhs = 0, worst_product_slack_rhs = 0;
  double worst_pq_slack_lhs = 0, worst_pq_slack_rhs = 0;
  bool first = true;
  for (std::size_t vi = 0; vi < N; ++vi) {
    for (std::size_t wi = 0; wi < N; ++wi) {
      if (vi == wi) continue;
      const double pi_product = qstate::spectral_norm(big_pi[vi] * big_pi[wi]);
      const double pq_product = qstate::spectral_norm(big_p[vi] * big_q[wi]);
      const double isect_bound =
          std::sqrt(std::pow(2.0, gf2::intersect_dim(gr[vi], gr[wi]) - k));
      if (first || pi_product - pq_product > worst_product_slack_lhs - worst_product_slack_rhs) {
        worst_product_slack_lhs = pi_product;
        worst_product_slack_rhs = pq_product;
      }
      if (first || pq_product - isect_bound > worst_pq_slack_lhs - worst_pq_slack_rhs) {
        worst_pq_slack_lhs = pq_product;
        worst_pq_slack_rhs = isect_bound;
      }
      first = false;
    }
  }
  add_check("||Pi^V Pi^W|| <= ||P^V Q^W|| (worst pair)", worst_product_slack_lhs,
            worst_product_slack_rhs);
  add_check("||P^V Q^W|| <= sqrt(2^(dim-k)) (worst pair)", worst_pq_slack_lhs,
            worst_pq_slack_rhs);

  const perms::PermutationFamily fam = perms::full_family(n, k);
  double chain_rhs = 0;
  double worst_entry_lhs = 0, worst_entry_rhs = 1;
  for (const perms::PermutationEntry& entry : fam.entries) {
    double worst = 0;
    for (std::size_t wi = 0; wi < N; ++wi) {
      const std::size_t target = static_cast<std::size_t>(entry.perm[wi]);
      worst = std::max(worst, qstate::spectral_norm(big_pi[wi] * big_pi[target]));
    }
    const double entry_bound = std::sqrt(std::pow(2.0, entry.m - k));
    if (worst - entry_bound > worst_entry_lhs - worst_entry_rhs) {
      worst_entry_lhs = worst;
      worst_entry_rhs = entry_bound;
    }
    chain_rhs += worst;
  }
  add_check("sum_norm <= sum_i max_W ||Pi^W Pi^{pi_i(W)}||", sum_norm, chain_rhs);
  add_check("max_W ||Pi^W Pi^{pi_i(W)}|| <= sqrt(2^(m-k)) (worst entry)", worst_entry_lhs,
            worst_entry_rhs);
  add_check("p_win <= winning_bound", rep.p_win_value, winning_bound(n, k));

  rep.passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const InequalityCheck& c) { return c.passed; });
  return rep;
}

}  // namespace coset::game
