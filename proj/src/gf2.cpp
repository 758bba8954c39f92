#include "coset/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace coset::gf2 {

namespace {

int leading_bit(std::uint64_t w) { return std::bit_width(w) - 1; }  // -1 for w == 0

void check_same_ambient(int a, int b, const char* what) {
  if (a != b) {
    throw ValidationError(std::string(what) + ": ambient dimension mismatch (" +
                          std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

GF2Vector::GF2Vector(std::uint32_t bits_, int n_) : bits(bits_), n(n_) {
  if (n < 1 || n > kMaxAmbientDim) {
    throw ValidationError("GF2Vector: n must be in [1, " + std::to_string(kMaxAmbientDim) +
                          "], got " + std::to_string(n));
  }
  if (bits >> n) {
    throw ValidationError("GF2Vector: bits exceed ambient dimension");
  }
}

GF2Vector GF2Vector::from_string(const std::string& s) {
  GF2Vector v(0, static_cast<int>(s.size()));
  for (char c : s) {
    if (c != '0' && c != '1') throw ValidationError("GF2Vector: expected 0/1 string");
    v.bits = (v.bits << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return v;
}

std::string GF2Vector::to_string() const {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) s[i] = bit(i) ? '1' : '0';
  return s;
}

GF2Vector operator+(const GF2Vector& a, const GF2Vector& b) {
  check_same_ambient(a.n, b.n, "GF2Vector::operator+");
  return GF2Vector(a.bits ^ b.bits, a.n);
}

int dot(const GF2Vector& a, const GF2Vector& b) {
  check_same_ambient(a.n, b.n, "dot");
  return std::popcount(a.bits & b.bits) & 1;
}

RrefResult rref_words(std::vector<std::uint64_t> rows) {
  std::vector<std::uint64_t> basis;  // kept sorted by decreasing leading bit
  for (std::uint64_t r : rows) {
    for (std::uint64_t b : basis) {
      if (r & (std::uint64_t(1) << leading_bit(b))) r ^= b;
    }
    if (r == 0) continue;
    const int lead = leading_bit(r);
    for (std::uint64_t& b : basis) {
      if (b & (std::uint64_t(1) << lead)) b ^= r;
    }
    basis.push_back(r);
  }
  std::sort(basis.begin(), basis.end(), std::greater<>());
  RrefResult res;
  res.rank = static_cast<int>(basis.size());
  res.rows.reserve(basis.size());
  for (std::uint64_t b : basis) res.rows.push_back(static_cast<std::uint32_t>(b));
  return res;
}

RrefResult rref(const std::vector<GF2Vector>& rows) {
  std::vector<std::uint64_t> words;
  words.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) check_same_ambient(rows[i].n, rows[0].n, "rref");
    words.push_back(rows[i].bits);
  }
  return rref_words(std::move(words));
}

Subspace::Subspace(int n_, std::vector<std::uint32_t> rref_rows)
    : n(n_), k(static_cast<int>(rref_rows.size())), rows(std::move(rref_rows)) {
  if (n < 1 || n > kMaxAmbientDim) throw ValidationError("Subspace: bad ambient dimension");
  if (k > n) throw ValidationError("Subspace: more rows than ambient dimension");
  int prev_lead = n;  // one past the top bit
  for (std::uint32_t r : rows) {
    if (r == 0 || (r >> n)) throw ValidationError("Subspace: row out of range");
    const int lead = leading_bit(r);
    if (lead >= prev_lead) throw ValidationError("Subspace: rows not in RREF order");
    prev_lead = lead;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i != j && (rows[j] & (std::uint32_t(1) << leading_bit(rows[i])))) {
        throw ValidationError("Subspace: pivot column not clean, basis not RREF");
      }
    }
  }
}

Subspace Subspace::full(int n) {
  std::vector<std::uint32_t> rows;
  for (int i = n - 1; i >= 0; --i) rows.push_back(std::uint32_t(1) << i);
  return Subspace(n, std::move(rows));
}

std::vector<GF2Vector> Subspace::basis() const {
  std::vector<GF2Vector> out;
  out.reserve(rows.size());
  for (std::uint32_t r : rows) out.emplace_back(r, n);
  return out;
}

std::vector<GF2Vector> Subspace::elements() const {
  std::vector<std::uint32_t> words;
  words.reserve(std::size_t(1) << k);
  for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << k); ++mask) {
    std::uint32_t v = 0;
    for (int i = 0; i < k; ++i) {
      if (mask & (std::uint32_t(1) << i)) v ^= rows[static_cast<std::size_t>(i)];
    }
    words.push_back(v);
  }
  std::sort(words.begin(), words.end());
  std::vector<GF2Vector> out;
  out.reserve(words.size());
  for (std::uint32_t w : words) out.emplace_back(w, n);
  return out;
}

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.n != b.n) return a.n < b.n;
  if (a.k != b.k) return a.k < b.k;
  return a.rows < b.rows;
}

Subspace subspace_from_vectors(const std::vector<GF2Vector>& vecs, int n) {
  for (const GF2Vector& v : vecs) check_same_ambient(v.n, n, "subspace_from_vectors");
  RrefResult r = rref(vecs);
  return Subspace(n, std::move(r.rows));
}

namespace {

std::uint32_t reduce(const Subspace& w, std::uint32_t x) {
  for (std::uint32_t r : w.rows) {
    if (x & (std::uint32_t(1) << leading_bit(r))) x ^= r;
  }
  return x;
}

}  // namespace

bool member(const Subspace& w, const GF2Vector& x) {
  check_same_ambient(w.n, x.n, "member");
  return reduce(w, x.bits) == 0;
}

GF2Vector coset_rep(const Subspace& w, const GF2Vector& x) {
  check_same_ambient(w.n, x.n, "coset_rep");
  return GF2Vector(reduce(w, x.bits), w.n);
}

CosetLabel::CosetLabel(Subspace w, const GF2Vector& any_member)
    : subspace(std::move(w)), rep(coset_rep(subspace, any_member)) {}

std::vector<GF2Vector> coset_reps(const Subspace& w) {
  std::uint32_t pivot_mask = 0;
  for (std::uint32_t r : w.rows) pivot_mask |= std::uint32_t(1) << leading_bit(r);
  std::vector<int> free_bits;  // ascending, so counting order = numeric order
  for (int b = 0; b < w.n; ++b) {
    if (!(pivot_mask & (std::uint32_t(1) << b))) free_bits.push_back(b);
  }
  std::vector<GF2Vector> out;
  out.reserve(std::size_t(1) << free_bits.size());
  for (std::uint32_t i = 0; i < (std::uint32_t(1) << free_bits.size()); ++i) {
    std::uint32_t v = 0;
    for (std::size_t j = 0; j < free_bits.size(); ++j) {
      if (i & (std::uint32_t(1) << j)) v |= std::uint32_t(1) << free_bits[j];
    }
    out.emplace_back(v, w.n);
  }
  return out;
}

Subspace dual(const Subspace& w) {
  std::uint32_t pivot_mask = 0;
  for (std::uint32_t r : w.rows) pivot_mask |= std::uint32_t(1) << leading_bit(r);
  std::vector<std::uint64_t> kernel;
  for (int f = 0; f < w.n; ++f) {
    if (pivot_mask & (std::uint32_t(1) << f)) continue;
    std::uint32_t y = std::uint32_t(1) << f;
    for (std::uint32_t r : w.rows) {
      if ((r >> f) & 1u) y |= std::uint32_t(1) << leading_bit(r);
    }
    kernel.push_back(y);
  }
  RrefResult res = rref_words(std::move(kernel));
  return Subspace(w.n, std::move(res.rows));
}

int sum_dim(const Subspace& v, const Subspace& w) {
  check_same_ambient(v.n, w.n, "sum_dim");
  std::vector<std::uint64_t> stacked;
  stacked.reserve(v.rows.size() + w.rows.size());
  for (std::uint32_t r : v.rows) stacked.push_back(r);
  for (std::uint32_t r : w.rows) stacked.push_back(r);
  return rref_words(std::move(stacked)).rank;
}

int intersect_dim(const Subspace& v, const Subspace& w) {
  return v.k + w.k - sum_dim(v, w);
}

Subspace intersection_basis(const Subspace& v, const Subspace& w) {
  check_same_ambient(v.n, w.n, "intersection_basis");
  const int n = v.n;
  // Zassenhaus: rows [x | x] for x in V, [y | 0] for y in W. After reduction,
  // the right halves of rows with vanishing left half span V /\ W.
  std::vector<std::uint64_t> stacked;
  for (std::uint32_t r : v.rows) stacked.push_back((std::uint64_t(r) << n) | r);
  for (std::uint32_t r : w.rows) stacked.push_back(std::uint64_t(r) << n);

  std::vector<std::uint64_t> basis;
  for (std::uint64_t r : stacked) {
    for (std::uint64_t b : basis) {
      if (r & (std::uint64_t(1) << leading_bit(b))) r ^= b;
    }
    if (r == 0) continue;
    const int lead = leading_bit(r);
    for (std::uint64_t& b : basis) {
      if (b & (std::uint64_t(1) << lead)) b ^= r;
    }
    basis.push_back(r);
  }
  std::vector<std::uint32_t> inter;
  for (std::uint64_t b : basis) {
    if ((b >> n) == 0 && b != 0) inter.push_back(static_cast<std::uint32_t>(b));
  }
  std::sort(inter.begin(), inter.end(), std::greater<>());
  return Subspace(n, std::move(inter));
}

BigInt gaussian_binomial(int n, int k) {
  if (n < 0) throw std::invalid_argument("gaussian_binomial: n < 0");
  if (k < 0 || k > n) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (BigInt(1) << (n - i)) - 1;
    den *= (BigInt(1) << (k - i)) - 1;
  }
  return num / den;
}

BigInt intersection_count(int n, int k, int m) {
  if (!(0 <= m && m <= k && k <= n)) {
    throw std::invalid_argument("intersection_count: need 0 <= m <= k <= n");
  }
  const int d = k - m;
  return (BigInt(1) << (d * d)) * gaussian_binomial(n - k, d) * gaussian_binomial(k, m);
}

std::vector<Subspace> enumerate_grassmannian(int n, int k, std::uint64_t cap) {
  if (n < 1 || n > kMaxAmbientDim || k < 0 || k > n) {
    throw std::invalid_argument("enumerate_grassmannian: need 0 <= k <= n <= 20");
  }
  const BigInt count = gaussian_binomial(n, k);
  if (count > cap) {
    throw CapExceeded("enumerate_grassmannian: |Gr_2(" + std::to_string(n) + "," +
                          std::to_string(k) + ")| = " + count.str() +
                          " exceeds cap " + std::to_string(cap),
                      count.str());
  }
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(count));

  // Pivot columns c_0 < ... < c_{k-1}; row i carries free bits in the
  // non-pivot columns right of c_i.
  std::vector<int> pivots(k);
  for (int i = 0; i < k; ++i) pivots[i] = i;
  auto emit_for_pivots = [&]() {
    std::uint32_t pivot_mask = 0;
    for (int c : pivots) pivot_mask |= std::uint32_t(1) << (n - 1 - c);
    // Flat list of (row, bit) free slots, fixed order for determinism.
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < k; ++i) {
      for (int c = pivots[i] + 1; c < n; ++c) {
        const int bitpos = n - 1 - c;
        if (!(pivot_mask & (std::uint32_t(1) << bitpos))) slots.emplace_back(i, bitpos);
      }
    }
    const std::uint64_t combos = std::uint64_t(1) << slots.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      std::vector<std::uint32_t> rows(k);
      for (int i = 0; i < k; ++i) rows[i] = std::uint32_t(1) << (n - 1 - pivots[i]);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (mask & (std::uint64_t(1) << s)) {
          rows[static_cast<std::size_t>(slots[s].first)] |= std::uint32_t(1) << slots[s].second;
        }
      }
      out.emplace_back(n, std::move(rows));
    }
  };

  if (k == 0) {
    out.push_back(Subspace::zero(n));
    return out;
  }
  while (true) {
    emit_for_pivots();
    // next combination
    int i = k - 1;
    while (i >= 0 && pivots[i] == n - k + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(),
            [](const Subspace& a, const Subspace& b) { return a.rows < b.rows; });
  return out;
}

}  // namespace coset::gf2
