#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coset/errors.hpp"

namespace coset::gf2 {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxAmbientDim = 20;
inline constexpr std::uint64_t kDefaultGrassmannianCap = 1'000'000;

// Element of F_2^n, packed into a machine word. Coordinate 0 is the leftmost
// character of the string form and the most significant bit of `bits`, so the
// packed value doubles as the computational-basis index and string
// lexicographic order equals numeric order.
struct GF2Vector {
  std::uint32_t bits = 0;
  int n = 1;

  GF2Vector() = default;
  GF2Vector(std::uint32_t bits_, int n_);

  static GF2Vector zero(int n) { return GF2Vector(0, n); }
  static GF2Vector from_string(const std::string& s);

  bool is_zero() const { return bits == 0; }
  int bit(int coord) const { return static_cast<int>((bits >> (n - 1 - coord)) & 1u); }
  std::string to_string() const;

  friend GF2Vector operator+(const GF2Vector& a, const GF2Vector& b);
  friend bool operator==(const GF2Vector& a, const GF2Vector& b) = default;
};

// x . y under the standard bilinear form.
int dot(const GF2Vector& a, const GF2Vector& b);

// Row reduction of packed rows (most significant bit = leftmost column).
// Returns the RREF rows sorted by decreasing leading bit, plus the rank.
struct RrefResult {
  std::vector<std::uint32_t> rows;
  int rank = 0;
};
RrefResult rref(const std::vector<GF2Vector>& rows);
RrefResult rref_words(std::vector<std::uint64_t> rows);

// k-dimensional subspace of F_2^n held as its RREF basis; RREF rows are the
// canonical form, so equality is bitwise.
struct Subspace {
  Subspace(int n_, std::vector<std::uint32_t> rref_rows);

  int n;
  int k;
  std::vector<std::uint32_t> rows;  // RREF, decreasing leading bit

  static Subspace zero(int n) { return Subspace(n, {}); }
  static Subspace full(int n);

  std::vector<GF2Vector> basis() const;
  // All 2^k elements, ascending numeric order.
  std::vector<GF2Vector> elements() const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;
  friend bool operator<(const Subspace& a, const Subspace& b);
};

Subspace subspace_from_vectors(const std::vector<GF2Vector>& rows, int n);

bool member(const Subspace& w, const GF2Vector& x);

// Canonical coset representative: x fully reduced against the RREF basis,
// i.e. zero in every pivot column.
GF2Vector coset_rep(const Subspace& w, const GF2Vector& x);

// A coset identified by its subspace and canonical representative.
struct CosetLabel {
  Subspace subspace;
  GF2Vector rep;

  CosetLabel(Subspace w, const GF2Vector& any_member);
  friend bool operator==(const CosetLabel& a, const CosetLabel& b) = default;
};

// Canonical representatives of all 2^(n-k) cosets of W, ascending numeric order.
std::vector<GF2Vector> coset_reps(const Subspace& w);

// W^perp under the standard bilinear form.
Subspace dual(const Subspace& w);

int sum_dim(const Subspace& v, const Subspace& w);
int intersect_dim(const Subspace& v, const Subspace& w);
// Basis of V /\ W via the Zassenhaus construction.
Subspace intersection_basis(const Subspace& v, const Subspace& w);

// Exact count of Gr_2(n,k) via the product formula. Zero when k is out of
// [0, n] so that counting expressions vanish naturally.
BigInt gaussian_binomial(int n, int k);

// f(n,k,m): number of V in Gr_2(n,k) with dim(V /\ W) = m for a fixed W.
BigInt intersection_count(int n, int k, int m);

// Every k-dim subspace of F_2^n exactly once, sorted lexicographically on the
// RREF bit matrix read row-major. Throws CapExceeded if the count exceeds cap.
std::vector<Subspace> enumerate_grassmannian(int n, int k,
                                             std::uint64_t cap = kDefaultGrassmannianCap);

}  // namespace coset::gf2
