#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coset/gf2.hpp"

namespace coset::perms {

// Graph on Grassmannian indices with an edge (V,W) iff dim(V /\ W) = m.
struct IntersectionGraph {
  int n = 0;
  int k = 0;
  int m = 0;
  std::vector<std::vector<int>> adjacency;  // sorted neighbor lists

  int vertex_count() const { return static_cast<int>(adjacency.size()); }
};

// Directed version produced by the Euler orientation: every undirected edge
// carries exactly one direction, in-degree == out-degree everywhere.
struct DirectedGraph {
  std::vector<std::vector<int>> out;  // sorted head lists
};

struct PermutationEntry {
  int m = 0;
  std::vector<int> perm;
};

struct PermutationFamily {
  int n = 0;
  int k = 0;
  std::vector<PermutationEntry> entries;

  std::size_t size() const { return entries.size(); }
};

struct VerifyReport {
  bool passed = true;
  std::string detail;  // first counterexample, empty when passed
};

IntersectionGraph build_intersection_graph(int n, int k, int m,
                                           std::uint64_t cap = gf2::kDefaultGrassmannianCap,
                                           int threads = 1);

// Orients every edge along an Euler circuit of its component (Hierholzer,
// lowest-index neighbor first). Requires all degrees even.
DirectedGraph orient_eulerian(const IntersectionGraph& g);

// Splits a directed graph with uniform in-degree = out-degree = r into r
// permutations whose edge sets partition the directed edges. Each permutation
// is a perfect matching of the tails/heads bipartite graph, extracted by
// augmenting-path maximum matching.
std::vector<std::vector<int>> matching_decomposition(const DirectedGraph& d);

// The f(n,k,m) mutually orthogonal m-intersecting permutations of Gr_2(n,k):
// matchings of the oriented intersection graph together with their inverses,
// or {identity} when m == k.
PermutationFamily orthogonal_family(int n, int k, int m,
                                    std::uint64_t cap = gf2::kDefaultGrassmannianCap,
                                    int threads = 1);

// Concatenation over m = 0..k; binom(n,k)_2 permutations in total.
PermutationFamily full_family(int n, int k,
                              std::uint64_t cap = gf2::kDefaultGrassmannianCap,
                              int threads = 1);

// Re-checks bijectivity, the per-entry m-intersection property and all-pairs
// orthogonality from scratch.
VerifyReport verify_family(const PermutationFamily& fam,
                           std::uint64_t cap = gf2::kDefaultGrassmannianCap);

}  // namespace coset::perms
