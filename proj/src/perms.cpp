#include "coset/perms.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "coset/parallel.hpp"

namespace coset::perms {

using gf2::BigInt;
using gf2::Subspace;

IntersectionGraph build_intersection_graph(int n, int k, int m, std::uint64_t cap, int threads) {
  if (!(0 <= m && m < k && k <= n)) {
    throw std::invalid_argument("build_intersection_graph: need 0 <= m < k <= n");
  }
  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(n, k, cap);
  const int N = static_cast<int>(gr.size());

  IntersectionGraph g;
  g.n = n;
  g.k = k;
  g.m = m;
  g.adjacency.assign(static_cast<std::size_t>(N), {});
  parallel_for(static_cast<std::size_t>(N), threads, [&](std::size_t i) {
    std::vector<int>& adj = g.adjacency[i];
    for (int j = 0; j < N; ++j) {
      if (j == static_cast<int>(i)) continue;
      if (gf2::intersect_dim(gr[i], gr[static_cast<std::size_t>(j)]) == m) adj.push_back(j);
    }
  });

  const BigInt expected = gf2::intersection_count(n, k, m);
  for (int i = 0; i < N; ++i) {
    if (BigInt(g.adjacency[static_cast<std::size_t>(i)].size()) != expected) {
      throw InvariantViolation("intersection graph is not " + expected.str() +
                               "-regular at vertex " + std::to_string(i));
    }
  }
  return g;
}

DirectedGraph orient_eulerian(const IntersectionGraph& g) {
  const int N = g.vertex_count();
  for (int v = 0; v < N; ++v) {
    if (g.adjacency[static_cast<std::size_t>(v)].size() % 2 != 0) {
      throw InvariantViolation("orient_eulerian: odd degree at vertex " + std::to_string(v));
    }
  }
  DirectedGraph d;
  d.out.assign(static_cast<std::size_t>(N), {});
  std::vector<std::vector<char>> used(static_cast<std::size_t>(N));
  for (int v = 0; v < N; ++v) used[static_cast<std::size_t>(v)].assign(g.adjacency[static_cast<std::size_t>(v)].size(), 0);
  std::vector<std::size_t> next(static_cast<std::size_t>(N), 0);

  auto mark_reverse = [&](int u, int v) {
    const std::vector<int>& adj = g.adjacency[static_cast<std::size_t>(u)];
    const auto it = std::lower_bound(adj.begin(), adj.end(), v);
    used[static_cast<std::size_t>(u)][static_cast<std::size_t>(it - adj.begin())] = 1;
  };

  std::vector<int> stack;
  for (int start = 0; start < N; ++start) {
    if (next[static_cast<std::size_t>(start)] >= g.adjacency[static_cast<std::size_t>(start)].size()) continue;
    stack.assign(1, start);
    while (!stack.empty()) {
      const int v = stack.back();
      auto& ptr = next[static_cast<std::size_t>(v)];
      const std::vector<int>& adj = g.adjacency[static_cast<std::size_t>(v)];
      while (ptr < adj.size() && used[static_cast<std::size_t>(v)][ptr]) ++ptr;
      if (ptr == adj.size()) {
        stack.pop_back();
        continue;
      }
      const int u = adj[ptr];
      used[static_cast<std::size_t>(v)][ptr] = 1;
      mark_reverse(u, v);
      d.out[static_cast<std::size_t>(v)].push_back(u);
      stack.push_back(u);
    }
  }
  for (auto& heads : d.out) std::sort(heads.begin(), heads.end());

  // Circuit orientation balances every vertex.
  std::vector<std::size_t> indeg(static_cast<std::size_t>(N), 0);
  for (const auto& heads : d.out) {
    for (int h : heads) ++indeg[static_cast<std::size_t>(h)];
  }
  for (int v = 0; v < N; ++v) {
    if (indeg[static_cast<std::size_t>(v)] != d.out[static_cast<std::size_t>(v)].size() ||
        d.out[static_cast<std::size_t>(v)].size() * 2 != g.adjacency[static_cast<std::size_t>(v)].size()) {
      throw InvariantViolation("orient_eulerian: unbalanced orientation at vertex " +
                               std::to_string(v));
    }
  }
  return d;
}

namespace {

// Hopcroft-Karp with greedy initialization; left vertices are tails, right
// vertices are heads, deterministic lowest-index order throughout.
class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(std::vector<std::vector<int>> adj)
      : adj_(std::move(adj)), n_(static_cast<int>(adj_.size())) {}

  // Extracts a perfect matching and removes its edges. Returns matchL.
  std::vector<int> extract_perfect_matching() {
    static constexpr int kFree = -1;
    match_left_.assign(static_cast<std::size_t>(n_), kFree);
    match_right_.assign(static_cast<std::size_t>(n_), kFree);
    for (int u = 0; u < n_; ++u) {
      for (int v : adj_[static_cast<std::size_t>(u)]) {
        if (match_right_[static_cast<std::size_t>(v)] == kFree) {
          match_left_[static_cast<std::size_t>(u)] = v;
          match_right_[static_cast<std::size_t>(v)] = u;
          break;
        }
      }
    }
    while (bfs_phase()) {
      for (int u = 0; u < n_; ++u) {
        if (match_left_[static_cast<std::size_t>(u)] == kFree) dfs_augment(u);
      }
    }
    for (int u = 0; u < n_; ++u) {
      if (match_left_[static_cast<std::size_t>(u)] == kFree) {
        throw InvariantViolation(
            "matching_decomposition: no perfect matching in regular bipartite graph");
      }
    }
    for (int u = 0; u < n_; ++u) {
      auto& a = adj_[static_cast<std::size_t>(u)];
      a.erase(std::find(a.begin(), a.end(), match_left_[static_cast<std::size_t>(u)]));
    }
    return match_left_;
  }

 private:
  static constexpr int kInf = 1 << 30;

  bool bfs_phase() {
    dist_.assign(static_cast<std::size_t>(n_), kInf);
    std::deque<int> queue;
    for (int u = 0; u < n_; ++u) {
      if (match_left_[static_cast<std::size_t>(u)] == -1) {
        dist_[static_cast<std::size_t>(u)] = 0;
        queue.push_back(u);
      }
    }
    bool reachable = false;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj_[static_cast<std::size_t>(u)]) {
        const int w = match_right_[static_cast<std::size_t>(v)];
        if (w == -1) {
          reachable = true;
        } else if (dist_[static_cast<std::size_t>(w)] == kInf) {
          dist_[static_cast<std::size_t>(w)] = dist_[static_cast<std::size_t>(u)] + 1;
          queue.push_back(w);
        }
      }
    }
    return reachable;
  }

  bool dfs_augment(int u) {
    for (int v : adj_[static_cast<std::size_t>(u)]) {
      const int w = match_right_[static_cast<std::size_t>(v)];
      if (w == -1 ||
          (dist_[static_cast<std::size_t>(w)] == dist_[static_cast<std::size_t>(u)] + 1 &&
           dfs_augment(w))) {
        match_left_[static_cast<std::size_t>(u)] = v;
        match_right_[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    dist_[static_cast<std::size_t>(u)] = kInf;
    return false;
  }

  std::vector<std::vector<int>> adj_;
  int n_;
  std::vector<int> match_left_, match_right_, dist_;
};

std::vector<int> inverse_permutation(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return inv;
}

}  // namespace

std::vector<std::vector<int>> matching_decomposition(const DirectedGraph& d) {
  const int N = static_cast<int>(d.out.size());
  if (N == 0) return {};
  const std::size_t r = d.out[0].size();
  std::vector<std::size_t> indeg(static_cast<std::size_t>(N), 0);
  for (const auto& heads : d.out) {
    for (int h : heads) ++indeg[static_cast<std::size_t>(h)];
  }
  for (int v = 0; v < N; ++v) {
    if (d.out[static_cast<std::size_t>(v)].size() != r || indeg[static_cast<std::size_t>(v)] != r) {
      throw std::invalid_argument("matching_decomposition: graph is not in/out regular");
    }
  }
  if (r == 0) return {};

  BipartiteMatcher matcher(d.out);
  std::vector<std::vector<int>> perms;
  perms.reserve(r);
  for (std::size_t i = 0; i < r; ++i) perms.push_back(matcher.extract_perfect_matching());
  return perms;
}

PermutationFamily orthogonal_family(int n, int k, int m, std::uint64_t cap, int threads) {
  if (!(0 <= m && m <= k && k <= n)) {
    throw std::invalid_argument("orthogonal_family: need 0 <= m <= k <= n");
  }
  PermutationFamily fam;
  fam.n = n;
  fam.k = k;
  if (m == k) {
    const BigInt count = gf2::gaussian_binomial(n, k);
    if (count > cap) {
      throw CapExceeded("orthogonal_family: Grassmannian exceeds cap", count.str());
    }
    PermutationEntry id;
    id.m = m;
    id.perm.resize(static_cast<std::size_t>(count));
    std::iota(id.perm.begin(), id.perm.end(), 0);
    fam.entries.push_back(std::move(id));
    return fam;
  }
  const IntersectionGraph g = build_intersection_graph(n, k, m, cap, threads);
  const DirectedGraph d = orient_eulerian(g);
  for (std::vector<int>& p : matching_decomposition(d)) {
    PermutationEntry fwd{m, p};
    PermutationEntry bwd{m, inverse_permutation(p)};
    fam.entries.push_back(std::move(fwd));
    fam.entries.push_back(std::move(bwd));
  }
  return fam;
}

PermutationFamily full_family(int n, int k, std::uint64_t cap, int threads) {
  PermutationFamily fam;
  fam.n = n;
  fam.k = k;
  for (int m = 0; m <= k; ++m) {
    PermutationFamily part = orthogonal_family(n, k, m, cap, threads);
    for (PermutationEntry& e : part.entries) fam.entries.push_back(std::move(e));
  }
  return fam;
}

VerifyReport verify_family(const PermutationFamily& fam, std::uint64_t cap) {
  VerifyReport rep;
  auto fail = [&rep](std::string why) {
    rep.passed = false;
    rep.detail = std::move(why);
    return rep;
  };

  const std::vector<Subspace> gr = gf2::enumerate_grassmannian(fam.n, fam.k, cap);
  const std::size_t N = gr.size();

  for (std::size_t e = 0; e < fam.entries.size(); ++e) {
    const PermutationEntry& entry = fam.entries[e];
    if (entry.perm.size() != N) {
      return fail("entry " + std::to_string(e) + ": length " + std::to_string(entry.perm.size()) +
                  " != |Gr| = " + std::to_string(N));
    }
    std::vector<char> seen(N, 0);
    for (std::size_t w = 0; w < N; ++w) {
      const int img = entry.perm[w];
      if (img < 0 || static_cast<std::size_t>(img) >= N) {
        return fail("entry " + std::to_string(e) + ": image out of range at vertex " +
                    std::to_string(w));
      }
      if (seen[static_cast<std::size_t>(img)]) {
        return fail("entry " + std::to_string(e) + ": not a bijection, image " +
                    std::to_string(img) + " repeated");
      }
      seen[static_cast<std::size_t>(img)] = 1;
      if (gf2::intersect_dim(gr[w], gr[static_cast<std::size_t>(img)]) != entry.m) {
        return fail("entry " + std::to_string(e) + ": intersection dim at vertex " +
                    std::to_string(w) + " is not " + std::to_string(entry.m));
      }
    }
  }

  // Pairwise orthogonality == images at each vertex are pairwise distinct.
  std::vector<int> owner(N);
  for (std::size_t w = 0; w < N; ++w) {
    std::fill(owner.begin(), owner.end(), -1);
    for (std::size_t e = 0; e < fam.entries.size(); ++e) {
      const int img = fam.entries[e].perm[w];
      if (owner[static_cast<std::size_t>(img)] >= 0) {
        return fail("entries " + std::to_string(owner[static_cast<std::size_t>(img)]) + " and " +
                    std::to_string(e) + " collide at vertex " + std::to_string(w) +
                    ": both map to " + std::to_string(img));
      }
      owner[static_cast<std::size_t>(img)] = static_cast<int>(e);
    }
  }
  return rep;
}

}  // namespace coset::perms
