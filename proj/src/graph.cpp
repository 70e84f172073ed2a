// SPDX-License-Identifier: Apache-2.0
#include "setfam/graph.hpp"

#include <bit>
#include <string>

#include "setfam/errors.hpp"

namespace setfam::graph {

namespace {

class Blossom {
 public:
  explicit Blossom(const Adjacency& adj)
      : adj_(adj), n_(static_cast<int>(adj.size())), match_(adj.size(), -1),
        parent_(adj.size()), base_(adj.size()), used_(adj.size()), in_blossom_(adj.size()),
        queue_(adj.size()) {}

  std::vector<int> run() {
    // Greedy start, then augment from every free vertex.
    for (int v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      for (int to : adj_[v])
        if (match_[to] == -1 && to != v) {
          match_[to] = v;
          match_[v] = to;
          break;
        }
    }
    for (int v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      int end = find_path(v);
      while (end != -1) {
        const int pv = parent_[end];
        const int ppv = match_[pv];
        match_[end] = pv;
        match_[pv] = end;
        end = ppv;
      }
    }
    return match_;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (;;) {
      a = base_[a];
      seen[a] = 1;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), -1);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = 1;
    std::size_t head = 0, tail = 0;
    queue_[tail++] = root;
    while (head < tail) {
      const int v = queue_[head++];
      for (int to : adj_[v]) {
        if (to == v || base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          const int cur = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i) {
            if (!in_blossom_[base_[i]]) continue;
            base_[i] = cur;
            if (!used_[i]) {
              used_[i] = 1;
              queue_[tail++] = i;
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;
          used_[match_[to]] = 1;
          queue_[tail++] = match_[to];
        }
      }
    }
    return -1;
  }

  const Adjacency& adj_;
  int n_;
  std::vector<int> match_, parent_, base_;
  std::vector<char> used_, in_blossom_;
  std::vector<int> queue_;
};

}  // namespace

std::vector<int> max_matching(const Adjacency& adj) { return Blossom(adj).run(); }

std::vector<int> bipartite_matching(const Adjacency& left_adj, int right_size) {
  const int left = static_cast<int>(left_adj.size());
  std::vector<int> mate_left(static_cast<std::size_t>(left), -1);
  std::vector<int> mate_right(static_cast<std::size_t>(right_size), -1);
  for (int u = 0; u < left; ++u)
    for (int r : left_adj[u])
      if (mate_right[r] == -1) {
        mate_right[r] = u;
        mate_left[u] = r;
        break;
      }

  std::vector<int> seen(static_cast<std::size_t>(right_size), -1);
  std::vector<int> stack_u, stack_i, via;
  for (int root = 0; root < left; ++root) {
    if (mate_left[root] != -1) continue;
    stack_u.assign(1, root);
    stack_i.assign(1, 0);
    via.clear();
    while (!stack_u.empty()) {
      const int u = stack_u.back();
      auto& i = stack_i.back();
      if (i == static_cast<int>(left_adj[u].size())) {
        stack_u.pop_back();
        stack_i.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      const int r = left_adj[u][static_cast<std::size_t>(i++)];
      if (seen[r] == root) continue;
      seen[r] = root;
      if (mate_right[r] == -1) {
        // Flip the alternating path recorded on the stack.
        int target = r;
        for (std::size_t k = stack_u.size(); k-- > 0;) {
          mate_left[stack_u[k]] = target;
          mate_right[target] = stack_u[k];
          if (k > 0) target = via[k - 1];
        }
        break;
      }
      via.push_back(r);
      stack_u.push_back(mate_right[r]);
      stack_i.push_back(0);
    }
  }
  return mate_left;
}

namespace {

class CoverSearch {
 public:
  CoverSearch(const Adjacency& adj, const CoverLimits& limits)
      : n_(static_cast<int>(adj.size())), words_((adj.size() + 63) / 64), limits_(limits),
        nbr_(adj.size(), Bits(words_, 0)) {
    for (int v = 0; v < n_; ++v)
      for (int u : adj[v])
        if (u != v) {
          set(nbr_[v], u);
          set(nbr_[u], v);
        }
  }

  std::vector<int> run() {
    Bits active(words_, 0);
    for (int v = 0; v < n_; ++v) set(active, v);
    best_.clear();
    for (int v = 0; v < n_; ++v)
      if (degree(v, active) > 0) best_.push_back(v);
    search(std::move(active));
    return best_;
  }

 private:
  using Bits = std::vector<std::uint64_t>;

  static void set(Bits& b, int v) { b[v >> 6] |= std::uint64_t{1} << (v & 63); }
  static void clear(Bits& b, int v) { b[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  static bool has(const Bits& b, int v) { return (b[v >> 6] >> (v & 63)) & 1U; }

  int degree(int v, const Bits& active) const {
    int d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += std::popcount(nbr_[v][w] & active[w]);
    return d;
  }

  template <class Fn>
  void for_each(const Bits& b, Fn&& fn) const {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = b[w];
      while (word) {
        const int bit = std::countr_zero(word);
        word &= word - 1;
        fn(static_cast<int>(w * 64) + bit);
      }
    }
  }

  int first_neighbor(int v, const Bits& active) const {
    for (std::size_t w = 0; w < words_; ++w) {
      const std::uint64_t m = nbr_[v][w] & active[w];
      if (m) return static_cast<int>(w * 64) + std::countr_zero(m);
    }
    return -1;
  }

  void search(Bits active) {
    if (++nodes_ > limits_.max_nodes)
      throw ResourceLimit("vertex-cover search exceeded " + std::to_string(limits_.max_nodes) +
                          " nodes");
    const std::size_t mark = current_.size();

    // Degree-0 vertices leave; a degree-1 vertex forces its neighbour in.
    for (bool changed = true; changed;) {
      changed = false;
      for_each(active, [&](int v) {
        if (!has(active, v)) return;
        const int d = degree(v, active);
        if (d == 0) {
          clear(active, v);
        } else if (d == 1) {
          const int u = first_neighbor(v, active);
          current_.push_back(u);
          clear(active, u);
          clear(active, v);
          changed = true;
        }
      });
    }

    // Any matching lower-bounds the cover of what is left.
    int matched = 0;
    Bits free = active;
    int pick = -1, pick_degree = 0;
    for_each(active, [&](int v) {
      const int d = degree(v, active);
      if (d > pick_degree) {
        pick_degree = d;
        pick = v;
      }
      if (!has(free, v)) return;
      const int u = first_neighbor(v, free);
      if (u >= 0) {
        clear(free, u);
        clear(free, v);
        ++matched;
      }
    });

    if (pick < 0) {
      if (current_.size() < best_.size()) best_ = current_;
    } else if (current_.size() + static_cast<std::size_t>(matched) < best_.size()) {
      // Either pick is in the cover, or all of its neighbours are.
      Bits without = active;
      clear(without, pick);
      current_.push_back(pick);
      search(without);
      current_.pop_back();

      if (current_.size() + static_cast<std::size_t>(pick_degree) < best_.size()) {
        Bits rest = without;
        const std::size_t before = current_.size();
        for_each(active, [&](int u) {
          if (has(nbr_[pick], u)) {
            current_.push_back(u);
            clear(rest, u);
          }
        });
        search(std::move(rest));
        current_.resize(before);
      }
    }
    current_.resize(mark);
  }

  int n_;
  std::size_t words_;
  CoverLimits limits_;
  std::vector<Bits> nbr_;
  std::vector<int> current_, best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::vector<int> min_vertex_cover(const Adjacency& adj, const CoverLimits& limits) {
  if (static_cast<int>(adj.size()) > limits.max_vertices)
    throw ResourceLimit("vertex-cover graph has " + std::to_string(adj.size()) +
                        " vertices, cap is " + std::to_string(limits.max_vertices));
  return CoverSearch(adj, limits).run();
}

}  // namespace setfam::graph
