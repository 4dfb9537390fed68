// Copyright 2026 telesurf Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "telesurf/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace telesurf {

namespace {

// Galil-style weighted blossom algorithm. Vertices are 1..n, contracted
// blossoms occupy n+1..2n. Edge deltas use doubled weights so vertex and
// blossom duals stay integral throughout.
class Blossom {
 public:
  explicit Blossom(const std::vector<std::vector<int64_t>>& weights)
      : n_(static_cast<int>(weights.size())) {
    const int m = 2 * n_ + 1;
    g_.assign(m, std::vector<Edge>(m));
    lab_.assign(m, 0);
    match_.assign(m, 0);
    slack_.assign(m, 0);
    st_.assign(m, 0);
    pa_.assign(m, 0);
    s_.assign(m, -1);
    vis_.assign(m, 0);
    flower_.assign(m, {});
    flower_from_.assign(m, std::vector<int>(n_ + 1, 0));
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) g_[u][v] = Edge{u, v, weights[u - 1][v - 1]};
  }

  MatchingResult solve() {
    n_x_ = n_;
    int64_t w_max = 0;
    for (int u = 1; u <= n_; ++u) {
      st_[u] = u;
      flower_from_[u][u] = u;
      for (int v = 1; v <= n_; ++v) w_max = std::max(w_max, g_[u][v].w);
    }
    for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
    while (phase()) {
    }
    MatchingResult res;
    res.mate.assign(n_, -1);
    res.total_weight = 0;
    for (int u = 1; u <= n_; ++u) {
      if (match_[u] && match_[u] < u) {
        res.mate[u - 1] = match_[u] - 1;
        res.mate[match_[u] - 1] = u - 1;
        res.total_weight += g_[u][match_[u]].w;
      }
    }
    return res;
  }

 private:
  struct Edge {
    int u = 0, v = 0;
    int64_t w = 0;
  };

  static constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

  int n_, n_x_ = 0;
  std::vector<std::vector<Edge>> g_;
  std::vector<int64_t> lab_;
  std::vector<int> match_, slack_, st_, pa_, s_, vis_;
  std::vector<std::vector<int>> flower_;
  std::vector<std::vector<int>> flower_from_;
  std::deque<int> q_;
  int timestamp_ = 0;

  int64_t e_delta(const Edge& e) const { return lab_[e.u] + lab_[e.v] - 2 * e.w; }

  void update_slack(int u, int x) {
    if (!slack_[x] || e_delta(g_[u][x]) < e_delta(g_[slack_[x]][x])) slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
      if (g_[u][x].w > 0 && st_[u] != x && s_[st_[u]] == 0) update_slack(u, x);
  }

  void q_push(int x) {
    if (x <= n_) {
      q_.push_back(x);
      return;
    }
    for (int i : flower_[x]) q_push(i);
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
      for (int i : flower_[x]) set_st(i, b);
  }

  int get_pr(int b, int xr) {
    int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) -
                              flower_[b].begin());
    if (pr % 2 == 1) {
      std::reverse(flower_[b].begin() + 1, flower_[b].end());
      return static_cast<int>(flower_[b].size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match_[u] = g_[u][v].v;
    if (u <= n_) return;
    Edge e = g_[u][v];
    int xr = flower_from_[u][e.u];
    int pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
  }

  void augment(int u, int v) {
    for (;;) {
      int xnv = st_[match_[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[pa_[xnv]]);
      u = st_[pa_[xnv]];
      v = xnv;
    }
  }

  int get_lca(int u, int v) {
    for (++timestamp_; u || v; std::swap(u, v)) {
      if (!u) continue;
      if (vis_[u] == timestamp_) return u;
      vis_[u] = timestamp_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
    lab_[b] = 0;
    s_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) g_[b][x].w = g_[x][b].w = 0;
    for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
    for (int xs : flower_[b]) {
      for (int x = 1; x <= n_x_; ++x) {
        if (g_[xs][x].w > 0 && (g_[b][x].w == 0 || e_delta(g_[xs][x]) < e_delta(g_[b][x]))) {
          g_[b][x] = g_[xs][x];
          g_[x][b] = g_[x][xs];
        }
      }
      for (int x = 1; x <= n_; ++x)
        if (flower_from_[xs][x]) flower_from_[b][x] = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int i : flower_[b]) set_st(i, i);
    int xr = flower_from_[b][g_[b][pa_[b]].u];
    int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      int xs = flower_[b][i], xns = flower_[b][i + 1];
      pa_[xs] = g_[xns][xs].u;
      s_[xs] = 1;
      s_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    s_[xr] = 1;
    pa_[xr] = pa_[b];
    for (size_t i = pr + 1; i < flower_[b].size(); ++i) {
      int xs = flower_[b][i];
      s_[xs] = -1;
      set_slack(xs);
    }
    st_[b] = 0;
  }

  bool on_found_edge(const Edge& e) {
    int u = st_[e.u], v = st_[e.v];
    if (s_[v] == -1) {
      pa_[v] = e.u;
      s_[v] = 1;
      int nu = st_[match_[v]];
      slack_[v] = slack_[nu] = 0;
      s_[nu] = 0;
      q_push(nu);
    } else if (s_[v] == 0) {
      int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool phase() {
    std::fill(s_.begin(), s_.end(), -1);
    std::fill(slack_.begin(), slack_.end(), 0);
    q_.clear();
    for (int x = 1; x <= n_x_; ++x)
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        s_[x] = 0;
        q_push(x);
      }
    if (q_.empty()) return false;
    for (;;) {
      while (!q_.empty()) {
        int u = q_.front();
        q_.pop_front();
        if (s_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v) {
          if (g_[u][v].w > 0 && st_[u] != st_[v]) {
            if (e_delta(g_[u][v]) == 0) {
              if (on_found_edge(g_[u][v])) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
        }
      }
      int64_t d = kInf;
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && s_[b] == 1) d = std::min(d, lab_[b] / 2);
      for (int x = 1; x <= n_x_; ++x) {
        if (st_[x] == x && slack_[x]) {
          if (s_[x] == -1)
            d = std::min(d, e_delta(g_[slack_[x]][x]));
          else if (s_[x] == 0)
            d = std::min(d, e_delta(g_[slack_[x]][x]) / 2);
        }
      }
      for (int u = 1; u <= n_; ++u) {
        if (s_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;  // exposed dual exhausted
          lab_[u] -= d;
        } else if (s_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b) {
        if (st_[b] == b && s_[b] >= 0) {
          if (s_[b] == 0)
            lab_[b] += 2 * d;
          else
            lab_[b] -= 2 * d;
        }
      }
      q_.clear();
      for (int x = 1; x <= n_x_; ++x) {
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
            e_delta(g_[slack_[x]][x]) == 0) {
          if (on_found_edge(g_[slack_[x]][x])) return true;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) expand_blossom(b);
    }
  }
};

}  // namespace

MatchingResult max_weight_matching(const std::vector<std::vector<int64_t>>& weights) {
  const size_t n = weights.size();
  for (const auto& row : weights) {
    if (row.size() != n) throw std::invalid_argument("weight matrix must be square");
    for (int64_t w : row)
      if (w < 0) throw std::invalid_argument("weights must be non-negative");
  }
  if (n == 0) return {{}, 0};
  Blossom b(weights);
  return b.solve();
}

std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<int64_t>>& costs) {
  const size_t n = costs.size();
  if (n % 2 != 0) throw std::invalid_argument("perfect matching needs an even vertex count");
  if (n == 0) return {};
  int64_t max_cost = 0;
  for (const auto& row : costs)
    for (int64_t c : row) max_cost = std::max(max_cost, c);
  std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, 0));
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v)
      if (u != v) w[u][v] = max_cost + 1 - costs[u][v];
  MatchingResult res = max_weight_matching(w);
  for (size_t u = 0; u < n; ++u)
    if (res.mate[u] < 0) throw std::logic_error("matching failed to be perfect");
  return res.mate;
}

}  // namespace telesurf
