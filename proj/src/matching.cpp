#include "vpm/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

#include "vpm/errors.hpp"

namespace vpm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PosEdge {
  int id;
  int left;
  int right;
  double value;
};

// Min-cost perfect assignment on a square K x K matrix (row-major),
// shortest augmenting paths with potentials. Returns row index per column.
std::vector<int> assignment_min(const std::vector<double>& cost, int K) {
  std::vector<double> u(K + 1, 0.0), v(K + 1, 0.0), minv(K + 1, 0.0);
  std::vector<int> p(K + 1, 0), way(K + 1, 0);
  std::vector<char> used(K + 1, 0);
  for (int i = 1; i <= K; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= K; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * K + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= K; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  return p;  // p[j] in 1..K for j in 1..K
}

// One connected component of the positive subgraph, reduced to cells:
// per vertex pair keep the best parallel edge (ties to the smallest id).
struct Component {
  std::vector<int> lefts;   // global left ids, ascending
  std::vector<int> rights;  // global right ids, ascending
  std::vector<double> value;  // kl x kr, 0 where no edge
  std::vector<int> rep_id;    // kl x kr, -1 where no edge

  int kl() const { return static_cast<int>(lefts.size()); }
  int kr() const { return static_cast<int>(rights.size()); }
};

// Max-weight matching value over the component's cells, with the given
// local vertices masked out. Solved as a zero-padded square assignment.
double component_max_value(const Component& comp, const std::vector<char>& skip_left,
                           const std::vector<char>& skip_right) {
  std::vector<int> rows, cols;
  for (int a = 0; a < comp.kl(); ++a)
    if (!skip_left[a]) rows.push_back(a);
  for (int b = 0; b < comp.kr(); ++b)
    if (!skip_right[b]) cols.push_back(b);
  if (rows.empty() || cols.empty()) return 0.0;

  const int K = static_cast<int>(std::max(rows.size(), cols.size()));
  double ceiling = 0.0;
  for (int a : rows)
    for (int b : cols) ceiling = std::max(ceiling, comp.value[a * comp.kr() + b]);
  if (ceiling == 0.0) return 0.0;

  std::vector<double> cost(static_cast<std::size_t>(K) * K, ceiling);
  for (std::size_t ri = 0; ri < rows.size(); ++ri)
    for (std::size_t ci = 0; ci < cols.size(); ++ci)
      cost[ri * K + ci] = ceiling - comp.value[rows[ri] * comp.kr() + cols[ci]];

  const std::vector<int> row_of_col = assignment_min(cost, K);

  // Sum the matched positive cells in ascending representative-id order so
  // equal sets always produce bit-identical totals.
  std::vector<std::pair<int, double>> taken;
  for (int j = 1; j <= K; ++j) {
    const int i = row_of_col[j];
    if (i <= 0 || i > static_cast<int>(rows.size())) continue;
    if (j > static_cast<int>(cols.size())) continue;
    const int a = rows[i - 1];
    const int b = cols[j - 1];
    const double w = comp.value[a * comp.kr() + b];
    if (w > 0.0) taken.push_back({comp.rep_id[a * comp.kr() + b], w});
  }
  std::sort(taken.begin(), taken.end());
  double total = 0.0;
  for (const auto& [id, w] : taken) total += w;
  return total;
}

// Canonical (lexicographically smallest ascending id list) max-weight
// matching of one component. Greedy over candidate cells in id order with
// an exact feasibility probe: a cell joins iff some max-weight matching
// contains everything committed so far plus the cell.
void component_canonical(const Component& comp, std::vector<int>& chosen_out) {
  struct Cand {
    int id;
    int a;
    int b;
    double value;
  };
  std::vector<Cand> cands;
  for (int a = 0; a < comp.kl(); ++a)
    for (int b = 0; b < comp.kr(); ++b) {
      const double w = comp.value[a * comp.kr() + b];
      if (w > 0.0) cands.push_back({comp.rep_id[a * comp.kr() + b], a, b, w});
    }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& x, const Cand& y) { return x.id < y.id; });

  std::vector<char> covered_left(comp.kl(), 0), covered_right(comp.kr(), 0);
  const double target = component_max_value(comp, covered_left, covered_right);

  double committed = 0.0;
  for (const Cand& cand : cands) {
    if (committed == target) break;
    if (covered_left[cand.a] || covered_right[cand.b]) continue;
    covered_left[cand.a] = 1;
    covered_right[cand.b] = 1;
    const double rest = component_max_value(comp, covered_left, covered_right);
    if (committed + cand.value + rest == target) {
      committed += cand.value;
      chosen_out.push_back(cand.id);
    } else {
      covered_left[cand.a] = 0;
      covered_right[cand.b] = 0;
    }
  }
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<PosEdge> positive_edges(const MarketInstance& instance,
                                    const ValuationProfile& profile) {
  if (profile.size() != instance.edges.size())
    throw ValidationError("profile length does not match edge count");
  std::vector<PosEdge> pos;
  for (const EdgeSpec& e : instance.edges) {
    const double v = profile[e.edge_id];
    if (v > 0.0) pos.push_back({e.edge_id, e.left, e.right, v});
  }
  return pos;
}

// Split positive edges into components and reduce parallels to cells.
std::vector<Component> build_components(const MarketInstance& instance,
                                        const std::vector<PosEdge>& pos) {
  DisjointSet ds(instance.n_left + instance.n_right);
  for (const PosEdge& e : pos) ds.unite(e.left, instance.n_left + e.right);

  // Group edges by component root, keeping id order within each group.
  std::vector<std::pair<int, int>> root_edge;  // (root, index into pos)
  root_edge.reserve(pos.size());
  for (std::size_t k = 0; k < pos.size(); ++k)
    root_edge.push_back({ds.find(pos[k].left), static_cast<int>(k)});
  std::stable_sort(root_edge.begin(), root_edge.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  std::vector<Component> comps;
  std::size_t at = 0;
  while (at < root_edge.size()) {
    std::size_t end = at;
    while (end < root_edge.size() && root_edge[end].first == root_edge[at].first) ++end;

    Component comp;
    for (std::size_t k = at; k < end; ++k) {
      const PosEdge& e = pos[root_edge[k].second];
      comp.lefts.push_back(e.left);
      comp.rights.push_back(e.right);
    }
    std::sort(comp.lefts.begin(), comp.lefts.end());
    comp.lefts.erase(std::unique(comp.lefts.begin(), comp.lefts.end()), comp.lefts.end());
    std::sort(comp.rights.begin(), comp.rights.end());
    comp.rights.erase(std::unique(comp.rights.begin(), comp.rights.end()),
                      comp.rights.end());

    comp.value.assign(static_cast<std::size_t>(comp.kl()) * comp.kr(), 0.0);
    comp.rep_id.assign(static_cast<std::size_t>(comp.kl()) * comp.kr(), -1);
    for (std::size_t k = at; k < end; ++k) {
      const PosEdge& e = pos[root_edge[k].second];
      const int a = static_cast<int>(std::lower_bound(comp.lefts.begin(), comp.lefts.end(),
                                                      e.left) -
                                     comp.lefts.begin());
      const int b = static_cast<int>(std::lower_bound(comp.rights.begin(),
                                                      comp.rights.end(), e.right) -
                                     comp.rights.begin());
      const std::size_t cell = static_cast<std::size_t>(a) * comp.kr() + b;
      // Edges are visited in ascending id, so on value ties the first stays.
      if (e.value > comp.value[cell]) {
        comp.value[cell] = e.value;
        comp.rep_id[cell] = e.id;
      }
    }
    comps.push_back(std::move(comp));
    at = end;
  }
  return comps;
}

double ascending_value_sum(const std::vector<int>& chosen,
                           const ValuationProfile& profile) {
  double total = 0.0;
  for (int id : chosen) total += profile[id];
  return total;
}

}  // namespace

MatchingResult max_weight_matching(const MarketInstance& instance,
                                   const ValuationProfile& profile) {
  const std::vector<PosEdge> pos = positive_edges(instance, profile);
  MatchingResult result;
  if (pos.empty()) return result;

  for (const Component& comp : build_components(instance, pos))
    component_canonical(comp, result.chosen);

  std::sort(result.chosen.begin(), result.chosen.end());
  result.value = ascending_value_sum(result.chosen, profile);
  return result;
}

double max_weight_value(const MarketInstance& instance,
                        const ValuationProfile& profile) {
  const std::vector<PosEdge> pos = positive_edges(instance, profile);
  if (pos.empty()) return 0.0;
  double total = 0.0;
  for (const Component& comp : build_components(instance, pos)) {
    const std::vector<char> none_left(comp.kl(), 0), none_right(comp.kr(), 0);
    total += component_max_value(comp, none_left, none_right);
  }
  return total;
}

MatchingResult brute_force_matching(const MarketInstance& instance,
                                    const ValuationProfile& profile) {
  if (instance.edge_count() > kBruteForceEdgeLimit)
    throw LimitError("brute_force_matching: instance has " +
                     std::to_string(instance.edge_count()) + " edges, limit is " +
                     std::to_string(kBruteForceEdgeLimit));
  const std::vector<PosEdge> pos = positive_edges(instance, profile);

  MatchingResult best;  // empty matching, value 0
  std::vector<int> current;
  std::vector<char> covered_left(instance.n_left, 0), covered_right(instance.n_right, 0);

  auto consider = [&](double value) {
    if (value > best.value ||
        (value == best.value && !best.chosen.empty() && current < best.chosen)) {
      best.value = value;
      best.chosen = current;
    }
  };

  auto dfs = [&](auto&& self, std::size_t k, double value) -> void {
    if (k == pos.size()) {
      consider(value);
      return;
    }
    const PosEdge& e = pos[k];
    if (!covered_left[e.left] && !covered_right[e.right]) {
      covered_left[e.left] = 1;
      covered_right[e.right] = 1;
      current.push_back(e.id);
      self(self, k + 1, value + e.value);
      current.pop_back();
      covered_left[e.left] = 0;
      covered_right[e.right] = 0;
    }
    self(self, k + 1, value);
  };
  dfs(dfs, 0, 0.0);

  // Recompute as ascending-id sum so equal sets give bit-identical values.
  best.value = ascending_value_sum(best.chosen, profile);
  return best;
}

}  // namespace vpm
