#include "bcstat/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "bcstat/os_cohomology.hpp"

namespace bcstat {

namespace {

constexpr int kTreeVertexCap = 16;
constexpr int kForestEdgeCap = 12;
constexpr int kGraphEdgeCap = 6;

// Rooted trees as ids ordered by (vertex count, generation order); a tree is
// a root plus a multiset of child trees, generated as a nonincreasing id
// sequence so each isomorphism class appears exactly once.
struct TreeData {
  std::vector<int> max_child;                // largest child subtree size
  std::vector<bool> single_child;            // root degree exactly 1
  std::vector<std::vector<int>> by_size;     // ids per vertex count
};

const TreeData& tree_data() {
  static const TreeData data = [] {
    TreeData d;
    d.by_size.assign(kTreeVertexCap + 1, {});
    d.max_child.push_back(0);
    d.single_child.push_back(false);
    d.by_size[1].push_back(0);
    for (int v = 2; v <= kTreeVertexCap; ++v) {
      // rest: vertices still to distribute; children bounded by (size, id) of
      // the previously chosen child to keep the multiset nonincreasing.
      auto rec = [&](auto&& self, int rest, int max_size, int max_id, int first_size,
                     int children) -> void {
        if (rest == 0) {
          d.max_child.push_back(first_size);
          d.single_child.push_back(children == 1);
          d.by_size[v].push_back(static_cast<int>(d.max_child.size()) - 1);
          return;
        }
        for (int s = std::min(rest, max_size); s >= 1; --s) {
          const std::vector<int>& bucket = d.by_size[s];
          int hi = static_cast<int>(bucket.size()) - 1;
          if (s == max_size)
            hi = static_cast<int>(std::upper_bound(bucket.begin(), bucket.end(), max_id) -
                                  bucket.begin()) -
                 1;
          for (int idx = hi; idx >= 0; --idx)
            self(self, rest - s, s, bucket[idx], first_size == 0 ? s : first_size, children + 1);
        }
      };
      rec(rec, v - 1, v - 1, static_cast<int>(d.max_child.size()), 0, 0);
    }
    return d;
  }();
  return data;
}

// Euler-transform recurrence: r(n+1) = (1/n) sum_k (sum_{d|k} d r(d)) r(n+1-k).
std::vector<Int> rooted_counts_recurrence(int v_max) {
  std::vector<Int> r(static_cast<std::size_t>(v_max) + 1, Int(0));
  r[1] = 1;
  for (int n = 1; n < v_max; ++n) {
    Int acc = 0;
    for (int k = 1; k <= n; ++k) {
      Int sk = 0;
      for (int div = 1; div <= k; ++div)
        if (k % div == 0) sk += div * r[div];
      acc += sk * r[n - k + 1];
    }
    if (acc % n != 0) throw std::runtime_error("rooted tree recurrence is not integral");
    r[n + 1] = acc / n;
  }
  return r;
}

void check_tree_range(int v) {
  if (v < 1 || v > kTreeVertexCap)
    throw std::invalid_argument("tree counts are computed for 1 <= v <= 16");
}

Int multiset_coeff(unsigned long types, unsigned long k) {
  if (k == 0) return 1;
  return binomial(types + k - 1, k);
}

// Multisets of items with positive integer sizes totalling each d <= d_max;
// items[e] counts the distinct item classes of size e.
std::vector<Int> multiset_totals(const std::vector<Int>& items, int d_max) {
  std::vector<Int> ways(static_cast<std::size_t>(d_max) + 1, Int(0));
  ways[0] = 1;
  for (int e = 1; e <= d_max; ++e) {
    if (e >= static_cast<int>(items.size()) || items[e] == 0) continue;
    unsigned long types = items[e].get_ui();
    std::vector<Int> next(ways.size(), Int(0));
    for (int j = 0; j <= d_max; ++j) {
      if (ways[j] == 0) continue;
      for (unsigned long k = 0; j + static_cast<int>(k) * e <= d_max; ++k)
        next[j + static_cast<int>(k) * e] += ways[j] * multiset_coeff(types, k);
    }
    ways = std::move(next);
  }
  return ways;
}

struct SmallGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // normalized a < b
};

// Minimal upper-triangle adjacency bits of one connected component over all
// vertex orderings; components here have at most 7 vertices.
std::uint32_t component_code(const std::vector<int>& verts,
                             const std::set<std::pair<int, int>>& adj) {
  int c = static_cast<int>(verts.size());
  std::vector<int> perm(verts.begin(), verts.end());
  std::sort(perm.begin(), perm.end());
  std::uint32_t best = UINT32_MAX;
  do {
    std::uint32_t mask = 0;
    int pos = 0;
    for (int i = 0; i < c; ++i)
      for (int j = i + 1; j < c; ++j, ++pos)
        if (adj.count({std::min(perm[i], perm[j]), std::max(perm[i], perm[j])}))
          mask |= (1u << pos);
    best = std::min(best, mask);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Whole-graph canonical key: sorted (size, code) pairs of the components.
std::string graph_code(const SmallGraph& g) {
  std::set<std::pair<int, int>> adj(g.edges.begin(), g.edges.end());
  std::vector<int> comp(g.vertices, -1);
  std::vector<std::pair<int, std::uint32_t>> parts;
  for (int start = 0; start < g.vertices; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<int> verts = {start};
    comp[start] = start;
    for (std::size_t head = 0; head < verts.size(); ++head)
      for (const auto& [a, b] : g.edges) {
        int other = (a == verts[head]) ? b : (b == verts[head]) ? a : -1;
        if (other >= 0 && comp[other] < 0) {
          comp[other] = start;
          verts.push_back(other);
        }
      }
    parts.emplace_back(static_cast<int>(verts.size()), component_code(verts, adj));
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& [size, code] : parts) {
    key.push_back(static_cast<char>('0' + size));
    for (int byte = 0; byte < 4; ++byte)
      key.push_back(static_cast<char>((code >> (8 * byte)) & 0xff));
  }
  return key;
}

// Edge augmentation with isomorph rejection; every graph with d+1 edges and
// no isolated vertices arises from a d-edge one by adding an edge between
// existing vertices, one new vertex, or two new vertices.
const std::vector<std::vector<SmallGraph>>& graph_levels() {
  static const std::vector<std::vector<SmallGraph>> levels = [] {
    std::vector<std::vector<SmallGraph>> lv(kGraphEdgeCap + 1);
    lv[1].push_back({2, {{0, 1}}});
    for (int d = 1; d < kGraphEdgeCap; ++d) {
      std::set<std::string> seen;
      for (const SmallGraph& g : lv[d]) {
        std::set<std::pair<int, int>> adj(g.edges.begin(), g.edges.end());
        auto offer = [&](int a, int b, int vertices) {
          SmallGraph h = g;
          h.vertices = vertices;
          h.edges.emplace_back(a, b);
          if (seen.insert(graph_code(h)).second) lv[d + 1].push_back(std::move(h));
        };
        for (int a = 0; a < g.vertices; ++a) {
          for (int b = a + 1; b < g.vertices; ++b)
            if (!adj.count({a, b})) offer(a, b, g.vertices);
          offer(a, g.vertices, g.vertices + 1);
        }
        offer(g.vertices, g.vertices + 1, g.vertices + 2);
      }
    }
    return lv;
  }();
  return levels;
}

OsAlgebra& cached_bc_algebra(int n) {
  static std::map<int, OsAlgebra> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, OsAlgebra(build_bc_arrangement(n))).first;
  return it->second;
}

}  // namespace

Int rooted_trees(int v) {
  check_tree_range(v);
  static const std::vector<Int> recurrence = rooted_counts_recurrence(kTreeVertexCap);
  Int generated(static_cast<long>(tree_data().by_size[v].size()));
  if (generated != recurrence[v])
    throw std::runtime_error("rooted tree counters disagree at v=" + std::to_string(v));
  return generated;
}

Int free_trees(int v) {
  check_tree_range(v);
  // Rooted count minus unordered root-edge pairs: every free tree is counted
  // once per rooting, and rootings pair off across each edge.
  Int cross = 0;
  for (int i = 1; i < v; ++i) cross += rooted_trees(i) * rooted_trees(v - i);
  if (v % 2 == 0) cross -= rooted_trees(v / 2);
  if (cross % 2 != 0) throw std::runtime_error("free tree edge pairing has odd parity");
  Int reduced = rooted_trees(v) - cross / 2;

  // Independent path: keep only centroid-rooted generations (every child
  // subtree strictly below v/2), plus the bicentroid pairs for even v.
  const TreeData& td = tree_data();
  long kept = 0;
  for (int id : td.by_size[v])
    if (td.max_child[id] <= (v - 1) / 2) ++kept;
  Int filtered(kept);
  if (v % 2 == 0) {
    Int half = rooted_trees(v / 2);
    Int pairs = half * (half + 1) / 2;
    filtered += pairs;
  }
  if (reduced != filtered)
    throw std::runtime_error("free tree counters disagree at v=" + std::to_string(v));
  return reduced;
}

Int leaf_rooted_forests(int d) {
  if (d < 0 || d > kTreeVertexCap - 1)
    throw std::invalid_argument("leaf-rooted forests are computed for 0 <= d <= 15");
  static const std::vector<Int> totals = [] {
    const TreeData& td = tree_data();
    std::vector<Int> items(kTreeVertexCap, Int(0));
    for (int e = 1; e <= kTreeVertexCap - 1; ++e) {
      long classes = 0;
      for (int id : td.by_size[e + 1])
        if (td.single_child[id]) ++classes;  // the root is a leaf
      items[e] = classes;
    }
    return multiset_totals(items, kTreeVertexCap - 1);
  }();
  if (totals[d] != rooted_trees(d + 1))
    throw std::runtime_error("leaf-rooted forest count breaks the tree correspondence at d=" +
                             std::to_string(d));
  return totals[d];
}

Int forests(int d) {
  if (d < 0 || d > kForestEdgeCap)
    throw std::invalid_argument("forests are computed for 0 <= d <= 12");
  static const std::vector<Int> totals = [] {
    std::vector<Int> items(kForestEdgeCap + 1, Int(0));
    for (int e = 1; e <= kForestEdgeCap; ++e) items[e] = free_trees(e + 1);
    return multiset_totals(items, kForestEdgeCap);
  }();
  if (totals[d] > leaf_rooted_forests(d))
    throw std::runtime_error("unrooted forests exceed leaf-rooted forests at d=" +
                             std::to_string(d));
  return totals[d];
}

Int graphs_no_isolated(int d) {
  if (d < 1 || d > kGraphEdgeCap)
    throw std::invalid_argument("graph census is computed for 1 <= d <= 6");
  return Int(static_cast<long>(graph_levels()[d].size()));
}

std::string to_string(CensusKind kind) {
  switch (kind) {
    case CensusKind::RootedTreesByVertices: return "rooted_trees_by_vertices";
    case CensusKind::ForestsByEdges: return "forests_by_edges";
    case CensusKind::LeafRootedForestsByEdges: return "leaf_rooted_forests_by_edges";
    case CensusKind::GraphsNoIsolatedByEdges: return "graphs_no_isolated_by_edges";
  }
  throw std::logic_error("unknown census kind");
}

CensusTable census_table(CensusKind kind, int max_index) {
  CensusTable table;
  table.kind = kind;
  bool strict_from_2 = false;
  switch (kind) {
    case CensusKind::RootedTreesByVertices:
      table.origin = 1;
      for (int v = 1; v <= max_index; ++v) table.counts.push_back(rooted_trees(v));
      strict_from_2 = true;
      break;
    case CensusKind::ForestsByEdges:
      table.origin = 0;
      for (int d = 0; d <= max_index; ++d) table.counts.push_back(forests(d));
      break;
    case CensusKind::LeafRootedForestsByEdges:
      table.origin = 0;
      for (int d = 0; d <= max_index; ++d) table.counts.push_back(leaf_rooted_forests(d));
      break;
    case CensusKind::GraphsNoIsolatedByEdges:
      table.origin = 1;
      for (int d = 1; d <= max_index; ++d) table.counts.push_back(graphs_no_isolated(d));
      strict_from_2 = true;
      break;
  }
  Int prev = 0;
  for (std::size_t i = 0; i < table.counts.size(); ++i) {
    int index = table.origin + static_cast<int>(i);
    if (table.counts[i] <= 0) throw std::runtime_error("census counts must be positive");
    if (i > 0 && table.counts[i] < prev)
      throw std::runtime_error("census counts must be nondecreasing");
    if (strict_from_2 && index > 2 && table.counts[i] <= prev)
      throw std::runtime_error("census counts must increase strictly from index 2");
    prev = table.counts[i];
  }
  return table;
}

GrowthReport growth_report(const CensusTable& table) {
  GrowthReport report;
  report.kind = table.kind;
  for (std::size_t i = 0; i < table.counts.size(); ++i) {
    int index = table.origin + static_cast<int>(i);
    if (index < 1) continue;
    GrowthRow row;
    row.index = index;
    row.count = table.counts[i];
    row.root = std::pow(row.count.get_d(), 1.0 / index);
    report.rows.push_back(row);
  }
  report.roots_increasing = true;
  report.roots_below_bound = true;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (i > 0 && report.rows[i].root <= report.rows[i - 1].root)
      report.roots_increasing = false;
    if (report.rows[i].root >= 2.96) report.roots_below_bound = false;
  }
  if (table.kind == CensusKind::LeafRootedForestsByEdges &&
      (!report.roots_increasing || !report.roots_below_bound))
    throw std::runtime_error("leaf-rooted forest growth left its proven envelope");
  return report;
}

DivergenceReport divergence_demo(long q, int d_max) {
  if (q < 2) throw std::invalid_argument("divergence_demo: q must be at least 2");
  if (d_max < 1 || d_max > kGraphEdgeCap)
    throw std::invalid_argument("divergence_demo: d_max must be in 1..6");
  DivergenceReport report;
  report.q = q;
  report.d_max = d_max;
  Rat acc = 0;
  for (int d = 1; d <= d_max; ++d) {
    Int count = graphs_no_isolated(d);
    Rat term(count, int_pow(Int(q), static_cast<unsigned long>(d)));
    term.canonicalize();
    acc += term;
    report.partial_sums.push_back(acc);
    double root = std::pow(count.get_d(), 1.0 / d);
    report.roots.push_back(root);
    report.exceeds_q.push_back(root > static_cast<double>(q));
  }
  return report;
}

CoinvariantCell coinvariant_bound(int n, int d, int a) {
  if (n < 1 || n > 5) throw std::invalid_argument("coinvariant_bound: n must be in 1..5");
  if (d < 1 || d > 4) throw std::invalid_argument("coinvariant_bound: d must be in 1..4");
  if (a < 0 || a > 2 || a > n)
    throw std::invalid_argument("coinvariant_bound: a must be in 0..min(2, n)");
  CoinvariantCell cell;
  cell.n = n;
  cell.d = d;
  cell.a = a;
  if (a > 2 * d) {  // the falling factorial (2d)!/(2d-a)! runs out of terms
    cell.skipped = true;
    return cell;
  }
  cell.lhs = invariant_dim(cached_bc_algebra(n), d, a);
  Rat falling(factorial(2 * d), factorial(2 * d - a));
  falling.canonicalize();
  Rat base(74, 25);
  Rat growth = 1;
  for (int i = 0; i < d; ++i) growth *= base;
  cell.rhs = Rat(int_pow(Int(4), static_cast<unsigned long>(a))) * Rat(a + 1) * Rat(d) *
             falling * Rat(binomial(d, a)) * Rat(3) * growth;
  cell.pass = (Rat(cell.lhs) <= cell.rhs);
  return cell;
}

}  // namespace bcstat
