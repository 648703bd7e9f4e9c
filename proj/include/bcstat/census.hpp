#pragma once

#include <string>
#include <vector>

#include "bcstat/numutil.hpp"

namespace bcstat {

// Reference growth base for the forest families, stored to the printed
// precision of its source and used only for comparison, never for equality.
inline constexpr double kGrowthReference = 2.955765285651994974714818;

// Rooted unlabelled trees on v vertices, 1 <= v <= 16. Computed by canonical
// generation (children as sorted multisets of canonical subtree ids) and by
// the Euler-transform recurrence; the two counts must agree.
Int rooted_trees(int v);

// Unrooted unlabelled trees on v vertices, 1 <= v <= 16. Computed by the
// rooted-minus-edge-symmetric reduction and independently by filtering the
// generated rooted trees to centroid roots (plus the bicentroid pair count);
// the two counts must agree.
Int free_trees(int v);

// Forests on d edges in which every tree carries a distinguished root at a
// leaf (single vertex with a trivial root for the 0-edge tree is excluded;
// the empty forest gives d = 0). 0 <= d <= 15; equals rooted_trees(d + 1),
// enforced.
Int leaf_rooted_forests(int d);

// Multisets of unrooted unlabelled trees with >= 1 edge totalling d edges,
// 0 <= d <= 12; at most leaf_rooted_forests(d), enforced.
Int forests(int d);

// Simple unlabelled graphs with exactly d edges and no isolated vertices,
// 1 <= d <= 6, by edge augmentation with isomorph rejection on a
// minimal-adjacency canonical form per connected component.
Int graphs_no_isolated(int d);

enum class CensusKind {
  RootedTreesByVertices,
  ForestsByEdges,
  LeafRootedForestsByEdges,
  GraphsNoIsolatedByEdges,
};
std::string to_string(CensusKind kind);

struct CensusTable {
  CensusKind kind = CensusKind::RootedTreesByVertices;
  int origin = 0;  // index of counts[0]
  std::vector<Int> counts;
};

// Table up to max_index inclusive, validated: all counts positive; rooted
// trees and graphs strictly increasing from index 2.
CensusTable census_table(CensusKind kind, int max_index);

struct GrowthRow {
  int index = 0;
  Int count;
  double root = 0.0;  // count^(1/index); diagnostic only
};

struct GrowthReport {
  CensusKind kind = CensusKind::LeafRootedForestsByEdges;
  double reference = kGrowthReference;
  std::vector<GrowthRow> rows;  // indexes >= 1
  bool roots_increasing = false;
  bool roots_below_bound = false;  // all roots < 2.96
};

// d-th roots of the counts. For the leaf-rooted forest family the increasing
// and below-2.96 properties are required and throwing; for other kinds they
// are reported as observed.
GrowthReport growth_report(const CensusTable& table);

struct DivergenceReport {
  long q = 0;
  int d_max = 0;
  std::vector<Rat> partial_sums;  // index d-1: sum_{e<=d} G_e / q^e
  std::vector<double> roots;      // G_d^(1/d)
  std::vector<bool> exceeds_q;    // root > q
};

// Partial sums of sum_d G_d/q^d with the d-th-root diagnostic, d_max <= 6.
DivergenceReport divergence_demo(long q, int d_max);

struct CoinvariantCell {
  int n = 0;
  int d = 0;
  int a = 0;
  bool skipped = false;  // a > 2d: the bound's factorial is undefined
  Int lhs;               // dim of the degree-d component fixed by the subgroup
  Rat rhs;               // 4^a (a+1) d (2d)!/(2d-a)! C(d,a) * 3 * (74/25)^d
  bool pass = false;     // lhs <= rhs
};

// Compares the subgroup-invariant dimension in degree d against the explicit
// growth bound. 1 <= n <= 5, 1 <= d <= 4, 0 <= a <= min(2, n).
CoinvariantCell coinvariant_bound(int n, int d, int a);

}  // namespace bcstat
