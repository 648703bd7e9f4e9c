#pragma once

#include <map>
#include <string>
#include <vector>

#include "bcstat/numutil.hpp"
#include "bcstat/signed_perm.hpp"

namespace bcstat {

// Hyperplane arrangement given by primitive integer normals in a fixed
// order; the order drives the nbc machinery, reported quantities do not
// depend on it.
struct Arrangement {
  int dim = 0;
  std::vector<std::vector<long>> normals;
  std::vector<std::string> labels;
};

// Signed-permutation reflection arrangement: alpha block e_i - e_j (i < j,
// lexicographic), then beta block e_i + e_j, then gamma block e_i. n^2
// hyperplanes total.
Arrangement build_bc_arrangement(int n);
// Braid arrangement: alpha block only, n(n-1)/2 hyperplanes.
Arrangement build_a_arrangement(int n);
// Arbitrary normals (custom orders, scrambled-order checks). Validates
// pairwise non-proportionality.
Arrangement make_arrangement(int dim, std::vector<std::vector<long>> normals);

// Index helpers against the block orders above; letters are 1-based.
int bc_alpha_index(int n, int i, int j);
int bc_beta_index(int n, int i, int j);
int bc_gamma_index(int n, int i);
int a_alpha_index(int n, int i, int j);

// Permutation induced on hyperplane indices: g sends each normal to +-
// another normal; throws if a normal escapes the list.
std::vector<int> hyperplane_permutation(const Arrangement& arr, const SignedPermutation& g);

// Rational combination of basis monomials, keyed by strictly increasing
// index tuples; all tuples share one degree.
struct OsElement {
  int degree = 0;
  std::map<std::vector<int>, Rat> terms;

  bool is_zero() const { return terms.empty(); }
  void add_scaled(const OsElement& o, const Rat& c);
  bool operator==(const OsElement& o) const = default;
  std::string to_string(const Arrangement& arr) const;
};

// Exact model of the graded algebra attached to an arrangement: nbc bases,
// straightening onto them, traces of symmetries, and characters per degree.
// Caches (bases, straightening memo) make instances single-threaded; use one
// instance per thread for concurrent work.
class OsAlgebra {
 public:
  explicit OsAlgebra(Arrangement arr);

  const Arrangement& arrangement() const { return arr_; }
  int ambient_dim() const { return arr_.dim; }
  int hyperplane_count() const { return static_cast<int>(arr_.normals.size()); }

  int rank();
  bool is_dependent(const std::vector<int>& indices) const;

  // Monomials of degree d that are independent and contain no broken
  // circuit; empty above the rank. Built once for all degrees.
  const std::vector<std::vector<int>>& nbc_basis(int d);
  // dim H^d for d = 0..rank.
  std::vector<Int> dimensions();

  // Expand a word (indices in any order, possibly dependent or repeating)
  // over the nbc basis: reorder with the anticommutation sign, kill repeats
  // and dependent supports, rewrite broken circuits through their circuit
  // relation.
  OsElement straighten(const std::vector<int>& word, const Rat& coeff = Rat(1));

  // Trace of g acting on H^d: generators permute unsigned, signs only from
  // reordering; must come out integral.
  Int trace(const SignedPermutation& g, int d);

  // Class function of H^d: signed classes (TypeBC, guarded n <= 6) or plain
  // partitions embedded with empty minus part (TypeA, guarded n <= 7).
  std::map<DoublePartition, Int> character(int d, GroupMode mode);

 private:
  void build_nbc();
  // Smallest h outside s lying in the span of the members of s above h;
  // -1 when s carries no broken circuit.
  int broken_witness(const std::vector<int>& s) const;
  const OsElement& straighten_support(const std::vector<int>& support);

  Arrangement arr_;
  int rank_ = -1;
  bool nbc_built_ = false;
  std::vector<std::vector<std::vector<int>>> nbc_by_deg_;
  std::map<std::vector<int>, OsElement> memo_;
};

// dim of the subspace of H^d fixed by the copy of B_{n-a} on the last n-a
// letters: average of the character over that subgroup's classes.
Int invariant_dim(OsAlgebra& os, int d, int a);

// Map every decorated forest (vertices [n], red/blue edges, optional root
// per tree at a vertex of degree <= 1, edges + roots = d) into the algebra
// and confirm the images span H^d. Guarded n <= 5.
bool verify_forest_spanning(int n, int d);

}  // namespace bcstat
