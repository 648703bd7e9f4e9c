#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bcstat/char_poly.hpp"
#include "bcstat/numutil.hpp"
#include "bcstat/signed_perm.hpp"

namespace bcstat {

// e^{2 pi i k / L}, kept in lowest terms with 0 <= k < L.
struct RootOfUnity {
  long k = 0;
  long L = 1;

  RootOfUnity() = default;
  RootOfUnity(long num, long order);  // reduces mod order, then to lowest terms
  auto operator<=>(const RootOfUnity&) const = default;
  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity pow(long e) const;
  RootOfUnity conj() const;
  bool is_one() const { return k == 0; }
  std::complex<double> to_complex() const;
  std::string to_string() const;  // "e(k/L)", "1", "-1"
};

// eta_m = (-1)^{m-1} e^{2 pi i / m}; eta_2 = 1.
RootOfUnity eta(int m);

// Exact linear combination of roots of unity. rational_value() recovers the
// total via the Galois trace (Ramanujan sums), which is exact whenever the
// total genuinely lies in Q; a floating-point residual gate rejects inputs
// whose irrational parts fail to cancel.
class CycloSum {
 public:
  void add(const RootOfUnity& r, const Rat& c);
  Rat rational_value(double tol = 1e-9) const;
  std::complex<double> complex_value() const;
  bool empty() const { return coeffs_.empty(); }

 private:
  std::map<RootOfUnity, Rat> coeffs_;
};

// One induction datum: the subgroup Y_lambda of B_n attached to a double
// partition with its linear character zeta. Members are materialized by
// closure over the generators {x_i} u {y_i : part > 1} u {block swaps};
// zeta extends multiplicatively, and every BFS edge re-checks consistency,
// which forces multiplicativity on all products.
struct DouglassSummand {
  DoublePartition lambda;
  int n = 0;
  std::vector<std::pair<int, int>> blocks;  // (first letter, size), plus parts first
  std::vector<SignedPermutation> elements;
  std::map<std::uint64_t, RootOfUnity> zeta;  // keyed by SignedPermutation::encode

  Int order() const { return Int(static_cast<long>(elements.size())); }
  bool contains(const SignedPermutation& g) const;
  const RootOfUnity& zeta_of(const SignedPermutation& g) const;  // throws if absent
};

// All double partitions of n whose plus component has exactly n - d parts;
// plus weight descending, partition enumeration order within a weight.
std::vector<DoublePartition> summands(int n, int d);

// |Y_lambda| without building the group: prod_i 2*part_i times the
// factorials of the equal-part multiplicities in each component.
Int summand_group_order(const DoublePartition& lambda);

DouglassSummand build_summand(const DoublePartition& lambda, int n);

// Stream every member of Y_lambda with its zeta value, one at a time,
// using the product structure (block permutation) x (per-part cyclic
// factors); never materializes the group.
void for_each_member(
    const DoublePartition& lambda, int n,
    const std::function<void(const SignedPermutation&, const RootOfUnity&)>& fn);

// (1/|Y_lambda|) sum over x in B_n of zeta(x g x^-1) where defined; the
// value of Ind zeta at g. Materializes B_n; guarded n <= 6.
std::complex<double> induced_char_value(const DouglassSummand& S, const SignedPermutation& g,
                                        int n);

// Classwise character of the degree-d sum of induced summands; each value
// must round to an integer within 1e-9. Oracle route, n <= 6.
std::map<DoublePartition, Int> induced_character_sum(int n, int d);

// <P, H^d> through restriction: sum over lambda of
// (1/|Y_lambda|) sum_{y in Y_lambda} P(type(y)) conj(zeta(y)), accumulated
// exactly per root of unity and recovered as a rational. Guarded n <= 8.
Rat inner_product_via_frobenius(const CharPolynomial& P, int n, int d);

}  // namespace bcstat
