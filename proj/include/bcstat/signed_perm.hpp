#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bcstat/char_poly.hpp"
#include "bcstat/numutil.hpp"

namespace bcstat {

// Element of the hyperoctahedral group on letters 1..n: img(i) in {+-1..+-n}
// records the image of +i, and g(-i) = -g(i) is implied. n = 0 is the
// trivial group.
class SignedPermutation {
 public:
  SignedPermutation() = default;
  explicit SignedPermutation(std::vector<int> img);
  static SignedPermutation identity(int n);

  int n() const { return static_cast<int>(img_.size()); }
  int apply(int a) const;
  const std::vector<int>& images() const { return img_; }

  SignedPermutation compose(const SignedPermutation& other) const;  // this after other
  SignedPermutation inverse() const;

  bool operator==(const SignedPermutation&) const = default;
  auto operator<=>(const SignedPermutation&) const = default;

  // Injective encoding for hashing; requires n <= 12.
  std::uint64_t encode() const;
  std::string to_string() const;

 private:
  std::vector<int> img_;
};

// Signed cycle type: positive cycle lengths and negative cycle lengths, each
// weakly decreasing. Two elements are conjugate exactly when these agree.
struct DoublePartition {
  std::vector<int> plus;
  std::vector<int> minus;
  auto operator<=>(const DoublePartition&) const = default;
  int weight() const;
  std::string to_string() const;  // "(3,1|2)" style
};

DoublePartition signed_cycle_type(const SignedPermutation& g);

// Canonical representative: plus parts then minus parts on consecutive
// letter blocks, each block carrying one cycle.
SignedPermutation class_representative(const DoublePartition& type, int n);

Int bn_order(int n);  // 2^n n!

// |B_n| / class size, from the wreath-product centralizer formula.
Int centralizer_order(const DoublePartition& type);
Int class_size(const DoublePartition& type, int n);

struct ConjClass {
  DoublePartition type;
  Int size;
};

// All classes of B_n in deterministic order (plus-weight descending, then
// partition enumeration order), sizes summing to |B_n|.
std::vector<ConjClass> conjugacy_classes(int n);

// Classes of the symmetric group S_n viewed inside B_n (minus part empty),
// sizes n!/z_lambda.
std::vector<ConjClass> conjugacy_classes_sym(int n);

// Full enumeration of B_n; guarded to n <= 7 (materialization cost).
std::vector<SignedPermutation> all_elements(int n);

// Breadth-first closure of a generating set; throws if the closure would
// exceed max_order.
std::vector<SignedPermutation> subgroup_closure(const std::vector<SignedPermutation>& gens,
                                                std::size_t max_order = 2000000);

// <phi, psi>_{B_n} for rational class functions given per cycle type.
Rat inner_product(int n, const std::function<Rat(const DoublePartition&)>& phi,
                  const std::function<Rat(const DoublePartition&)>& psi);

// Evaluation of a counting statistic on a cycle type: X_r reads the number of
// positive r-cycles, Y_r the number of negative r-cycles. In type A the minus
// part must be empty and X_r reads plain cycle counts.
Rat eval_char_poly(const CharPolynomial& P, const DoublePartition& type);

// <P, Q>_{B_n} for n = n_min..n_max with the first index where the value
// stabilizes (stays constant through n_max). Values are exact.
struct StabilityRow {
  int n;
  Rat value;
};
struct StabilityTable {
  std::vector<StabilityRow> rows;
  int first_stable_n = -1;  // -1 when no stable tail exists in range
};
StabilityTable char_poly_inner_stability(const CharPolynomial& P, const CharPolynomial& Q,
                                         int n_max);

}  // namespace bcstat
