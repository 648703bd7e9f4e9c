#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "bcstat/char_poly.hpp"
#include "bcstat/signed_perm.hpp"

using namespace bcstat;

namespace {

// Conjugacy orbit by direct search, independent of cycle types.
std::set<std::vector<int>> brute_orbit(const SignedPermutation& g,
                                       const std::vector<SignedPermutation>& group) {
  std::set<std::vector<int>> orbit;
  for (const auto& h : group) {
    SignedPermutation conj = h.compose(g).compose(h.inverse());
    orbit.insert(conj.images());
  }
  return orbit;
}

long eval_stat_long(const CharPolynomial& P, const DoublePartition& t) {
  Rat v = eval_char_poly(P, t);
  REQUIRE(v.get_den() == 1);
  return static_cast<long>(v.get_num().get_si());
}

}  // namespace

TEST_CASE("group axioms and letter action") {
  for (int n : {0, 1, 2, 3, 4}) {
    auto elems = all_elements(n);
    Int expect = bn_order(n);
    REQUIRE(Int(static_cast<long>(elems.size())) == expect);

    // encode is injective across the whole group
    std::set<std::uint64_t> codes;
    for (const auto& g : elems) codes.insert(g.encode());
    CHECK(codes.size() == elems.size());

    auto id = SignedPermutation::identity(n);
    for (const auto& g : elems) {
      CHECK(g.compose(g.inverse()) == id);
      CHECK(g.inverse().compose(g) == id);
      for (int a = 1; a <= n; ++a) CHECK(g.apply(-a) == -g.apply(a));
    }
  }
  // composition associativity on a sample
  auto elems = all_elements(3);
  for (size_t i = 0; i < elems.size(); i += 7)
    for (size_t j = 0; j < elems.size(); j += 11)
      for (size_t k = 0; k < elems.size(); k += 13) {
        const auto &a = elems[i], &b = elems[j], &c = elems[k];
        CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
      }
  // compose means "this after other"
  SignedPermutation swap12({2, 1, 3});
  SignedPermutation flip1({-1, 2, 3});
  CHECK(flip1.compose(swap12).apply(1) == 2);
  CHECK(flip1.compose(swap12).apply(2) == -1);
  CHECK(swap12.compose(flip1).apply(1) == -2);
}

TEST_CASE("malformed images rejected") {
  CHECK_THROWS(SignedPermutation({1, 1}));
  CHECK_THROWS(SignedPermutation({1, -1}));
  CHECK_THROWS(SignedPermutation({3, 1}));
  CHECK_THROWS(SignedPermutation({0, 1}));
  CHECK_THROWS(SignedPermutation::identity(2).apply(0));
  CHECK_THROWS(SignedPermutation::identity(2).apply(3));
  CHECK_THROWS(all_elements(8));
  CHECK_THROWS(class_representative({{2}, {}}, 3));
  CHECK_THROWS(class_representative({{2, 0}, {}}, 2));
}

TEST_CASE("cycle type partitions the group into conjugacy classes") {
  for (int n : {1, 2, 3}) {
    auto elems = all_elements(n);
    for (const auto& g : elems) {
      auto type = signed_cycle_type(g);
      auto orbit = brute_orbit(g, elems);
      std::set<std::vector<int>> same_type;
      for (const auto& h : elems)
        if (signed_cycle_type(h) == type) same_type.insert(h.images());
      CHECK(orbit == same_type);
    }
  }
}

TEST_CASE("class sizes match element counts and sum to the group order") {
  for (int n : {0, 1, 2, 3, 4}) {
    auto elems = all_elements(n);
    std::map<DoublePartition, long> counts;
    for (const auto& g : elems) ++counts[signed_cycle_type(g)];

    auto classes = conjugacy_classes(n);
    REQUIRE(classes.size() == counts.size());
    Int total = 0;
    std::set<DoublePartition> seen;
    for (const auto& cls : classes) {
      CHECK(seen.insert(cls.type).second);
      REQUIRE(counts.count(cls.type) == 1);
      CHECK(Int(counts[cls.type]) == cls.size);
      CHECK(cls.size * centralizer_order(cls.type) == bn_order(n));
      total += cls.size;
    }
    CHECK(total == bn_order(n));
  }
}

TEST_CASE("class counts across n") {
  const std::vector<size_t> expect = {1, 2, 5, 10, 20, 36, 65, 110, 185};
  for (int n = 0; n <= 8; ++n) CHECK(conjugacy_classes(n).size() == expect[n]);
}

TEST_CASE("representatives land in their own class") {
  for (int n = 0; n <= 6; ++n)
    for (const auto& cls : conjugacy_classes(n)) {
      auto rep = class_representative(cls.type, n);
      CHECK(signed_cycle_type(rep) == cls.type);
    }
}

TEST_CASE("centralizer order against brute force") {
  for (int n : {1, 2, 3}) {
    auto elems = all_elements(n);
    for (const auto& cls : conjugacy_classes(n)) {
      auto rep = class_representative(cls.type, n);
      long commuting = 0;
      for (const auto& h : elems)
        if (h.compose(rep) == rep.compose(h)) ++commuting;
      CHECK(Int(commuting) == centralizer_order(cls.type));
    }
  }
}

TEST_CASE("representative order equals lcm of signed cycle orders") {
  // a positive r-cycle has order r, a negative r-cycle order 2r
  auto element_order = [](const SignedPermutation& g) {
    auto id = SignedPermutation::identity(g.n());
    SignedPermutation acc = g;
    long k = 1;
    while (acc != id) {
      acc = g.compose(acc);
      ++k;
      REQUIRE(k < 1000);
    }
    return k;
  };
  CHECK(element_order(class_representative({{3}, {}}, 3)) == 3);
  CHECK(element_order(class_representative({{}, {3}}, 3)) == 6);
  CHECK(element_order(class_representative({{}, {1}}, 1)) == 2);
  CHECK(element_order(class_representative({{2}, {2}}, 4)) == 4);
  CHECK(element_order(class_representative({{3}, {2}}, 5)) == 12);
}

TEST_CASE("symmetric group classes inside the signed group") {
  auto classes = conjugacy_classes_sym(4);
  REQUIRE(classes.size() == 5);
  Int total = 0;
  for (const auto& cls : classes) {
    CHECK(cls.type.minus.empty());
    total += cls.size;
  }
  CHECK(total == factorial(4));
  std::map<std::vector<int>, Int> sizes;
  for (const auto& cls : classes) sizes[cls.type.plus] = cls.size;
  CHECK(sizes[{4}] == 6);
  CHECK(sizes[{3, 1}] == 8);
  CHECK(sizes[{2, 2}] == 3);
  CHECK(sizes[{2, 1, 1}] == 6);
  CHECK(sizes[{1, 1, 1, 1}] == 1);

  // brute check against unsigned permutations realized with empty minus part
  auto elems = all_elements(4);
  std::map<std::vector<int>, long> counts;
  for (const auto& g : elems) {
    bool unsigned_perm = true;
    for (int v : g.images()) unsigned_perm = unsigned_perm && v > 0;
    if (unsigned_perm) ++counts[signed_cycle_type(g).plus];
  }
  for (const auto& [plus, size] : sizes) CHECK(Int(counts[plus]) == size);
}

TEST_CASE("subgroup closure") {
  // adjacent swaps plus one sign flip generate the whole group
  std::vector<SignedPermutation> gens{SignedPermutation({2, 1, 3}), SignedPermutation({1, 3, 2}),
                                      SignedPermutation({-1, 2, 3})};
  CHECK(Int(static_cast<long>(subgroup_closure(gens).size())) == bn_order(3));

  // a single negative 3-cycle generates a cyclic group of order 6
  auto neg3 = class_representative({{}, {3}}, 3);
  CHECK(subgroup_closure({neg3}).size() == 6);

  // a positive 3-cycle alone gives order 3
  auto pos3 = class_representative({{3}, {}}, 3);
  CHECK(subgroup_closure({pos3}).size() == 3);

  CHECK_THROWS(subgroup_closure(gens, 10));
}

TEST_CASE("counting statistics on cycle types") {
  auto X1 = CharPolynomial::variable(Indeterminate{1, false}, GroupMode::TypeBC);
  auto Y1 = CharPolynomial::variable(Indeterminate{1, true}, GroupMode::TypeBC);
  auto X2 = CharPolynomial::variable(Indeterminate{2, false}, GroupMode::TypeBC);

  DoublePartition t{{2, 1, 1}, {3, 1}};
  CHECK(eval_stat_long(X1, t) == 2);
  CHECK(eval_stat_long(Y1, t) == 1);
  CHECK(eval_stat_long(X2, t) == 1);
  CHECK(eval_stat_long(X1 * Y1, t) == 2);

  auto A1 = CharPolynomial::variable(Indeterminate{1, false}, GroupMode::TypeA);
  CHECK(eval_stat_long(A1, DoublePartition{{3, 1, 1}, {}}) == 2);
  CHECK_THROWS(eval_char_poly(A1, t));
}

TEST_CASE("inner products agree with direct summation over the group") {
  auto X1 = CharPolynomial::variable(Indeterminate{1, false}, GroupMode::TypeBC);
  auto Y1 = CharPolynomial::variable(Indeterminate{1, true}, GroupMode::TypeBC);
  std::vector<CharPolynomial> stats{CharPolynomial::constant(1, GroupMode::TypeBC), X1, Y1,
                                    X1 + Y1, X1 * X1};
  for (int n : {0, 1, 2, 3, 4}) {
    auto elems = all_elements(n);
    for (const auto& P : stats)
      for (const auto& Q : stats) {
        Rat direct = 0;
        for (const auto& g : elems) {
          auto t = signed_cycle_type(g);
          direct += eval_char_poly(P, t) * eval_char_poly(Q, t);
        }
        direct /= Rat(bn_order(n));
        Rat via_classes = inner_product(
            n, [&](const DoublePartition& t) { return eval_char_poly(P, t); },
            [&](const DoublePartition& t) { return eval_char_poly(Q, t); });
        CHECK(via_classes == direct);
      }
  }
}

TEST_CASE("stability of inner products in n") {
  auto one = CharPolynomial::constant(1, GroupMode::TypeBC);
  auto X1 = CharPolynomial::variable(Indeterminate{1, false}, GroupMode::TypeBC);
  auto Y1 = CharPolynomial::variable(Indeterminate{1, true}, GroupMode::TypeBC);

  // <1,1> = 1 for every n
  auto t11 = char_poly_inner_stability(one, one, 6);
  CHECK(t11.first_stable_n == 0);
  for (const auto& row : t11.rows) CHECK(row.value == 1);

  // expected number of positive fixed letters: 0, then 1/2 from n = 1 on
  auto tx1 = char_poly_inner_stability(X1, one, 6);
  CHECK(tx1.first_stable_n == 1);
  CHECK(tx1.rows[0].value == 0);
  for (int n = 1; n <= 6; ++n) CHECK(tx1.rows[n].value == Rat(1, 2));

  // second moment of that count: 0, 1/2, then 3/4 from n = 2 on
  auto txx = char_poly_inner_stability(X1, X1, 6);
  CHECK(txx.first_stable_n == 2);
  CHECK(txx.rows[0].value == 0);
  CHECK(txx.rows[1].value == Rat(1, 2));
  for (int n = 2; n <= 6; ++n) CHECK(txx.rows[n].value == Rat(3, 4));

  // mixed moment: positive and negative fixed letters are uncorrelated in the limit
  auto txy = char_poly_inner_stability(X1, Y1, 6);
  CHECK(txy.first_stable_n == 2);
  for (int n = 2; n <= 6; ++n) CHECK(txy.rows[n].value == Rat(1, 4));
}

TEST_CASE("symmetric group expected fixed points via embedded classes") {
  auto A1 = CharPolynomial::variable(Indeterminate{1, false}, GroupMode::TypeA);
  for (int n : {1, 2, 3, 4, 5}) {
    Rat total = 0;
    for (const auto& cls : conjugacy_classes_sym(n))
      total += Rat(cls.size) * eval_char_poly(A1, cls.type);
    CHECK(Rat(total / Rat(factorial(n))) == 1);
  }
}

TEST_CASE("string forms") {
  CHECK(SignedPermutation({2, -1, 3}).to_string() == "[2,-1,3]");
  CHECK(DoublePartition{{3, 1}, {2}}.to_string() == "(3,1|2)");
  CHECK(DoublePartition{{}, {}}.to_string() == "(|)");
}
