#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "bcstat/char_poly.hpp"
#include "bcstat/os_cohomology.hpp"
#include "bcstat/signed_perm.hpp"

using namespace bcstat;

namespace {

CharPolynomial var(int r, bool is_y) {
  return CharPolynomial::variable(Indeterminate{r, is_y}, GroupMode::TypeBC);
}

// coefficients of prod (1 + a_i t)
std::vector<Int> poincare_coeffs(const std::vector<long>& factors) {
  std::vector<Int> c{Int(1)};
  for (long a : factors) {
    std::vector<Int> next(c.size() + 1, Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      Int scaled = c[i] * a;
      next[i + 1] += scaled;
    }
    c = std::move(next);
  }
  return c;
}

Rat signed_inner(int n, const std::map<DoublePartition, Int>& chi, const CharPolynomial& P) {
  return inner_product(
      n, [&](const DoublePartition& t) { return Rat(chi.at(t)); },
      [&](const DoublePartition& t) { return eval_char_poly(P, t); });
}

Rat sym_inner(int n, const std::map<DoublePartition, Int>& chi, const CharPolynomial& P) {
  Rat total = 0;
  Rat order = 0;
  for (const auto& cls : conjugacy_classes_sym(n)) {
    Rat term = Rat(cls.size) * Rat(chi.at(cls.type)) * eval_char_poly(P, cls.type);
    total += term;
    order += Rat(cls.size);
  }
  return Rat(total / order);
}

OsElement scaled(const OsElement& e, const Rat& c) {
  OsElement out;
  out.degree = e.degree;
  out.add_scaled(e, c);
  return out;
}

}  // namespace

TEST_CASE("signed arrangement layout and index helpers") {
  Arrangement arr = build_bc_arrangement(3);
  CHECK(arr.dim == 3);
  CHECK(arr.normals.size() == 9);
  CHECK(arr.labels[bc_alpha_index(3, 1, 2)] == "a1,2");
  CHECK(arr.labels[bc_alpha_index(3, 2, 3)] == "a2,3");
  CHECK(arr.labels[bc_beta_index(3, 1, 3)] == "b1,3");
  CHECK(arr.labels[bc_gamma_index(3, 2)] == "g2");
  CHECK(arr.normals[bc_alpha_index(3, 1, 3)] == std::vector<long>{1, 0, -1});
  CHECK(arr.normals[bc_beta_index(3, 2, 3)] == std::vector<long>{0, 1, 1});
  CHECK(arr.normals[bc_gamma_index(3, 1)] == std::vector<long>{1, 0, 0});

  Arrangement braid = build_a_arrangement(4);
  CHECK(braid.dim == 4);
  CHECK(braid.normals.size() == 6);
  CHECK(a_alpha_index(4, 2, 4) == 4);
  CHECK(braid.labels[4] == "a2,4");
  CHECK(braid.normals[a_alpha_index(4, 2, 4)] == std::vector<long>{0, 1, 0, -1});

  for (int n = 1; n <= 6; ++n) {
    CHECK(build_bc_arrangement(n).normals.size() == static_cast<std::size_t>(n * n));
    CHECK(build_a_arrangement(n).normals.size() == static_cast<std::size_t>(n * (n - 1) / 2));
  }

  CHECK_THROWS_AS(bc_alpha_index(3, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(bc_gamma_index(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_bc_arrangement(0), std::invalid_argument);
}

TEST_CASE("custom arrangements reject degenerate normals") {
  CHECK_THROWS_AS(make_arrangement(2, {{1, 0}, {0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_arrangement(2, {{1, -1}, {-2, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(make_arrangement(2, {{1, 0, 0}}), std::invalid_argument);
  Arrangement ok = make_arrangement(2, {{1, 0}, {1, 1}});
  CHECK(ok.labels == std::vector<std::string>{"h0", "h1"});
}

TEST_CASE("symmetries permute hyperplanes up to sign") {
  Arrangement arr = build_bc_arrangement(2);
  CHECK(hyperplane_permutation(arr, SignedPermutation({2, 1})) == std::vector<int>{0, 1, 3, 2});
  CHECK(hyperplane_permutation(arr, SignedPermutation({-1, 2})) == std::vector<int>{1, 0, 2, 3});
  CHECK(hyperplane_permutation(arr, SignedPermutation({-1, -2})) == std::vector<int>{0, 1, 2, 3});

  Arrangement braid = build_a_arrangement(2);
  CHECK(hyperplane_permutation(braid, SignedPermutation({2, 1})) == std::vector<int>{0});
  CHECK_THROWS_AS(hyperplane_permutation(braid, SignedPermutation({-1, 2})), std::logic_error);
  CHECK_THROWS_AS(hyperplane_permutation(arr, SignedPermutation({1, 2, 3})),
                  std::invalid_argument);

  // permuting is a group action: image under a product matches composition
  Arrangement arr3 = build_bc_arrangement(3);
  SignedPermutation g({2, -3, 1});
  SignedPermutation h({-2, 1, 3});
  auto pg = hyperplane_permutation(arr3, g);
  auto ph = hyperplane_permutation(arr3, h);
  auto pgh = hyperplane_permutation(arr3, g.compose(h));  // g after h
  for (std::size_t k = 0; k < pgh.size(); ++k) CHECK(pgh[k] == pg[ph[k]]);
}

TEST_CASE("linear dependence of hyperplane subsets") {
  OsAlgebra os2(build_bc_arrangement(2));
  CHECK(os2.rank() == 2);
  CHECK_FALSE(os2.is_dependent({}));
  CHECK_FALSE(os2.is_dependent({0, 1}));
  CHECK(os2.is_dependent({0, 1, 2}));  // (e1-e2) + (e1+e2) = 2 e1
  CHECK(os2.is_dependent({0, 2, 3}));
  for (int k = 0; k < 4; ++k) CHECK_FALSE(os2.is_dependent({k}));
  CHECK_THROWS_AS(os2.is_dependent({7}), std::invalid_argument);

  OsAlgebra os3(build_bc_arrangement(3));
  CHECK(os3.rank() == 3);
  CHECK(os3.is_dependent({0, 1, 2}));  // a1,2 a1,3 a2,3
  CHECK_FALSE(os3.is_dependent({3, 4, 5}));  // b1,2 b1,3 b2,3

  OsAlgebra braid(build_a_arrangement(4));
  CHECK(braid.rank() == 3);
}

TEST_CASE("graded dimensions match the factored characteristic polynomial") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<long> factors;
    for (int i = 1; i <= n; ++i) factors.push_back(2 * i - 1);
    OsAlgebra os(build_bc_arrangement(n));
    CHECK(os.dimensions() == poincare_coeffs(factors));
  }
  for (int n = 2; n <= 6; ++n) {
    std::vector<long> factors;
    for (int i = 1; i < n; ++i) factors.push_back(i);
    OsAlgebra os(build_a_arrangement(n));
    CHECK(os.dimensions() == poincare_coeffs(factors));
  }
  OsAlgebra os1(build_a_arrangement(1));
  CHECK(os1.rank() == 0);
  CHECK(os1.dimensions() == std::vector<Int>{Int(1)});
}

TEST_CASE("nbc monomials are increasing and broken-circuit free") {
  OsAlgebra os2(build_bc_arrangement(2));
  CHECK(os2.nbc_basis(0) == std::vector<std::vector<int>>{{}});
  CHECK(os2.nbc_basis(1) == std::vector<std::vector<int>>{{0}, {1}, {2}, {3}});
  CHECK(os2.nbc_basis(2) == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {0, 3}});
  CHECK(os2.nbc_basis(3).empty());

  // every basis monomial straightens to itself
  OsAlgebra os4(build_bc_arrangement(4));
  for (int d = 0; d <= 4; ++d)
    for (const auto& mono : os4.nbc_basis(d)) {
      OsElement e = os4.straighten(mono);
      REQUIRE(e.terms.size() == 1);
      CHECK(e.terms.begin()->first == mono);
      CHECK(e.terms.begin()->second == 1);
    }
}

TEST_CASE("straightening rewrites words onto the basis") {
  OsAlgebra braid(build_a_arrangement(3));
  // a1,3 a2,3 = a1,2 a2,3 - a1,2 a1,3
  OsElement lhs = braid.straighten({a_alpha_index(3, 1, 3), a_alpha_index(3, 2, 3)});
  OsElement expected;
  expected.degree = 2;
  expected.terms[{0, 2}] = 1;
  expected.terms[{0, 1}] = -1;
  CHECK(lhs == expected);

  OsAlgebra os2(build_bc_arrangement(2));
  int a = bc_alpha_index(2, 1, 2), b = bc_beta_index(2, 1, 2);
  int g1 = bc_gamma_index(2, 1), g2 = bc_gamma_index(2, 2);
  // dependent support dies
  CHECK(os2.straighten({g1, g2, a}).is_zero());
  // g1 g2 = a g2 - a g1
  OsElement gg = os2.straighten({g1, g2});
  OsElement gg_expected;
  gg_expected.degree = 2;
  gg_expected.terms[{a, g2}] = 1;
  gg_expected.terms[{a, g1}] = -1;
  CHECK(gg == gg_expected);
  // b g1 = a g1 - a b,  b g2 = a g2 - a b
  OsElement bg1 = os2.straighten({b, g1});
  CHECK(bg1.terms == std::map<std::vector<int>, Rat>{{{a, g1}, 1}, {{a, b}, -1}});
  OsElement bg2 = os2.straighten({b, g2});
  CHECK(bg2.terms == std::map<std::vector<int>, Rat>{{{a, g2}, 1}, {{a, b}, -1}});

  // anticommutation, repeats, scaling
  CHECK(os2.straighten({g1, a}) == scaled(os2.straighten({a, g1}), -1));
  CHECK(os2.straighten({b, b}).is_zero());
  CHECK(os2.straighten({a, g1}, Rat(3, 2)) == scaled(os2.straighten({a, g1}), Rat(3, 2)));
  CHECK(os2.straighten({}, 1).terms.at({}) == 1);
  CHECK_THROWS_AS(os2.straighten({4}), std::invalid_argument);

  // product rewrites respect the defining relations in a bigger arrangement:
  // the image of any dependent triple word vanishes
  OsAlgebra os3(build_bc_arrangement(3));
  CHECK(os3.straighten({bc_alpha_index(3, 1, 2), bc_alpha_index(3, 1, 3), bc_alpha_index(3, 2, 3)})
            .is_zero());
  CHECK(os3.straighten({bc_beta_index(3, 1, 2), bc_gamma_index(3, 1), bc_gamma_index(3, 2)})
            .is_zero());

  CHECK(os2.straighten({b, g1}).to_string(os2.arrangement()) == "-a1,2*b1,2 + a1,2*g1");
  CHECK(os2.straighten({g1, g2, a}).to_string(os2.arrangement()) == "0");
  CHECK(os2.straighten({a, g1}, Rat(3, 2)).to_string(os2.arrangement()) == "3/2*a1,2*g1");
}

TEST_CASE("traces of group elements on each degree") {
  OsAlgebra os2(build_bc_arrangement(2));
  auto classes2 = conjugacy_classes(2);
  REQUIRE(classes2.size() == 5);
  std::vector<Int> d1, d2;
  for (const auto& cls : classes2) {
    SignedPermutation rep = class_representative(cls.type, 2);
    CHECK(os2.trace(rep, 0) == 1);
    d1.push_back(os2.trace(rep, 1));
    d2.push_back(os2.trace(rep, 2));
    CHECK(os2.trace(rep, 3) == 0);
  }
  CHECK(d1 == std::vector<Int>{2, 4, 2, 0, 4});
  CHECK(d2 == std::vector<Int>{1, 3, 1, -1, 3});

  // trace is a class function: conjugates agree with the representative
  OsAlgebra os3(build_bc_arrangement(3));
  auto elements = all_elements(3);
  for (const auto& g : elements) {
    DoublePartition type = signed_cycle_type(g);
    SignedPermutation rep = class_representative(type, 3);
    for (int d = 1; d <= 2; ++d) CHECK(os3.trace(g, d) == os3.trace(rep, d));
  }
}

TEST_CASE("characters match printed inner products") {
  // columns n = 1..5 of the unstable grid for <X1+Y1, H^d>
  const std::vector<std::vector<long>> x1y1_col = {
      {1, 1}, {1, 3, 2}, {1, 4, 6, 3}, {1, 4, 8, 9, 4}, {1, 4, 8, 12, 12, 5}};
  CharPolynomial one = CharPolynomial::constant(1, GroupMode::TypeBC);
  CharPolynomial x1y1 = var(1, false) + var(1, true);
  CharPolynomial x1_minus_y1 = var(1, false) - var(1, true);

  for (int n = 1; n <= 5; ++n) {
    OsAlgebra os(build_bc_arrangement(n));
    for (int d = 0; d <= n; ++d) {
      auto chi = os.character(d, GroupMode::TypeBC);
      Rat betti = signed_inner(n, chi, one);
      Rat expected_betti = (d == 0 || d == n) ? 1 : 2;
      CHECK(betti == expected_betti);
      CHECK(signed_inner(n, chi, x1y1) == x1y1_col[n - 1][d]);
      CHECK(signed_inner(n, chi, x1_minus_y1) == 0);
    }
  }
}

TEST_CASE("plain-permutation characters on the braid arrangement") {
  CharPolynomial one = CharPolynomial::constant(1, GroupMode::TypeA);
  for (int n = 3; n <= 5; ++n) {
    OsAlgebra os(build_a_arrangement(n));
    for (int d = 0; d < n; ++d) {
      auto chi = os.character(d, GroupMode::TypeA);
      CHECK(sym_inner(n, chi, one) == (d <= 1 ? 1 : 0));
    }
  }
}

TEST_CASE("reported quantities ignore the hyperplane order") {
  Arrangement canonical = build_bc_arrangement(3);
  std::vector<std::vector<long>> shuffled = canonical.normals;
  std::rotate(shuffled.begin(), shuffled.begin() + 4, shuffled.end());
  std::swap(shuffled[0], shuffled[2]);
  OsAlgebra os_a(std::move(canonical));
  OsAlgebra os_b(make_arrangement(3, shuffled));
  CHECK(os_a.dimensions() == os_b.dimensions());
  for (int d = 0; d <= 3; ++d)
    CHECK(os_a.character(d, GroupMode::TypeBC) == os_b.character(d, GroupMode::TypeBC));
}

TEST_CASE("character guards") {
  OsAlgebra big(build_bc_arrangement(7));
  CHECK_THROWS_AS(big.character(1, GroupMode::TypeBC), std::invalid_argument);
  OsAlgebra big_a(build_a_arrangement(8));
  CHECK_THROWS_AS(big_a.character(1, GroupMode::TypeA), std::invalid_argument);
}

TEST_CASE("subgroup-invariant dimensions") {
  OsAlgebra os3(build_bc_arrangement(3));
  std::vector<Int> dims3 = os3.dimensions();
  const std::vector<long> betti3 = {1, 2, 2, 1};
  for (int d = 0; d <= 3; ++d) {
    CHECK(invariant_dim(os3, d, 0) == betti3[d]);
    CHECK(invariant_dim(os3, d, 3) == dims3[d]);
    CHECK(invariant_dim(os3, 0, d) == 1);
  }

  // brute average over an embedded two-letter signed subgroup
  for (int d = 0; d <= 3; ++d) {
    Rat total = 0;
    for (const auto& g : all_elements(2))
      total += Rat(os3.trace(SignedPermutation({g.apply(1), g.apply(2), 3}), d));
    Rat avg = Rat(total / Rat(8));
    CHECK(Rat(invariant_dim(os3, d, 1)) == avg);
  }

  OsAlgebra os4(build_bc_arrangement(4));
  for (int d = 0; d <= 4; ++d) {
    Rat total = 0;
    for (const auto& g : all_elements(2))
      total += Rat(os4.trace(SignedPermutation({g.apply(1), g.apply(2), 3, 4}), d));
    Rat avg = Rat(total / Rat(8));
    CHECK(Rat(invariant_dim(os4, d, 2)) == avg);
  }

  CHECK_THROWS_AS(invariant_dim(os3, 1, -1), std::invalid_argument);
  CHECK_THROWS_AS(invariant_dim(os3, 1, 4), std::invalid_argument);
}

TEST_CASE("decorated forests span every degree") {
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= n; ++d) {
      INFO("n=", n, " d=", d);
      CHECK(verify_forest_spanning(n, d));
    }
  CHECK(verify_forest_spanning(5, 1));
  CHECK(verify_forest_spanning(3, 7));  // above the rank: vacuous
  CHECK_THROWS_AS(verify_forest_spanning(6, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_forest_spanning(2, -1), std::invalid_argument);
}
