#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcstat/char_poly.hpp"
#include "bcstat/numutil.hpp"
#include "bcstat/signed_perm.hpp"

namespace bcstat {

// Which engine supplies the cohomology-side inner products.
enum class RhsSource { Os, Douglass };
std::string to_string(RhsSource s);

// q = p^r, p prime, r >= 1; throws otherwise.
std::pair<long, int> prime_power_split(long q);

// q^n - 2q^{n-1} + 2q^{n-2} - ... + (-1)^{n-1} 2q + (-1)^n, for n >= 1.
Int point_count_formula(int n, long q);

// Signed contributions (-1)^d q^{n-d} <P, H^d> for d = 0..n. Guarded
// n <= 5 (Os) and n <= 6 (Douglass); workers > 1 runs the Douglass per-d
// inner products in concurrent tasks (joined in degree order).
std::vector<Rat> rhs_contributions(const CharPolynomial& P, int n, long q, RhsSource source,
                                   int workers = 1);
Rat rhs_alternating_sum(const CharPolynomial& P, int n, long q, RhsSource source,
                        int workers = 1);

struct IdentityCheck {
  int n = 0;
  long q = 0;
  std::string statistic;
  Rat lhs;  // enumerated polynomial-side sum
  Rat rhs;  // alternating cohomology-side sum
  RhsSource source = RhsSource::Douglass;
  bool cross_checked = false;  // the other engine also ran and agreed
  bool pass = false;
  std::vector<Rat> rhs_terms;  // signed per-degree contributions
  std::string diff_report;     // populated only when the sides differ
};

// Mismatch diagnostics: per-degree contributions on one side, a cycle-type
// histogram of the enumeration on the other. Exposed for direct testing.
std::string format_identity_diff(const Rat& lhs, const Rat& rhs,
                                 const std::vector<Rat>& rhs_terms,
                                 const std::map<DoublePartition, Int>& histogram,
                                 const CharPolynomial& P);

// Exact verification of the signed-count identity over F_q, q odd. The rhs
// runs through the induced-character engine (n <= 6) and is cross-checked
// against the straightening engine when n <= 5; disagreement between the two
// engines throws, disagreement between lhs and rhs yields pass = false with
// a diff report.
IdentityCheck verify_identity(const CharPolynomial& P, int n, long q, int workers = 1);

// Unsigned variant over any F_q (p = 2 allowed), n <= 6, against the braid
// arrangement engine.
IdentityCheck verify_identity_a(const CharPolynomial& P, int n, long q, int workers = 1);

struct StableInner {
  int d = 0;
  Rat value;
  int m = 0;            // evaluation size; 0 when formula-sourced
  bool from_formula = false;
  bool stabilized = false;  // equality at m and m+1 verified
};

// <P, H^d(M_BC_m)> at m = max(deg P + 2d, d + 2). When m and m+1 are both
// computable the values must agree (throws otherwise). Beyond the computable
// range, statistics affine in X_1, Y_1 fall back to the proven stable forms
// (constants give 1 then 2, 2, ...; X_1 + Y_1 gives 1 then 4d; X_1 - Y_1
// gives 0); anything else throws.
StableInner stable_inner_detail(const CharPolynomial& P, int d);
Rat stable_inner(const CharPolynomial& P, int d);

// Largest d with stable_inner available; nullopt when unbounded (affine P).
std::optional<int> stable_inner_cap(const CharPolynomial& P);

// Exact limit of sum_d stable(P, d)/(-q)^d for statistics affine in
// X_1, Y_1: c0 (q-1)/(q+1) + ((a+b)/2) (q-1)^2/(q+1)^2.
std::optional<Rat> series_limit_closed_form(const CharPolynomial& P, long q);

struct SeriesReport {
  std::string statistic;
  long q = 0;
  int d_max = 0;  // effective cap, possibly below the requested one
  std::vector<StableInner> terms;
  std::vector<Rat> partial_sums;  // index D: sum_{d <= D} value_d/(-q)^d
  std::optional<Rat> limit_closed_form;
  std::vector<Rat> abs_error;  // |partial_sums[D] - limit|, when limit known
};

SeriesReport limit_series(const CharPolynomial& P, long q, int d_max);

// ((q+1)/(q-1)) times the series limit; defined for statistics with a
// closed-form limit. Guards q = 1.
Rat expected_value_limit(const CharPolynomial& P, long q);

}  // namespace bcstat
