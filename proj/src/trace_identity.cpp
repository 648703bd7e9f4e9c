#include "bcstat/trace_identity.hpp"

#include <future>
#include <sstream>
#include <stdexcept>

#include "bcstat/douglass.hpp"
#include "bcstat/finite_field.hpp"
#include "bcstat/os_cohomology.hpp"
#include "bcstat/poly_stats.hpp"

namespace bcstat {

namespace {

Rat rat_div(const Rat& a, const Rat& b) {
  Rat out = a / b;
  out.canonicalize();
  return out;
}

Rat rat_frac(long num, long den) {
  Rat out(num, den);
  out.canonicalize();
  return out;
}

// <P, H^d> through the straightening engine, averaged over B_n classes.
Rat os_inner(OsAlgebra& os, int n, int d, const CharPolynomial& P) {
  auto chi = os.character(d, GroupMode::TypeBC);
  return inner_product(
      n, [&](const DoublePartition& t) { return Rat(chi.at(t)); },
      [&](const DoublePartition& t) { return eval_char_poly(P, t); });
}

// <P, H^d> for the braid arrangement, averaged over S_n classes.
Rat os_inner_sym(OsAlgebra& os, int n, int d, const CharPolynomial& P) {
  auto chi = os.character(d, GroupMode::TypeA);
  Rat acc = 0;
  for (const auto& cls : conjugacy_classes_sym(n)) {
    Rat term = Rat(cls.size) * Rat(chi.at(cls.type)) * eval_char_poly(P, cls.type);
    acc += term;
  }
  return rat_div(acc, Rat(factorial(n)));
}

Rat signed_power_term(int d, int n, long q, const Rat& inner) {
  Rat term = Rat(int_pow(Int(q), static_cast<unsigned long>(n - d))) * inner;
  return (d % 2 == 0) ? term : Rat(-term);
}

}  // namespace

std::string to_string(RhsSource s) { return s == RhsSource::Os ? "os" : "douglass"; }

std::pair<long, int> prime_power_split(long q) {
  if (q < 2) throw std::invalid_argument("prime_power_split: q must be at least 2");
  long p = q;
  for (long c = 2; c * c <= q; ++c)
    if (q % c == 0) {
      p = c;
      break;
    }
  int r = 0;
  long rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++r;
  }
  if (rest != 1) throw std::invalid_argument("prime_power_split: q is not a prime power");
  return {p, r};
}

Int point_count_formula(int n, long q) {
  if (n < 1) throw std::invalid_argument("point_count_formula: n must be positive");
  Int qi(q);
  Int total = int_pow(qi, static_cast<unsigned long>(n));
  for (int k = 1; k < n; ++k) {
    Int term = 2 * int_pow(qi, static_cast<unsigned long>(n - k));
    total += (k % 2 == 0) ? term : Int(-term);
  }
  total += (n % 2 == 0) ? 1 : -1;
  return total;
}

std::vector<Rat> rhs_contributions(const CharPolynomial& P, int n, long q, RhsSource source,
                                   int workers) {
  if (P.mode() != GroupMode::TypeBC)
    throw std::invalid_argument("rhs_contributions: statistic must use X/Y variables");
  if (n < 1) throw std::invalid_argument("rhs_contributions: n must be positive");
  std::vector<Rat> terms(static_cast<std::size_t>(n) + 1);
  if (source == RhsSource::Os) {
    if (n > 5) throw std::invalid_argument("rhs_contributions: straightening source needs n <= 5");
    OsAlgebra os(build_bc_arrangement(n));
    for (int d = 0; d <= n; ++d) terms[d] = signed_power_term(d, n, q, os_inner(os, n, d, P));
    return terms;
  }
  if (n > 6) throw std::invalid_argument("rhs_contributions: induced source needs n <= 6");
  if (workers > 1) {
    std::vector<std::future<Rat>> jobs;
    jobs.reserve(terms.size());
    for (int d = 0; d <= n; ++d)
      jobs.push_back(std::async(std::launch::async,
                                [&P, n, d] { return inner_product_via_frobenius(P, n, d); }));
    for (int d = 0; d <= n; ++d) terms[d] = signed_power_term(d, n, q, jobs[d].get());
  } else {
    for (int d = 0; d <= n; ++d)
      terms[d] = signed_power_term(d, n, q, inner_product_via_frobenius(P, n, d));
  }
  return terms;
}

Rat rhs_alternating_sum(const CharPolynomial& P, int n, long q, RhsSource source, int workers) {
  Rat total = 0;
  for (const Rat& t : rhs_contributions(P, n, q, source, workers)) total += t;
  return total;
}

std::string format_identity_diff(const Rat& lhs, const Rat& rhs,
                                 const std::vector<Rat>& rhs_terms,
                                 const std::map<DoublePartition, Int>& histogram,
                                 const CharPolynomial& P) {
  std::ostringstream out;
  out << "sides differ: enumeration " << rat_string(lhs) << " vs alternating sum "
      << rat_string(rhs) << "\n";
  out << "per-degree contributions:\n";
  for (std::size_t d = 0; d < rhs_terms.size(); ++d)
    out << "  d=" << d << ": " << rat_string(rhs_terms[d]) << "\n";
  out << "enumeration by cycle type:\n";
  for (const auto& [type, count] : histogram) {
    Rat value = eval_char_poly(P, type);
    Rat contribution = Rat(count) * value;
    out << "  " << type.to_string() << ": count " << count.get_str() << ", statistic "
        << rat_string(value) << ", contribution " << rat_string(contribution) << "\n";
  }
  return out.str();
}

IdentityCheck verify_identity(const CharPolynomial& P, int n, long q, int workers) {
  auto [p, r] = prime_power_split(q);
  if (p == 2) throw std::invalid_argument("verify_identity: q must be odd");
  if (n < 1 || n > 6) throw std::invalid_argument("verify_identity: n must be in 1..6");
  Field F(p, r);

  IdentityCheck check;
  check.n = n;
  check.q = q;
  check.statistic = P.to_string();
  check.lhs = statistic_sum(F, P, n, QrRoute::Norm, workers).sum;
  check.rhs_terms = rhs_contributions(P, n, q, RhsSource::Douglass, workers);
  check.source = RhsSource::Douglass;
  check.rhs = 0;
  for (const Rat& t : check.rhs_terms) check.rhs += t;

  if (n <= 5) {
    Rat other = rhs_alternating_sum(P, n, q, RhsSource::Os);
    if (other != check.rhs)
      throw std::runtime_error("verify_identity: cohomology engines disagree at n=" +
                               std::to_string(n));
    check.cross_checked = true;
  }

  check.pass = (check.lhs == check.rhs);
  if (!check.pass) {
    std::map<DoublePartition, Int> histogram;
    for_each_y(F, n, [&](const FieldPoly& f) {
      ++histogram[signed_cycle_type(F, f).to_double_partition()];
    });
    check.diff_report =
        format_identity_diff(check.lhs, check.rhs, check.rhs_terms, histogram, P);
  }
  return check;
}

IdentityCheck verify_identity_a(const CharPolynomial& P, int n, long q, int workers) {
  if (P.mode() != GroupMode::TypeA)
    throw std::invalid_argument("verify_identity_a: statistic must use X variables only");
  auto [p, r] = prime_power_split(q);
  if (n < 1 || n > 6) throw std::invalid_argument("verify_identity_a: n must be in 1..6");
  Field F(p, r);

  IdentityCheck check;
  check.n = n;
  check.q = q;
  check.statistic = P.to_string();
  check.source = RhsSource::Os;
  check.lhs = statistic_sum_a(F, P, n, workers).sum;

  OsAlgebra os(build_a_arrangement(n));
  int rank = static_cast<int>(os.dimensions().size()) - 1;
  check.rhs_terms.assign(static_cast<std::size_t>(rank) + 1, Rat(0));
  check.rhs = 0;
  for (int d = 0; d <= rank; ++d) {
    check.rhs_terms[d] = signed_power_term(d, n, q, os_inner_sym(os, n, d, P));
    check.rhs += check.rhs_terms[d];
  }

  check.pass = (check.lhs == check.rhs);
  if (!check.pass) {
    std::map<DoublePartition, Int> histogram;
    for_each_squarefree(
        F, n, [&](const FieldPoly& f) { ++histogram[cycle_type_a(F, f).to_double_partition()]; });
    check.diff_report =
        format_identity_diff(check.lhs, check.rhs, check.rhs_terms, histogram, P);
  }
  return check;
}

namespace {

constexpr int kFrobeniusCap = 8;  // largest n the induced engine streams

// Stable form per degree for the affine decomposition P = c0 + a X_1 + b Y_1:
// constants contribute 1, 2, 2, ...; X_1 + Y_1 contributes 1, 4d; the
// difference contributes 0.
Rat affine_stable_value(const CharPolynomial& P, int d) {
  Rat c0 = P.constant_coefficient();
  Rat ab = P.linear_coefficient(Indeterminate{1, false}) +
           P.linear_coefficient(Indeterminate{1, true});
  Rat ones = (d == 0) ? Rat(1) : Rat(2);
  Rat pair = (d == 0) ? Rat(1) : Rat(4 * d);
  Rat half_pair = pair / 2;
  half_pair.canonicalize();
  return c0 * ones + ab * half_pair;
}

}  // namespace

StableInner stable_inner_detail(const CharPolynomial& P, int d) {
  if (P.mode() != GroupMode::TypeBC)
    throw std::invalid_argument("stable_inner: statistic must use X/Y variables");
  if (d < 0) throw std::invalid_argument("stable_inner: d must be nonnegative");
  StableInner out;
  out.d = d;
  int m = std::max(P.degree() + 2 * d, d + 2);
  if (m <= kFrobeniusCap) {
    out.m = m;
    out.value = inner_product_via_frobenius(P, m, d);
    if (m + 1 <= kFrobeniusCap) {
      Rat next = inner_product_via_frobenius(P, m + 1, d);
      if (next != out.value)
        throw std::runtime_error("stable_inner: value not yet stable at m=" + std::to_string(m));
      out.stabilized = true;
    }
    return out;
  }
  if (!P.is_affine_in_degree_one())
    throw std::invalid_argument("stable_inner: d=" + std::to_string(d) +
                                " needs m=" + std::to_string(m) + ", beyond the computable range");
  out.from_formula = true;
  out.value = affine_stable_value(P, d);
  return out;
}

Rat stable_inner(const CharPolynomial& P, int d) { return stable_inner_detail(P, d).value; }

std::optional<int> stable_inner_cap(const CharPolynomial& P) {
  if (P.mode() != GroupMode::TypeBC)
    throw std::invalid_argument("stable_inner_cap: statistic must use X/Y variables");
  if (P.is_affine_in_degree_one()) return std::nullopt;
  int by_degree = (kFrobeniusCap - P.degree()) / 2;  // deg P + 2d <= cap
  return std::min(by_degree, kFrobeniusCap - 2);     // d + 2 <= cap
}

std::optional<Rat> series_limit_closed_form(const CharPolynomial& P, long q) {
  if (P.mode() != GroupMode::TypeBC)
    throw std::invalid_argument("series_limit_closed_form: statistic must use X/Y variables");
  if (q < 2) throw std::invalid_argument("series_limit_closed_form: q must be at least 2");
  if (!P.is_affine_in_degree_one()) return std::nullopt;
  Rat c0 = P.constant_coefficient();
  Rat ab = P.linear_coefficient(Indeterminate{1, false}) +
           P.linear_coefficient(Indeterminate{1, true});
  Rat ones = rat_frac(q - 1, q + 1);
  Rat pair = rat_frac((q - 1) * (q - 1), 2 * (q + 1) * (q + 1));
  return c0 * ones + ab * pair;
}

SeriesReport limit_series(const CharPolynomial& P, long q, int d_max) {
  if (d_max < 0) throw std::invalid_argument("limit_series: d_max must be nonnegative");
  if (q < 2) throw std::invalid_argument("limit_series: q must be at least 2");
  SeriesReport report;
  report.statistic = P.to_string();
  report.q = q;
  std::optional<int> cap = stable_inner_cap(P);
  if (cap && *cap < 0)
    throw std::invalid_argument("limit_series: no degree is within the computable range");
  report.d_max = cap ? std::min(d_max, *cap) : d_max;
  report.limit_closed_form = series_limit_closed_form(P, q);

  Rat partial = 0;
  for (int d = 0; d <= report.d_max; ++d) {
    StableInner term = stable_inner_detail(P, d);
    Int denom = int_pow(Int(q), static_cast<unsigned long>(d));
    Rat scaled = rat_div(term.value, Rat(denom));
    partial += (d % 2 == 0) ? scaled : Rat(-scaled);
    report.terms.push_back(std::move(term));
    report.partial_sums.push_back(partial);
    if (report.limit_closed_form) {
      Rat err = partial - *report.limit_closed_form;
      report.abs_error.push_back(Rat(abs(err)));
    }
  }
  return report;
}

Rat expected_value_limit(const CharPolynomial& P, long q) {
  if (q == 1) throw std::invalid_argument("expected_value_limit: q = 1 divides by zero");
  std::optional<Rat> limit = series_limit_closed_form(P, q);
  if (!limit)
    throw std::invalid_argument("expected_value_limit: no closed-form limit for this statistic");
  return *limit * rat_frac(q + 1, q - 1);
}

}  // namespace bcstat
