#include "bcstat/poly_stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bcstat {

namespace {

using Elem = Field::Elem;

double pow_double(long q, int n) { return std::pow(static_cast<double>(q), n); }

void check_budget(const char* who, long q, int n, double budget) {
  double cost = pow_double(q, n);
  if (cost > budget) {
    std::ostringstream os;
    os << who << ": scan of q^n = " << static_cast<double>(cost)
       << " coefficient tuples exceeds budget " << budget << "; pass a larger budget to override";
    throw std::runtime_error(os.str());
  }
}

// Flat-buffer squarefree test: gcd(f, f') degree 0, no allocation per call.
class SquarefreeTester {
 public:
  SquarefreeTester(const Field& F, int n) : F_(F), n_(n), a_(n + 1), b_(n + 1) {
    long q = F.q();
    neg_.resize(q);
    inv_.resize(q);
    for (long v = 0; v < q; ++v) neg_[v] = F.neg(static_cast<Elem>(v));
    inv_[0] = 0;
    for (long v = 1; v < q; ++v) inv_[v] = F.inv(static_cast<Elem>(v));
    emb_.resize(n + 1);
    for (int k = 0; k <= n; ++k) emb_[k] = F.from_int(k % F.p());
    add_t_ = F.add_table();
    mul_t_ = F.mul_table();
  }

  // coeffs: c_0..c_{n-1}; the leading coefficient is an implicit 1.
  bool test(const Elem* coeffs) {
    const long q = F_.q();
    int deg_a = n_;
    for (int i = 0; i < n_; ++i) a_[i] = coeffs[i];
    a_[n_] = 1;
    int deg_b = -1;
    for (int i = 0; i + 1 <= n_; ++i) {
      Elem v = mul(emb_[i + 1], i + 1 == n_ ? Elem(1) : coeffs[i + 1]);
      b_[i] = v;
      if (v != 0) deg_b = i;
    }
    if (deg_b < 0) return false;  // vanishing derivative: a p-th power
    Elem* A = a_.data();
    Elem* B = b_.data();
    while (deg_b > 0) {
      const Elem lead_inv = inv_[B[deg_b]];
      while (deg_a >= deg_b) {
        Elem t = mul(A[deg_a], lead_inv);
        if (t != 0) {
          const int shift = deg_a - deg_b;
          for (int i = 0; i < deg_b; ++i) A[shift + i] = sub(A[shift + i], mul(t, B[i]));
        }
        --deg_a;
        while (deg_a >= 0 && A[deg_a] == 0) --deg_a;
      }
      std::swap(A, B);
      std::swap(deg_a, deg_b);
    }
    (void)q;
    return deg_b == 0;
  }

 private:
  Elem mul(Elem x, Elem y) const {
    return mul_t_ ? mul_t_[static_cast<std::size_t>(x) * F_.q() + y] : F_.mul(x, y);
  }
  Elem sub(Elem x, Elem y) const {
    Elem ny = neg_[y];
    return add_t_ ? add_t_[static_cast<std::size_t>(x) * F_.q() + ny] : F_.add(x, ny);
  }

  const Field& F_;
  int n_;
  std::vector<Elem> a_, b_;
  std::vector<Elem> neg_, inv_, emb_;
  const Elem* add_t_ = nullptr;
  const Elem* mul_t_ = nullptr;
};

std::uint64_t upow(long q, int n) {
  std::uint64_t out = 1;
  for (int i = 0; i < n; ++i) out *= static_cast<std::uint64_t>(q);
  return out;
}

// Walk counters in [lo, hi) interpreted as base-q digit tuples
// (c_0, ..., c_{n-1}) with c_0 most significant, calling fn on the
// squarefree candidates.
void scan_range(const Field& F, int n, std::uint64_t lo, std::uint64_t hi,
                const std::function<void(const Elem*)>& fn) {
  const long q = F.q();
  std::vector<Elem> digits(n);
  std::uint64_t m = lo;
  for (int i = n - 1; i >= 0; --i) {
    digits[i] = static_cast<Elem>(m % q);
    m /= q;
  }
  SquarefreeTester tester(F, n);
  for (std::uint64_t counter = lo; counter < hi; ++counter) {
    if (tester.test(digits.data())) fn(digits.data());
    int i = n - 1;
    while (i >= 0 && digits[i] + 1 == static_cast<Elem>(q)) digits[i--] = 0;
    if (i < 0) break;
    ++digits[i];
  }
}

FieldPoly monic_from_digits(const Elem* digits, int n) {
  std::vector<Elem> coeffs(digits, digits + n);
  coeffs.push_back(1);
  return poly_from_coeffs(std::move(coeffs));
}

void require_bc_mode(const Field& F, int n, const char* who) {
  if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
  if (F.p() == 2) throw std::invalid_argument(std::string(who) + ": even characteristic");
}

struct ShardResult {
  std::vector<Rat> sums;
  Int count = 0;
};

// One enumeration pass per shard; cycle types memoized so each distinct type
// evaluates every statistic once.
template <typename TypeFn>
std::vector<StatisticReport> summed_reports(const Field& F,
                                            const std::vector<CharPolynomial>& stats, int n,
                                            bool nonzero_const, int workers, double budget,
                                            const char* who, TypeFn type_of) {
  if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
  check_budget(who, F.q(), n, budget);
  if (workers < 1 || workers > 64)
    throw std::invalid_argument(std::string(who) + ": workers out of range");

  const std::uint64_t lo = nonzero_const ? upow(F.q(), n - 1) : 0;
  const std::uint64_t hi = upow(F.q(), n);
  const std::uint64_t len = hi - lo;
  if (static_cast<std::uint64_t>(workers) > len) workers = static_cast<int>(std::max<std::uint64_t>(len, 1));

  std::vector<ShardResult> shard(workers);
  auto run_shard = [&](int w) {
    ShardResult& out = shard[w];
    out.sums.assign(stats.size(), Rat(0));
    std::map<CycleTypeB, std::vector<Rat>> memo;
    std::uint64_t s_lo = lo + len * static_cast<std::uint64_t>(w) / workers;
    std::uint64_t s_hi = lo + len * static_cast<std::uint64_t>(w + 1) / workers;
    scan_range(F, n, s_lo, s_hi, [&](const Elem* digits) {
      FieldPoly f = monic_from_digits(digits, n);
      CycleTypeB t = type_of(f);
      auto it = memo.find(t);
      if (it == memo.end()) {
        std::vector<Rat> vals;
        vals.reserve(stats.size());
        for (const auto& P : stats) vals.push_back(eval_char_poly(P, t));
        it = memo.emplace(std::move(t), std::move(vals)).first;
      }
      for (std::size_t k = 0; k < stats.size(); ++k) out.sums[k] += it->second[k];
      out.count += 1;
    });
  };

  if (workers == 1) {
    run_shard(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_shard, w);
    for (auto& th : pool) th.join();
  }

  Rat qn(int_pow(Int(F.q()), static_cast<unsigned long>(n)));
  std::vector<StatisticReport> reports;
  reports.reserve(stats.size());
  for (std::size_t k = 0; k < stats.size(); ++k) {
    StatisticReport rep;
    rep.n = n;
    rep.q = F.q();
    rep.statistic = stats[k].to_string();
    for (int w = 0; w < workers; ++w) rep.sum += shard[w].sums[k];
    rep.normalized = Rat(rep.sum / qn);
    for (int w = 0; w < workers; ++w) rep.count += shard[w].count;
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace

int CycleTypeB::weight() const {
  int w = 0;
  for (const auto& [r, m] : pos) w += r * static_cast<int>(m);
  for (const auto& [r, m] : neg) w += r * static_cast<int>(m);
  return w;
}

DoublePartition CycleTypeB::to_double_partition() const {
  DoublePartition out;
  for (const auto& [r, m] : pos)
    for (long i = 0; i < m; ++i) out.plus.push_back(r);
  for (const auto& [r, m] : neg)
    for (long i = 0; i < m; ++i) out.minus.push_back(r);
  std::sort(out.plus.rbegin(), out.plus.rend());
  std::sort(out.minus.rbegin(), out.minus.rend());
  return out;
}

std::string CycleTypeB::to_string() const { return to_double_partition().to_string(); }

CycleTypeB signed_cycle_type(const Field& F, const FieldPoly& f, QrRoute route) {
  if (F.p() == 2) throw std::invalid_argument("signed_cycle_type: even characteristic");
  if (f.is_zero() || f.c.back() != 1)
    throw std::invalid_argument("signed_cycle_type: input must be monic");
  if (f.degree() >= 1 && f.c[0] == 0)
    throw std::invalid_argument("signed_cycle_type: constant term vanishes");
  if (!poly_is_squarefree(F, f))
    throw std::invalid_argument("signed_cycle_type: input not squarefree");
  CycleTypeB out;
  for (const auto& [g, mult] : poly_factor(F, f)) {
    if (mult != 1) throw std::logic_error("signed_cycle_type: repeated factor slipped through");
    bool is_qr = route == QrRoute::Norm ? qr_class_norm(F, g) : qr_class_modexp(F, g);
    ++(is_qr ? out.pos : out.neg)[g.degree()];
  }
  return out;
}

CycleTypeB cycle_type_a(const Field& F, const FieldPoly& f) {
  if (f.is_zero() || f.c.back() != 1)
    throw std::invalid_argument("cycle_type_a: input must be monic");
  if (!poly_is_squarefree(F, f))
    throw std::invalid_argument("cycle_type_a: input not squarefree");
  CycleTypeB out;
  for (const auto& [g, mult] : poly_factor(F, f)) {
    if (mult != 1) throw std::logic_error("cycle_type_a: repeated factor slipped through");
    ++out.pos[g.degree()];
  }
  return out;
}

Rat eval_char_poly(const CharPolynomial& P, const CycleTypeB& t) {
  if (P.mode() == GroupMode::TypeA && !t.neg.empty())
    throw std::invalid_argument("eval_char_poly: type A statistic on a signed cycle type");
  std::map<Indeterminate, long> counts;
  for (const auto& [r, m] : t.pos) counts[Indeterminate{r, false}] = m;
  for (const auto& [r, m] : t.neg) counts[Indeterminate{r, true}] = m;
  return P.eval(counts);
}

void for_each_y(const Field& F, int n, const std::function<void(const FieldPoly&)>& fn,
                double budget) {
  require_bc_mode(F, n, "for_each_y");
  check_budget("for_each_y", F.q(), n, budget);
  scan_range(F, n, upow(F.q(), n - 1), upow(F.q(), n),
             [&](const Elem* digits) { fn(monic_from_digits(digits, n)); });
}

std::vector<FieldPoly> enumerate_y(const Field& F, int n, double budget) {
  std::vector<FieldPoly> out;
  for_each_y(F, n, [&](const FieldPoly& f) { out.push_back(f); }, budget);
  return out;
}

Int count_y(const Field& F, int n, double budget) {
  require_bc_mode(F, n, "count_y");
  check_budget("count_y", F.q(), n, budget);
  long count = 0;
  scan_range(F, n, upow(F.q(), n - 1), upow(F.q(), n), [&](const Elem*) { ++count; });
  return Int(count);
}

void for_each_squarefree(const Field& F, int n, const std::function<void(const FieldPoly&)>& fn,
                         double budget) {
  if (n < 1) throw std::invalid_argument("for_each_squarefree: n must be >= 1");
  check_budget("for_each_squarefree", F.q(), n, budget);
  scan_range(F, n, 0, upow(F.q(), n),
             [&](const Elem* digits) { fn(monic_from_digits(digits, n)); });
}

std::vector<FieldPoly> enumerate_squarefree(const Field& F, int n, double budget) {
  std::vector<FieldPoly> out;
  for_each_squarefree(F, n, [&](const FieldPoly& f) { out.push_back(f); }, budget);
  return out;
}

Int count_squarefree(const Field& F, int n, double budget) {
  if (n < 1) throw std::invalid_argument("count_squarefree: n must be >= 1");
  check_budget("count_squarefree", F.q(), n, budget);
  long count = 0;
  scan_range(F, n, 0, upow(F.q(), n), [&](const Elem*) { ++count; });
  return Int(count);
}

std::vector<StatisticReport> statistic_sums(const Field& F,
                                            const std::vector<CharPolynomial>& stats, int n,
                                            QrRoute route, int workers, double budget) {
  require_bc_mode(F, n, "statistic_sums");
  for (const auto& P : stats)
    if (P.mode() != GroupMode::TypeBC)
      throw std::invalid_argument("statistic_sums: statistics must be in B/C mode");
  return summed_reports(F, stats, n, true, workers, budget, "statistic_sums",
                        [&](const FieldPoly& f) { return signed_cycle_type(F, f, route); });
}

StatisticReport statistic_sum(const Field& F, const CharPolynomial& P, int n, QrRoute route,
                              int workers, double budget) {
  return statistic_sums(F, {P}, n, route, workers, budget).front();
}

std::vector<StatisticReport> statistic_sums_a(const Field& F,
                                              const std::vector<CharPolynomial>& stats, int n,
                                              int workers, double budget) {
  for (const auto& P : stats)
    if (P.mode() != GroupMode::TypeA)
      throw std::invalid_argument("statistic_sums_a: statistics must be in type A mode");
  return summed_reports(F, stats, n, false, workers, budget, "statistic_sums_a",
                        [&](const FieldPoly& f) { return cycle_type_a(F, f); });
}

StatisticReport statistic_sum_a(const Field& F, const CharPolynomial& P, int n, int workers,
                                double budget) {
  return statistic_sums_a(F, {P}, n, workers, budget).front();
}

}  // namespace bcstat
