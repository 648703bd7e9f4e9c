#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bcstat/char_poly.hpp"
#include "bcstat/finite_field.hpp"
#include "bcstat/signed_perm.hpp"

namespace bcstat {

// Signed cycle type of the Frobenius action attached to a squarefree
// polynomial: pos[r] counts degree-r irreducible factors in the residue
// class (X_r), neg[r] those in the non-residue class (Y_r). Only the
// conjugacy class is ever needed, so this is the whole representation.
struct CycleTypeB {
  std::map<int, long> pos;
  std::map<int, long> neg;

  auto operator<=>(const CycleTypeB&) const = default;
  int weight() const;
  DoublePartition to_double_partition() const;
  std::string to_string() const;
};

enum class QrRoute { Norm, Modexp };

// Factor f and classify each irreducible factor as QR or NQR. Requires f
// monic squarefree with f(0) != 0 over odd characteristic.
CycleTypeB signed_cycle_type(const Field& F, const FieldPoly& f, QrRoute route = QrRoute::Norm);

// Type A variant: factor degrees only, no residue classification and no
// constant-term constraint; any characteristic.
CycleTypeB cycle_type_a(const Field& F, const FieldPoly& f);

// Substitute X_r <- pos[r], Y_r <- neg[r]. A type-A statistic demands an
// empty neg part.
Rat eval_char_poly(const CharPolynomial& P, const CycleTypeB& t);

// Enumeration budget: candidate coefficient tuples per call. Callers with a
// bigger appetite pass their own cap.
inline constexpr double kScanBudget = 2e7;

// Stream the monic squarefree degree-n f with f(0) != 0 in ascending
// lexicographic order on (c_0, ..., c_{n-1}). Odd characteristic only.
void for_each_y(const Field& F, int n, const std::function<void(const FieldPoly&)>& fn,
                double budget = kScanBudget);
std::vector<FieldPoly> enumerate_y(const Field& F, int n, double budget = kScanBudget);

// Count without materializing; flat buffers, no per-candidate allocation.
Int count_y(const Field& F, int n, double budget = kScanBudget);

// Type A: all monic squarefree degree-n f, same order, any characteristic.
void for_each_squarefree(const Field& F, int n, const std::function<void(const FieldPoly&)>& fn,
                         double budget = kScanBudget);
std::vector<FieldPoly> enumerate_squarefree(const Field& F, int n, double budget = kScanBudget);
Int count_squarefree(const Field& F, int n, double budget = kScanBudget);

struct StatisticReport {
  int n = 0;
  long q = 0;
  std::string statistic;
  Rat sum;         // exact value of the summed statistic
  Rat normalized;  // sum / q^n
  Int count;       // number of polynomials summed
};

// Sum every statistic in one enumeration pass, factoring each f once. The
// counter range splits into `workers` contiguous shards whose partial sums
// combine in shard order, so results are independent of the worker count.
std::vector<StatisticReport> statistic_sums(const Field& F,
                                            const std::vector<CharPolynomial>& stats, int n,
                                            QrRoute route = QrRoute::Norm, int workers = 1,
                                            double budget = kScanBudget);
StatisticReport statistic_sum(const Field& F, const CharPolynomial& P, int n,
                              QrRoute route = QrRoute::Norm, int workers = 1,
                              double budget = kScanBudget);

std::vector<StatisticReport> statistic_sums_a(const Field& F,
                                              const std::vector<CharPolynomial>& stats, int n,
                                              int workers = 1, double budget = kScanBudget);
StatisticReport statistic_sum_a(const Field& F, const CharPolynomial& P, int n, int workers = 1,
                                double budget = kScanBudget);

}  // namespace bcstat
