#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcstat {

// Exact rationals and integers are GMP-backed throughout; floating point is
// confined to explicitly labelled diagnostics.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline Int factorial(unsigned long n) {
  Int out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Int binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

// Serialized form used by every report writer: "7" for integers, "3/4" otherwise.
inline std::string rat_string(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat v(s);
  v.canonicalize();
  return v;
}

inline int mobius(long n) {
  if (n <= 0) throw std::invalid_argument("mobius: positive argument required");
  int primes = 0;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      ++primes;
    }
  }
  if (n > 1) ++primes;
  return primes % 2 == 0 ? 1 : -1;
}

inline long euler_phi(long n) {
  if (n <= 0) throw std::invalid_argument("euler_phi: positive argument required");
  long out = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out -= out / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out -= out / n;
  return out;
}

// Partitions of n in weakly decreasing part order, generated largest-first so
// the sequence is deterministic: [n], [n-1,1], ..., [1,...,1].
inline std::vector<std::vector<int>> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative n");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(rest, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, rest - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

}  // namespace bcstat
