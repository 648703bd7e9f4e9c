#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bcstat/numutil.hpp"

namespace bcstat {

// F_{p^r} with elements encoded as integers in [0, q). The encoding is the
// little-endian base-p digit string of the coefficient vector against the
// power basis of the modulus, so element k has constant coefficient k % p.
// For q <= kTableLimit all unary/binary operation tables are precomputed;
// larger fields fall back to on-the-fly polynomial arithmetic.
class Field {
 public:
  using Elem = std::uint32_t;

  // Chooses the lexicographically least monic irreducible modulus of degree r
  // over F_p, coefficients compared constant term first.
  Field(long p, int r);

  long p() const { return p_; }
  int r() const { return r_; }
  long q() const { return q_; }

  // Monic modulus, length r+1, constant coefficient first.
  const std::vector<long>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const;  // embeds F_p
  std::vector<long> coeffs(Elem e) const;
  Elem from_coeffs(const std::vector<long>& c) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, const Int& e) const;

  // +1 on nonzero squares, -1 on nonsquares; requires odd q and nonzero input.
  int legendre(Elem a) const;

  bool tables_enabled() const { return tables_on_; }
  const Elem* add_table() const { return tables_on_ ? add_.data() : nullptr; }
  const Elem* mul_table() const { return tables_on_ ? mul_.data() : nullptr; }

  std::string describe() const;

  static constexpr long kTableLimit = 1024;
  static constexpr long kDeskLimit = 10000;  // q above this is out of scope

 private:
  Elem mul_generic(Elem a, Elem b) const;

  long p_ = 0;
  int r_ = 0;
  long q_ = 0;
  std::vector<long> modulus_;
  bool tables_on_ = false;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
  std::vector<std::int8_t> legendre_;
};

// Monic-or-zero convention: empty vector means 0, otherwise coefficients are
// low degree first with a nonzero leading entry.
struct FieldPoly {
  std::vector<Field::Elem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool operator==(const FieldPoly& o) const = default;
  auto operator<=>(const FieldPoly& o) const = default;
};

FieldPoly poly_from_coeffs(std::vector<Field::Elem> coeffs);
FieldPoly poly_x(const Field& F);
FieldPoly poly_constant(const Field& F, Field::Elem v);
std::string poly_string(const Field& F, const FieldPoly& f);

FieldPoly poly_add(const Field& F, const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_sub(const Field& F, const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_mul(const Field& F, const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_scale(const Field& F, Field::Elem s, const FieldPoly& a);
// Quotient/remainder against a nonzero divisor.
std::pair<FieldPoly, FieldPoly> poly_divmod(const Field& F, const FieldPoly& a,
                                            const FieldPoly& b);
FieldPoly poly_mod(const Field& F, const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_make_monic(const Field& F, const FieldPoly& a);
// Monic gcd; gcd(f, 0) = monic(f).
FieldPoly poly_gcd(const Field& F, FieldPoly a, FieldPoly b);
FieldPoly poly_derivative(const Field& F, const FieldPoly& a);
Field::Elem poly_eval(const Field& F, const FieldPoly& a, Field::Elem x);
FieldPoly poly_powmod(const Field& F, const FieldPoly& base, const Int& e,
                      const FieldPoly& mod);

// gcd(f, f') = 1. In characteristic p a vanishing derivative makes f a p-th
// power, which the same gcd test rejects for deg f >= 1.
bool poly_is_squarefree(const Field& F, const FieldPoly& f);
bool poly_is_irreducible(const Field& F, const FieldPoly& f);

// All monic irreducibles of degree exactly d in lexicographic encoding order,
// cached per field. Count must match the necklace formula.
const std::vector<FieldPoly>& irreducibles(const Field& F, int d);
Int necklace_count(long q, int d);

// Trial division by cached irreducibles of ascending degree. Returns
// (irreducible factor, multiplicity) pairs in deterministic order.
std::vector<std::pair<FieldPoly, int>> poly_factor(const Field& F, FieldPoly f);

// Quadratic residue class of an irreducible g with g(0) != 0, odd q.
// Norm route: a root theta has norm (-1)^r g(0) in F_q, and
// theta^((q^r-1)/2) = N(theta)^((q-1)/2).
bool qr_class_norm(const Field& F, const FieldPoly& g);
// Independent route: T^((q^r-1)/2) mod g must collapse to the constant +1/-1.
bool qr_class_modexp(const Field& F, const FieldPoly& g);

}  // namespace bcstat
