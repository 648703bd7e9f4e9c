#pragma once

#include <map>
#include <string>
#include <vector>

#include "bcstat/numutil.hpp"

namespace bcstat {

enum class GroupMode { TypeBC, TypeA };

// X_r counts degree-r factors in the residue class, Y_r in the non-residue
// class; both carry degree r. Type A knows only X_r (plain degree counts).
struct Indeterminate {
  int r = 1;
  bool is_y = false;
  auto operator<=>(const Indeterminate&) const = default;
  std::string name() const { return (is_y ? "Y" : "X") + std::to_string(r); }
};

// Exponent vector, sorted by indeterminate, exponents >= 1.
struct Monomial {
  std::vector<std::pair<Indeterminate, int>> factors;
  auto operator<=>(const Monomial&) const = default;
  int degree() const {
    int d = 0;
    for (const auto& [v, e] : factors) d += v.r * e;
    return d;
  }
  bool is_constant() const { return factors.empty(); }
};

// Polynomial statistic in the X_r / Y_r counting functions with exact
// rational coefficients, stored in expanded canonical form.
class CharPolynomial {
 public:
  CharPolynomial() = default;
  explicit CharPolynomial(GroupMode mode) : mode_(mode) {}

  static CharPolynomial constant(const Rat& c, GroupMode mode = GroupMode::TypeBC);
  static CharPolynomial variable(const Indeterminate& v, GroupMode mode = GroupMode::TypeBC);

  GroupMode mode() const { return mode_; }
  const std::map<Monomial, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Total degree with deg X_r = deg Y_r = r; the zero polynomial has degree 0.
  int degree() const;

  CharPolynomial operator+(const CharPolynomial& o) const;
  CharPolynomial operator-(const CharPolynomial& o) const;
  CharPolynomial operator*(const CharPolynomial& o) const;
  CharPolynomial scaled(const Rat& c) const;
  CharPolynomial pow(int e) const;
  bool operator==(const CharPolynomial& o) const = default;

  // Evaluation against factor-class counts: counts[{r, is_y}] with absent
  // entries read as zero.
  Rat eval(const std::map<Indeterminate, long>& counts) const;

  // Coefficient of a single indeterminate to the first power (zero if the
  // monomial is absent); used for closed-form decompositions.
  Rat linear_coefficient(const Indeterminate& v) const;
  Rat constant_coefficient() const;
  // True when every monomial uses only {1, X_1, Y_1} to the first power.
  bool is_affine_in_degree_one() const;

  std::string to_string() const;

 private:
  void validate_mode(const Indeterminate& v) const;
  void prune();
  GroupMode mode_ = GroupMode::TypeBC;
  std::map<Monomial, Rat> terms_;
};

// Recursive-descent parser over +, -, *, ^, parentheses, integer or a/b
// rational literals, and variables X<k> / Y<k> (Y rejected in type A).
CharPolynomial parse_char_poly(const std::string& text, GroupMode mode = GroupMode::TypeBC);

}  // namespace bcstat
