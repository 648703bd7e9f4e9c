#include "bcstat/char_poly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace bcstat {

void CharPolynomial::validate_mode(const Indeterminate& v) const {
  if (mode_ == GroupMode::TypeA && v.is_y)
    throw std::invalid_argument("CharPolynomial: Y variables are not defined in type A");
  if (v.r < 1) throw std::invalid_argument("CharPolynomial: variable index must be >= 1");
}

void CharPolynomial::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

CharPolynomial CharPolynomial::constant(const Rat& c, GroupMode mode) {
  CharPolynomial out(mode);
  if (c != 0) out.terms_[Monomial{}] = c;
  return out;
}

CharPolynomial CharPolynomial::variable(const Indeterminate& v, GroupMode mode) {
  CharPolynomial out(mode);
  out.validate_mode(v);
  out.terms_[Monomial{{{v, 1}}}] = 1;
  return out;
}

int CharPolynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

CharPolynomial CharPolynomial::operator+(const CharPolynomial& o) const {
  if (mode_ != o.mode_) throw std::invalid_argument("CharPolynomial: mixed modes");
  CharPolynomial out = *this;
  for (const auto& [m, c] : o.terms_) out.terms_[m] += c;
  out.prune();
  return out;
}

CharPolynomial CharPolynomial::operator-(const CharPolynomial& o) const {
  return *this + o.scaled(-1);
}

CharPolynomial CharPolynomial::operator*(const CharPolynomial& o) const {
  if (mode_ != o.mode_) throw std::invalid_argument("CharPolynomial: mixed modes");
  CharPolynomial out(mode_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      // Merge sorted exponent vectors.
      Monomial m;
      auto ia = ma.factors.begin(), ib = mb.factors.begin();
      while (ia != ma.factors.end() || ib != mb.factors.end()) {
        if (ib == mb.factors.end() || (ia != ma.factors.end() && ia->first < ib->first))
          m.factors.push_back(*ia++);
        else if (ia == ma.factors.end() || ib->first < ia->first)
          m.factors.push_back(*ib++);
        else {
          m.factors.emplace_back(ia->first, ia->second + ib->second);
          ++ia;
          ++ib;
        }
      }
      out.terms_[m] += ca * cb;
    }
  }
  out.prune();
  return out;
}

CharPolynomial CharPolynomial::scaled(const Rat& c) const {
  CharPolynomial out(mode_);
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_[m] = v * c;
  return out;
}

CharPolynomial CharPolynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("CharPolynomial::pow: negative exponent");
  CharPolynomial out = constant(1, mode_);
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

Rat CharPolynomial::eval(const std::map<Indeterminate, long>& counts) const {
  Rat total = 0;
  for (const auto& [m, c] : terms_) {
    Rat term = c;
    for (const auto& [v, e] : m.factors) {
      auto it = counts.find(v);
      long count = it == counts.end() ? 0 : it->second;
      if (count == 0) {
        term = 0;
        break;
      }
      for (int i = 0; i < e; ++i) term *= count;
    }
    total += term;
  }
  return total;
}

Rat CharPolynomial::linear_coefficient(const Indeterminate& v) const {
  Monomial key{{{v, 1}}};
  auto it = terms_.find(key);
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat CharPolynomial::constant_coefficient() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rat(0) : it->second;
}

bool CharPolynomial::is_affine_in_degree_one() const {
  for (const auto& [m, c] : terms_) {
    if (m.is_constant()) continue;
    if (m.factors.size() != 1) return false;
    const auto& [v, e] = m.factors.front();
    if (v.r != 1 || e != 1) return false;
  }
  return true;
}

namespace {

// Display order: lexicographic descending on exponent vectors over the
// indeterminates in ascending order, so X1^2 precedes X1*Y1 precedes Y1^2
// and the constant term comes last.
bool display_before(const Monomial& a, const Monomial& b) {
  size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    const auto& [va, ea] = a.factors[i];
    const auto& [vb, eb] = b.factors[j];
    if (va < vb) return true;    // a has a power of an earlier indeterminate
    if (vb < va) return false;
    if (ea != eb) return ea > eb;
    ++i, ++j;
  }
  return i < a.factors.size();
}

}  // namespace

std::string CharPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rat>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& x, const auto& y) { return display_before(x.first, y.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    Rat a = c;
    bool negative = a < 0;
    if (negative) a = -a;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    bool unit = (a == 1) && !m.is_constant();
    if (!unit) os << rat_string(a);
    bool star = !unit;
    for (const auto& [v, e] : m.factors) {
      if (star) os << "*";
      star = true;
      os << v.name();
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, GroupMode mode) : text_(text), mode_(mode) {}

  CharPolynomial parse() {
    CharPolynomial out = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("parse_char_poly: " + what + " at offset " +
                                std::to_string(pos_) + " in \"" + text_ + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  CharPolynomial expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    CharPolynomial out = term();
    if (neg) out = out.scaled(-1);
    while (true) {
      if (eat('+'))
        out = out + term();
      else if (eat('-'))
        out = out - term();
      else
        break;
    }
    return out;
  }

  CharPolynomial term() {
    CharPolynomial out = factor();
    while (eat('*')) out = out * factor();
    return out;
  }

  CharPolynomial factor() {
    CharPolynomial base = atom();
    if (eat('^')) {
      long e = integer();
      if (e < 0) fail("negative exponent");
      base = base.pow(static_cast<int>(e));
    }
    return base;
  }

  long integer() {
    skip_space();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    return std::stol(text_.substr(start, pos_ - start));
  }

  CharPolynomial atom() {
    char c = peek();
    if (c == '(') {
      eat('(');
      CharPolynomial inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'X' || c == 'Y') {
      ++pos_;
      long r = integer();
      Indeterminate v{static_cast<int>(r), c == 'Y'};
      return CharPolynomial::variable(v, mode_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = integer();
      if (eat('/')) {
        long den = integer();
        if (den == 0) fail("zero denominator");
        Rat v(num, den);
        v.canonicalize();
        return CharPolynomial::constant(v, mode_);
      }
      return CharPolynomial::constant(Rat(num), mode_);
    }
    fail("expected atom");
  }

  const std::string& text_;
  GroupMode mode_;
  size_t pos_ = 0;
};

}  // namespace

CharPolynomial parse_char_poly(const std::string& text, GroupMode mode) {
  return Parser(text, mode).parse();
}

}  // namespace bcstat
