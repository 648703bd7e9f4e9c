#include "bcstat/finite_field.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace bcstat {
namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomial helpers over the prime field F_p, used only while constructing a
// Field (modulus search). Coefficients are low degree first, trimmed.
using PPoly = std::vector<long>;

void fp_trim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly fp_sub(long p, PPoly a, const PPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  fp_trim(a);
  return a;
}

PPoly fp_mul(long p, const PPoly& a, const PPoly& b) {
  if (a.empty() || b.empty()) return {};
  PPoly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  fp_trim(out);
  return out;
}

// Remainder mod a monic divisor.
PPoly fp_mod(long p, PPoly a, const PPoly& m) {
  while (a.size() >= m.size()) {
    long lead = a.back();
    size_t shift = a.size() - m.size();
    if (lead != 0)
      for (size_t i = 0; i < m.size(); ++i)
        a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
    a.pop_back();
    fp_trim(a);
    if (a.empty()) break;
  }
  return a;
}

PPoly fp_gcd(long p, PPoly a, PPoly b) {
  auto make_monic = [&](PPoly f) {
    if (f.empty()) return f;
    long lead = f.back(), inv = 1;
    for (long k = 1; k < p; ++k)
      if (lead * k % p == 1) { inv = k; break; }
    for (auto& c : f) c = c * inv % p;
    return f;
  };
  while (!b.empty()) {
    PPoly mb = make_monic(b);
    PPoly r = fp_mod(p, a, mb);
    a = mb;
    b = r;
  }
  return make_monic(a);
}

PPoly fp_powmod(long p, PPoly base, long e, const PPoly& m) {
  PPoly out = {1};
  base = fp_mod(p, std::move(base), m);
  while (e > 0) {
    if (e & 1) out = fp_mod(p, fp_mul(p, out, base), m);
    base = fp_mod(p, fp_mul(p, base, base), m);
    e >>= 1;
  }
  return out;
}

// Degree-r f is irreducible over F_p iff it shares no factor with T^{p^s} - T
// for any s <= r/2; every nontrivial factorization has a factor that small.
bool fp_is_irreducible(long p, const PPoly& f) {
  int r = static_cast<int>(f.size()) - 1;
  if (r < 1) return false;
  PPoly h = {0, 1};
  for (int s = 1; 2 * s <= r; ++s) {
    h = fp_powmod(p, h, p, f);
    PPoly diff = fp_sub(p, h, {0, 1});
    PPoly g = fp_gcd(p, f, diff);
    if (static_cast<int>(g.size()) - 1 > 0) return false;
  }
  return true;
}

}  // namespace

Field::Field(long p, int r) : p_(p), r_(r) {
  if (!is_prime(p)) throw std::invalid_argument("Field: p must be prime");
  if (r < 1) throw std::invalid_argument("Field: r must be >= 1");
  double qd = 1;
  for (int i = 0; i < r; ++i) qd *= static_cast<double>(p);
  if (qd > kDeskLimit)
    throw std::invalid_argument("Field: q = p^r exceeds the desk-scale limit " +
                                std::to_string(kDeskLimit));
  q_ = 1;
  for (int i = 0; i < r; ++i) q_ *= p;

  if (r == 1) {
    modulus_ = {0, 1};  // T itself: least monic irreducible of degree 1
  } else {
    // Lexicographically least monic irreducible, constant coefficient most
    // significant in the comparison.
    std::vector<long> c(r, 0);
    bool found = false;
    while (!found) {
      PPoly f(c.begin(), c.end());
      f.push_back(1);
      if (fp_is_irreducible(p, f)) {
        modulus_ = f;
        found = true;
        break;
      }
      int i = r - 1;
      while (i >= 0 && c[i] == p - 1) c[i--] = 0;
      if (i < 0) throw std::logic_error("Field: no irreducible modulus found");
      ++c[i];
    }
  }

  tables_on_ = q_ <= kTableLimit;
  if (!tables_on_) return;

  const size_t q = static_cast<size_t>(q_);
  std::vector<std::vector<long>> cv(q);
  for (size_t e = 0; e < q; ++e) {
    std::vector<long> digits(r_);
    long v = static_cast<long>(e);
    for (int i = 0; i < r_; ++i) {
      digits[i] = v % p_;
      v /= p_;
    }
    cv[e] = std::move(digits);
  }

  // T^(r+k) mod modulus for k = 0..r-2, used to fold products back into the
  // power basis.
  std::vector<PPoly> red(std::max(0, r_ - 1));
  {
    PPoly t(r_ + 1, 0);
    t[r_] = 1;
    for (int k = 0; k + 1 < r_; ++k) {
      PPoly m = fp_mod(p_, t, modulus_);
      m.resize(r_, 0);
      red[k] = m;
      t.insert(t.begin(), 0);
    }
  }

  add_.assign(q * q, 0);
  mul_.assign(q * q, 0);
  neg_.assign(q, 0);
  std::vector<long> prod(2 * r_ - 1);
  std::vector<long> redsum(r_);
  for (size_t a = 0; a < q; ++a) {
    for (size_t b = 0; b <= a; ++b) {
      long enc = 0, scale = 1;
      for (int i = 0; i < r_; ++i) {
        enc += (cv[a][i] + cv[b][i]) % p_ * scale;
        scale *= p_;
      }
      add_[a * q + b] = add_[b * q + a] = static_cast<Elem>(enc);

      std::fill(prod.begin(), prod.end(), 0);
      for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + cv[a][i] * cv[b][j]) % p_;
      std::fill(redsum.begin(), redsum.end(), 0);
      for (int i = 0; i < r_; ++i) redsum[i] = prod[i];
      for (int k = 0; k + 1 < r_; ++k) {
        long hi = prod[r_ + k];
        if (hi == 0) continue;
        for (int i = 0; i < r_; ++i) redsum[i] = (redsum[i] + hi * red[k][i]) % p_;
      }
      enc = 0;
      scale = 1;
      for (int i = 0; i < r_; ++i) {
        enc += redsum[i] * scale;
        scale *= p_;
      }
      mul_[a * q + b] = mul_[b * q + a] = static_cast<Elem>(enc);
    }
    long enc = 0, scale = 1;
    for (int i = 0; i < r_; ++i) {
      enc += (p_ - cv[a][i]) % p_ * scale;
      scale *= p_;
    }
    neg_[a] = static_cast<Elem>(enc);
  }

  inv_.assign(q, 0);
  for (size_t a = 1; a < q; ++a) {
    for (size_t b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) {
        inv_[a] = static_cast<Elem>(b);
        break;
      }
    if (inv_[a] == 0) throw std::logic_error("Field: modulus is not irreducible");
  }

  if (q_ % 2 == 1) {
    legendre_.assign(q, 0);
    for (size_t a = 1; a < q; ++a) legendre_[mul_[a * q + a]] = 1;
    for (size_t a = 1; a < q; ++a)
      if (legendre_[a] == 0) legendre_[a] = -1;
  }
}

Field::Elem Field::from_int(long v) const {
  long m = ((v % p_) + p_) % p_;
  return static_cast<Elem>(m);
}

std::vector<long> Field::coeffs(Elem e) const {
  std::vector<long> out(r_);
  long v = e;
  for (int i = 0; i < r_; ++i) {
    out[i] = v % p_;
    v /= p_;
  }
  return out;
}

Field::Elem Field::from_coeffs(const std::vector<long>& c) const {
  if (static_cast<int>(c.size()) > r_)
    throw std::invalid_argument("from_coeffs: too many coefficients");
  long enc = 0, scale = 1;
  for (int i = 0; i < r_; ++i) {
    long d = i < static_cast<int>(c.size()) ? ((c[i] % p_) + p_) % p_ : 0;
    enc += d * scale;
    scale *= p_;
  }
  return static_cast<Elem>(enc);
}

Field::Elem Field::add(Elem a, Elem b) const {
  if (tables_on_) return add_[static_cast<size_t>(a) * q_ + b];
  long enc = 0, scale = 1, va = a, vb = b;
  for (int i = 0; i < r_; ++i) {
    enc += (va % p_ + vb % p_) % p_ * scale;
    va /= p_;
    vb /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(enc);
}

Field::Elem Field::neg(Elem a) const {
  if (tables_on_) return neg_[a];
  long enc = 0, scale = 1, va = a;
  for (int i = 0; i < r_; ++i) {
    enc += (p_ - va % p_) % p_ * scale;
    va /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(enc);
}

Field::Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Field::Elem Field::mul_generic(Elem a, Elem b) const {
  std::vector<long> ca = coeffs(a), cb = coeffs(b);
  PPoly prod(2 * r_ - 1, 0);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  fp_trim(prod);
  PPoly rem = fp_mod(p_, prod, modulus_);
  rem.resize(r_, 0);
  long enc = 0, scale = 1;
  for (int i = 0; i < r_; ++i) {
    enc += rem[i] * scale;
    scale *= p_;
  }
  return static_cast<Elem>(enc);
}

Field::Elem Field::mul(Elem a, Elem b) const {
  if (tables_on_) return mul_[static_cast<size_t>(a) * q_ + b];
  return mul_generic(a, b);
}

Field::Elem Field::pow(Elem a, const Int& e) const {
  if (e < 0) throw std::invalid_argument("Field::pow: negative exponent");
  Elem out = one();
  Elem base = a;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return out;
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) out = mul(out, base);
    base = mul(base, base);
  }
  return out;
}

Field::Elem Field::inv(Elem a) const {
  if (a == 0) throw std::invalid_argument("Field::inv: zero has no inverse");
  if (tables_on_) return inv_[a];
  return pow(a, Int(q_) - 2);
}

int Field::legendre(Elem a) const {
  if (q_ % 2 == 0) throw std::invalid_argument("legendre: field has even order");
  if (a == 0) throw std::invalid_argument("legendre: zero input");
  if (tables_on_) return legendre_[a];
  Elem v = pow(a, (Int(q_) - 1) / 2);
  return v == one() ? 1 : -1;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q_ << " = F_" << p_ << "[T]/(";
  bool first = true;
  for (int i = r_; i >= 0; --i) {
    long c = modulus_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << "T";
    if (i >= 2) os << "^" << i;
  }
  os << ")";
  return os.str();
}

FieldPoly poly_from_coeffs(std::vector<Field::Elem> coeffs) {
  FieldPoly f{std::move(coeffs)};
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
  return f;
}

FieldPoly poly_x(const Field&) { return FieldPoly{{0, 1}}; }

FieldPoly poly_constant(const Field&, Field::Elem v) {
  return v == 0 ? FieldPoly{} : FieldPoly{{v}};
}

std::string poly_string(const Field& F, const FieldPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    if (f.c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    bool show_coeff = (i == 0) || f.c[i] != 1;
    if (show_coeff) {
      if (F.r() == 1) {
        os << f.c[i];
      } else {
        os << "[";
        auto cc = F.coeffs(f.c[i]);
        for (int j = 0; j < F.r(); ++j) os << (j ? "," : "") << cc[j];
        os << "]";
      }
    }
    if (i >= 1) os << "T";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

FieldPoly poly_add(const Field& F, const FieldPoly& a, const FieldPoly& b) {
  std::vector<Field::Elem> out(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < out.size(); ++i) {
    Field::Elem va = i < a.c.size() ? a.c[i] : 0;
    Field::Elem vb = i < b.c.size() ? b.c[i] : 0;
    out[i] = F.add(va, vb);
  }
  return poly_from_coeffs(std::move(out));
}

FieldPoly poly_sub(const Field& F, const FieldPoly& a, const FieldPoly& b) {
  std::vector<Field::Elem> out(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < out.size(); ++i) {
    Field::Elem va = i < a.c.size() ? a.c[i] : 0;
    Field::Elem vb = i < b.c.size() ? b.c[i] : 0;
    out[i] = F.sub(va, vb);
  }
  return poly_from_coeffs(std::move(out));
}

FieldPoly poly_mul(const Field& F, const FieldPoly& a, const FieldPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Field::Elem> out(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      out[i + j] = F.add(out[i + j], F.mul(a.c[i], b.c[j]));
  }
  return poly_from_coeffs(std::move(out));
}

FieldPoly poly_scale(const Field& F, Field::Elem s, const FieldPoly& a) {
  if (s == 0) return {};
  std::vector<Field::Elem> out(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) out[i] = F.mul(s, a.c[i]);
  return poly_from_coeffs(std::move(out));
}

std::pair<FieldPoly, FieldPoly> poly_divmod(const Field& F, const FieldPoly& a,
                                            const FieldPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero");
  if (a.degree() < b.degree()) return {FieldPoly{}, a};
  std::vector<Field::Elem> rem = a.c;
  std::vector<Field::Elem> quot(a.degree() - b.degree() + 1, 0);
  Field::Elem linv = F.inv(b.c.back());
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Field::Elem coeff = F.mul(rem[k + b.degree()], linv);
    quot[k] = coeff;
    if (coeff == 0) continue;
    for (int i = 0; i <= b.degree(); ++i)
      rem[k + i] = F.sub(rem[k + i], F.mul(coeff, b.c[i]));
  }
  rem.resize(b.degree() >= 0 ? b.degree() : 0);
  return {poly_from_coeffs(std::move(quot)), poly_from_coeffs(std::move(rem))};
}

FieldPoly poly_mod(const Field& F, const FieldPoly& a, const FieldPoly& b) {
  return poly_divmod(F, a, b).second;
}

FieldPoly poly_make_monic(const Field& F, const FieldPoly& a) {
  if (a.is_zero() || a.c.back() == 1) return a;
  return poly_scale(F, F.inv(a.c.back()), a);
}

FieldPoly poly_gcd(const Field& F, FieldPoly a, FieldPoly b) {
  while (!b.is_zero()) {
    FieldPoly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_make_monic(F, a);
}

FieldPoly poly_derivative(const Field& F, const FieldPoly& a) {
  if (a.degree() < 1) return {};
  std::vector<Field::Elem> out(a.degree(), 0);
  for (int i = 1; i <= a.degree(); ++i) {
    Field::Elem scalar = F.from_int(i);
    out[i - 1] = F.mul(scalar, a.c[i]);
  }
  return poly_from_coeffs(std::move(out));
}

Field::Elem poly_eval(const Field& F, const FieldPoly& a, Field::Elem x) {
  Field::Elem acc = 0;
  for (int i = a.degree(); i >= 0; --i) acc = F.add(F.mul(acc, x), a.c[i]);
  return acc;
}

FieldPoly poly_powmod(const Field& F, const FieldPoly& base, const Int& e,
                      const FieldPoly& mod) {
  if (e < 0) throw std::invalid_argument("poly_powmod: negative exponent");
  FieldPoly out = poly_mod(F, FieldPoly{{1}}, mod);
  FieldPoly b = poly_mod(F, base, mod);
  size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) out = poly_mod(F, poly_mul(F, out, b), mod);
    b = poly_mod(F, poly_mul(F, b, b), mod);
  }
  return out;
}

bool poly_is_squarefree(const Field& F, const FieldPoly& f) {
  if (f.is_zero()) return false;
  if (f.degree() == 0) return true;
  FieldPoly g = poly_gcd(F, f, poly_derivative(F, f));
  return g.degree() == 0;
}

bool poly_is_irreducible(const Field& F, const FieldPoly& f) {
  if (f.degree() < 1) return false;
  FieldPoly m = poly_make_monic(F, f);
  int d = m.degree();
  FieldPoly h = poly_mod(F, poly_x(F), m);
  for (int s = 1; 2 * s <= d; ++s) {
    h = poly_powmod(F, h, Int(F.q()), m);
    FieldPoly diff = poly_sub(F, h, poly_x(F));
    FieldPoly g = poly_gcd(F, m, diff);
    if (g.degree() > 0) return false;
  }
  return true;
}

namespace {
std::mutex g_irr_mutex;
std::map<std::tuple<long, int, int>, std::vector<FieldPoly>> g_irr_cache;
}  // namespace

const std::vector<FieldPoly>& irreducibles(const Field& F, int d) {
  if (d < 1) throw std::invalid_argument("irreducibles: degree must be >= 1");
  std::scoped_lock lock(g_irr_mutex);
  auto key = std::make_tuple(F.p(), F.r(), d);
  auto it = g_irr_cache.find(key);
  if (it != g_irr_cache.end()) return it->second;

  std::vector<FieldPoly> out;
  // Monic degree-d candidates in encoding order, low coefficients varying
  // slowest so the sequence is lexicographic constant-term-first.
  std::vector<Field::Elem> c(d, 0);
  const long q = F.q();
  while (true) {
    std::vector<Field::Elem> coeffs(c.begin(), c.end());
    coeffs.push_back(1);
    FieldPoly f = poly_from_coeffs(std::move(coeffs));
    if (poly_is_irreducible(F, f)) out.push_back(std::move(f));
    int i = d - 1;
    while (i >= 0 && c[i] + 1 == static_cast<Field::Elem>(q)) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }

  Int expected = necklace_count(q, d);
  if (Int(static_cast<long>(out.size())) != expected)
    throw std::logic_error("irreducibles: count disagrees with necklace formula");
  auto [pos, inserted] = g_irr_cache.emplace(key, std::move(out));
  (void)inserted;
  return pos->second;
}

Int necklace_count(long q, int d) {
  if (d < 1) throw std::invalid_argument("necklace_count: degree must be >= 1");
  Int sum = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    sum += mobius(e) * int_pow(Int(q), static_cast<unsigned long>(d / e));
  }
  Int count = sum / d;
  if (count * d != sum) throw std::logic_error("necklace_count: non-integer result");
  return count;
}

std::vector<std::pair<FieldPoly, int>> poly_factor(const Field& F, FieldPoly f) {
  if (f.is_zero()) throw std::invalid_argument("poly_factor: zero polynomial");
  if (f.c.back() != 1) throw std::invalid_argument("poly_factor: input must be monic");
  std::vector<std::pair<FieldPoly, int>> out;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    for (const FieldPoly& g : irreducibles(F, d)) {
      if (f.degree() < 2 * d) break;
      int mult = 0;
      while (true) {
        auto [quot, rem] = poly_divmod(F, f, g);
        if (!rem.is_zero()) break;
        f = std::move(quot);
        ++mult;
      }
      if (mult > 0) out.emplace_back(g, mult);
    }
  }
  if (f.degree() >= 1) out.emplace_back(std::move(f), 1);
  return out;
}

bool qr_class_norm(const Field& F, const FieldPoly& g) {
  if (F.q() % 2 == 0) throw std::invalid_argument("qr_class_norm: even field order");
  if (g.degree() < 1 || g.c[0] == 0)
    throw std::invalid_argument("qr_class_norm: need g(0) != 0 and deg g >= 1");
  Field::Elem norm = g.c[0];
  if (g.degree() % 2 == 1) norm = F.neg(norm);
  return F.legendre(norm) == 1;
}

bool qr_class_modexp(const Field& F, const FieldPoly& g) {
  if (F.q() % 2 == 0) throw std::invalid_argument("qr_class_modexp: even field order");
  if (g.degree() < 1 || g.c[0] == 0)
    throw std::invalid_argument("qr_class_modexp: need g(0) != 0 and deg g >= 1");
  Int e = (int_pow(Int(F.q()), static_cast<unsigned long>(g.degree())) - 1) / 2;
  FieldPoly h = poly_powmod(F, poly_x(F), e, g);
  if (h.degree() == 0 && h.c[0] == F.one()) return true;
  if (h.degree() == 0 && h.c[0] == F.neg(F.one())) return false;
  throw std::invalid_argument("qr_class_modexp: input is not irreducible");
}

}  // namespace bcstat
