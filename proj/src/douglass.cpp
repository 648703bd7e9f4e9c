#include "bcstat/douglass.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bcstat {

RootOfUnity::RootOfUnity(long num, long order) {
  if (order < 1) throw std::invalid_argument("RootOfUnity: order must be positive");
  k = num % order;
  if (k < 0) k += order;
  if (k == 0) {
    L = 1;
  } else {
    long g = std::gcd(k, order);
    k /= g;
    L = order / g;
  }
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  long M = std::lcm(L, o.L);
  return RootOfUnity(k * (M / L) + o.k * (M / o.L), M);
}

RootOfUnity RootOfUnity::pow(long e) const {
  long r = e % L;
  if (r < 0) r += L;
  return RootOfUnity(k * r, L);
}

RootOfUnity RootOfUnity::conj() const { return RootOfUnity(L - k, L); }

std::complex<double> RootOfUnity::to_complex() const {
  return std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(L));
}

std::string RootOfUnity::to_string() const {
  if (k == 0) return "1";
  if (2 * k == L) return "-1";
  return "e(" + std::to_string(k) + "/" + std::to_string(L) + ")";
}

RootOfUnity eta(int m) {
  if (m < 1) throw std::invalid_argument("eta: part must be positive");
  if (m % 2 == 1) return RootOfUnity(1, m);
  return RootOfUnity(m / 2 + 1, m);
}

void CycloSum::add(const RootOfUnity& r, const Rat& c) {
  if (c == 0) return;
  Rat v = coeffs_[r] + c;
  if (v == 0)
    coeffs_.erase(r);
  else
    coeffs_[r] = v;
}

std::complex<double> CycloSum::complex_value() const {
  std::complex<double> v = 0;
  for (const auto& [r, c] : coeffs_) v += c.get_d() * r.to_complex();
  return v;
}

Rat CycloSum::rational_value(double tol) const {
  long M = 1;
  for (const auto& [r, c] : coeffs_) M = std::lcm(M, r.L);
  // Galois trace: Tr(zeta_M^j) = mu(m) phi(M)/phi(m) with m the order of
  // zeta_M^j, and Tr fixes rationals up to the factor phi(M).
  Rat total = 0;
  for (const auto& [r, c] : coeffs_) {
    long j = r.k * (M / r.L);
    long m = M / std::gcd(j, M);
    Rat w(mobius(m), euler_phi(m));
    w.canonicalize();
    total += c * w;
  }
  double scale = 1.0;
  for (const auto& [r, c] : coeffs_) scale += std::abs(c.get_d());
  std::complex<double> residual = complex_value() - std::complex<double>(total.get_d());
  if (std::abs(residual) > tol * scale) {
    std::ostringstream os;
    os << "CycloSum: irrational parts fail to cancel (residual " << std::abs(residual) << ")";
    throw std::runtime_error(os.str());
  }
  return total;
}

bool DouglassSummand::contains(const SignedPermutation& g) const {
  return zeta.find(g.encode()) != zeta.end();
}

const RootOfUnity& DouglassSummand::zeta_of(const SignedPermutation& g) const {
  auto it = zeta.find(g.encode());
  if (it == zeta.end()) throw std::invalid_argument("zeta_of: element outside the subgroup");
  return it->second;
}

std::vector<DoublePartition> summands(int n, int d) {
  if (n < 0 || d < 0 || d > n) throw std::invalid_argument("summands: need 0 <= d <= n");
  std::vector<DoublePartition> out;
  for (int j = n; j >= 0; --j) {
    for (const auto& plus : partitions_of(j)) {
      if (static_cast<int>(plus.size()) != n - d) continue;
      for (const auto& minus : partitions_of(n - j)) {
        DoublePartition dp;
        dp.plus = plus;
        dp.minus = minus;
        out.push_back(std::move(dp));
      }
    }
  }
  return out;
}

Int summand_group_order(const DoublePartition& lambda) {
  Int order = 1;
  for (const auto* comp : {&lambda.plus, &lambda.minus}) {
    long run = 0;
    for (std::size_t i = 0; i < comp->size(); ++i) {
      order *= 2 * (*comp)[i];
      run = (i > 0 && (*comp)[i] == (*comp)[i - 1]) ? run + 1 : 1;
      order *= run;  // running factorial of the multiplicity
    }
  }
  return order;
}

namespace {

struct BlockLayout {
  std::vector<int> size;   // per part, plus parts first
  std::vector<int> start;  // first letter of each part
  std::vector<bool> is_minus;
  int n = 0;

  // runs of equal-size parts within one component: [first, count]
  struct Group {
    int first = 0;
    int count = 0;
  };
  std::vector<Group> groups;
};

BlockLayout layout_of(const DoublePartition& lambda, int n) {
  BlockLayout bl;
  bl.n = n;
  for (long p : lambda.plus) {
    bl.size.push_back(static_cast<int>(p));
    bl.is_minus.push_back(false);
  }
  for (long p : lambda.minus) {
    bl.size.push_back(static_cast<int>(p));
    bl.is_minus.push_back(true);
  }
  int at = 1;
  long total = 0;
  for (std::size_t i = 0; i < bl.size.size(); ++i) {
    if (bl.size[i] < 1) throw std::invalid_argument("build_summand: parts must be positive");
    bl.start.push_back(at);
    at += bl.size[i];
    total += bl.size[i];
  }
  if (total != n) throw std::invalid_argument("build_summand: parts must sum to n");
  for (std::size_t i = 0; i < bl.size.size();) {
    std::size_t j = i + 1;
    while (j < bl.size.size() && bl.size[j] == bl.size[i] && bl.is_minus[j] == bl.is_minus[i]) ++j;
    bl.groups.push_back({static_cast<int>(i), static_cast<int>(j - i)});
    i = j;
  }
  return bl;
}

// zeta on the symmetric factor permuting this group's blocks: sign character
// on even plus-parts and odd minus-parts, trivial otherwise.
bool group_uses_sign(const BlockLayout& bl, const BlockLayout::Group& g) {
  int m = bl.size[g.first];
  return bl.is_minus[g.first] ? (m % 2 == 1) : (m % 2 == 0);
}

std::vector<int> identity_img(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return img;
}

int permutation_parity(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2;
}

}  // namespace

DouglassSummand build_summand(const DoublePartition& lambda, int n) {
  if (n > 12) throw std::invalid_argument("build_summand: letters beyond the packing limit");
  BlockLayout bl = layout_of(lambda, n);

  std::vector<std::pair<SignedPermutation, RootOfUnity>> gens;
  for (std::size_t i = 0; i < bl.size.size(); ++i) {
    int s = bl.start[i], m = bl.size[i];
    std::vector<int> x = identity_img(n);
    for (int t = 0; t < m; ++t) x[s + t - 1] = -(s + t);
    gens.emplace_back(SignedPermutation(std::move(x)), RootOfUnity());
    if (m > 1) {
      std::vector<int> y = identity_img(n);
      for (int t = 0; t + 1 < m; ++t) y[s + t - 1] = s + t + 1;
      y[s + m - 1 - 1] = s;
      gens.emplace_back(SignedPermutation(std::move(y)), eta(m));
    }
  }
  for (const auto& g : bl.groups) {
    RootOfUnity swap_value = group_uses_sign(bl, g) ? RootOfUnity(1, 2) : RootOfUnity();
    for (int r = 0; r + 1 < g.count; ++r) {
      int i = g.first + r;
      std::vector<int> w = identity_img(n);
      for (int t = 0; t < bl.size[i]; ++t) {
        w[bl.start[i] + t - 1] = bl.start[i + 1] + t;
        w[bl.start[i + 1] + t - 1] = bl.start[i] + t;
      }
      gens.emplace_back(SignedPermutation(std::move(w)), swap_value);
    }
  }

  DouglassSummand S;
  S.lambda = lambda;
  S.n = n;
  for (std::size_t i = 0; i < bl.size.size(); ++i) S.blocks.emplace_back(bl.start[i], bl.size[i]);

  // closure with multiplicative extension; every edge is re-checked, which
  // pins zeta as a homomorphism on the whole group
  std::vector<RootOfUnity> values;
  std::map<std::uint64_t, std::size_t> index;
  S.elements.push_back(SignedPermutation(identity_img(n)));
  values.push_back(RootOfUnity());
  index[S.elements[0].encode()] = 0;
  constexpr std::size_t kClosureCap = 2000000;
  for (std::size_t head = 0; head < S.elements.size(); ++head) {
    SignedPermutation e = S.elements[head];
    RootOfUnity ze = values[head];
    for (const auto& [g, zg] : gens) {
      SignedPermutation f = g.compose(e);
      RootOfUnity zf = zg * ze;
      auto [it, inserted] = index.emplace(f.encode(), S.elements.size());
      if (inserted) {
        if (S.elements.size() >= kClosureCap)
          throw std::runtime_error("build_summand: subgroup exceeds the closure cap");
        S.elements.push_back(std::move(f));
        values.push_back(zf);
      } else if (!(values[it->second] == zf)) {
        throw std::logic_error("build_summand: inconsistent zeta extension at " + f.to_string() +
                               " (" + values[it->second].to_string() + " vs " + zf.to_string() +
                               ")");
      }
    }
  }

  Int expected = summand_group_order(lambda);
  if (S.order() != expected)
    throw std::logic_error("build_summand: closure order " + S.order().get_str() +
                           " differs from the product formula " + expected.get_str());
  Int bn = bn_order(n);
  if (bn % S.order() != 0)
    throw std::logic_error("build_summand: subgroup order fails Lagrange divisibility");
  for (std::size_t i = 0; i < S.elements.size(); ++i) S.zeta[S.elements[i].encode()] = values[i];
  for (const auto& [g, zg] : gens)
    if (!(S.zeta_of(g) == zg)) throw std::logic_error("build_summand: generator value drifted");
  return S;
}

void for_each_member(
    const DoublePartition& lambda, int n,
    const std::function<void(const SignedPermutation&, const RootOfUnity&)>& fn) {
  BlockLayout bl = layout_of(lambda, n);
  const int parts = static_cast<int>(bl.size.size());

  // per-group block permutations with their sign parity
  std::vector<std::vector<std::pair<std::vector<int>, int>>> group_perms(bl.groups.size());
  for (std::size_t gi = 0; gi < bl.groups.size(); ++gi) {
    std::vector<int> p(bl.groups[gi].count);
    std::iota(p.begin(), p.end(), 0);
    do {
      group_perms[gi].emplace_back(p, permutation_parity(p));
    } while (std::next_permutation(p.begin(), p.end()));
  }

  std::vector<int> target(parts);  // part index -> destination part index
  std::vector<int> shift(parts, 0);
  std::vector<int> flip(parts, 0);
  std::vector<int> img(n);

  auto emit_parts = [&](auto&& self, int i, const RootOfUnity& z) -> void {
    if (i == parts) {
      for (int p = 0; p < parts; ++p) {
        int m = bl.size[p], s = bl.start[p], t0 = bl.start[target[p]];
        for (int t = 0; t < m; ++t) {
          int image = t0 + (t + shift[p]) % m;
          img[s + t - 1] = flip[p] ? -image : image;
        }
      }
      fn(SignedPermutation(img), z);
      return;
    }
    RootOfUnity step = eta(bl.size[i]);
    RootOfUnity zpow;
    for (shift[i] = 0; shift[i] < bl.size[i]; ++shift[i]) {
      for (flip[i] = 0; flip[i] < 2; ++flip[i]) self(self, i + 1, z * zpow);
      zpow = zpow * step;
    }
    shift[i] = 0;
    flip[i] = 0;
  };

  auto choose_groups = [&](auto&& self, std::size_t gi, const RootOfUnity& z) -> void {
    if (gi == bl.groups.size()) {
      emit_parts(emit_parts, 0, z);
      return;
    }
    const auto& grp = bl.groups[gi];
    bool use_sign = group_uses_sign(bl, grp);
    for (const auto& [perm, parity] : group_perms[gi]) {
      for (int r = 0; r < grp.count; ++r) target[grp.first + r] = grp.first + perm[r];
      RootOfUnity zh = (use_sign && parity) ? RootOfUnity(1, 2) : RootOfUnity();
      self(self, gi + 1, z * zh);
    }
  };
  choose_groups(choose_groups, 0, RootOfUnity());
}

std::complex<double> induced_char_value(const DouglassSummand& S, const SignedPermutation& g,
                                        int n) {
  if (n > 6) throw std::invalid_argument("induced_char_value: guarded to n <= 6");
  std::map<RootOfUnity, long> counts;
  for (const auto& x : all_elements(n)) {
    SignedPermutation c = x.compose(g).compose(x.inverse());
    auto it = S.zeta.find(c.encode());
    if (it != S.zeta.end()) ++counts[it->second];
  }
  std::complex<double> total = 0;
  for (const auto& [r, cnt] : counts) total += static_cast<double>(cnt) * r.to_complex();
  total /= S.order().get_d();
  if (std::abs(total.imag()) > 1e-9)
    throw std::runtime_error("induced_char_value: imaginary residue above tolerance");
  return total;
}

std::map<DoublePartition, Int> induced_character_sum(int n, int d) {
  if (n > 6) throw std::invalid_argument("induced_character_sum: guarded to n <= 6");
  std::vector<DouglassSummand> built;
  for (const auto& lambda : summands(n, d)) built.push_back(build_summand(lambda, n));
  std::map<DoublePartition, Int> out;
  for (const auto& cls : conjugacy_classes(n)) {
    SignedPermutation rep = class_representative(cls.type, n);
    std::complex<double> total = 0;
    for (const auto& S : built) total += induced_char_value(S, rep, n);
    double rounded = std::round(total.real());
    if (std::abs(total.real() - rounded) > 1e-9 || std::abs(total.imag()) > 1e-9)
      throw std::runtime_error("induced_character_sum: non-integral character value");
    out[cls.type] = Int(static_cast<long>(rounded));
  }
  return out;
}

Rat inner_product_via_frobenius(const CharPolynomial& P, int n, int d) {
  if (n > 8) throw std::invalid_argument("inner_product_via_frobenius: guarded to n <= 8");
  if (d < 0 || d > n) throw std::invalid_argument("inner_product_via_frobenius: need 0 <= d <= n");
  if (P.mode() != GroupMode::TypeBC)
    throw std::invalid_argument("inner_product_via_frobenius: statistic must use signed mode");
  CycloSum acc;
  std::map<DoublePartition, Rat> value_memo;
  for (const auto& lambda : summands(n, d)) {
    Rat scale = Rat(1) / Rat(summand_group_order(lambda));
    for_each_member(lambda, n, [&](const SignedPermutation& w, const RootOfUnity& z) {
      DoublePartition type = signed_cycle_type(w);
      auto it = value_memo.find(type);
      if (it == value_memo.end()) it = value_memo.emplace(type, eval_char_poly(P, type)).first;
      if (it->second != 0) acc.add(z.conj(), Rat(it->second * scale));
    });
  }
  if (acc.empty()) return 0;
  return acc.rational_value();
}

}  // namespace bcstat
