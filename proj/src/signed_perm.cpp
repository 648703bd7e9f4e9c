#include "bcstat/signed_perm.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace bcstat {

SignedPermutation::SignedPermutation(std::vector<int> img) : img_(std::move(img)) {
  int n = static_cast<int>(img_.size());
  std::vector<bool> seen(n, false);
  for (int v : img_) {
    int a = std::abs(v);
    if (a < 1 || a > n || seen[a - 1])
      throw std::invalid_argument("SignedPermutation: images must hit each letter once");
    seen[a - 1] = true;
  }
}

SignedPermutation SignedPermutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return SignedPermutation(std::move(img));
}

int SignedPermutation::apply(int a) const {
  int abs_a = std::abs(a);
  if (abs_a < 1 || abs_a > n())
    throw std::invalid_argument("SignedPermutation::apply: letter out of range");
  int v = img_[abs_a - 1];
  return a > 0 ? v : -v;
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& other) const {
  if (n() != other.n()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> img(n());
  for (int i = 1; i <= n(); ++i) img[i - 1] = apply(other.img_[i - 1]);
  SignedPermutation out;
  out.img_ = std::move(img);
  return out;
}

SignedPermutation SignedPermutation::inverse() const {
  std::vector<int> img(n());
  for (int i = 1; i <= n(); ++i) {
    int v = img_[i - 1];
    img[std::abs(v) - 1] = v > 0 ? i : -i;
  }
  SignedPermutation out;
  out.img_ = std::move(img);
  return out;
}

std::uint64_t SignedPermutation::encode() const {
  if (n() > 12) throw std::invalid_argument("encode: n too large for 64-bit packing");
  std::uint64_t code = 0;
  for (int i = 0; i < n(); ++i) {
    int v = img_[i];
    std::uint64_t digit = static_cast<std::uint64_t>((std::abs(v) - 1) * 2 + (v < 0 ? 1 : 0));
    code = code * 24 + digit;
  }
  return code;
}

std::string SignedPermutation::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n(); ++i) os << (i ? "," : "") << img_[i];
  os << "]";
  return os.str();
}

int DoublePartition::weight() const {
  int w = 0;
  for (int p : plus) w += p;
  for (int p : minus) w += p;
  return w;
}

std::string DoublePartition::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < plus.size(); ++i) os << (i ? "," : "") << plus[i];
  os << "|";
  for (size_t i = 0; i < minus.size(); ++i) os << (i ? "," : "") << minus[i];
  os << ")";
  return os.str();
}

DoublePartition signed_cycle_type(const SignedPermutation& g) {
  DoublePartition out;
  int n = g.n();
  std::vector<bool> seen(n + 1, false);
  for (int start = 1; start <= n; ++start) {
    if (seen[start]) continue;
    int pos = start;
    int sign = 1;
    int length = 0;
    do {
      seen[pos] = true;
      int v = g.apply(pos);
      if (v < 0) sign = -sign;
      pos = std::abs(v);
      ++length;
    } while (pos != start);
    (sign > 0 ? out.plus : out.minus).push_back(length);
  }
  std::sort(out.plus.rbegin(), out.plus.rend());
  std::sort(out.minus.rbegin(), out.minus.rend());
  return out;
}

SignedPermutation class_representative(const DoublePartition& type, int n) {
  if (type.weight() != n)
    throw std::invalid_argument("class_representative: weight mismatch");
  for (int p : type.plus)
    if (p < 1) throw std::invalid_argument("class_representative: nonpositive part");
  for (int p : type.minus)
    if (p < 1) throw std::invalid_argument("class_representative: nonpositive part");
  std::vector<int> img(n);
  int base = 0;
  auto lay_cycle = [&](int len, bool negative) {
    for (int i = 0; i < len - 1; ++i) img[base + i] = base + i + 2;
    img[base + len - 1] = negative ? -(base + 1) : base + 1;
    base += len;
  };
  for (int p : type.plus) lay_cycle(p, false);
  for (int p : type.minus) lay_cycle(p, true);
  return SignedPermutation(std::move(img));
}

Int bn_order(int n) {
  if (n < 0) throw std::invalid_argument("bn_order: negative n");
  return int_pow(Int(2), static_cast<unsigned long>(n)) * factorial(n);
}

Int centralizer_order(const DoublePartition& type) {
  auto side = [](const std::vector<int>& parts) {
    Int out = 1;
    std::map<int, int> mult;
    for (int p : parts) ++mult[p];
    for (const auto& [r, m] : mult) out *= int_pow(Int(2 * r), m) * factorial(m);
    return out;
  };
  return side(type.plus) * side(type.minus);
}

Int class_size(const DoublePartition& type, int n) {
  if (type.weight() != n) throw std::invalid_argument("class_size: weight mismatch");
  Int order = bn_order(n);
  Int cent = centralizer_order(type);
  Int size = order / cent;
  if (size * cent != order) throw std::logic_error("class_size: centralizer does not divide");
  return size;
}

std::vector<ConjClass> conjugacy_classes(int n) {
  if (n < 0) throw std::invalid_argument("conjugacy_classes: negative n");
  std::vector<ConjClass> out;
  for (int k = n; k >= 0; --k) {
    for (const auto& plus : partitions_of(k)) {
      for (const auto& minus : partitions_of(n - k)) {
        DoublePartition type{plus, minus};
        out.push_back({type, class_size(type, n)});
      }
    }
  }
  return out;
}

std::vector<ConjClass> conjugacy_classes_sym(int n) {
  if (n < 0) throw std::invalid_argument("conjugacy_classes_sym: negative n");
  std::vector<ConjClass> out;
  for (const auto& parts : partitions_of(n)) {
    Int z = 1;
    std::map<int, int> mult;
    for (int p : parts) ++mult[p];
    for (const auto& [r, m] : mult) z *= int_pow(Int(r), m) * factorial(m);
    out.push_back({DoublePartition{parts, {}}, factorial(n) / z});
  }
  return out;
}

std::vector<SignedPermutation> all_elements(int n) {
  if (n < 0) throw std::invalid_argument("all_elements: negative n");
  if (n > 7)
    throw std::invalid_argument("all_elements: n = " + std::to_string(n) +
                                " would materialize 2^n n! = " +
                                bn_order(n).get_str() + " elements; limit is n <= 7");
  std::vector<SignedPermutation> out;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> img(perm.begin(), perm.end());
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) img[i] = -img[i];
      out.emplace_back(std::move(img));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<SignedPermutation> subgroup_closure(const std::vector<SignedPermutation>& gens,
                                                std::size_t max_order) {
  if (gens.empty()) throw std::invalid_argument("subgroup_closure: no generators");
  int n = gens.front().n();
  for (const auto& g : gens)
    if (g.n() != n) throw std::invalid_argument("subgroup_closure: size mismatch");
  std::vector<SignedPermutation> elements{SignedPermutation::identity(n)};
  std::unordered_set<std::uint64_t> seen{elements.front().encode()};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    SignedPermutation current = elements[head];
    for (const auto& g : gens) {
      SignedPermutation next = g.compose(current);
      if (seen.insert(next.encode()).second) {
        if (elements.size() >= max_order)
          throw std::runtime_error("subgroup_closure: order exceeds cap " +
                                   std::to_string(max_order));
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

Rat inner_product(int n, const std::function<Rat(const DoublePartition&)>& phi,
                  const std::function<Rat(const DoublePartition&)>& psi) {
  Rat total = 0;
  for (const auto& cls : conjugacy_classes(n)) total += Rat(cls.size) * phi(cls.type) * psi(cls.type);
  Rat order(bn_order(n));
  return Rat(total / order);
}

Rat eval_char_poly(const CharPolynomial& P, const DoublePartition& type) {
  if (P.mode() == GroupMode::TypeA && !type.minus.empty())
    throw std::invalid_argument("eval_char_poly: type A statistic on a signed class");
  std::map<Indeterminate, long> counts;
  for (int p : type.plus) ++counts[Indeterminate{p, false}];
  for (int p : type.minus) ++counts[Indeterminate{p, true}];
  return P.eval(counts);
}

StabilityTable char_poly_inner_stability(const CharPolynomial& P, const CharPolynomial& Q,
                                         int n_max) {
  StabilityTable table;
  for (int n = 0; n <= n_max; ++n) {
    Rat v = inner_product(
        n, [&](const DoublePartition& t) { return eval_char_poly(P, t); },
        [&](const DoublePartition& t) { return eval_char_poly(Q, t); });
    table.rows.push_back({n, v});
  }
  for (int i = static_cast<int>(table.rows.size()) - 1; i >= 0; --i) {
    if (table.rows[i].value != table.rows.back().value) break;
    table.first_stable_n = table.rows[i].n;
  }
  return table;
}

}  // namespace bcstat
