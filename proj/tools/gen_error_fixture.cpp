// Standalone oracle: for q = 3 and each n, enumerate the monic squarefree
// degree-n polynomials with nonzero constant term and total their roots in
// F_3^*. Deliberately self-contained (raw mod-3 arithmetic, no library code)
// so its output can anchor the main enumeration engine. Output lines:
//   n <total root count> <polynomial count>
#include <cstdio>
#include <vector>

namespace {

constexpr int kQ = 3;

using Poly = std::vector<int>;  // coefficients mod 3, low degree first

Poly derivative(const Poly& f) {
  Poly out;
  for (int i = 1; i < static_cast<int>(f.size()); ++i) out.push_back(i * f[i] % kQ);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

Poly mod(Poly a, const Poly& b) {
  int inv_lead = (b.back() == 1) ? 1 : 2;  // inverses mod 3: 1->1, 2->2
  while (a.size() >= b.size()) {
    int scale = a.back() * inv_lead % kQ;
    int shift = static_cast<int>(a.size() - b.size());
    for (int i = 0; i < static_cast<int>(b.size()); ++i)
      a[shift + i] = ((a[shift + i] - scale * b[i]) % kQ + kQ) % kQ;
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

bool coprime_with_derivative(const Poly& f) {
  Poly a = f, b = derivative(f);
  while (!b.empty()) {
    Poly r = mod(a, b);
    a = b;
    b = r;
  }
  return a.size() == 1;  // nonzero constant gcd
}

int eval(const Poly& f, int x) {
  int acc = 0;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) acc = (acc * x + f[i]) % kQ;
  return acc;
}

}  // namespace

int main() {
  for (int n = 1; n <= 9; ++n) {
    long long roots = 0, count = 0;
    Poly f(n + 1, 0);
    f[n] = 1;
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= kQ;
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      for (int i = 0; i < n; ++i) {
        f[i] = static_cast<int>(c % kQ);
        c /= kQ;
      }
      if (f[0] == 0) continue;
      if (!coprime_with_derivative(f)) continue;
      ++count;
      for (int x = 1; x < kQ; ++x)
        if (eval(f, x) == 0) ++roots;
    }
    std::printf("%d %lld %lld\n", n, roots, count);
  }
  return 0;
}
