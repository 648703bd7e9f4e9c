#include "bcstat/os_cohomology.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bcstat {

namespace {

long vec_gcd(const std::vector<long>& v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, std::abs(x));
  return g;
}

// Integer row space in echelon form; rows kept primitive so fraction-free
// updates never overflow at these sizes.
class IntEchelon {
 public:
  explicit IntEchelon(int width) : width_(width) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  // Reduce v against the current rows; true if a nonzero remainder was
  // absorbed as a new row (v was independent).
  bool add(std::vector<long> v) {
    reduce(v);
    int p = pivot_of(v);
    if (p < 0) return false;
    normalize(v, p);
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  bool contains(std::vector<long> v) const {
    reduce(v);
    return pivot_of(v) < 0;
  }

 private:
  static int pivot_of(const std::vector<long>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return static_cast<int>(i);
    return -1;
  }

  static void normalize(std::vector<long>& v, int pivot) {
    long g = vec_gcd(v);
    if (g > 1)
      for (long& x : v) x /= g;
    if (v[pivot] < 0)
      for (long& x : v) x = -x;
  }

  void reduce(std::vector<long>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      int p = pivots_[k];
      if (v[p] == 0) continue;
      long a = rows_[k][p];
      long b = v[p];
      for (int i = 0; i < width_; ++i) v[i] = v[i] * a - rows_[k][i] * b;
      long g = vec_gcd(v);
      if (g > 1)
        for (long& x : v) x /= g;
    }
  }

  int width_;
  std::vector<std::vector<long>> rows_;
  std::vector<int> pivots_;
};

// Anticommutation sign of sorting; nullopt-style flag via repeated = true.
struct SortedWord {
  std::vector<int> indices;
  int sign = 1;
  bool repeated = false;
};

SortedWord sort_word(std::vector<int> w) {
  SortedWord out;
  out.indices = std::move(w);
  for (std::size_t i = 1; i < out.indices.size(); ++i)
    for (std::size_t j = i; j > 0 && out.indices[j - 1] > out.indices[j]; --j) {
      std::swap(out.indices[j - 1], out.indices[j]);
      out.sign = -out.sign;
    }
  for (std::size_t i = 1; i < out.indices.size(); ++i)
    if (out.indices[i - 1] == out.indices[i]) out.repeated = true;
  return out;
}

// #{(a, b) : a in A, b in B, a > b} for sorted disjoint A, B.
int inversions_between(const std::vector<int>& a, const std::vector<int>& b) {
  int count = 0;
  std::size_t j = 0;
  for (int x : a) {
    while (j < b.size() && b[j] < x) ++j;
    count += static_cast<int>(j);
  }
  return count;
}

constexpr long kNbcNodeCap = 5000000;

std::string two_letter_label(char kind, int i, int j) {
  std::ostringstream os;
  os << kind << i << "," << j;
  return os.str();
}

}  // namespace

Arrangement make_arrangement(int dim, std::vector<std::vector<long>> normals) {
  if (dim < 1) throw std::invalid_argument("make_arrangement: dim must be >= 1");
  for (const auto& v : normals) {
    if (static_cast<int>(v.size()) != dim)
      throw std::invalid_argument("make_arrangement: normal has wrong length");
    if (vec_gcd(v) == 0) throw std::invalid_argument("make_arrangement: zero normal");
  }
  for (std::size_t a = 0; a < normals.size(); ++a)
    for (std::size_t b = a + 1; b < normals.size(); ++b) {
      bool proportional = true;
      for (int i = 0; i < dim && proportional; ++i)
        for (int j = i + 1; j < dim; ++j)
          if (normals[a][i] * normals[b][j] != normals[a][j] * normals[b][i]) {
            proportional = false;
            break;
          }
      if (proportional)
        throw std::invalid_argument("make_arrangement: proportional normals at positions " +
                                    std::to_string(a) + " and " + std::to_string(b));
    }
  Arrangement arr;
  arr.dim = dim;
  arr.normals = std::move(normals);
  arr.labels.reserve(arr.normals.size());
  for (std::size_t k = 0; k < arr.normals.size(); ++k) arr.labels.push_back("h" + std::to_string(k));
  return arr;
}

Arrangement build_bc_arrangement(int n) {
  if (n < 1) throw std::invalid_argument("build_bc_arrangement: n must be >= 1");
  std::vector<std::vector<long>> normals;
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::vector<long> v(n, 0);
      v[i - 1] = 1;
      v[j - 1] = -1;
      normals.push_back(std::move(v));
      labels.push_back(two_letter_label('a', i, j));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::vector<long> v(n, 0);
      v[i - 1] = 1;
      v[j - 1] = 1;
      normals.push_back(std::move(v));
      labels.push_back(two_letter_label('b', i, j));
    }
  for (int i = 1; i <= n; ++i) {
    std::vector<long> v(n, 0);
    v[i - 1] = 1;
    normals.push_back(std::move(v));
    labels.push_back("g" + std::to_string(i));
  }
  Arrangement arr = make_arrangement(n, std::move(normals));
  arr.labels = std::move(labels);
  return arr;
}

Arrangement build_a_arrangement(int n) {
  if (n < 1) throw std::invalid_argument("build_a_arrangement: n must be >= 1");
  std::vector<std::vector<long>> normals;
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::vector<long> v(n, 0);
      v[i - 1] = 1;
      v[j - 1] = -1;
      normals.push_back(std::move(v));
      labels.push_back(two_letter_label('a', i, j));
    }
  Arrangement arr;
  arr.dim = n;
  arr.normals = std::move(normals);
  arr.labels = std::move(labels);
  return arr;
}

namespace {
int pair_offset(int n, int i, int j) {
  if (i < 1 || i >= j || j > n) throw std::invalid_argument("pair index out of range");
  return (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
}
}  // namespace

int bc_alpha_index(int n, int i, int j) { return pair_offset(n, i, j); }
int bc_beta_index(int n, int i, int j) { return n * (n - 1) / 2 + pair_offset(n, i, j); }
int bc_gamma_index(int n, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("gamma index out of range");
  return n * (n - 1) + (i - 1);
}
int a_alpha_index(int n, int i, int j) { return pair_offset(n, i, j); }

std::vector<int> hyperplane_permutation(const Arrangement& arr, const SignedPermutation& g) {
  if (g.n() != arr.dim)
    throw std::invalid_argument("hyperplane_permutation: group degree mismatch");
  auto canonical = [](std::vector<long> v) {
    for (long x : v) {
      if (x > 0) break;
      if (x < 0) {
        for (long& y : v) y = -y;
        break;
      }
    }
    return v;
  };
  std::map<std::vector<long>, int> lookup;
  for (std::size_t k = 0; k < arr.normals.size(); ++k)
    lookup[canonical(arr.normals[k])] = static_cast<int>(k);

  std::vector<int> perm(arr.normals.size());
  for (std::size_t k = 0; k < arr.normals.size(); ++k) {
    std::vector<long> image(arr.dim, 0);
    for (int i = 1; i <= arr.dim; ++i) {
      int v = g.apply(i);
      image[std::abs(v) - 1] = (v > 0 ? 1 : -1) * arr.normals[k][i - 1];
    }
    auto it = lookup.find(canonical(std::move(image)));
    if (it == lookup.end())
      throw std::logic_error("hyperplane_permutation: normal leaves the arrangement");
    perm[k] = it->second;
  }
  return perm;
}

void OsElement::add_scaled(const OsElement& o, const Rat& c) {
  if (c == 0 || o.is_zero()) return;
  if (is_zero()) degree = o.degree;
  if (degree != o.degree) throw std::invalid_argument("OsElement: degree mismatch");
  for (const auto& [mono, coeff] : o.terms) {
    Rat v = terms[mono] + coeff * c;
    if (v == 0)
      terms.erase(mono);
    else
      terms[mono] = v;
  }
}

std::string OsElement::to_string(const Arrangement& arr) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, coeff] : terms) {
    Rat a = coeff;
    bool negative = a < 0;
    if (negative) a = -a;
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    if (a != 1) os << rat_string(a) << "*";
    for (std::size_t i = 0; i < mono.size(); ++i)
      os << (i ? "*" : "") << arr.labels[mono[i]];
  }
  return os.str();
}

OsAlgebra::OsAlgebra(Arrangement arr) : arr_(std::move(arr)) {}

int OsAlgebra::rank() {
  if (rank_ < 0) {
    IntEchelon ech(arr_.dim);
    for (const auto& v : arr_.normals) ech.add(v);
    rank_ = ech.rank();
  }
  return rank_;
}

bool OsAlgebra::is_dependent(const std::vector<int>& indices) const {
  IntEchelon ech(arr_.dim);
  for (int k : indices) {
    if (k < 0 || k >= static_cast<int>(arr_.normals.size()))
      throw std::invalid_argument("is_dependent: index out of range");
    if (!ech.add(arr_.normals[k])) return true;
  }
  return false;
}

int OsAlgebra::broken_witness(const std::vector<int>& s) const {
  if (s.empty()) return -1;
  // suffix_ech[j] spans the normals of s[j..]; scanning h upward, the span
  // of the members above h is one of these suffixes.
  int k = static_cast<int>(s.size());
  std::vector<IntEchelon> suffix(k + 1, IntEchelon(arr_.dim));
  for (int j = k - 1; j >= 0; --j) {
    suffix[j] = suffix[j + 1];
    suffix[j].add(arr_.normals[s[j]]);
  }
  int j = 0;
  for (int h = 0; h < s.back(); ++h) {
    while (j < k && s[j] <= h) ++j;
    if (j > 0 && s[j - 1] == h) continue;  // h is a member
    if (suffix[j].contains(arr_.normals[h])) return h;
  }
  return -1;
}

void OsAlgebra::build_nbc() {
  if (nbc_built_) return;
  nbc_by_deg_.assign(rank() + 1, {});
  nbc_by_deg_[0].push_back({});
  long nodes = 0;
  std::vector<int> cur;  // maintained in decreasing index order

  // Growing downward keeps the witness test cheap: every member exceeds the
  // candidate m, so a broken circuit through m appears exactly when some
  // h < m lies in the span of the whole current set.
  auto dfs = [&](auto&& self, const IntEchelon& ech, int upper) -> void {
    if (static_cast<int>(cur.size()) == rank_) return;
    for (int m = upper - 1; m >= 0; --m) {
      IntEchelon next = ech;
      if (!next.add(arr_.normals[m])) continue;
      bool broken = false;
      for (int h = 0; h < m && !broken; ++h)
        if (next.contains(arr_.normals[h])) broken = true;
      if (broken) continue;
      if (++nodes > kNbcNodeCap)
        throw std::runtime_error("nbc basis exceeds the node cap; arrangement too large");
      cur.push_back(m);
      nbc_by_deg_[cur.size()].emplace_back(cur.rbegin(), cur.rend());
      self(self, next, m);
      cur.pop_back();
    }
  };
  dfs(dfs, IntEchelon(arr_.dim), hyperplane_count());
  for (auto& level : nbc_by_deg_) std::sort(level.begin(), level.end());
  nbc_built_ = true;
}

const std::vector<std::vector<int>>& OsAlgebra::nbc_basis(int d) {
  if (d < 0) throw std::invalid_argument("nbc_basis: negative degree");
  build_nbc();
  static const std::vector<std::vector<int>> kEmpty;
  if (d > rank()) return kEmpty;
  return nbc_by_deg_[d];
}

std::vector<Int> OsAlgebra::dimensions() {
  build_nbc();
  std::vector<Int> out;
  for (int d = 0; d <= rank(); ++d)
    out.push_back(Int(static_cast<long>(nbc_by_deg_[d].size())));
  return out;
}

const OsElement& OsAlgebra::straighten_support(const std::vector<int>& support) {
  auto it = memo_.find(support);
  if (it != memo_.end()) return it->second;

  OsElement out;
  out.degree = static_cast<int>(support.size());
  if (!is_dependent(support)) {
    int h = broken_witness(support);
    if (h < 0) {
      out.terms[support] = 1;
    } else {
      // Minimal circuit through h inside the members above h.
      std::vector<int> above;
      for (int sidx : support)
        if (sidx > h) above.push_back(sidx);
      auto spans_h = [&](const std::vector<int>& t) {
        IntEchelon ech(arr_.dim);
        for (int x : t) ech.add(arr_.normals[x]);
        return ech.contains(arr_.normals[h]);
      };
      std::vector<int> circuit_tail = above;
      for (std::size_t i = 0; i < circuit_tail.size();) {
        std::vector<int> trial = circuit_tail;
        trial.erase(trial.begin() + static_cast<long>(i));
        if (spans_h(trial))
          circuit_tail = std::move(trial);
        else
          ++i;
      }
      // circuit = {h} + circuit_tail, minimal dependent, least element h.
      std::vector<int> rest;
      for (int sidx : support)
        if (std::find(circuit_tail.begin(), circuit_tail.end(), sidx) == circuit_tail.end())
          rest.push_back(sidx);
      int outer_sign = inversions_between(circuit_tail, rest) % 2 ? -1 : 1;

      std::vector<int> circuit = circuit_tail;
      circuit.insert(circuit.begin(), h);
      for (std::size_t l = 1; l < circuit.size(); ++l) {
        std::vector<int> dropped;
        for (std::size_t t = 0; t < circuit.size(); ++t)
          if (t != l) dropped.push_back(circuit[t]);
        int term_sign = inversions_between(dropped, rest) % 2 ? -1 : 1;
        std::vector<int> merged;
        std::merge(dropped.begin(), dropped.end(), rest.begin(), rest.end(),
                   std::back_inserter(merged));
        int coeff = outer_sign * (l % 2 ? 1 : -1) * term_sign;
        out.add_scaled(straighten_support(merged), Rat(coeff));
      }
    }
  }
  return memo_.emplace(support, std::move(out)).first->second;
}

OsElement OsAlgebra::straighten(const std::vector<int>& word, const Rat& coeff) {
  for (int k : word)
    if (k < 0 || k >= hyperplane_count())
      throw std::invalid_argument("straighten: index out of range");
  OsElement out;
  out.degree = static_cast<int>(word.size());
  if (coeff == 0) return out;
  SortedWord sorted = sort_word(word);
  if (sorted.repeated) return out;
  out.add_scaled(straighten_support(sorted.indices), Rat(sorted.sign) * coeff);
  out.degree = static_cast<int>(word.size());
  return out;
}

Int OsAlgebra::trace(const SignedPermutation& g, int d) {
  if (d == 0) return 1;
  if (d < 0) throw std::invalid_argument("trace: negative degree");
  if (d > rank()) return 0;
  std::vector<int> perm = hyperplane_permutation(arr_, g);
  Rat total = 0;
  std::vector<int> image;
  for (const auto& mono : nbc_basis(d)) {
    image.clear();
    for (int k : mono) image.push_back(perm[k]);
    OsElement straightened = straighten(image);
    auto it = straightened.terms.find(mono);
    if (it != straightened.terms.end()) total += it->second;
  }
  if (total.get_den() != 1) throw std::logic_error("trace: non-integral value");
  return Int(total.get_num());
}

std::map<DoublePartition, Int> OsAlgebra::character(int d, GroupMode mode) {
  int n = arr_.dim;
  if (mode == GroupMode::TypeBC && n > 6)
    throw std::invalid_argument("character: signed mode guarded to n <= 6");
  if (mode == GroupMode::TypeA && n > 7)
    throw std::invalid_argument("character: plain mode guarded to n <= 7");
  auto classes = mode == GroupMode::TypeBC ? conjugacy_classes(n) : conjugacy_classes_sym(n);
  std::map<DoublePartition, Int> out;
  for (const auto& cls : classes)
    out[cls.type] = trace(class_representative(cls.type, n), d);
  return out;
}

Int invariant_dim(OsAlgebra& os, int d, int a) {
  int n = os.ambient_dim();
  if (a < 0 || a > n) throw std::invalid_argument("invariant_dim: a out of range");
  int m = n - a;
  Rat total = 0;
  for (const auto& cls : conjugacy_classes(m)) {
    DoublePartition embedded = cls.type;
    for (int i = 0; i < a; ++i) embedded.plus.push_back(1);
    std::sort(embedded.plus.rbegin(), embedded.plus.rend());
    total += Rat(cls.size) * Rat(os.trace(class_representative(embedded, n), d));
  }
  Rat avg = Rat(total / Rat(bn_order(m)));
  if (avg.get_den() != 1) throw std::logic_error("invariant_dim: non-integral average");
  return Int(avg.get_num());
}

namespace {

// Exact rank tracker over rational rows indexed by basis position.
class RatEchelon {
 public:
  explicit RatEchelon(int width) : width_(width) {}
  int rank() const { return static_cast<int>(rows_.size()); }

  bool add(std::vector<Rat> v) {
    for (const auto& row : rows_) {
      int p = pivot_of(row);
      if (v[p] == 0) continue;
      Rat factor = Rat(v[p] / row[p]);
      for (int i = 0; i < width_; ++i) v[i] -= factor * row[i];
    }
    if (pivot_of(v) < 0) return false;
    rows_.push_back(std::move(v));
    return true;
  }

 private:
  static int pivot_of(const std::vector<Rat>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return static_cast<int>(i);
    return -1;
  }
  int width_;
  std::vector<std::vector<Rat>> rows_;
};

}  // namespace

bool verify_forest_spanning(int n, int d) {
  if (n < 1 || n > 5) throw std::invalid_argument("verify_forest_spanning: n guarded to 1..5");
  if (d < 0) throw std::invalid_argument("verify_forest_spanning: negative degree");
  OsAlgebra os(build_bc_arrangement(n));
  if (d > os.rank()) return true;  // nothing to span
  const auto& basis = os.nbc_basis(d);
  int target = static_cast<int>(basis.size());
  if (d == 0) return target == 1;

  std::map<std::vector<int>, int> column;
  for (int c = 0; c < target; ++c) column[basis[c]] = c;

  std::vector<std::pair<int, int>> all_edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) all_edges.push_back({i, j});

  RatEchelon ech(target);

  // union-find over vertices for forest detection
  auto find_root = [](std::vector<int>& parent, int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  std::vector<int> chosen;
  auto emit = [&](const std::vector<int>& edge_ids) -> void {
    int e = static_cast<int>(edge_ids.size());
    int r = d - e;
    if (r < 0) return;
    // components and vertex degrees
    std::vector<int> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> degree(n + 1, 0);
    for (int id : edge_ids) {
      auto [i, j] = all_edges[id];
      int a = find_root(parent, i), b = find_root(parent, j);
      if (a == b) return;  // cycle: not a forest
      parent[a] = b;
      ++degree[i];
      ++degree[j];
    }
    std::map<int, std::vector<int>> leaves_by_comp;  // component root -> rootable vertices
    for (int v = 1; v <= n; ++v)
      if (degree[v] <= 1) leaves_by_comp[find_root(parent, v)].push_back(v);
    std::vector<std::vector<int>> comp_choices;
    for (auto& [comp, leaves] : leaves_by_comp) comp_choices.push_back(leaves);
    int comp_count = 0;
    {
      std::set<int> roots;
      for (int v = 1; v <= n; ++v) roots.insert(find_root(parent, v));
      comp_count = static_cast<int>(roots.size());
    }
    if (r > comp_count) return;

    // pick r components, then a rootable vertex in each, then edge colors
    std::vector<int> comp_ids(comp_choices.size());
    std::iota(comp_ids.begin(), comp_ids.end(), 0);

    std::vector<int> roots;
    auto choose_roots = [&](auto&& self, std::size_t from, int remaining) -> void {
      if (remaining == 0) {
        for (std::uint32_t colors = 0; colors < (1u << e); ++colors) {
          std::vector<int> word;
          for (int t = 0; t < e; ++t) {
            auto [i, j] = all_edges[edge_ids[t]];
            word.push_back(colors & (1u << t) ? bc_beta_index(n, i, j) : bc_alpha_index(n, i, j));
          }
          for (int v : roots) word.push_back(bc_gamma_index(n, v));
          OsElement elem = os.straighten(word);
          if (elem.is_zero()) continue;
          std::vector<Rat> row(target, Rat(0));
          for (const auto& [mono, coeff] : elem.terms) row[column.at(mono)] = coeff;
          ech.add(std::move(row));
        }
        return;
      }
      if (from >= comp_choices.size()) return;
      if (comp_choices.size() - from < static_cast<std::size_t>(remaining)) return;
      for (int v : comp_choices[from]) {
        roots.push_back(v);
        self(self, from + 1, remaining - 1);
        roots.pop_back();
      }
      self(self, from + 1, remaining);
    };
    choose_roots(choose_roots, 0, r);
  };

  auto choose_edges = [&](auto&& self, int from) -> void {
    if (ech.rank() == target) return;
    emit(chosen);
    if (static_cast<int>(chosen.size()) == d) return;
    for (int id = from; id < static_cast<int>(all_edges.size()); ++id) {
      chosen.push_back(id);
      self(self, id + 1);
      chosen.pop_back();
    }
  };
  choose_edges(choose_edges, 0);
  return ech.rank() == target;
}

}  // namespace bcstat
