#include "picky/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "picky/errors.hpp"
#include "picky/subgroups.hpp"

namespace picky {

// ---------------------------------------------------------------------------
// Linear algebra over F_p, p < 2^31.

namespace {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 inv(u64 a) const { return inverse_mod(a, p); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
};

// Row-reduces in place; returns pivot columns. Rows left below the rank are zero.
std::vector<std::size_t> rref(Mat& m, const Fp& f) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    u64 inv = f.inv(m[r][c]);
    for (auto& x : m[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      u64 factor = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] = f.sub(m[i][k], f.mul(factor, m[r][k]));
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

// Basis of { x : m x = 0 } for a square matrix m.
Mat null_space(Mat m, const Fp& f) {
  const std::size_t n = m.size();
  auto pivots = rref(m, f);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  Mat out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec x(n, 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = f.neg(m[r][free]);
    out.push_back(std::move(x));
  }
  return out;
}

// Characteristic polynomial det(xI - h), lowest degree first, via reduction
// to Hessenberg form.
Vec charpoly(Mat h, const Fp& f) {
  const std::size_t n = h.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][i], h[r][m]);
    }
    u64 inv = f.inv(h[m][m - 1]);
    for (std::size_t i2 = m + 1; i2 < n; ++i2) {
      u64 u = f.mul(h[i2][m - 1], inv);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) h[i2][c] = f.sub(h[i2][c], f.mul(u, h[m][c]));
      for (std::size_t r = 0; r < n; ++r) h[r][m] = f.add(h[r][m], f.mul(u, h[r][i2]));
    }
  }
  // p_k = (x - h_kk) p_{k-1} - sum_{i=1}^{k-1} h_{k-i,k} (prod_{j=k-i+1}^{k} h_{j,j-1}) p_{k-i-1}, 1-based.
  auto at = [&](std::size_t i, std::size_t j) { return h[i - 1][j - 1]; };
  std::vector<Vec> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    Vec cur(k + 1, 0);
    for (std::size_t d = 0; d < p[k - 1].size(); ++d) {
      cur[d + 1] = f.add(cur[d + 1], p[k - 1][d]);
      cur[d] = f.sub(cur[d], f.mul(at(k, k), p[k - 1][d]));
    }
    u64 prod = 1;
    for (std::size_t i = 1; i < k; ++i) {
      prod = f.mul(prod, at(k - i + 1, k - i));
      if (prod == 0) break;
      u64 c = f.mul(at(k - i, k), prod);
      for (std::size_t d = 0; d < p[k - i - 1].size(); ++d) cur[d] = f.sub(cur[d], f.mul(c, p[k - i - 1][d]));
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

u64 primitive_root(u64 p) {
  auto qs = prime_divisors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = std::all_of(qs.begin(), qs.end(), [&](u64 q) { return pow_mod(g, (p - 1) / q, p) != 1; });
    if (ok) return g;
  }
  return 1;  // p == 2
}

bool same_table(const TablePtr& a, const TablePtr& b) {
  if (!a || !b) return false;
  return a == b || a->group().cache_key() == b->group().cache_key();
}

void require_same_table(const ClassFunction& a, const ClassFunction& b) {
  if (!same_table(a.table(), b.table())) throw InputError("class functions live on different groups");
}

bool lex_rows_less(const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == b[k]) continue;
    return canonical_less(a[k], b[k]);
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------

ClassFunction::ClassFunction(TablePtr table, std::vector<Cyclotomic> values)
    : table_(std::move(table)), values_(std::move(values)) {
  if (!table_ || values_.size() != table_->classes().class_count()) {
    throw InputError("class function has the wrong number of values");
  }
}

ClassFunction ClassFunction::zero(TablePtr table) {
  std::size_t r = table->classes().class_count();
  return ClassFunction(std::move(table), std::vector<Cyclotomic>(r));
}

bool ClassFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Cyclotomic& c) { return c.is_zero(); });
}

ClassFunction operator+(const ClassFunction& a, const ClassFunction& b) {
  require_same_table(a, b);
  auto v = a.values_;
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += b.values_[k];
  return ClassFunction(a.table_, std::move(v));
}

ClassFunction operator-(const ClassFunction& a, const ClassFunction& b) {
  require_same_table(a, b);
  auto v = a.values_;
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= b.values_[k];
  return ClassFunction(a.table_, std::move(v));
}

ClassFunction operator*(const Cyclotomic& s, const ClassFunction& a) {
  auto v = a.values_;
  for (auto& x : v) x = s * x;
  return ClassFunction(a.table_, std::move(v));
}

ClassFunction operator*(const ClassFunction& a, const ClassFunction& b) {
  require_same_table(a, b);
  auto v = a.values_;
  for (std::size_t k = 0; k < v.size(); ++k) v[k] *= b.values_[k];
  return ClassFunction(a.table_, std::move(v));
}

bool operator==(const ClassFunction& a, const ClassFunction& b) {
  return same_table(a.table_, b.table_) && a.values_ == b.values_;
}

// ---------------------------------------------------------------------------

CharacterTable::CharacterTable(ConjugacyData classes, std::vector<std::vector<Cyclotomic>> rows, std::uint64_t prime)
    : classes_(std::move(classes)), rows_(std::move(rows)), prime_(prime) {}

std::uint64_t CharacterTable::degree(std::size_t chi) const {
  auto d = rows_.at(chi).front().as_integer();
  return d ? d->get_ui() : 0;
}

std::vector<std::uint64_t> CharacterTable::degrees() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) out.push_back(degree(i));
  return out;
}

ClassFunction CharacterTable::irreducible(std::size_t chi) const {
  return ClassFunction(shared_from_this(), rows_.at(chi));
}

std::optional<std::size_t> CharacterTable::find_irreducible(const ClassFunction& f) const {
  if (f.table().get() != this && f.table()->group().cache_key() != group().cache_key()) return std::nullopt;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] == f.values()) return i;
  }
  return std::nullopt;
}

std::uint64_t dixon_prime(std::uint64_t order, std::uint64_t exponent) {
  for (std::uint64_t l = exponent + 1;; l += exponent) {
    if (is_prime(l) && l * l > 4 * order) return l;
  }
}

TablePtr CharacterTable::compute(const PermutationGroup& g) {
  if (g.order() > kMaxTableOrder) throw CapacityError("group of order " + g.order().get_str() + " is beyond the table limit");
  ConjugacyData cd(g);
  const std::size_t r = cd.class_count();
  if (r > kMaxTableClasses) throw CapacityError(std::to_string(r) + " classes exceed the table limit");
  const u64 n = g.size();
  const u64 e = cd.exponent();
  if (r == 1) {
    return TablePtr(new CharacterTable(cd, {{Cyclotomic(1)}}, dixon_prime(n, e)));
  }
  const u64 ell = dixon_prime(n, e);
  if (ell >= (u64{1} << 31)) throw CapacityError("lifting prime too large");
  const Fp f{ell};

  // a[j][i][k] = #{(u, v) in C_j x C_i : u v = g_k}
  std::vector<std::uint32_t> a(r * r * r, 0);
  auto at = [&](std::size_t j, std::size_t i, std::size_t k) -> std::uint32_t& { return a[(j * r + i) * r + k]; };
  const auto& elems = g.elements();
  const auto cls = cd.element_classes();
  for (std::size_t ui = 0; ui < elems.size(); ++ui) {
    Permutation uinv = elems[ui].inverse();
    for (std::size_t k = 0; k < r; ++k) {
      ++at(cls[ui], cd.class_of(uinv * cd.representatives()[k]), k);
    }
  }

  // Common eigenvectors of the matrices (A_j)_{ik} = a[j][i][k]; each is the
  // central character k -> |C_k| chi(g_k) / chi(1) reduced mod ell.
  std::vector<Mat> work;
  {
    Mat id(r, Vec(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    work.push_back(std::move(id));
  }
  for (std::size_t j = 1; j < r; ++j) {
    if (std::all_of(work.begin(), work.end(), [](const Mat& w) { return w.size() == 1; })) break;
    std::vector<Mat> next;
    for (auto& basis : work) {
      const std::size_t d = basis.size();
      if (d == 1) {
        next.push_back(std::move(basis));
        continue;
      }
      std::vector<std::size_t> pivots(d);
      for (std::size_t t = 0; t < d; ++t) {
        pivots[t] = static_cast<std::size_t>(std::find_if(basis[t].begin(), basis[t].end(), [](u64 x) { return x != 0; }) -
                                             basis[t].begin());
      }
      // Restriction of A_j to the span of the basis, in pivot coordinates.
      Mat restricted(d, Vec(d, 0));
      for (std::size_t s = 0; s < d; ++s) {
        for (std::size_t t = 0; t < d; ++t) {
          std::size_t i = pivots[t];
          u64 sum = 0;
          for (std::size_t k = 0; k < r; ++k) {
            if (basis[s][k] != 0) sum = f.add(sum, f.mul(at(j, i, k) % ell, basis[s][k]));
          }
          restricted[t][s] = sum;
        }
      }
      Vec poly = charpoly(restricted, f);
      std::vector<u64> roots;
      for (u64 lambda = 0; lambda < ell; ++lambda) {
        u64 v = 0;
        for (std::size_t c = poly.size(); c-- > 0;) v = f.add(f.mul(v, lambda), poly[c]);
        if (v == 0) roots.push_back(lambda);
      }
      if (roots.size() == 1) {
        next.push_back(std::move(basis));
        continue;
      }
      std::size_t total = 0;
      for (u64 lambda : roots) {
        Mat m = restricted;
        for (std::size_t t = 0; t < d; ++t) m[t][t] = f.sub(m[t][t], lambda);
        Mat coords = null_space(std::move(m), f);
        Mat sub;
        for (const auto& c : coords) {
          Vec v(r, 0);
          for (std::size_t s = 0; s < d; ++s) {
            if (c[s] == 0) continue;
            for (std::size_t k = 0; k < r; ++k) v[k] = f.add(v[k], f.mul(c[s], basis[s][k]));
          }
          sub.push_back(std::move(v));
        }
        rref(sub, f);
        total += sub.size();
        next.push_back(std::move(sub));
      }
      if (total != d) throw Error("Dixon: class matrix is not diagonalizable modulo " + std::to_string(ell));
    }
    work = std::move(next);
  }
  if (work.size() != r) throw Error("Dixon: eigenspaces failed to split modulo " + std::to_string(ell));

  const u64 z = pow_mod(primitive_root(ell), (ell - 1) / e, ell);
  std::vector<u64> size_inv(r);
  for (std::size_t k = 0; k < r; ++k) size_inv[k] = f.inv(cd.sizes()[k] % ell);

  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& basis : work) {
    const Vec& w = basis[0];
    if (w[0] != 1) throw Error("Dixon: central character not normalized");
    u64 s = 0;
    for (std::size_t k = 0; k < r; ++k) s = f.add(s, f.mul(f.mul(w[k], w[cd.inverse_class(k)]), size_inv[k]));
    const u64 target = f.mul(n % ell, f.inv(s));
    u64 degree = 0;
    for (u64 d = 1; d * d <= n; ++d) {
      if (n % d == 0 && f.mul(d, d) == target) {
        degree = d;
        break;
      }
    }
    if (degree == 0) throw Error("Dixon: no degree satisfies the norm condition");
    Vec modval(r);
    for (std::size_t k = 0; k < r; ++k) modval[k] = f.mul(f.mul(degree % ell, w[k]), size_inv[k]);

    std::vector<Cyclotomic> row(r);
    for (std::size_t k = 0; k < r; ++k) {
      const u64 o = cd.element_orders()[k];
      const u64 zo = pow_mod(z, e / o, ell);
      const u64 zo_inv = f.inv(zo);
      const u64 o_inv = f.inv(o % ell);
      std::vector<Rational> mult(o);
      u64 total = 0;
      for (u64 t = 0; t < o; ++t) {
        u64 sum = 0;
        const u64 step = pow_mod(zo_inv, t, ell);
        u64 root = 1;
        for (u64 s2 = 0; s2 < o; ++s2) {
          sum = f.add(sum, f.mul(modval[cd.power_class(k, static_cast<long long>(s2))], root));
          root = f.mul(root, step);
        }
        u64 m = f.mul(sum, o_inv);
        if (m > degree) throw Error("Dixon: eigenvalue multiplicity out of range");
        mult[t] = Rational(static_cast<unsigned long>(m));
        total += m;
      }
      if (total != degree) throw Error("Dixon: eigenvalue multiplicities do not sum to the degree");
      row[k] = Cyclotomic::from_exponents(o, mult);
    }
    rows.push_back(std::move(row));
  }

  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    const auto dx = *x[0].as_integer(), dy = *y[0].as_integer();
    if (dx != dy) return dx < dy;
    return lex_rows_less(x, y);
  });
  Integer sum_sq = 0;
  for (const auto& row : rows) sum_sq += *row[0].as_integer() * *row[0].as_integer();
  if (sum_sq != g.order()) throw Error("Dixon: squared degrees do not sum to the group order");
  return TablePtr(new CharacterTable(cd, std::move(rows), ell));
}

TablePtr CharacterTable::from_rows(const PermutationGroup& g, std::vector<std::vector<Cyclotomic>> rows) {
  ConjugacyData cd(g);
  if (rows.size() != cd.class_count()) throw InputError("row count differs from the class count");
  for (const auto& row : rows) {
    if (row.size() != cd.class_count()) throw InputError("row length differs from the class count");
  }
  TablePtr t(new CharacterTable(cd, std::move(rows), 0));
  if (!verify_orthogonality(*t)) throw InputError("rows fail the orthogonality relations");
  return t;
}

bool verify_orthogonality(const CharacterTable& t) {
  const auto& cd = t.classes();
  const std::size_t r = cd.class_count();
  if (t.size() != r) return false;
  const Rational order(t.group().order());
  Integer sum_sq = 0;
  for (std::size_t i = 0; i < r; ++i) {
    auto d = t.value(i, 0).as_integer();
    if (!d || *d <= 0 || t.group().order() % *d != 0) return false;
    sum_sq += *d * *d;
  }
  if (sum_sq != t.group().order()) return false;
  std::vector<std::vector<Cyclotomic>> conj(r, std::vector<Cyclotomic>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) conj[i][k] = t.value(i, k).conj();
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      CyclotomicAccumulator acc;
      for (std::size_t k = 0; k < r; ++k) {
        acc.add_product(t.value(i, k), conj[j][k], Rational(static_cast<unsigned long>(cd.sizes()[k])) / order);
      }
      if (acc.result() != Cyclotomic(i == j ? 1 : 0)) return false;
    }
  }
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t l = k; l < r; ++l) {
      CyclotomicAccumulator acc;
      for (std::size_t i = 0; i < r; ++i) acc.add_product(t.value(i, k), conj[i][l]);
      Cyclotomic expected = k == l ? Cyclotomic(static_cast<long long>(cd.centralizer_order(k))) : Cyclotomic();
      if (acc.result() != expected) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Cyclotomic value_at(const ClassFunction& chi, const Permutation& g) {
  return chi[chi.table()->classes().class_of(g)];
}

Cyclotomic inner_value(const ClassFunction& a, const ClassFunction& b) {
  require_same_table(a, b);
  const auto& cd = a.table()->classes();
  const Rational order(a.table()->group().order());
  CyclotomicAccumulator acc;
  for (std::size_t k = 0; k < cd.class_count(); ++k) {
    if (a[k].is_zero() || b[k].is_zero()) continue;
    acc.add_product(a[k], b[k].conj(), Rational(static_cast<unsigned long>(cd.sizes()[k])) / order);
  }
  return acc.result();
}

Rational inner(const ClassFunction& a, const ClassFunction& b) {
  auto v = inner_value(a, b).as_rational();
  if (!v) throw InputError("inner product is not rational");
  return *v;
}

std::vector<Rational> decompose(const ClassFunction& a) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < a.table()->size(); ++i) out.push_back(inner(a, a.table()->irreducible(i)));
  return out;
}

ClassFunction compose(const TablePtr& table, const std::vector<Rational>& mult) {
  if (mult.size() != table->size()) throw InputError("multiplicity vector has the wrong length");
  std::vector<Cyclotomic> v(table->classes().class_count());
  for (std::size_t i = 0; i < mult.size(); ++i) {
    if (mult[i] == 0) continue;
    Cyclotomic m(mult[i]);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += m * table->value(i, k);
  }
  return ClassFunction(table, std::move(v));
}

bool is_character(const ClassFunction& a) {
  if (a.is_zero()) return true;
  for (const auto& m : decompose(a)) {
    if (m < 0 || m.get_den() != 1) return false;
  }
  return true;
}

bool is_irreducible(const ClassFunction& a) { return a.table()->find_irreducible(a).has_value(); }

std::vector<std::size_t> class_fusion(const CharacterTable& h, const CharacterTable& g) {
  if (!g.group().contains(h.group())) throw InputError("restriction to a group that is not a subgroup");
  std::vector<std::size_t> out;
  for (const auto& rep : h.classes().representatives()) out.push_back(g.classes().class_of(rep));
  return out;
}

ClassFunction restrict(const ClassFunction& chi, const TablePtr& h) {
  auto fusion = class_fusion(*h, *chi.table());
  std::vector<Cyclotomic> v;
  v.reserve(fusion.size());
  for (auto k : fusion) v.push_back(chi[k]);
  return ClassFunction(h, std::move(v));
}

ClassFunction induce(const ClassFunction& delta, const TablePtr& g) {
  const auto& h = delta.table()->group();
  if (!g->group().contains(h)) throw InputError("induction to a group that is not an overgroup");
  const auto transversal = right_transversal(g->group(), h);
  const auto& hc = delta.table()->classes();
  std::vector<Cyclotomic> v;
  for (const auto& x : g->classes().representatives()) {
    CyclotomicAccumulator acc;
    for (const auto& t : transversal) {
      if (auto k = hc.find_class(t * x * t.inverse())) acc.add(delta[*k]);
    }
    v.push_back(acc.result());
  }
  return ClassFunction(g, std::move(v));
}

Cyclotomic induced_value_diamond(const ClassFunction& delta, const PermutationGroup& g, const PermutationGroup& k,
                                 const Permutation& h) {
  const auto& hg = delta.table()->group();
  if (!g.contains(hg) || !g.contains(k)) throw InputError("H and K must be subgroups of G");
  if (!is_normal(g, k)) throw InputError("K is not normal in G");
  auto m = intersection(k, hg);
  if (k.order() * hg.order() != g.order() * m.order()) throw InputError("G is not the product KH");
  if (!hg.contains(h)) throw InputError("h is not an element of H");
  const auto& hc = delta.table()->classes();
  CyclotomicAccumulator acc;
  for (const auto& x : k.elements()) {
    if (auto c = hc.find_class(x * h * x.inverse())) acc.add(delta[*c]);
  }
  return acc.result() * Cyclotomic(Rational(Integer(1), m.order()));
}

namespace {

// pi[j] = class of g rep_j g^-1 in the group of `t`.
std::vector<std::size_t> conjugation_class_map(const CharacterTable& t, const Permutation& g) {
  const auto& cd = t.classes();
  const Permutation ginv = g.inverse();
  std::vector<std::size_t> pi;
  pi.reserve(cd.class_count());
  for (const auto& rep : cd.representatives()) pi.push_back(cd.class_of(g * rep * ginv));
  return pi;
}

}  // namespace

ClassFunction conjugate_character(const ClassFunction& theta, const Permutation& g) {
  if (!normalizes(g, theta.table()->group())) throw InputError("element does not normalize the character's group");
  auto pi = conjugation_class_map(*theta.table(), g);
  std::vector<Cyclotomic> v;
  for (auto k : pi) v.push_back(theta[k]);
  return ClassFunction(theta.table(), std::move(v));
}

std::vector<std::size_t> irreducible_action(const CharacterTable& t, const Permutation& g) {
  if (!normalizes(g, t.group())) throw InputError("element does not normalize the table's group");
  auto pi = conjugation_class_map(t, g);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::vector<Cyclotomic> v;
    for (auto k : pi) v.push_back(t.value(i, k));
    auto it = std::find(t.rows().begin(), t.rows().end(), v);
    if (it == t.rows().end()) throw Error("conjugate of an irreducible is not irreducible");
    out.push_back(static_cast<std::size_t>(it - t.rows().begin()));
  }
  return out;
}

PermutationGroup stabilizer_of_character(const PermutationGroup& g, const ClassFunction& theta) {
  const auto& table = *theta.table();
  const auto& k = table.group();
  for (const auto& x : g.generators()) {
    if (!normalizes(x, k)) throw InputError("group does not normalize the character's group");
  }
  auto fixes = [&](const Permutation& x) {
    auto pi = conjugation_class_map(table, x);
    for (std::size_t j = 0; j < pi.size(); ++j) {
      if (theta[pi[j]] != theta[j]) return false;
    }
    return true;
  };
  if (g.contains(k)) return subgroup_where(g, fixes, &k);
  return subgroup_where(g, fixes);
}

std::vector<std::size_t> irr_over(const TablePtr& g, const ClassFunction& theta) {
  if (!is_irreducible(theta)) throw InputError("theta is not an irreducible character");
  const auto& k = theta.table()->group();
  if (!is_normal(g->group(), k)) throw InputError("theta's group is not normal");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (!inner_value(restrict(g->irreducible(i), theta.table()), theta).is_zero()) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization and caching.

nlohmann::json table_to_json(const CharacterTable& t) {
  const auto& cd = t.classes();
  nlohmann::json classes = nlohmann::json::array();
  for (std::size_t k = 0; k < cd.class_count(); ++k) {
    classes.push_back({{"rep", cd.representatives()[k].one_based()}, {"size", cd.sizes()[k]}});
  }
  nlohmann::json power = nlohmann::json::object();
  for (auto p : prime_divisors(std::max<std::uint64_t>(t.group().size(), 2))) {
    if (t.group().size() % p == 0) power[std::to_string(p)] = cd.power_map(static_cast<long long>(p));
  }
  nlohmann::json values = nlohmann::json::array();
  for (const auto& row : t.rows()) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& v : row) jr.push_back(to_json(v));
    values.push_back(std::move(jr));
  }
  return {{"key", t.group().cache_key()}, {"degree", t.group().degree()}, {"order", t.group().order().get_str()},
          {"classes", std::move(classes)}, {"power_maps", std::move(power)}, {"lifting_prime", t.lifting_prime()},
          {"values", std::move(values)}};
}

TablePtr table_from_json(const PermutationGroup& g, const nlohmann::json& j) {
  try {
    if (j.at("key").get<std::string>() != g.cache_key()) throw InputError("cached table belongs to another group");
    ConjugacyData cd(g);
    const auto& classes = j.at("classes");
    if (classes.size() != cd.class_count()) throw InputError("cached class count differs");
    for (std::size_t k = 0; k < cd.class_count(); ++k) {
      if (classes[k].at("rep").get<std::vector<long long>>() != cd.representatives()[k].one_based() ||
          classes[k].at("size").get<std::uint64_t>() != cd.sizes()[k]) {
        throw InputError("cached class data differ");
      }
    }
    for (const auto& [p, map] : j.at("power_maps").items()) {
      if (map.get<std::vector<std::size_t>>() != cd.power_map(std::stoll(p))) throw InputError("cached power map differs");
    }
    std::vector<std::vector<Cyclotomic>> rows;
    for (const auto& jr : j.at("values")) {
      std::vector<Cyclotomic> row;
      for (const auto& v : jr) row.push_back(cyclotomic_from_json(v));
      rows.push_back(std::move(row));
    }
    auto checked = CharacterTable::from_rows(g, std::move(rows));
    return TablePtr(new CharacterTable(checked->classes(), checked->rows(), j.at("lifting_prime").get<std::uint64_t>()));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed table JSON: ") + e.what());
  }
}

std::string table_cache_name(const PermutationGroup& g) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : g.cache_key()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return "table-" + out.str() + ".json";
}

namespace {

std::mutex g_table_mutex;
std::map<std::string, TablePtr> g_tables;

std::optional<TablePtr> load_from_disk(const PermutationGroup& g, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j;
    in >> j;
    return table_from_json(g, j);
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  } catch (const InputError&) {
    // Hash collision or stale file; recompute and overwrite.
    return std::nullopt;
  }
}

void write_atomically(const std::filesystem::path& file, const std::string& text) {
  std::filesystem::create_directories(file.parent_path());
  std::ostringstream suffix;
  suffix << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id());
  auto tmp = file;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write cache file " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace

TablePtr character_table(const PermutationGroup& g, const std::optional<std::filesystem::path>& cache_dir) {
  const std::string key = g.cache_key();
  std::optional<std::filesystem::path> dir = cache_dir;
  if (!dir) {
    if (const char* env = std::getenv("PICKY_CACHE"); env && *env) dir = std::filesystem::path(env);
  }
  std::optional<std::filesystem::path> file;
  if (dir) file = *dir / table_cache_name(g);
  TablePtr table;
  {
    std::lock_guard lock(g_table_mutex);
    if (auto it = g_tables.find(key); it != g_tables.end()) table = it->second;
  }
  if (table) {
    // A memoized table still populates a cache directory that lacks it.
    if (file && !std::filesystem::exists(*file)) write_atomically(*file, table_to_json(*table).dump() + "\n");
    return table;
  }
  if (file) {
    if (auto loaded = load_from_disk(g, *file)) table = *loaded;
    if (!table) {
      table = CharacterTable::compute(g);
      write_atomically(*file, table_to_json(*table).dump() + "\n");
    }
  } else {
    table = CharacterTable::compute(g);
  }
  std::lock_guard lock(g_table_mutex);
  auto [it, inserted] = g_tables.emplace(key, table);
  return it->second;
}

}  // namespace picky
