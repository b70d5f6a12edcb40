#include "picky/cyclo.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "picky/errors.hpp"

namespace picky {

namespace {

struct FieldData {
  std::uint64_t n = 1;
  std::uint64_t phi = 1;
  std::vector<Integer> poly;                 // cyclotomic polynomial, low degree first
  std::vector<std::vector<Integer>> reduce;  // reduce[j] = zeta^j in the power basis, j < n
};

// Left inverse of the embedding Q(zeta_m) -> Q(zeta_n) restricted to a set of
// pivot rows, plus the embedding itself for the membership check.
struct Descent {
  std::vector<std::size_t> pivot_rows;
  std::vector<std::vector<Rational>> inverse;  // phi(m) x phi(m)
  std::vector<std::vector<Integer>> embed;     // phi(n) rows x phi(m) columns
};

std::mutex g_cache_mutex;
std::map<std::uint64_t, std::unique_ptr<FieldData>> g_fields;
std::map<std::uint64_t, std::vector<Integer>> g_polys;
std::map<std::pair<std::uint64_t, std::uint64_t>, std::unique_ptr<Descent>> g_descents;

std::vector<Integer> cyclotomic_polynomial_locked(std::uint64_t n) {
  if (auto it = g_polys.find(n); it != g_polys.end()) return it->second;
  // x^n - 1 divided by every Phi_d with d | n, d < n.
  std::vector<Integer> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto den = cyclotomic_polynomial_locked(d);
    const std::size_t e = den.size() - 1;  // den is monic
    std::vector<Integer> quot(num.size() - e, 0);
    for (std::size_t shift = quot.size(); shift-- > 0;) {
      Integer c = num[shift + e];
      quot[shift] = c;
      for (std::size_t t = 0; t <= e; ++t) num[shift + t] -= c * den[t];
    }
    num = std::move(quot);
  }
  g_polys.emplace(n, num);
  return num;
}

const FieldData& field(std::uint64_t n) {
  std::lock_guard lock(g_cache_mutex);
  auto it = g_fields.find(n);
  if (it != g_fields.end()) return *it->second;
  auto f = std::make_unique<FieldData>();
  f->n = n;
  f->poly = cyclotomic_polynomial_locked(n);
  f->phi = f->poly.size() - 1;
  f->reduce.assign(n, std::vector<Integer>(f->phi, 0));
  std::vector<Integer> cur(f->phi + 1, 0);
  cur[0] = 1;
  for (std::uint64_t j = 0; j < n; ++j) {
    if (j > 0) {
      for (std::size_t k = f->phi; k > 0; --k) cur[k] = cur[k - 1];
      cur[0] = 0;
      Integer top = cur[f->phi];
      if (top != 0) {
        for (std::size_t k = 0; k <= f->phi; ++k) cur[k] -= top * f->poly[k];
      }
    }
    for (std::size_t k = 0; k < f->phi; ++k) f->reduce[j][k] = cur[k];
  }
  auto& ref = *f;
  g_fields.emplace(n, std::move(f));
  return ref;
}

const Descent& descent(std::uint64_t n, std::uint64_t m) {
  const FieldData& big = field(n);
  const FieldData& small = field(m);
  std::lock_guard lock(g_cache_mutex);
  auto key = std::make_pair(n, m);
  if (auto it = g_descents.find(key); it != g_descents.end()) return *it->second;

  auto d = std::make_unique<Descent>();
  const std::size_t rows = big.phi, cols = small.phi;
  d->embed.assign(rows, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) {
    const auto& col = big.reduce[i * (n / m)];
    for (std::size_t r = 0; r < rows; ++r) d->embed[r][i] = col[r];
  }
  // Greedy choice of independent rows.
  std::vector<std::vector<Rational>> basis;
  std::vector<std::size_t> lead;
  for (std::size_t r = 0; r < rows && d->pivot_rows.size() < cols; ++r) {
    std::vector<Rational> v(cols);
    for (std::size_t c = 0; c < cols; ++c) v[c] = d->embed[r][c];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (v[lead[b]] == 0) continue;
      Rational f = v[lead[b]] / basis[b][lead[b]];
      for (std::size_t c = 0; c < cols; ++c) v[c] -= f * basis[b][c];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
    if (nz == v.end()) continue;
    lead.push_back(static_cast<std::size_t>(nz - v.begin()));
    basis.push_back(std::move(v));
    d->pivot_rows.push_back(r);
  }
  if (d->pivot_rows.size() != cols) throw Error("cyclotomic embedding is not injective");
  // Gauss-Jordan inverse of the square submatrix.
  std::vector<std::vector<Rational>> a(cols, std::vector<Rational>(2 * cols, 0));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t c = 0; c < cols; ++c) a[i][c] = d->embed[d->pivot_rows[i]][c];
    a[i][cols + i] = 1;
  }
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < cols; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < 2 * cols; ++k) a[r][k] -= f * a[c][k];
    }
  }
  d->inverse.assign(cols, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t c = 0; c < cols; ++c) d->inverse[i][c] = a[i][cols + c];
  }
  auto& ref = *d;
  g_descents.emplace(key, std::move(d));
  return ref;
}

std::optional<std::vector<Rational>> try_descend(std::uint64_t n, std::uint64_t m, const std::vector<Rational>& v) {
  const Descent& d = descent(n, m);
  const std::size_t cols = d.inverse.size();
  std::vector<Rational> w(cols, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (d.inverse[i][c] != 0) w[i] += d.inverse[i][c] * v[d.pivot_rows[c]];
    }
  }
  for (std::size_t r = 0; r < v.size(); ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (d.embed[r][c] != 0) s += d.embed[r][c] * w[c];
    }
    if (s != v[r]) return std::nullopt;
  }
  return w;
}

std::vector<Rational> exponents_to_basis(const FieldData& f, const std::vector<Rational>& exps) {
  std::vector<Rational> out(f.phi, 0);
  for (std::size_t j = 0; j < exps.size(); ++j) {
    if (exps[j] == 0) continue;
    const auto& red = f.reduce[j];
    for (std::size_t k = 0; k < f.phi; ++k) {
      if (red[k] != 0) out[k] += exps[j] * red[k];
    }
  }
  return out;
}

bool only_constant(const std::vector<Rational>& c) {
  return std::all_of(c.begin() + 1, c.end(), [](const Rational& q) { return q == 0; });
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(std::uint64_t n) {
  if (n == 0) throw InputError("cyclotomic polynomial of order 0");
  std::lock_guard lock(g_cache_mutex);
  return cyclotomic_polynomial_locked(n);
}

Cyclotomic::Cyclotomic() : conductor_(1), coeffs_{Rational(0)} {}
Cyclotomic::Cyclotomic(long long value) : conductor_(1), coeffs_{Rational(static_cast<long>(value))} {}
Cyclotomic::Cyclotomic(const Rational& value) : conductor_(1), coeffs_{value} {}

Cyclotomic Cyclotomic::canonical(std::uint64_t n, std::vector<Rational> c) {
  if (n == 1 || only_constant(c)) return Cyclotomic(Rational(c[0]));
  if (n % 4 == 2) {
    auto w = try_descend(n, n / 2, c);
    if (!w) throw Error("internal: Q(zeta_2m) != Q(zeta_m) descent failed");
    n /= 2;
    c = std::move(*w);
    if (n == 1 || only_constant(c)) return Cyclotomic(Rational(c[0]));
  }
  bool moved = true;
  while (moved) {
    moved = false;
    for (auto q : prime_divisors(n)) {
      std::uint64_t m = n / q;
      if (m % 4 == 2) m /= 2;
      auto w = try_descend(n, m, c);
      if (!w) continue;
      n = m;
      c = std::move(*w);
      if (n == 1 || only_constant(c)) return Cyclotomic(Rational(c[0]));
      moved = true;
      break;
    }
  }
  return Cyclotomic(n, std::move(c));
}

Cyclotomic Cyclotomic::root_of_unity(std::uint64_t n, long long k) {
  if (n == 0) throw InputError("root of unity of order 0");
  auto nn = static_cast<long long>(n);
  std::vector<Rational> exps(n, 0);
  exps[static_cast<std::size_t>(((k % nn) + nn) % nn)] = 1;
  return canonical(n, exponents_to_basis(field(n), exps));
}

Cyclotomic Cyclotomic::from_exponents(std::uint64_t n, std::span<const Rational> coeffs) {
  if (n == 0) throw InputError("cyclotomic of conductor 0");
  std::vector<Rational> exps(n, 0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) exps[j % n] += coeffs[j];
  return canonical(n, exponents_to_basis(field(n), exps));
}

Cyclotomic Cyclotomic::from_basis(std::uint64_t n, std::span<const Rational> coeffs) {
  if (n == 0) throw InputError("cyclotomic of conductor 0");
  const auto& f = field(n);
  if (coeffs.size() != f.phi) throw InputError("basis coefficient vector has the wrong length");
  return canonical(n, std::vector<Rational>(coeffs.begin(), coeffs.end()));
}

bool Cyclotomic::is_zero() const { return conductor_ == 1 && coeffs_[0] == 0; }

std::optional<Rational> Cyclotomic::as_rational() const {
  if (conductor_ != 1) return std::nullopt;
  return coeffs_[0];
}

std::optional<Integer> Cyclotomic::as_integer() const {
  if (conductor_ != 1 || coeffs_[0].get_den() != 1) return std::nullopt;
  return Integer(coeffs_[0].get_num());
}

Cyclotomic Cyclotomic::galois(long long s) const {
  if (conductor_ == 1) return *this;
  auto n = static_cast<long long>(conductor_);
  long long r = ((s % n) + n) % n;
  if (std::gcd(r, n) != 1) throw InputError("galois: exponent not coprime to the conductor");
  std::vector<Rational> exps(conductor_, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    exps[static_cast<std::size_t>((static_cast<long long>(i) * r) % n)] = coeffs_[i];
  }
  // The conductor is a Galois invariant, so the result is already canonical.
  return Cyclotomic(conductor_, exponents_to_basis(field(conductor_), exps));
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw InputError("inverse of zero");
  if (conductor_ == 1) return Cyclotomic(Rational(1 / coeffs_[0]));
  Cyclotomic others(1);
  for (std::uint64_t s = 2; s < conductor_; ++s) {
    if (std::gcd(s, conductor_) == 1) others *= galois(static_cast<long long>(s));
  }
  auto norm = (*this * others).as_rational();
  if (!norm) throw Error("internal: field norm is not rational");
  return others * Cyclotomic(Rational(1 / *norm));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ == b.conductor_) {
    std::vector<Rational> c = a.coeffs_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
    return Cyclotomic::canonical(a.conductor_, std::move(c));
  }
  CyclotomicAccumulator acc;
  acc.add(a);
  acc.add(b);
  return acc.result();
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ == 1 || b.conductor_ == 1) {
    const Cyclotomic& scalar = a.conductor_ == 1 ? a : b;
    const Cyclotomic& other = a.conductor_ == 1 ? b : a;
    const Rational& s = scalar.coeffs_[0];
    if (s == 0) return Cyclotomic();
    Cyclotomic r = other;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }
  CyclotomicAccumulator acc;
  acc.add_product(a, b);
  return acc.result();
}

std::string Cyclotomic::to_string() const {
  auto show = [](const Rational& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
  };
  if (conductor_ == 1) return show(coeffs_[0]);
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << show(mag);
      continue;
    }
    if (mag != 1) out << show(mag) << '*';
    out << "E(" << conductor_ << ')';
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

bool canonical_less(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor() != b.conductor()) return a.conductor() < b.conductor();
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] != cb[i]) return ca[i] > cb[i];
  }
  return false;
}

std::optional<int> equal_up_to_sign(const Cyclotomic& a, const Cyclotomic& b) {
  if (a == b) return 1;
  if (a == -b) return -1;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

void CyclotomicAccumulator::widen(std::uint64_t n) {
  std::uint64_t l = std::lcm(n_, n);
  if (l == n_) return;
  std::vector<Rational> next(l, 0);
  const std::uint64_t step = l / n_;
  for (std::size_t j = 0; j < acc_.size(); ++j) next[j * step] = acc_[j];
  acc_ = std::move(next);
  n_ = l;
}

void CyclotomicAccumulator::add(const Cyclotomic& a, const Rational& scale) {
  if (a.is_zero() || scale == 0) return;
  widen(a.conductor());
  const std::uint64_t step = n_ / a.conductor();
  const auto& c = a.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) acc_[i * step] += scale * c[i];
  }
}

void CyclotomicAccumulator::add_product(const Cyclotomic& a, const Cyclotomic& b, const Rational& scale) {
  if (a.is_zero() || b.is_zero() || scale == 0) return;
  widen(std::lcm(a.conductor(), b.conductor()));
  const std::uint64_t sa = n_ / a.conductor();
  const std::uint64_t sb = n_ / b.conductor();
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0) continue;
    Rational si = scale * ca[i];
    for (std::size_t j = 0; j < cb.size(); ++j) {
      if (cb[j] == 0) continue;
      acc_[(i * sa + j * sb) % n_] += si * cb[j];
    }
  }
}

Cyclotomic CyclotomicAccumulator::result() const {
  return Cyclotomic::from_exponents(n_, acc_);
}

// ---------------------------------------------------------------------------

std::string rational_to_string(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Rational rational_from_string(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw InputError("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

nlohmann::json to_json(const Cyclotomic& c) {
  nlohmann::json terms = nlohmann::json::array();
  const auto& coeffs = c.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) terms.push_back(nlohmann::json::array({i, rational_to_string(coeffs[i])}));
  }
  return {{"n", c.conductor()}, {"terms", std::move(terms)}};
}

Cyclotomic cyclotomic_from_json(const nlohmann::json& j) {
  try {
    auto n = j.at("n").get<std::uint64_t>();
    if (n == 0) throw InputError("cyclotomic conductor must be positive");
    std::vector<Rational> exps(n, 0);
    for (const auto& t : j.at("terms")) {
      auto e = t.at(0).get<std::uint64_t>();
      if (e >= n) throw InputError("cyclotomic exponent out of range");
      exps[e] += rational_from_string(t.at(1).get<std::string>());
    }
    return Cyclotomic::from_exponents(n, exps);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed cyclotomic JSON: ") + e.what());
  }
}

}  // namespace picky
