#include "picky/perm.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>

#include "picky/errors.hpp"

namespace picky {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation Permutation::from_images(std::vector<Point> images) {
  std::vector<bool> seen(images.size(), false);
  for (Point p : images) {
    if (p >= images.size() || seen[p]) {
      throw InputError("image list is not a bijection on {1.." + std::to_string(images.size()) + "}");
    }
    seen[p] = true;
  }
  Permutation result;
  result.images_ = std::move(images);
  return result;
}

Permutation Permutation::from_one_based(std::span<const long long> images) {
  std::vector<Point> zero_based;
  zero_based.reserve(images.size());
  for (long long v : images) {
    if (v < 1 || v > static_cast<long long>(images.size())) {
      throw InputError("image " + std::to_string(v) + " outside {1.." + std::to_string(images.size()) + "}");
    }
    zero_based.push_back(static_cast<Point>(v - 1));
  }
  return from_images(std::move(zero_based));
}

Permutation Permutation::from_cycles(std::size_t degree, std::string_view text) {
  Permutation result(degree);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw CycleSyntaxError("malformed cycle notation: '" + std::string(text) + "'");
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_space();
      if (i >= text.size()) throw CycleSyntaxError("unterminated cycle in '" + std::string(text) + "'");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw CycleSyntaxError("unexpected character in cycle notation: '" + std::string(text) + "'");
      }
      unsigned long long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned>(text[i] - '0');
        if (v > degree) throw CycleSyntaxError("point " + std::to_string(v) + " exceeds degree " + std::to_string(degree));
        ++i;
      }
      if (v == 0) throw CycleSyntaxError("points are 1-based");
      cycle.push_back(static_cast<Point>(v - 1));
    }
    std::vector<Point> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw CycleSyntaxError("repeated point inside a cycle: '" + std::string(text) + "'");
    }
    // Cycles compose left to right, like every other product.
    Permutation c(degree);
    for (std::size_t k = 0; k < cycle.size(); ++k) c.images_[cycle[k]] = cycle[(k + 1) % cycle.size()];
    result *= c;
    skip_space();
  }
  return result;
}

std::vector<long long> Permutation::one_based() const {
  std::vector<long long> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = static_cast<long long>(images_[i]) + 1;
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::pow(long long e) const {
  Permutation base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  Permutation result(images_.size());
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Point Permutation::first_moved() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return static_cast<Point>(i);
  }
  return static_cast<Point>(images_.size());
}

std::string Permutation::to_cycles() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    any = true;
    out << '(';
    bool first = true;
    for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (!first) out << ',';
      out << j + 1;
      first = false;
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw InputError("degree mismatch in permutation product");
  Permutation r;
  r.images_.resize(a.images_.size());
  for (std::size_t i = 0; i < a.images_.size(); ++i) r.images_[i] = b.images_[a.images_[i]];
  return r;
}

Permutation& Permutation::operator*=(const Permutation& b) {
  if (degree() != b.degree()) throw InputError("degree mismatch in permutation product");
  if (&b == this) return *this = *this * b;
  for (auto& v : images_) v = b.images_[v];
  return *this;
}

Permutation conjugate(const Permutation& x, const Permutation& g) { return g.inverse() * x * g; }

Permutation commutator(const Permutation& a, const Permutation& b) {
  return a.inverse() * b.inverse() * a * b;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Stabilizer chain

namespace {

struct ChainLevel {
  Point base = 0;
  std::vector<Permutation> strong;
  std::vector<Point> orbit;
  std::vector<std::int32_t> slot;  // point -> index into orbit/reps, or -1
  std::vector<Permutation> reps;   // base^reps[i] == orbit[i]
  std::vector<Permutation> rep_invs;

  void rebuild_orbit(std::size_t degree) {
    orbit.assign(1, base);
    slot.assign(degree, -1);
    reps.assign(1, Permutation(degree));
    rep_invs.assign(1, Permutation(degree));
    slot[base] = 0;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (const auto& s : strong) {
        Point img = s[orbit[k]];
        if (slot[img] >= 0) continue;
        slot[img] = static_cast<std::int32_t>(orbit.size());
        orbit.push_back(img);
        reps.push_back(reps[k] * s);
        rep_invs.push_back(reps.back().inverse());
      }
    }
  }
};

}  // namespace

struct PermutationGroup::Impl {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::vector<ChainLevel> levels;
  std::vector<Point> base;
  Integer order = 1;

  mutable std::once_flag elements_once;
  mutable std::vector<Permutation> elements;

  // Strips g starting at `from`; returns the residue and the level reached.
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const {
    for (std::size_t i = from; i < levels.size(); ++i) {
      Point b = g[levels[i].base];
      std::int32_t s = levels[i].slot[b];
      if (s < 0) return {std::move(g), i};
      g *= levels[i].rep_invs[static_cast<std::size_t>(s)];
    }
    return {std::move(g), levels.size()};
  }

  void build() {
    std::vector<Permutation> gens;
    for (const auto& g : generators) {
      if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
    if (gens.empty()) return;

    auto fixes_base = [&](const Permutation& g) {
      return std::all_of(levels.begin(), levels.end(), [&](const ChainLevel& l) { return g[l.base] == l.base; });
    };
    for (const auto& g : gens) {
      if (fixes_base(g)) {
        ChainLevel l;
        l.base = g.first_moved();
        levels.push_back(std::move(l));
      }
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
      for (const auto& g : gens) {
        bool fixes_prefix = true;
        for (std::size_t j = 0; j < i; ++j) fixes_prefix = fixes_prefix && g[levels[j].base] == levels[j].base;
        if (fixes_prefix) levels[i].strong.push_back(g);
      }
      levels[i].rebuild_orbit(degree);
    }

    // Deterministic Schreier-Sims: every Schreier generator of level i must
    // strip to the identity through the levels below it.
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels.size()) - 1;
    while (i >= 0) {
      auto& lvl = levels[static_cast<std::size_t>(i)];
      bool restarted = false;
      for (std::size_t k = 0; !restarted && k < lvl.orbit.size(); ++k) {
        for (std::size_t si = 0; si < lvl.strong.size(); ++si) {
          const auto& s = lvl.strong[si];
          Point img = s[lvl.orbit[k]];
          Permutation h = lvl.reps[k] * s * lvl.rep_invs[static_cast<std::size_t>(lvl.slot[img])];
          if (h.is_identity()) continue;
          auto [y, j] = strip(std::move(h), static_cast<std::size_t>(i) + 1);
          if (j == levels.size() && y.is_identity()) continue;
          if (j == levels.size()) {
            ChainLevel l;
            l.base = y.first_moved();
            levels.push_back(std::move(l));
          }
          for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
            levels[l].strong.push_back(y);
            levels[l].rebuild_orbit(degree);
          }
          i = static_cast<std::ptrdiff_t>(j);
          restarted = true;
          break;
        }
      }
      if (!restarted) --i;
    }

    for (const auto& l : levels) {
      base.push_back(l.base);
      order *= static_cast<unsigned long>(l.orbit.size());
    }
  }
};

PermutationGroup::PermutationGroup() : PermutationGroup(0, {}) {}

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> generators) {
  auto impl = std::make_shared<Impl>();
  impl->degree = degree;
  for (const auto& g : generators) {
    if (g.degree() != degree) {
      throw InputError("generator of degree " + std::to_string(g.degree()) + " in a group of degree " +
                       std::to_string(degree));
    }
  }
  impl->generators = std::move(generators);
  impl->build();
  impl_ = std::move(impl);
}

PermutationGroup PermutationGroup::trivial(std::size_t degree) { return PermutationGroup(degree, {}); }

std::size_t PermutationGroup::degree() const { return impl_->degree; }
const std::vector<Permutation>& PermutationGroup::generators() const { return impl_->generators; }
const Integer& PermutationGroup::order() const { return impl_->order; }

std::uint64_t PermutationGroup::size() const {
  if (!impl_->order.fits_slong_p()) throw CapacityError("group order exceeds machine range");
  return impl_->order.get_ui();
}

bool PermutationGroup::contains(const Permutation& g) const {
  if (g.degree() != impl_->degree) {
    throw InputError("element of degree " + std::to_string(g.degree()) + " tested against a group of degree " +
                     std::to_string(impl_->degree));
  }
  return impl_->strip(g, 0).first.is_identity();
}

bool PermutationGroup::contains(const PermutationGroup& h) const {
  if (h.degree() != degree()) return false;
  return std::all_of(h.generators().begin(), h.generators().end(), [&](const Permutation& g) { return contains(g); });
}

bool PermutationGroup::same_elements(const PermutationGroup& other) const {
  return order() == other.order() && contains(other);
}

const std::vector<Permutation>& PermutationGroup::elements() const {
  std::call_once(impl_->elements_once, [this] {
    if (impl_->order > kMaxEnumeratedOrder) {
      throw CapacityError("group of order " + impl_->order.get_str() + " is too large to enumerate");
    }
    std::vector<Permutation> out{Permutation(impl_->degree)};
    // Every element is u_{k-1} ... u_1 u_0 with u_i from the level-i transversal.
    for (std::size_t lvl = impl_->levels.size(); lvl-- > 0;) {
      std::vector<Permutation> next;
      next.reserve(out.size() * impl_->levels[lvl].reps.size());
      for (const auto& g : out) {
        for (const auto& u : impl_->levels[lvl].reps) next.push_back(g * u);
      }
      out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    impl_->elements = std::move(out);
  });
  return impl_->elements;
}

const std::vector<Point>& PermutationGroup::base() const { return impl_->base; }

std::vector<std::size_t> PermutationGroup::transversal_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& l : impl_->levels) out.push_back(l.orbit.size());
  return out;
}

Permutation PermutationGroup::sift(const Permutation& g) const {
  if (g.degree() != impl_->degree) throw InputError("degree mismatch in sift");
  return impl_->strip(g, 0).first;
}

std::string PermutationGroup::cache_key() const {
  std::vector<std::vector<long long>> gens;
  for (const auto& g : impl_->generators) gens.push_back(g.one_based());
  std::sort(gens.begin(), gens.end());
  std::ostringstream out;
  out << impl_->degree << '|';
  for (const auto& g : gens) {
    for (auto v : g) out << v << ',';
    out << ';';
  }
  out << '|' << impl_->order.get_str();
  return out.str();
}

}  // namespace picky
