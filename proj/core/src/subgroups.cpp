#include "picky/subgroups.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "picky/errors.hpp"
#include "picky/numtheory.hpp"

namespace picky {

PermutationGroup subgroup_where(const PermutationGroup& g, const std::function<bool(const Permutation&)>& pred,
                                const PermutationGroup* seed) {
  PermutationGroup s = seed ? *seed : PermutationGroup::trivial(g.degree());
  for (const auto& x : g.elements()) {
    if (s.contains(x) || !pred(x)) continue;
    s = join(s, std::vector<Permutation>{x});
    if (s.order() == g.order()) break;
  }
  return s;
}

PermutationGroup join(const PermutationGroup& a, const PermutationGroup& b) { return join(a, b.generators()); }

PermutationGroup join(const PermutationGroup& a, const std::vector<Permutation>& extra) {
  std::vector<Permutation> gens = a.generators();
  for (const auto& x : extra) {
    if (!a.contains(x)) gens.push_back(x);
  }
  if (gens.size() == a.generators().size()) return a;
  return PermutationGroup(a.degree(), std::move(gens));
}

PermutationGroup intersection(const PermutationGroup& a, const PermutationGroup& b) {
  if (a.degree() != b.degree()) throw InputError("intersection of groups of different degree");
  const PermutationGroup& small = a.order() <= b.order() ? a : b;
  const PermutationGroup& other = a.order() <= b.order() ? b : a;
  if (other.contains(small)) return small;
  return subgroup_where(small, [&](const Permutation& x) { return other.contains(x); });
}

PermutationGroup cyclic_subgroup(const Permutation& x) { return PermutationGroup(x.degree(), {x}); }

PermutationGroup conjugate(const PermutationGroup& h, const Permutation& g) {
  std::vector<Permutation> gens;
  gens.reserve(h.generators().size());
  for (const auto& x : h.generators()) gens.push_back(conjugate(x, g));
  return PermutationGroup(h.degree(), std::move(gens));
}

PermutationGroup centralizer(const PermutationGroup& g, const Permutation& x) {
  if (x.degree() != g.degree()) throw InputError("degree mismatch in centralizer");
  return subgroup_where(g, [&](const Permutation& y) { return y * x == x * y; });
}

bool normalizes(const Permutation& g, const PermutationGroup& h) {
  return std::all_of(h.generators().begin(), h.generators().end(),
                     [&](const Permutation& x) { return h.contains(conjugate(x, g)); });
}

PermutationGroup normalizer(const PermutationGroup& g, const PermutationGroup& h) {
  if (!g.contains(h)) throw InputError("normalizer: H is not a subgroup of G");
  return subgroup_where(g, [&](const Permutation& y) { return normalizes(y, h); }, &h);
}

bool is_normal(const PermutationGroup& g, const PermutationGroup& n) {
  if (!g.contains(n)) return false;
  return std::all_of(g.generators().begin(), g.generators().end(),
                     [&](const Permutation& y) { return normalizes(y, n); });
}

bool is_p_element(const Permutation& x, std::uint64_t p) { return is_power_of(x.order(), p); }

bool is_p_group(const PermutationGroup& g, std::uint64_t p) { return is_power_of(g.size(), p); }

PermutationGroup sylow(const PermutationGroup& g, std::uint64_t p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not a prime");
  const std::uint64_t target = p_part(g.size(), p);
  PermutationGroup q = PermutationGroup::trivial(g.degree());
  while (q.size() < target) {
    bool grown = false;
    for (const auto& x : g.elements()) {
      if (q.contains(x) || !is_p_element(x, p) || !normalizes(x, q)) continue;
      q = join(q, std::vector<Permutation>{x});
      grown = true;
      break;
    }
    if (!grown) throw Error("sylow: normalizer ascent stalled");
  }
  return q;
}

PermutationGroup normal_closure(const PermutationGroup& g, const std::vector<Permutation>& elements) {
  PermutationGroup n(g.degree(), elements);
  std::vector<Permutation> pending = n.generators();
  for (std::size_t i = 0; i < pending.size(); ++i) {
    for (const auto& y : g.generators()) {
      Permutation c = conjugate(pending[i], y);
      if (n.contains(c)) continue;
      n = join(n, std::vector<Permutation>{c});
      pending.push_back(std::move(c));
    }
  }
  return n;
}

PermutationGroup residual(const PermutationGroup& g, std::uint64_t p, ResidualKind kind) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not a prime");
  if (kind == ResidualKind::kPPrime) return normal_closure(g, sylow(g, p).generators());
  std::vector<Permutation> gens;
  for (auto q : prime_divisors(g.size())) {
    if (q == p) continue;
    auto s = sylow(g, q);
    gens.insert(gens.end(), s.generators().begin(), s.generators().end());
  }
  return normal_closure(g, gens);
}

// ---------------------------------------------------------------------------
// Coset actions

struct CosetAction::Impl {
  PermutationGroup group;
  PermutationGroup subgroup;
  PermutationGroup image;
  std::vector<Permutation> transversal;
  std::unordered_map<Permutation, std::size_t, PermutationHash> coset;
};

CosetAction::CosetAction(const PermutationGroup& g, const PermutationGroup& h) {
  if (!g.contains(h)) throw InputError("coset action: H is not a subgroup of G");
  auto impl = std::make_shared<Impl>();
  impl->group = g;
  impl->subgroup = h;
  const auto& h_elems = h.elements();
  impl->coset.reserve(static_cast<std::size_t>(g.size()) * 2);
  auto add_coset = [&](const Permutation& t) {
    std::size_t idx = impl->transversal.size();
    impl->transversal.push_back(t);
    for (const auto& x : h_elems) impl->coset.emplace(x * t, idx);
  };
  add_coset(Permutation(g.degree()));
  for (std::size_t i = 0; i < impl->transversal.size(); ++i) {
    for (const auto& y : g.generators()) {
      Permutation t = impl->transversal[i] * y;
      if (!impl->coset.contains(t)) add_coset(t);
    }
  }
  const std::size_t index = impl->transversal.size();
  std::vector<Permutation> gens;
  for (const auto& y : g.generators()) {
    std::vector<Point> images(index);
    for (std::size_t i = 0; i < index; ++i) images[i] = static_cast<Point>(impl->coset.at(impl->transversal[i] * y));
    gens.push_back(Permutation::from_images(std::move(images)));
  }
  impl->image = PermutationGroup(index, std::move(gens));
  impl_ = std::move(impl);
}

const PermutationGroup& CosetAction::group() const { return impl_->group; }
const PermutationGroup& CosetAction::subgroup() const { return impl_->subgroup; }
const PermutationGroup& CosetAction::image() const { return impl_->image; }
const std::vector<Permutation>& CosetAction::transversal() const { return impl_->transversal; }

std::size_t CosetAction::coset_of(const Permutation& g) const {
  auto it = impl_->coset.find(g);
  if (it == impl_->coset.end()) throw InputError("element " + g.to_cycles() + " is not in the acting group");
  return it->second;
}

Permutation CosetAction::image_of(const Permutation& g) const {
  const std::size_t index = impl_->transversal.size();
  std::vector<Point> images(index);
  for (std::size_t i = 0; i < index; ++i) images[i] = static_cast<Point>(coset_of(impl_->transversal[i] * g));
  return Permutation::from_images(std::move(images));
}

std::vector<Permutation> right_transversal(const PermutationGroup& g, const PermutationGroup& h) {
  return CosetAction(g, h).transversal();
}

CosetAction coset_action(const PermutationGroup& g, const PermutationGroup& h) { return CosetAction(g, h); }

CosetAction quotient_group(const PermutationGroup& g, const PermutationGroup& n) {
  if (!is_normal(g, n)) throw InputError("quotient_group: N is not a normal subgroup of G");
  return CosetAction(g, n);
}

// ---------------------------------------------------------------------------
// Normal subgroup lattice

namespace {

constexpr std::size_t kMaxLatticeSize = 20000;

std::vector<std::size_t> indices_of(const NormalLattice::ClassSet& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) out.push_back(i);
  }
  return out;
}

bool is_subset(const NormalLattice::ClassSet& a, const NormalLattice::ClassSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

}  // namespace

struct NormalLattice::Impl {
  ConjugacyData classes;
  // product_support[i][j][k]: C_i C_j meets (hence contains) C_k
  std::vector<std::vector<ClassSet>> product_support;
  std::vector<ClassSet> members;

  explicit Impl(const ConjugacyData& c) : classes(c) {}

  std::uint64_t order_of(const ClassSet& s) const {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i]) n += classes.sizes()[i];
    }
    return n;
  }

  ClassSet closure(ClassSet s) const {
    s[0] = true;
    bool changed = true;
    while (changed) {
      changed = false;
      auto idx = indices_of(s);
      for (auto i : idx) {
        for (auto j : idx) {
          const auto& sup = product_support[i][j];
          for (std::size_t k = 0; k < sup.size(); ++k) {
            if (sup[k] && !s[k]) {
              s[k] = true;
              changed = true;
            }
          }
        }
      }
    }
    return s;
  }
};

NormalLattice::NormalLattice(const ConjugacyData& classes) {
  auto impl = std::make_shared<Impl>(classes);
  const std::size_t r = classes.class_count();
  const auto& elems = classes.group().elements();
  auto elem_class = classes.element_classes();
  impl->product_support.assign(r, std::vector<ClassSet>(r, ClassSet(r, false)));
  // Every element of C_i C_j is conjugate to rep_i * y for some y in C_j.
  for (std::size_t e = 0; e < elems.size(); ++e) {
    std::size_t j = elem_class[e];
    for (std::size_t i = 0; i < r; ++i) {
      impl->product_support[i][j][classes.class_of(classes.representatives()[i] * elems[e])] = true;
    }
  }

  std::set<ClassSet> seen;
  std::deque<ClassSet> queue;
  ClassSet trivial(r, false);
  trivial[0] = true;
  seen.insert(trivial);
  queue.push_back(trivial);
  while (!queue.empty()) {
    ClassSet cur = queue.front();
    queue.pop_front();
    for (std::size_t c = 0; c < r; ++c) {
      if (cur[c]) continue;
      ClassSet next = cur;
      next[c] = true;
      next = impl->closure(std::move(next));
      if (seen.insert(next).second) {
        if (seen.size() > kMaxLatticeSize) throw CapacityError("normal subgroup lattice too large");
        queue.push_back(std::move(next));
      }
    }
  }
  impl->members.assign(seen.begin(), seen.end());
  std::sort(impl->members.begin(), impl->members.end(), [&](const ClassSet& a, const ClassSet& b) {
    auto oa = impl->order_of(a), ob = impl->order_of(b);
    if (oa != ob) return oa < ob;
    return indices_of(a) < indices_of(b);
  });
  impl_ = std::move(impl);
}

const ConjugacyData& NormalLattice::classes() const { return impl_->classes; }
const std::vector<NormalLattice::ClassSet>& NormalLattice::members() const { return impl_->members; }
std::uint64_t NormalLattice::order_of(const ClassSet& s) const { return impl_->order_of(s); }
NormalLattice::ClassSet NormalLattice::closure(ClassSet s) const { return impl_->closure(std::move(s)); }

PermutationGroup NormalLattice::subgroup(const ClassSet& s) const {
  std::vector<Permutation> reps;
  for (auto i : indices_of(s)) {
    if (i != 0) reps.push_back(impl_->classes.representatives()[i]);
  }
  return normal_closure(impl_->classes.group(), reps);
}

NormalLattice::ClassSet NormalLattice::classes_of(const PermutationGroup& n) const {
  const auto& g = impl_->classes.group();
  if (n.degree() != g.degree() || !g.contains(n)) throw InputError("subgroup is not contained in the group");
  ClassSet s(impl_->classes.class_count(), false);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = n.contains(impl_->classes.representatives()[i]);
  if (order_of(s) != n.size()) throw InputError("subgroup is not normal in the group");
  return s;
}

std::vector<NormalLattice::ClassSet> NormalLattice::maximal_below(const ClassSet& k) const {
  std::vector<ClassSet> inside;
  for (const auto& m : impl_->members) {
    if (m != k && is_subset(m, k)) inside.push_back(m);
  }
  std::vector<ClassSet> maximal;
  for (const auto& m : inside) {
    bool is_max = std::none_of(inside.begin(), inside.end(),
                               [&](const ClassSet& o) { return o != m && is_subset(m, o); });
    if (is_max) maximal.push_back(m);
  }
  std::sort(maximal.begin(), maximal.end(), [&](const ClassSet& a, const ClassSet& b) {
    auto oa = order_of(a), ob = order_of(b);
    if (oa != ob) return oa > ob;
    return indices_of(a) < indices_of(b);
  });
  return maximal;
}

std::vector<NormalLattice::ClassSet> NormalLattice::minimal_nontrivial() const {
  std::vector<ClassSet> out;
  for (const auto& m : impl_->members) {
    if (order_of(m) == 1) continue;
    bool is_min = std::none_of(impl_->members.begin(), impl_->members.end(), [&](const ClassSet& o) {
      return o != m && order_of(o) > 1 && is_subset(o, m);
    });
    if (is_min) out.push_back(m);
  }
  return out;
}

std::vector<PermutationGroup> minimal_normal_subgroups(const PermutationGroup& g) {
  NormalLattice lattice{ConjugacyData(g)};
  std::vector<PermutationGroup> out;
  for (const auto& s : lattice.minimal_nontrivial()) out.push_back(lattice.subgroup(s));
  return out;
}

std::vector<PermutationGroup> chief_factors_below(const PermutationGroup& g, const PermutationGroup& k) {
  if (k.is_trivial()) throw InputError("chief_factor_below: K is trivial");
  if (!is_normal(g, k)) throw InputError("chief_factor_below: K is not normal in G");
  NormalLattice lattice{ConjugacyData(g)};
  std::vector<PermutationGroup> out;
  for (const auto& s : lattice.maximal_below(lattice.classes_of(k))) out.push_back(lattice.subgroup(s));
  return out;
}

PermutationGroup chief_factor_below(const PermutationGroup& g, const PermutationGroup& k) {
  return chief_factors_below(g, k).front();
}

std::vector<std::uint64_t> chief_factor_orders(const PermutationGroup& g) {
  NormalLattice lattice{ConjugacyData(g)};
  std::vector<std::uint64_t> out;
  NormalLattice::ClassSet cur = lattice.members().back();
  while (lattice.order_of(cur) > 1) {
    auto below = lattice.maximal_below(cur);
    out.push_back(lattice.order_of(cur) / lattice.order_of(below.front()));
    cur = below.front();
  }
  return out;
}

bool is_p_solvable(const PermutationGroup& g, std::uint64_t p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not a prime");
  for (auto f : chief_factor_orders(g)) {
    if (f % p != 0) continue;
    if (!is_power_of(f, p)) return false;
  }
  return true;
}

}  // namespace picky
