#include "picky/glauberman.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "picky/errors.hpp"
#include "picky/subgroups.hpp"

namespace picky {

namespace {

std::vector<long long> integer_multiplicities(const ClassFunction& f) {
  std::vector<long long> out;
  for (const auto& q : decompose(f)) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw Error("multiplicity is not a machine integer");
    out.push_back(q.get_num().get_si());
  }
  return out;
}

ClassFunction from_multiplicities(const TablePtr& t, const std::vector<long long>& m) {
  std::vector<Rational> q;
  q.reserve(m.size());
  for (auto v : m) q.emplace_back(static_cast<long>(v));
  return compose(t, q);
}

bool contains_index(const std::vector<std::size_t>& sorted, std::size_t i) {
  return std::binary_search(sorted.begin(), sorted.end(), i);
}

bool is_plus_minus_one(long long v, std::uint64_t p) {
  const auto pp = static_cast<long long>(p);
  const long long r = ((v % pp) + pp) % pp;
  return r == 1 || r == pp - 1;
}

std::string describe(const char* what, std::size_t theta, std::uint64_t p) {
  std::ostringstream os;
  os << what << " (theta = " << theta << ", p = " << p << ")";
  return os.str();
}

}  // namespace

std::vector<std::size_t> invariant_irreducibles(const CharacterTable& k, const PermutationGroup& actor,
                                                const PermutationGroup& ambient) {
  if (!ambient.contains(actor) || !ambient.contains(k.group())) {
    throw InputError("actor and target must lie in the ambient group");
  }
  std::vector<bool> fixed(k.size(), true);
  for (const auto& y : actor.generators()) {
    if (!normalizes(y, k.group())) throw InputError("actor does not normalize the target");
    auto pi = irreducible_action(k, y);
    for (std::size_t i = 0; i < pi.size(); ++i) fixed[i] = fixed[i] && pi[i] == i;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (fixed[i]) out.push_back(i);
  }
  return out;
}

CoprimeActionContext CoprimeActionContext::make(const PermutationGroup& ambient, const PermutationGroup& k,
                                                const PermutationGroup& n, const PermutationGroup& p_group,
                                                std::uint64_t p) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (!ambient.contains(k) || !ambient.contains(n) || !ambient.contains(p_group)) {
    throw InputError("K, N and P must be subgroups of the ambient group");
  }
  if (!is_normal(k, n)) throw InputError("N is not normal in K");
  if (!is_p_group(p_group, p)) throw InputError("actor is not a p-group");
  for (const auto& y : p_group.generators()) {
    if (!normalizes(y, k) || !normalizes(y, n)) throw InputError("actor does not normalize K and N");
  }
  if (Integer(k.order() / n.order()) % p == 0) throw InputError("p divides |K:N|");

  CoprimeActionContext ctx;
  ctx.ambient = ambient;
  ctx.target = k;
  ctx.kernel_sub = n;
  ctx.actor = p_group;
  ctx.prime = p;
  auto centralized = [&](const Permutation& g) {
    return std::all_of(p_group.generators().begin(), p_group.generators().end(),
                       [&](const Permutation& y) { return n.contains(commutator(g, y)); });
  };
  ctx.fixed_sub = subgroup_where(k, centralized, &n);
  for (const auto& g : k.elements()) {
    if (centralized(g) != ctx.fixed_sub.contains(g)) throw Error("fixed-point subgroup is not closed");
  }

  ctx.target_table = character_table(k);
  ctx.kernel_table = character_table(n);
  ctx.fixed_table = character_table(ctx.fixed_sub);
  ctx.target_invariant = invariant_irreducibles(*ctx.target_table, p_group, ambient);
  ctx.kernel_invariant = invariant_irreducibles(*ctx.kernel_table, p_group, ambient);
  ctx.fixed_invariant = invariant_irreducibles(*ctx.fixed_table, p_group, ambient);
  for (std::size_t i = 0; i < ctx.fixed_table->size(); ++i) {
    auto m = integer_multiplicities(restrict(ctx.fixed_table->irreducible(i), ctx.kernel_table));
    bool over = false;
    for (std::size_t j = 0; j < m.size() && !over; ++j) over = m[j] != 0 && contains_index(ctx.kernel_invariant, j);
    ctx.fixed_over_invariant.push_back(over);
  }
  return ctx;
}

GlaubermanWitness relative_glauberman(const CoprimeActionContext& ctx, std::size_t theta) {
  const auto& kt = ctx.target_table;
  const auto& ct = ctx.fixed_table;
  const std::uint64_t p = ctx.prime;
  const auto pp = static_cast<long long>(p);
  if (theta >= kt->size()) throw InputError("character index out of range");
  if (!contains_index(ctx.target_invariant, theta)) throw InputError("theta is not invariant under the actor");

  const ClassFunction res = restrict(kt->irreducible(theta), ct);
  const auto m = integer_multiplicities(res);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0 || !ctx.fixed_over_invariant[i]) continue;
    // A constituent over an invariant character of N is itself invariant, as C/N is centralized.
    if (!contains_index(ctx.fixed_invariant, i)) {
      throw TheoremViolation(describe("constituent over an invariant character is not invariant", theta, p));
    }
    if (m[i] % pp != 0) candidates.push_back(i);
  }
  if (candidates.size() != 1) {
    throw TheoremViolation(describe(candidates.empty() ? "no correspondent candidate" : "several correspondent candidates",
                                    theta, p));
  }

  GlaubermanWitness w;
  w.theta = theta;
  w.phi = candidates.front();
  w.e = m[w.phi];
  w.delta_mult.assign(m.size(), 0);
  w.xi_mult.assign(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == w.phi) continue;
    if (ctx.fixed_over_invariant[i]) {
      w.delta_mult[i] = m[i] / pp;
    } else {
      w.xi_mult[i] = m[i];
    }
  }
  w.delta = from_multiplicities(ct, w.delta_mult);
  w.xi = from_multiplicities(ct, w.xi_mult);
  const ClassFunction phi = ct->irreducible(w.phi);
  if (!(res == Cyclotomic(w.e) * phi + Cyclotomic(pp) * w.delta + w.xi)) {
    throw TheoremViolation(describe("restriction identity fails", theta, p));
  }
  if (!is_plus_minus_one(w.e, p)) throw TheoremViolation(describe("e is not +-1 mod p", theta, p));

  const ClassFunction ind = induce(phi, kt);
  const auto mk = integer_multiplicities(ind);
  w.dual_d = mk[theta];
  w.psi_mult.assign(mk.size(), 0);
  w.rho_mult.assign(mk.size(), 0);
  for (std::size_t j = 0; j < mk.size(); ++j) {
    if (j == theta) continue;
    if (contains_index(ctx.target_invariant, j)) {
      if (mk[j] % pp != 0) throw TheoremViolation(describe("invariant constituent of phi^K has multiplicity prime to p", theta, p));
      w.psi_mult[j] = mk[j] / pp;
    } else {
      w.rho_mult[j] = mk[j];
    }
  }
  w.dual_psi = from_multiplicities(kt, w.psi_mult);
  w.dual_rho = from_multiplicities(kt, w.rho_mult);
  if (!(ind == Cyclotomic(w.dual_d) * kt->irreducible(theta) + Cyclotomic(pp) * w.dual_psi + w.dual_rho)) {
    throw TheoremViolation(describe("induction identity fails", theta, p));
  }
  if (!is_plus_minus_one(w.dual_d, p)) throw TheoremViolation(describe("d is not +-1 mod p", theta, p));
  return w;
}

std::vector<GlaubermanWitness> correspondence_map(const CoprimeActionContext& ctx) {
  std::vector<GlaubermanWitness> out;
  std::set<std::size_t> image;
  for (auto theta : ctx.target_invariant) {
    out.push_back(relative_glauberman(ctx, theta));
    if (!image.insert(out.back().phi).second) {
      throw TheoremViolation(describe("correspondence is not injective", theta, ctx.prime));
    }
  }
  std::set<std::size_t> expected;
  for (std::size_t i = 0; i < ctx.fixed_over_invariant.size(); ++i) {
    if (ctx.fixed_over_invariant[i]) expected.insert(i);
  }
  if (image != expected) throw TheoremViolation("correspondence is not surjective (p = " + std::to_string(ctx.prime) + ")");
  return out;
}

Permutation p_part_of(const Permutation& x, std::uint64_t p) {
  const std::uint64_t o = x.order();
  const std::uint64_t pa = p_part(o, p);
  if (pa == 1) return Permutation(x.degree());
  const std::uint64_t rest = o / pa;
  const std::uint64_t m = rest * inverse_mod(rest % pa, pa);
  return x.pow(static_cast<long long>(m % o));
}

bool stabilizer_transfer_check(const PermutationGroup& g, const PermutationGroup& k, const PermutationGroup& l,
                               const PermutationGroup& h, const PermutationGroup& c, const Permutation& x,
                               std::uint64_t p, std::size_t theta) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (!is_normal(g, k) || !is_normal(g, l) || !k.contains(l)) throw InputError("need L <= K, both normal in G");
  if (Integer(k.order() / l.order()) % p == 0) throw InputError("K/L is not a p'-group");
  if (!g.contains(h)) throw InputError("H is not a subgroup of G");
  const PermutationGroup sp = sylow(h, p);
  if (sp.size() != p_part(g.size(), p)) throw InputError("H does not contain a Sylow p-subgroup of G");
  if (!is_normal(g, join(sp, k))) throw InputError("PK is not normal in G");
  if (!h.same_elements(join(l, normalizer(g, sp)))) throw InputError("H is not L N_G(P)");
  if (!c.same_elements(intersection(k, h))) throw InputError("C is not K n H");
  if (!h.contains(x)) throw InputError("x is not in H");
  const Permutation xp = p_part_of(x, p);
  if (!l.contains(x * xp.inverse())) throw InputError("xL is not a p-element");
  auto fixes = [&](const Permutation& y) { return l.contains(commutator(y, x)); };
  if (!c.same_elements(subgroup_where(k, fixes, &l))) throw InputError("C_{K/L}(x) differs from C/L");

  auto ctx = CoprimeActionContext::make(g, k, l, cyclic_subgroup(xp), p);
  auto w = relative_glauberman(ctx, theta);
  auto h_theta = stabilizer_of_character(h, ctx.target_table->irreducible(w.theta));
  auto h_phi = stabilizer_of_character(h, ctx.fixed_table->irreducible(w.phi));
  return h_theta.same_elements(h_phi);
}

bool coprime_constituent_check(const CoprimeActionContext& ctx) {
  const auto& nt = *ctx.kernel_table;
  std::vector<std::vector<std::size_t>> action;
  for (const auto& y : ctx.fixed_sub.generators()) action.push_back(irreducible_action(nt, y));
  for (auto chi : ctx.target_invariant) {
    auto m = integer_multiplicities(restrict(ctx.target_table->irreducible(chi), ctx.kernel_table));
    std::set<std::size_t> inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0 && contains_index(ctx.kernel_invariant, i)) inv.insert(i);
    }
    if (inv.empty()) return false;
    std::set<std::size_t> orbit{*inv.begin()};
    std::vector<std::size_t> todo{*inv.begin()};
    while (!todo.empty()) {
      auto i = todo.back();
      todo.pop_back();
      for (const auto& pi : action) {
        if (orbit.insert(pi[i]).second) todo.push_back(pi[i]);
      }
    }
    if (orbit != inv) return false;
  }
  return true;
}

bool coprime_induction_check(const CoprimeActionContext& ctx) {
  for (auto theta : ctx.kernel_invariant) {
    auto m = integer_multiplicities(induce(ctx.kernel_table->irreducible(theta), ctx.target_table));
    bool found = false;
    for (std::size_t i = 0; i < m.size() && !found; ++i) found = m[i] != 0 && contains_index(ctx.target_invariant, i);
    if (!found) return false;
  }
  return true;
}

nlohmann::json witness_to_json(const GlaubermanWitness& w) {
  return {{"theta", w.theta}, {"phi", w.phi},        {"e", w.e},     {"dual_d", w.dual_d},
          {"delta", w.delta_mult}, {"xi", w.xi_mult}, {"psi", w.psi_mult}, {"rho", w.rho_mult}};
}

}  // namespace picky
