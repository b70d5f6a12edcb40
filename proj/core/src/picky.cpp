#include "picky/picky.hpp"

#include "picky/chartab.hpp"
#include "picky/conjugacy.hpp"
#include "picky/errors.hpp"
#include "picky/glauberman.hpp"
#include "picky/subgroups.hpp"

namespace picky {

namespace {

void require_p_element(const PermutationGroup& g, std::uint64_t p, const Permutation& x) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (!g.contains(x)) throw InputError("element is not in the group");
  if (!is_power_of(x.order(), p)) throw InputError("element is not a p-element");
}

}  // namespace

PickyCertificate is_picky(const PermutationGroup& g, std::uint64_t p, const Permutation& x) {
  require_p_element(g, p, x);
  const PermutationGroup sp = sylow(g, p);
  const PermutationGroup np = normalizer(g, sp);
  PickyCertificate cert;
  cert.element = x;
  cert.prime = p;
  for (const auto& t : right_transversal(g, np)) {
    // x in P^t = t^-1 P t iff t x t^-1 in P.
    if (!sp.contains(t * x * t.inverse())) continue;
    if (cert.sylow_count_containing++ == 0) {
      cert.sylow = conjugate(sp, t);
      cert.normalizer = conjugate(np, t);
    }
  }
  if (cert.sylow_count_containing == 0) throw Error("p-element lies in no Sylow subgroup");
  return cert;
}

bool is_picky_in_quotient(const PermutationGroup& g, const PermutationGroup& n, std::uint64_t p, const Permutation& x) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (!is_normal(g, n)) throw InputError("N is not normal in G");
  if (!g.contains(x)) throw InputError("element is not in the group");
  if (!n.contains(x * p_part_of(x, p).inverse())) throw InputError("xN is not a p-element");
  const PermutationGroup m = join(sylow(g, p), n);
  std::uint64_t count = 0;
  for (const auto& t : right_transversal(g, normalizer(g, m))) {
    if (m.contains(t * x * t.inverse())) ++count;
  }
  return count == 1;
}

std::vector<PickyCertificate> p_element_classes(const PermutationGroup& g, std::uint64_t p) {
  if (!is_prime(p)) throw InputError("p must be prime");
  ConjugacyData cd(g);
  std::vector<PickyCertificate> out;
  for (std::size_t k = 0; k < cd.class_count(); ++k) {
    if (is_power_of(cd.element_orders()[k], p)) out.push_back(is_picky(g, p, cd.representatives()[k]));
  }
  return out;
}

FusionControlResult fusion_control_check(const PermutationGroup& g, const PermutationGroup& k,
                                         const PermutationGroup& l, const PermutationGroup& h, const Permutation& x,
                                         std::uint64_t p) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (!is_normal(g, k) || !is_normal(g, l) || !k.contains(l)) throw InputError("need L <= K, both normal in G");
  if (Integer(k.order() / l.order()) % p == 0) throw InputError("K/L is not a p'-group");
  if (!g.contains(h) || !h.contains(l)) throw InputError("need L <= H <= G");
  const PermutationGroup c = intersection(k, h);
  if (k.order() * h.order() != g.order() * c.order()) throw InputError("G is not KH");
  if (!is_normal(h, join(sylow(h, p), l))) throw InputError("H/L has no normal Sylow p-subgroup");
  if (!h.contains(x)) throw InputError("x is not in H");
  if (!l.contains(x * p_part_of(x, p).inverse())) throw InputError("xL is not a p-element");

  FusionControlResult r;
  const auto transversal = right_transversal(g, h);
  r.no_outside_fusion = true;
  // g = t^-1 h' runs over G \ H as t runs over the non-trivial cosets; x^g in H iff x^(t^-1) in H.
  for (std::size_t i = 1; i < transversal.size() && r.no_outside_fusion; ++i) {
    const Permutation& t = transversal[i];
    r.no_outside_fusion = !h.contains(t * x * t.inverse());
  }
  auto fixes = [&](const Permutation& y) { return l.contains(commutator(y, x)); };
  r.fixed_points_inside = c.contains(subgroup_where(k, fixes, &l));
  r.equivalence_holds = r.no_outside_fusion == r.fixed_points_inside;
  if (r.fixed_points_inside) {
    const TablePtr ht = character_table(h);
    std::vector<std::size_t> conj_classes;
    for (const auto& t : transversal) {
      if (auto cls = ht->classes().find_class(t * x * t.inverse())) conj_classes.push_back(*cls);
    }
    const std::size_t xc = ht->classes().class_of(x);
    for (std::size_t mu = 0; mu < ht->size() && r.induced_values_match; ++mu) {
      CyclotomicAccumulator acc;
      for (auto cls : conj_classes) acc.add(ht->value(mu, cls));
      r.induced_values_match = acc.result() == ht->value(mu, xc);
    }
  }
  return r;
}

SylowNormalizerResult sylow_normalizer_criterion(const PermutationGroup& g, const PermutationGroup& h,
                                                 std::uint64_t p, const Permutation& x) {
  if (!g.contains(h)) throw InputError("H is not a subgroup of G");
  require_p_element(h, p, x);
  SylowNormalizerResult r;
  std::uint64_t fixed = 0;
  for (const auto& t : right_transversal(g, h)) fixed += h.contains(t * x * t.inverse()) ? 1 : 0;
  r.value = Cyclotomic(static_cast<long long>(fixed));

  const PermutationGroup sp = sylow(g, p);
  const PermutationGroup np = normalizer(g, sp);
  r.containment = true;
  for (const auto& t : right_transversal(g, np)) {
    if (sp.contains(t * x * t.inverse()) && !h.contains(conjugate(np, t))) {
      r.containment = false;
      break;
    }
  }
  if ((fixed == 1) != r.containment) {
    throw TheoremViolation("(1_H)^G(x) = 1 disagrees with Sylow normalizer containment");
  }
  return r;
}

nlohmann::json generators_to_json(const PermutationGroup& g) {
  auto out = nlohmann::json::array();
  for (const auto& y : g.generators()) out.push_back(y.one_based());
  return out;
}

nlohmann::json certificate_to_json(const PickyCertificate& c) {
  return {{"element", c.element.one_based()},
          {"prime", c.prime},
          {"picky", c.picky()},
          {"sylow_count_containing", c.sylow_count_containing},
          {"sylow", generators_to_json(c.sylow)},
          {"normalizer", generators_to_json(c.normalizer)}};
}

}  // namespace picky
