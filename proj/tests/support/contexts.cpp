#include "contexts.hpp"

#include <algorithm>

#include "picky/catalog.hpp"
#include "picky/conjugacy.hpp"
#include "picky/subgroups.hpp"

namespace fixtures {

using namespace picky;

Permutation cyc(std::size_t n, const char* text) { return Permutation::from_cycles(n, text); }

PermutationGroup gen(std::size_t n, std::initializer_list<const char*> cycles) {
  std::vector<Permutation> gens;
  for (const char* c : cycles) gens.push_back(cyc(n, c));
  return PermutationGroup(n, gens);
}

PermutationGroup center(const PermutationGroup& g) {
  return subgroup_where(g, [&](const Permutation& x) {
    return std::all_of(g.generators().begin(), g.generators().end(),
                       [&](const Permutation& y) { return x * y == y * x; });
  });
}

ContextSpec sl23_context() {
  auto sl = named_group("SL(2,3)");
  auto q8 = residual(sl, 3, ResidualKind::kP);
  return {"SL(2,3): Q8 / Z / C3", sl, q8, center(q8), sylow(sl, 3), 3};
}

ContextSpec c7c5_context() {
  // Points 1..7 carry Z/7 (point i+1 is residue i); y: i -> 2i. Points 8..12 carry C5.
  auto k = gen(12, {"(1,2,3,4,5,6,7)", "(8,9,10,11,12)"});
  auto y = cyc(12, "(2,3,5)(4,7,6)");
  auto ambient = PermutationGroup(12, {k.generators()[0], k.generators()[1], y});
  return {"C7 x C5 with C3", ambient, k, PermutationGroup::trivial(12), cyclic_subgroup(y), 3};
}

ContextSpec v4_context() {
  auto a4 = named_group("A4");
  auto v4 = residual(a4, 3, ResidualKind::kP);
  return {"A4: V4 / 1 / C3", a4, v4, PermutationGroup::trivial(a4.degree()), sylow(a4, 3), 3};
}

std::vector<ContextSpec> corpus_contexts() {
  std::vector<ContextSpec> out{sl23_context(), c7c5_context(), v4_context()};
  for (const char* name : {"S3", "S4", "A4", "D5", "Q8", "SL(2,3)", "GL(2,3)", "F20", "F21", "3^1+2:2", "prod:S3,C3"}) {
    auto g = named_group(name);
    ConjugacyData cd(g);
    NormalLattice lattice(cd);
    std::vector<PermutationGroup> normals;
    for (const auto& s : lattice.members()) normals.push_back(lattice.subgroup(s));
    for (auto p : prime_divisors(g.size())) {
      auto sp = sylow(g, p);
      for (const auto& k : normals) {
        if (k.is_trivial()) continue;
        for (const auto& n : normals) {
          if (!k.contains(n) || (k.size() / n.size()) % p == 0) continue;
          out.push_back({std::string(name) + " p=" + std::to_string(p) + " |K|=" + std::to_string(k.size()) +
                             " |N|=" + std::to_string(n.size()),
                         g, k, n, sp, p});
        }
      }
    }
  }
  return out;
}

}  // namespace fixtures
