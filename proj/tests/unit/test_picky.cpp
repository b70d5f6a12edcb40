#include <doctest.h>

#include <algorithm>

#include "contexts.hpp"
#include "oracle.hpp"
#include "picky/catalog.hpp"
#include "picky/chartab.hpp"
#include "picky/errors.hpp"
#include "picky/picky.hpp"
#include "picky/subgroups.hpp"

using namespace picky;
using fixtures::cyc;

namespace {

const std::vector<const char*> kGroups = {"S3", "S4", "A4", "A5", "D4", "D6", "Q8", "SL(2,3)", "GL(2,3)",
                                          "F20", "F21", "3^1+2", "3^1+2:2", "prod:S3,C3", "C12"};

// Subgroups containing x used for heredity checks.
std::vector<PermutationGroup> overgroups_of(const PermutationGroup& g, const Permutation& x) {
  std::vector<PermutationGroup> out{g, cyclic_subgroup(x), centralizer(g, x), normalizer(g, cyclic_subgroup(x))};
  for (const auto& y : g.generators()) out.push_back(join(cyclic_subgroup(x), std::vector<Permutation>{y}));
  ConjugacyData cd(g);
  NormalLattice lattice(cd);
  for (const auto& s : lattice.members()) {
    auto n = lattice.subgroup(s);
    if (n.contains(x)) out.push_back(n);
  }
  return out;
}

}  // namespace

TEST_CASE("picky elements of S4") {
  auto s4 = named_group("S4");
  auto c = is_picky(s4, 3, cyc(4, "(1,2,3)"));
  CHECK(c.picky());
  CHECK(c.sylow.same_elements(cyclic_subgroup(cyc(4, "(1,2,3)"))));
  CHECK(c.normalizer.size() == 6);

  auto d = is_picky(s4, 2, cyc(4, "(1,2)(3,4)"));
  CHECK_FALSE(d.picky());
  CHECK(d.sylow_count_containing == 3);
  CHECK(d.sylow.contains(cyc(4, "(1,2)(3,4)")));
  CHECK(d.sylow.size() == 8);

  CHECK(is_picky(s4, 2, cyc(4, "(1,2)")).picky());
  CHECK(is_picky(s4, 2, cyc(4, "(1,2,3,4)")).picky());

  CHECK(is_picky(s4, 3, Permutation(4)).sylow_count_containing == 4);
  CHECK(is_picky(named_group("A4"), 2, Permutation(4)).picky());

  CHECK_THROWS_AS(is_picky(s4, 3, cyc(4, "(1,2)")), InputError);
  CHECK_THROWS_AS(is_picky(s4, 4, Permutation(4)), InputError);
  CHECK_THROWS_AS(is_picky(named_group("S3"), 3, cyc(4, "(1,4)")), InputError);
}

TEST_CASE("Sylow counts agree with enumeration of all Sylow subgroups") {
  for (const char* name : kGroups) {
    auto g = named_group(name);
    if (g.size() > 200) continue;
    auto elems = oracle::closure(g.degree(), g.generators());
    for (auto p : prime_divisors(g.size())) {
      auto one = sylow(g, p);
      auto one_elems = oracle::closure(g.degree(), one.generators());
      for (const auto& c : p_element_classes(g, p)) {
        CAPTURE(name);
        CAPTURE(p);
        CHECK(c.sylow_count_containing == oracle::sylows_containing(elems, one_elems, c.element));
        CHECK(c.sylow.contains(c.element));
        CHECK(c.sylow.size() == p_part(g.size(), p));
        CHECK(c.normalizer.same_elements(normalizer(g, c.sylow)));
      }
    }
  }
}

TEST_CASE("picky elements stay picky in subgroups") {
  for (const char* name : kGroups) {
    auto g = named_group(name);
    for (auto p : prime_divisors(g.size())) {
      for (const auto& c : p_element_classes(g, p)) {
        if (!c.picky()) continue;
        for (const auto& h : overgroups_of(g, c.element)) {
          CAPTURE(name);
          CHECK(is_picky(h, p, c.element).picky());
        }
      }
    }
  }
}

TEST_CASE("quotient pickiness") {
  auto sl = named_group("SL(2,3)");
  auto z = fixtures::center(sl);
  auto x = sylow(sl, 3).generators().front();
  CHECK(is_picky_in_quotient(sl, z, 3, x));
  CHECK(is_picky_in_quotient(sl, sl, 3, x));
  CHECK_THROWS_AS(is_picky_in_quotient(sl, sylow(sl, 3), 3, x), InputError);

  for (const char* name : kGroups) {
    auto g = named_group(name);
    ConjugacyData cd(g);
    NormalLattice lattice(cd);
    for (auto p : prime_divisors(g.size())) {
      for (const auto& c : p_element_classes(g, p)) {
        for (const auto& s : lattice.members()) {
          auto n = lattice.subgroup(s);
          CAPTURE(name);
          CAPTURE(p);
          CAPTURE(n.size());
          bool in_g = is_picky_in_quotient(g, n, p, c.element);
          auto q = quotient_group(g, n);
          CHECK(in_g == is_picky(q.image(), p, q.image_of(c.element)).picky());
          if (c.picky()) CHECK(in_g);
        }
      }
    }
  }
}

TEST_CASE("fusion control") {
  auto sl = named_group("SL(2,3)");
  auto q8 = residual(sl, 3, ResidualKind::kP);
  auto z = fixtures::center(sl);
  auto p3 = sylow(sl, 3);
  auto h = join(z, normalizer(sl, p3));
  auto x = p3.generators().front();
  auto r = fusion_control_check(sl, q8, z, h, x, 3);
  CHECK(r.no_outside_fusion);
  CHECK(r.fixed_points_inside);
  CHECK(r.equivalence_holds);
  CHECK(r.induced_values_match);
  // Independent: every linear character of C6 induces to a character with the same value at x.
  auto ht = character_table(h);
  auto gt = character_table(sl);
  for (std::size_t mu = 0; mu < ht->size(); ++mu) {
    CHECK(value_at(induce(ht->irreducible(mu), gt), x) == value_at(ht->irreducible(mu), x));
  }

  // H = G needs G/L to have a normal Sylow subgroup, so take L = K.
  auto whole = fusion_control_check(sl, q8, q8, sl, x, 3);
  CHECK(whole.equivalence_holds);
  CHECK(whole.no_outside_fusion);
  CHECK(whole.induced_values_match);
  CHECK_THROWS_AS(fusion_control_check(sl, q8, z, sl, x, 3), InputError);

  auto s4 = named_group("S4");
  auto v4 = fixtures::gen(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  auto s3 = fixtures::gen(4, {"(1,2,3)", "(1,2)"});
  auto r4 = fusion_control_check(s4, v4, PermutationGroup::trivial(4), s3, cyc(4, "(1,2,3)"), 3);
  CHECK(r4.fixed_points_inside);
  CHECK(r4.equivalence_holds);
  CHECK(r4.induced_values_match);

  // G != KH.
  CHECK_THROWS_AS(fusion_control_check(s4, v4, PermutationGroup::trivial(4), cyclic_subgroup(cyc(4, "(1,2,3)")),
                                       cyc(4, "(1,2,3)"), 3),
                  InputError);
}

TEST_CASE("fusion control iff on Sylow-normalizer configurations") {
  for (const char* name : kGroups) {
    auto g = named_group(name);
    for (auto p : prime_divisors(g.size())) {
      if (!is_p_solvable(g, p)) continue;
      auto k = residual(residual(g, p, ResidualKind::kPPrime), p, ResidualKind::kP);
      if (k.is_trivial()) continue;
      auto sp = sylow(g, p);
      for (const auto& l : chief_factors_below(g, k)) {
        auto h = join(l, normalizer(g, sp));
        for (const auto& c : p_element_classes(h, p)) {
          CAPTURE(name);
          CAPTURE(p);
          auto r = fusion_control_check(g, k, l, h, c.element, p);
          CHECK(r.equivalence_holds);
          CHECK(r.induced_values_match);
        }
      }
    }
  }
}

TEST_CASE("Sylow normalizer criterion") {
  auto s4 = named_group("S4");
  auto s3 = normalizer(s4, cyclic_subgroup(cyc(4, "(1,2,3)")));
  auto r = sylow_normalizer_criterion(s4, s3, 3, cyc(4, "(1,2,3)"));
  CHECK(r.value == Cyclotomic(1));
  CHECK(r.containment);

  auto id = sylow_normalizer_criterion(s4, s3, 3, Permutation(4));
  CHECK(id.value == Cyclotomic(4));
  CHECK_FALSE(id.containment);

  auto whole = sylow_normalizer_criterion(s4, s4, 2, cyc(4, "(1,2)(3,4)"));
  CHECK(whole.value == Cyclotomic(1));
  CHECK(whole.containment);

  // Both sides on many (G, H, x): the criterion throws on disagreement.
  for (const char* name : kGroups) {
    auto g = named_group(name);
    auto gt = character_table(g);
    for (auto p : prime_divisors(g.size())) {
      for (const auto& c : p_element_classes(g, p)) {
        for (const auto& h : overgroups_of(g, c.element)) {
          CAPTURE(name);
          SylowNormalizerResult res;
          REQUIRE_NOTHROW(res = sylow_normalizer_criterion(g, h, p, c.element));
          // Independent value: induce the trivial character with the table machinery.
          auto ht = character_table(h);
          CHECK(res.value == value_at(induce(ht->trivial(), gt), c.element));
        }
      }
    }
  }
}

TEST_CASE("certificate JSON") {
  auto c = is_picky(named_group("S4"), 3, cyc(4, "(1,2,3)"));
  auto j = certificate_to_json(c);
  CHECK(j["picky"] == true);
  CHECK(j["sylow_count_containing"] == 1);
  CHECK(j["element"] == std::vector<long long>{2, 3, 1, 4});
  CHECK(j["sylow"].size() == 1);
}
