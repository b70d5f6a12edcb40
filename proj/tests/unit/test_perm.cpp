#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracle.hpp"
#include "picky/catalog.hpp"
#include "picky/conjugacy.hpp"
#include "picky/errors.hpp"
#include "picky/subgroups.hpp"

using namespace picky;

namespace {

Permutation cyc(std::size_t n, const char* text) { return Permutation::from_cycles(n, text); }

PermutationGroup gen(std::size_t n, std::initializer_list<const char*> cycles) {
  std::vector<Permutation> gens;
  for (const char* c : cycles) gens.push_back(cyc(n, c));
  return PermutationGroup(n, gens);
}

oracle::Elements brute(const PermutationGroup& g) { return oracle::closure(g.degree(), g.generators()); }

const std::vector<std::string> kSmallGroups = {"C1",  "C2", "C6",  "C12", "S3",      "S4",      "A4",    "A5",
                                               "D4",  "D5", "D10", "Q8",  "SL(2,3)", "GL(2,3)", "F20",   "F21",
                                               "3^1+2", "3^1+2:2", "prod:S3,C3"};

}  // namespace

TEST_CASE("permutation basics and cycle notation") {
  auto a = cyc(4, "(1,2,3)");
  auto b = cyc(4, "(1,2)");
  CHECK((a * b)[0] == b[a[0]]);
  CHECK(a.order() == 3);
  CHECK(a.pow(3).is_identity());
  CHECK(a.pow(-1) == a.inverse());
  CHECK(cyc(5, " ( 1 , 2 ) (3,4, 5) ").to_cycles() == "(1,2)(3,4,5)");
  CHECK(Permutation(3).to_cycles() == "()");
  CHECK(cyc(4, "(1,3)(2,4)").one_based() == std::vector<long long>{3, 4, 1, 2});
  CHECK_THROWS_AS(cyc(3, "(1,2"), CycleSyntaxError);
  CHECK_THROWS_AS(cyc(3, "(1,4)"), CycleSyntaxError);
  CHECK_THROWS_AS(cyc(3, "(1,1)"), CycleSyntaxError);
  CHECK_THROWS_AS(cyc(3, "1,2"), CycleSyntaxError);
  CHECK_THROWS_AS(Permutation::from_images({0, 0, 1}), InputError);
  std::vector<long long> bad{1, 5, 2};
  CHECK_THROWS_AS(Permutation::from_one_based(bad), InputError);
  CHECK_THROWS_AS(PermutationGroup(3, {Permutation(4)}), InputError);
}

TEST_CASE("group orders") {
  CHECK(gen(3, {"(1,2,3)", "(1,2)"}).size() == 6);
  CHECK(gen(4, {"(1,2,3,4)", "(1,2)"}).size() == 24);
  auto q8 = named_group("Q8");
  CHECK(q8.degree() == 8);
  CHECK(q8.size() == 8);
  CHECK(brute(q8).size() == 8);
  // The Q8 action is regular: every point stabilizer is trivial.
  for (const auto& g : q8.elements()) {
    if (!g.is_identity()) CHECK(g.first_moved() == 0);
  }
  const std::vector<std::pair<std::string, std::uint64_t>> expected = {
      {"C1", 1},     {"S6", 720},   {"A5", 60},     {"D20", 40},     {"SL(2,3)", 24}, {"GL(2,3)", 48},
      {"F20", 20},   {"F21", 21},   {"3^1+2", 27},  {"3^1+2:2", 54}, {"prod:S3,C7", 42}, {"prod:SL(2,3),C2", 48}};
  for (const auto& [name, order] : expected) {
    CAPTURE(name);
    CHECK(named_group(name).size() == order);
  }
  CHECK_THROWS_AS(named_group("S9"), UnknownGroupError);
  CHECK_THROWS_AS(named_group("Foo"), UnknownGroupError);
}

TEST_CASE("chain invariants and enumeration agree with closure") {
  for (const auto& name : kSmallGroups) {
    CAPTURE(name);
    auto g = named_group(name);
    auto sizes = g.transversal_sizes();
    std::uint64_t prod = std::accumulate(sizes.begin(), sizes.end(), std::uint64_t{1}, std::multiplies<>());
    CHECK(prod == g.size());
    for (const auto& x : g.generators()) CHECK(g.sift(x).is_identity());
    CHECK(g.elements() == brute(g));
  }
}

TEST_CASE("membership") {
  auto s3 = named_group("S3");
  CHECK(s3.contains(cyc(3, "(1,2)")));
  CHECK_FALSE(named_group("A4").contains(cyc(4, "(1,2)")));
  CHECK(gen(4, {"(1,2,3,4)"}).contains(cyc(4, "(1,3)(2,4)")));
  CHECK_THROWS_AS(s3.contains(cyc(4, "(1,2)")), InputError);
}

TEST_CASE("conjugacy classes match brute-force orbits") {
  auto s4 = named_group("S4");
  ConjugacyData s4c(s4);
  auto sizes = s4c.sizes();
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::uint64_t>{1, 3, 6, 6, 8});

  ConjugacyData slc(named_group("SL(2,3)"));
  sizes = slc.sizes();
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::uint64_t>{1, 1, 4, 4, 4, 4, 6});

  for (const auto& name : kSmallGroups) {
    CAPTURE(name);
    auto g = named_group(name);
    ConjugacyData cd(g);
    auto mine = cd.sizes();
    std::sort(mine.begin(), mine.end());
    CHECK(mine == oracle::sorted_class_sizes(brute(g)));
    CHECK(std::accumulate(cd.sizes().begin(), cd.sizes().end(), std::uint64_t{0}) == g.size());
    CHECK(cd.representatives()[0].is_identity());
    for (std::size_t k = 0; k < cd.class_count(); ++k) {
      CHECK(g.size() % cd.sizes()[k] == 0);
      CHECK(cd.inverse_class(cd.inverse_class(k)) == k);
      CHECK(cd.power_map(1)[k] == k);
      CHECK(cd.power_class(k, static_cast<long long>(cd.exponent())) == 0);
      CHECK(cd.class_of(cd.representatives()[k].inverse()) == cd.inverse_class(k));
      // The representative is the least element of its class.
      CHECK(cd.class_elements(k).front() == cd.representatives()[k]);
    }
  }
  auto c12 = named_group("C12");
  CHECK(ConjugacyData(c12).class_count() == 12);
}

TEST_CASE("centralizers and normalizers") {
  auto s4 = named_group("S4");
  auto c3 = cyclic_subgroup(cyc(4, "(1,2,3)"));
  auto n = normalizer(s4, c3);
  CHECK(n.size() == 6);
  CHECK(n.same_elements(gen(4, {"(1,2,3)", "(1,2)"})));
  CHECK(normalizer(s4, s4).same_elements(s4));
  CHECK(centralizer(s4, cyc(4, "(1,2)(3,4)")).size() == 8);
  CHECK_THROWS_AS(normalizer(named_group("A4"), cyclic_subgroup(cyc(4, "(1,2)"))), InputError);

  for (const auto& name : {"S4", "SL(2,3)", "D6", "F21", "3^1+2:2"}) {
    CAPTURE(name);
    auto g = named_group(name);
    auto elems = g.elements();
    for (std::size_t i = 0; i < elems.size(); i += 5) {
      auto h = cyclic_subgroup(elems[i]);
      oracle::Elements hv(h.elements().begin(), h.elements().end());
      CHECK(normalizer(g, h).elements() == oracle::normalizer(elems, hv));
      CHECK(centralizer(g, elems[i]).elements() == oracle::centralizer(elems, elems[i]));
    }
  }
}

TEST_CASE("Sylow subgroups") {
  auto s4 = named_group("S4");
  CHECK(sylow(s4, 3).size() == 3);
  CHECK(sylow(s4, 2).size() == 8);
  CHECK(sylow(named_group("C6"), 5).is_trivial());
  for (const auto& name : kSmallGroups) {
    auto g = named_group(name);
    for (auto p : prime_divisors(g.size())) {
      CAPTURE(name);
      CAPTURE(p);
      auto s = sylow(g, p);
      CHECK(s.size() == p_part(g.size(), p));
      CHECK(g.contains(s));
      CHECK(is_p_group(s, p));
      const auto& last = g.elements().back();
      CHECK(g.contains(conjugate(s, last)));
      CHECK(sylow(g, p).same_elements(s));
    }
  }
}

TEST_CASE("residuals") {
  auto sl = named_group("SL(2,3)");
  CHECK(residual(sl, 3, ResidualKind::kPPrime).same_elements(sl));
  auto q8 = residual(sl, 3, ResidualKind::kP);
  CHECK(q8.size() == 8);
  CHECK(is_p_group(q8, 2));
  CHECK(residual(residual(sl, 3, ResidualKind::kPPrime), 3, ResidualKind::kP).same_elements(q8));
  CHECK(residual(named_group("Q8"), 2, ResidualKind::kP).is_trivial());
  auto s3 = named_group("S3");
  CHECK(residual(s3, 2, ResidualKind::kPPrime).same_elements(s3));
  CHECK(residual(s3, 2, ResidualKind::kP).size() == 3);
  for (const auto& name : kSmallGroups) {
    auto g = named_group(name);
    for (auto p : prime_divisors(std::max<std::uint64_t>(g.size(), 2))) {
      CAPTURE(name);
      auto op = residual(g, p, ResidualKind::kP);
      CHECK(is_normal(g, op));
      CHECK(is_power_of(g.size() / op.size(), p));
      CHECK(residual(op, p, ResidualKind::kP).same_elements(op));
      auto opp = residual(g, p, ResidualKind::kPPrime);
      CHECK(p_part(g.size() / opp.size(), p) == 1);
    }
  }
}

TEST_CASE("coset actions and quotients") {
  auto s4 = named_group("S4");
  auto v4 = gen(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  auto q = quotient_group(s4, v4);
  CHECK(q.image().size() == 6);
  CHECK(ConjugacyData(q.image()).class_count() == 3);  // S3, not C6
  CHECK(quotient_group(s4, s4).image().is_trivial());
  auto sl = named_group("SL(2,3)");
  auto sq = quotient_group(sl, residual(sl, 3, ResidualKind::kP));
  CHECK(sq.image().size() == 3);
  CHECK_THROWS_AS(quotient_group(s4, cyclic_subgroup(cyc(4, "(1,2)"))), InputError);

  for (const auto& name : {"S4", "SL(2,3)", "D6", "3^1+2:2"}) {
    auto g = named_group(name);
    for (const auto& n : minimal_normal_subgroups(g)) {
      auto qa = quotient_group(g, n);
      CHECK(qa.image().size() * n.size() == g.size());
      for (const auto& a : g.generators()) {
        for (const auto& b : g.generators()) CHECK(qa.image_of(a * b) == qa.image_of(a) * qa.image_of(b));
      }
    }
    auto h = sylow(g, 2);
    auto ca = coset_action(g, h);
    CHECK(ca.transversal().size() == g.size() / h.size());
    CHECK(ca.transversal()[0].is_identity());
    for (std::size_t i = 0; i < ca.transversal().size(); ++i) CHECK(ca.coset_of(ca.transversal()[i]) == i);
  }
}

TEST_CASE("normal lattice matches subset enumeration") {
  for (const auto& name : {"S4", "SL(2,3)", "D4", "D6", "Q8", "C12", "F20", "3^1+2", "3^1+2:2", "GL(2,3)"}) {
    CAPTURE(name);
    auto g = named_group(name);
    ConjugacyData cd(g);
    NormalLattice lat(cd);
    auto expected = oracle::normal_subgroups(g.elements());
    REQUIRE(lat.members().size() == expected.size());
    std::vector<oracle::Elements> mine;
    for (const auto& m : lat.members()) mine.push_back(lat.subgroup(m).elements());
    std::sort(mine.begin(), mine.end());
    std::sort(expected.begin(), expected.end());
    CHECK(mine == expected);
  }
}

TEST_CASE("chief factors and p-solvability") {
  auto sl = named_group("SL(2,3)");
  auto q8 = residual(sl, 3, ResidualKind::kP);
  auto l = chief_factor_below(sl, q8);
  CHECK(l.size() == 2);
  auto s4 = named_group("S4");
  auto v4 = gen(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  CHECK(chief_factor_below(s4, v4).is_trivial());
  CHECK_THROWS_AS(chief_factor_below(s4, PermutationGroup::trivial(4)), InputError);
  CHECK(minimal_normal_subgroups(s4).size() == 1);

  CHECK(is_p_solvable(s4, 2));
  CHECK(is_p_solvable(s4, 3));
  auto a5 = named_group("A5");
  CHECK_FALSE(is_p_solvable(a5, 5));
  CHECK_FALSE(is_p_solvable(a5, 2));
  CHECK(is_p_solvable(a5, 7));

  for (const auto& name : kSmallGroups) {
    auto g = named_group(name);
    auto orders = chief_factor_orders(g);
    CHECK(std::accumulate(orders.begin(), orders.end(), std::uint64_t{1}, std::multiplies<>()) == g.size());
    for (auto p : prime_divisors(std::max<std::uint64_t>(g.size(), 2))) {
      if (!is_p_solvable(g, p)) continue;
      for (auto o : orders) CHECK((is_power_of(o, p) || o % p != 0));
    }
  }
}
