#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "contexts.hpp"
#include "oracle.hpp"
#include "picky/catalog.hpp"
#include "picky/errors.hpp"
#include "picky/subgroups.hpp"
#include "picky/verify.hpp"

using namespace picky;
using fixtures::cyc;

namespace {

// |Irr^x| from the floating-point Burnside table.
std::size_t numeric_irr_x(const PermutationGroup& g, const Permutation& x) {
  auto elems = oracle::closure(g.degree(), g.generators());
  auto t = oracle::burnside_table(elems);
  auto xi = oracle::index_of(elems, x);
  std::size_t k = 0;
  while (!std::binary_search(t.classes[k].begin(), t.classes[k].end(), xi)) ++k;
  std::size_t count = 0;
  for (const auto& row : t.rows) count += std::abs(row[k]) > 1e-6 ? 1 : 0;
  return count;
}

Permutation order_three_element(const PermutationGroup& g) { return sylow(g, 3).generators().front(); }

}  // namespace

TEST_CASE("irr_x") {
  auto s4 = named_group("S4");
  auto t = character_table(s4);
  CHECK(irr_x(*t, Permutation(4)).size() == t->size());
  auto x = cyc(4, "(1,2,3)");
  auto ix = irr_x(*t, x);
  REQUIRE(ix.size() == 3);
  CHECK(ix.size() == numeric_irr_x(s4, x));
  auto keys = match_keys(*t, ix, x, 3);
  std::vector<Cyclotomic> values;
  for (const auto& k : keys) values.push_back(k.value);
  std::sort(values.begin(), values.end(), canonical_less);
  CHECK(std::count(values.begin(), values.end(), Cyclotomic(1)) == 2);
  CHECK(std::count(values.begin(), values.end(), Cyclotomic(-1)) == 1);

  auto sl = named_group("SL(2,3)");
  auto y = order_three_element(sl);
  CHECK(irr_x(*character_table(sl), y).size() == 6);
  CHECK(numeric_irr_x(sl, y) == 6);
}

TEST_CASE("modes") {
  CHECK(parse_mode("global") == Mode::kGlobal);
  CHECK(parse_mode("perchar") == Mode::kPerChar);
  CHECK(parse_mode("blockwise") == Mode::kBlockwise);
  CHECK(parse_mode("all") == Mode::kAll);
  CHECK_THROWS_AS(parse_mode("both"), InputError);
  CHECK(mode_name(Mode::kPerChar) == "perchar");
}

TEST_CASE("S4 at p = 3") {
  auto s4 = named_group("S4");
  auto r = check_theorem_A(s4, 3, cyc(4, "(1,2,3)"));
  CHECK(r.irr_x_group == 3);
  CHECK(r.irr_x_normalizer == 3);
  CHECK(r.global_signs == std::vector<int>{1});
  CHECK(r.per_char_exists);
  CHECK_FALSE(r.sign_discrepancy);
  CHECK(r.violations.empty());
  CHECK(r.blockwise.computed);
  CHECK(r.blockwise.k_order == 4);
  CHECK(report_exit_code(r) == 0);
  std::vector<std::uint64_t> deg;
  for (const auto& k : r.group_keys) deg.push_back(k.degree_p_part);
  CHECK(deg == std::vector<std::uint64_t>{1, 1, 1});
}

TEST_CASE("normal Sylow subgroup gives the identity bijection") {
  auto c6 = named_group("C6");
  auto x = order_three_element(c6);
  auto r = check_theorem_A(c6, 3, x);
  CHECK(r.sylow_normal);
  CHECK(r.global_signs == std::vector<int>{1});
  CHECK(r.per_char_exists);
  CHECK_FALSE(r.blockwise.computed);
  CHECK(r.violations.empty());
}

TEST_CASE("SL(2,3) at p = 3") {
  auto sl = named_group("SL(2,3)");
  auto x = order_three_element(sl);
  auto r = check_theorem_A(sl, 3, x);
  CHECK(r.irr_x_group == 6);
  CHECK(r.irr_x_normalizer == 6);
  CHECK(r.per_char_exists);
  CHECK(r.violations.empty());
  // Group side {1, w, w^2, -1, -w, -w^2}; normalizer side {1, w, w^2} twice.
  CHECK(r.global_signs.empty());
  CHECK(r.sign_discrepancy);
  std::vector<int> expected_signs{-1, -1, -1, 1, 1, 1};
  CHECK(r.per_char_signs == expected_signs);

  const auto& bw = r.blockwise;
  CHECK(bw.k_order == 8);
  CHECK(bw.l_orders == std::vector<std::uint64_t>{2});
  CHECK(bw.h_orders == std::vector<std::uint64_t>{6});
  CHECK(bw.decomposition_ok);
  REQUIRE(bw.blocks.size() == 2);
  const auto& trivial = bw.blocks[0];
  const auto& theta2 = bw.blocks[1];
  CHECK(trivial.theta == 0);
  CHECK(trivial.predicted_sign == 1);
  CHECK(trivial.e == 1);
  CHECK(trivial.g_slice.size() == 3);
  CHECK(trivial.h_slice.size() == 3);
  CHECK(trivial.matches_predicted);
  CHECK(theta2.e == 2);
  CHECK(theta2.predicted_sign == -1);
  CHECK(theta2.realized_signs == std::vector<int>{-1});
  CHECK(theta2.g_slice.size() == 3);
  CHECK(theta2.matches_predicted);
  CHECK(theta2.theta_invariant_in_g);
  auto gt = character_table(sl);
  for (auto chi : theta2.g_slice) CHECK(gt->degree(chi) == 2);

  auto j = report_to_json(r);
  CHECK(j["sign_discrepancy"] == true);
  CHECK(j["global_sign"]["exists"] == false);
  CHECK_FALSE(j.contains("seconds"));
  CHECK(report_to_json(r, true).contains("seconds"));
}

TEST_CASE("mode selection") {
  auto sl = named_group("SL(2,3)");
  auto x = order_three_element(sl);
  auto g = check_theorem_A(sl, 3, x, {Mode::kGlobal, false, false, "SL(2,3)"});
  CHECK(g.global_checked);
  CHECK_FALSE(g.per_char_checked);
  CHECK_FALSE(g.blockwise.computed);
  CHECK_FALSE(g.sign_discrepancy);
  auto b = check_theorem_A(sl, 3, x, {Mode::kBlockwise, false, false, "SL(2,3)"});
  CHECK_FALSE(b.global_checked);
  CHECK(b.blockwise.computed);
  auto j = report_to_json(b);
  CHECK(j["group"] == "SL(2,3)");
  CHECK_FALSE(j.contains("global_sign"));
}

TEST_CASE("preconditions") {
  auto s4 = named_group("S4");
  CHECK_THROWS_AS(check_theorem_A(s4, 2, cyc(4, "(1,2)")), InputError);
  CHECK_THROWS_AS(check_theorem_A(s4, 3, cyc(4, "(1,2)")), InputError);
  CHECK_THROWS_AS(check_theorem_A(s4, 4, Permutation(4)), InputError);
  // (1,2)(3,4) lies in three Sylow 2-subgroups.
  CHECK_THROWS_AS(check_theorem_A(s4, 2, cyc(4, "(1,2)(3,4)"), {Mode::kAll, true, false, ""}), InputError);
  // A5 is not 3-solvable.
  CHECK_THROWS_AS(check_theorem_A(named_group("A5"), 3, cyc(5, "(1,2,3)")), InputError);

  auto r = check_theorem_A(s4, 2, cyc(4, "(1,2)"), {Mode::kAll, true, false, "S4"});
  CHECK(r.exploratory);
  CHECK(report_exit_code(r) == 0);
  CHECK(report_to_json(r).contains("exploratory_failures"));
}

TEST_CASE("picky-element bijection properties across the corpus") {
  for (const auto& name : catalog_names()) {
    auto g = named_group(name);
    if (g.size() > 200) continue;
    for (auto p : prime_divisors(g.size())) {
      if (p == 2 || !is_p_solvable(g, p)) continue;
      for (const auto& c : p_element_classes(g, p)) {
        if (!c.picky()) continue;
        CAPTURE(name);
        CAPTURE(p);
        CAPTURE(c.element.to_cycles());
        CheckOptions opts;
        opts.all_chief_factors = true;
        auto r = check_theorem_A(g, p, c.element, opts);
        CHECK(r.violations.empty());
        CHECK(r.sizes_match);
        CHECK(r.degree_parts_match);
        CHECK(r.per_char_exists);
        if (!r.global_signs.empty()) CHECK(r.per_char_exists);
        CHECK(r.blockwise.decomposition_ok);
        for (const auto& b : r.blockwise.blocks) {
          CHECK(b.matches_predicted);
          CHECK(b.sizes_match);
          CHECK(b.degree_parts_match);
        }
        CHECK(report_to_json(check_theorem_A(g, p, c.element, opts)) == report_to_json(r));
      }
    }
  }
}

TEST_CASE("invariant constituents below characters of Irr^x") {
  auto sl = named_group("SL(2,3)");
  auto x = order_three_element(sl);
  auto gt = character_table(sl);
  auto q8 = residual(sl, 3, ResidualKind::kP);
  auto q8t = character_table(q8);
  for (auto chi : irr_x(*gt, x)) {
    auto whole = invariant_constituent_structure(sl, sl, 3, x, chi);
    CHECK(whole.thetas == std::vector<std::size_t>{chi});
    auto s = invariant_constituent_structure(sl, q8, 3, x, chi);
    REQUIRE(s.thetas.size() == 1);
    CHECK(s.single_orbit);
    CHECK(q8t->degree(s.thetas[0]) == gt->degree(chi));
  }
  // The degree-3 character vanishes at x.
  std::size_t deg3 = 0;
  while (gt->degree(deg3) != 3) ++deg3;
  CHECK_THROWS_AS(invariant_constituent_structure(sl, q8, 3, x, deg3), InputError);

  auto s4 = named_group("S4");
  auto s4t = character_table(s4);
  auto v4 = fixtures::gen(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  std::size_t deg2 = 0;
  while (s4t->degree(deg2) != 2) ++deg2;
  auto s = invariant_constituent_structure(s4, v4, 3, cyc(4, "(1,2,3)"), deg2);
  CHECK(s.thetas == std::vector<std::size_t>{0});

  // Every normal subgroup of every listed group, every chi in Irr^x.
  for (const char* name : {"S4", "SL(2,3)", "GL(2,3)", "F21", "F20", "3^1+2:2", "prod:S3,C3"}) {
    auto g = named_group(name);
    auto t = character_table(g);
    ConjugacyData cd(g);
    NormalLattice lattice(cd);
    for (auto p : prime_divisors(g.size())) {
      for (const auto& c : p_element_classes(g, p)) {
        if (!c.picky()) continue;
        for (const auto& m : lattice.members()) {
          auto n = lattice.subgroup(m);
          for (auto chi : irr_x(*t, c.element)) {
            CAPTURE(name);
            REQUIRE_NOTHROW(invariant_constituent_structure(g, n, p, c.element, chi));
          }
        }
      }
    }
  }
}

TEST_CASE("single block instances") {
  auto sl = named_group("SL(2,3)");
  auto x = order_three_element(sl);
  auto q8 = residual(sl, 3, ResidualKind::kP);
  auto z = fixtures::center(sl);
  auto q8t = character_table(q8);
  std::size_t theta2 = 0;
  while (q8t->degree(theta2) != 2) ++theta2;
  auto b = blockwise_instance_check(sl, q8, z, 3, x, theta2);
  CHECK(b.predicted_sign == -1);
  CHECK(b.matches_predicted);
  CHECK(b.g_block.size() == b.h_block.size());

  // K = L = 1 in S3 at p = 3: one block, the full tables of G = N_G(P).
  auto s3 = named_group("S3");
  auto triv = PermutationGroup::trivial(s3.degree());
  auto d = blockwise_instance_check(s3, triv, triv, 3, order_three_element(s3), 0);
  CHECK(d.g_block.size() == 3);
  CHECK(d.sizes_match);
  CHECK(d.matches_predicted);

  // K/L not a p'-group.
  CHECK_THROWS_AS(blockwise_instance_check(sl, sl, z, 3, x, 0), InputError);
}
