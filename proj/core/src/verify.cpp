#include "picky/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>

#include "picky/errors.hpp"
#include "picky/glauberman.hpp"
#include "picky/subgroups.hpp"

namespace picky {

bool key_less(const MatchKey& a, const MatchKey& b) {
  if (a.degree_p_part != b.degree_p_part) return a.degree_p_part < b.degree_p_part;
  return canonical_less(a.value, b.value);
}

std::vector<MatchKey> match_keys(const CharacterTable& t, const std::vector<std::size_t>& chars, const Permutation& x,
                                 std::uint64_t p, int sign) {
  const std::size_t xc = t.classes().class_of(x);
  std::vector<MatchKey> out;
  for (auto chi : chars) {
    Cyclotomic v = t.value(chi, xc);
    out.push_back({p_part(t.degree(chi), p), sign < 0 ? -v : v});
  }
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

std::vector<std::size_t> irr_x(const CharacterTable& t, const Permutation& x) {
  const std::size_t xc = t.classes().class_of(x);
  std::vector<std::size_t> out;
  for (std::size_t chi = 0; chi < t.size(); ++chi) {
    if (!t.value(chi, xc).is_zero()) out.push_back(chi);
  }
  return out;
}

Mode parse_mode(const std::string& s) {
  if (s == "global") return Mode::kGlobal;
  if (s == "perchar") return Mode::kPerChar;
  if (s == "blockwise") return Mode::kBlockwise;
  if (s == "all") return Mode::kAll;
  throw InputError("unknown mode '" + s + "' (expected global, perchar, blockwise or all)");
}

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::kGlobal:
      return "global";
    case Mode::kPerChar:
      return "perchar";
    case Mode::kBlockwise:
      return "blockwise";
    case Mode::kAll:
      return "all";
  }
  return "all";
}

namespace {

std::vector<std::size_t> intersect_sorted(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::uint64_t> degree_parts(const CharacterTable& t, const std::vector<std::size_t>& chars,
                                        std::uint64_t p) {
  std::vector<std::uint64_t> out;
  for (auto chi : chars) out.push_back(p_part(t.degree(chi), p));
  std::sort(out.begin(), out.end());
  return out;
}

// Maximum bipartite matching by augmenting paths; returns match[right] = left or -1.
std::vector<int> max_matching(std::size_t left, std::size_t right, const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<int> match(right, -1);
  for (std::size_t u = 0; u < left; ++u) {
    std::vector<bool> seen(right, false);
    std::function<bool(std::size_t)> augment = [&](std::size_t a) {
      for (auto b : adj[a]) {
        if (seen[b]) continue;
        seen[b] = true;
        if (match[b] < 0 || augment(static_cast<std::size_t>(match[b]))) {
          match[b] = static_cast<int>(a);
          return true;
        }
      }
      return false;
    };
    augment(u);
  }
  return match;
}

int sign_of(long long e, std::uint64_t p) {
  const auto pp = static_cast<long long>(p);
  return ((e % pp) + pp) % pp == 1 ? 1 : -1;
}

struct BlockSetup {
  PermutationGroup g, k, l, h, c;
  std::uint64_t p = 0;
  Permutation x;
  TablePtr gt, ht;
  CoprimeActionContext ctx;
  std::vector<std::size_t> gx, hx;
};

BlockSetup make_setup(const PermutationGroup& g, const PermutationGroup& k, const PermutationGroup& l,
                      const PermutationGroup& np, std::uint64_t p, const Permutation& x, const TablePtr& gt) {
  BlockSetup s;
  s.g = g;
  s.k = k;
  s.l = l;
  s.h = join(l, np);
  s.c = intersection(k, s.h);
  s.p = p;
  s.x = x;
  s.gt = gt;
  s.ht = character_table(s.h);
  s.ctx = CoprimeActionContext::make(g, k, l, cyclic_subgroup(x), p);
  s.gx = irr_x(*gt, x);
  s.hx = irr_x(*s.ht, x);
  return s;
}

BlockResult compute_block(const BlockSetup& s, std::size_t theta) {
  const auto w = relative_glauberman(s.ctx, theta);
  BlockResult b;
  b.theta = theta;
  b.phi = w.phi;
  b.e = w.e;
  b.predicted_sign = sign_of(w.e, s.p);
  b.theta_invariant_in_g = true;
  for (const auto& y : s.g.generators()) {
    b.theta_invariant_in_g = b.theta_invariant_in_g && irreducible_action(*s.ctx.target_table, y)[theta] == theta;
  }
  b.g_block = irr_over(s.gt, s.ctx.target_table->irreducible(theta));
  b.h_block = irr_over(s.ht, s.ctx.fixed_table->irreducible(w.phi));
  b.g_slice = intersect_sorted(b.g_block, s.gx);
  b.h_slice = intersect_sorted(b.h_block, s.hx);
  b.sizes_match = b.g_block.size() == b.h_block.size();
  b.degree_parts_match = degree_parts(*s.gt, b.g_block, s.p) == degree_parts(*s.ht, b.h_block, s.p);
  const auto gk = match_keys(*s.gt, b.g_slice, s.x, s.p);
  for (int sign : {1, -1}) {
    if (gk == match_keys(*s.ht, b.h_slice, s.x, s.p, sign)) b.realized_signs.push_back(sign);
  }
  b.matches_predicted = std::find(b.realized_signs.begin(), b.realized_signs.end(), b.predicted_sign) !=
                        b.realized_signs.end();
  return b;
}

// H-orbit representatives (least x-invariant index per orbit) of the x-invariant irreducibles of K.
std::vector<std::size_t> h_representatives(const BlockSetup& s) {
  const auto& kt = *s.ctx.target_table;
  std::vector<std::vector<std::size_t>> action;
  for (const auto& y : s.h.generators()) action.push_back(irreducible_action(kt, y));
  std::vector<bool> done(kt.size(), false);
  std::vector<std::size_t> out;
  for (auto theta : s.ctx.target_invariant) {
    if (done[theta]) continue;
    out.push_back(theta);
    std::vector<std::size_t> todo{theta};
    done[theta] = true;
    while (!todo.empty()) {
      auto i = todo.back();
      todo.pop_back();
      for (const auto& pi : action) {
        if (!done[pi[i]]) {
          done[pi[i]] = true;
          todo.push_back(pi[i]);
        }
      }
    }
  }
  return out;
}

std::string block_label(const BlockResult& b) {
  return "block theta=" + std::to_string(b.theta) + " (L #" + std::to_string(b.chief_factor) + ")";
}

}  // namespace

ConstituentStructure invariant_constituent_structure(const PermutationGroup& g, const PermutationGroup& n,
                                                     std::uint64_t p, const Permutation& x, std::size_t chi) {
  if (!is_normal(g, n)) throw InputError("N is not normal in G");
  const auto cert = is_picky(g, p, x);
  if (!cert.picky()) throw InputError("x is not picky");
  const TablePtr gt = character_table(g);
  if (chi >= gt->size()) throw InputError("character index out of range");
  if (value_at(gt->irreducible(chi), x).is_zero()) throw InputError("chi vanishes at x");
  const TablePtr nt = character_table(n);
  const auto mult = decompose(restrict(gt->irreducible(chi), nt));
  const auto xact = irreducible_action(*nt, x);
  ConstituentStructure r;
  for (std::size_t i = 0; i < mult.size(); ++i) {
    if (mult[i] != 0 && xact[i] == i) r.thetas.push_back(i);
  }
  if (r.thetas.empty()) throw TheoremViolation("no x-invariant constituent below chi " + std::to_string(chi));
  std::set<std::size_t> orbit{r.thetas.front()};
  std::vector<std::size_t> todo{r.thetas.front()};
  std::vector<std::vector<std::size_t>> action;
  for (const auto& y : cert.normalizer.generators()) action.push_back(irreducible_action(*nt, y));
  while (!todo.empty()) {
    auto i = todo.back();
    todo.pop_back();
    for (const auto& pi : action) {
      if (orbit.insert(pi[i]).second) todo.push_back(pi[i]);
    }
  }
  r.single_orbit = std::all_of(r.thetas.begin(), r.thetas.end(), [&](std::size_t t) { return orbit.count(t) > 0; });
  if (!r.single_orbit) throw TheoremViolation("x-invariant constituents below chi " + std::to_string(chi) +
                                              " span several N_G(P)-orbits");
  return r;
}

BlockResult blockwise_instance_check(const PermutationGroup& g, const PermutationGroup& k, const PermutationGroup& l,
                                     std::uint64_t p, const Permutation& x, std::size_t theta) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (!is_normal(g, k) || !is_normal(g, l) || !k.contains(l)) throw InputError("need L <= K, both normal in G");
  if (Integer(k.order() / l.order()) % p == 0) throw InputError("K/L is not a p'-group");
  if (!g.contains(x) || !is_power_of(x.order(), p)) throw InputError("x is not a p-element of G");
  const auto cert = is_picky(g, p, x);
  if (!is_normal(g, join(cert.sylow, k))) throw InputError("PK is not normal in G");
  if (!is_picky_in_quotient(g, l, p, x)) throw InputError("xL is not picky in G/L");
  const auto setup = make_setup(g, k, l, cert.normalizer, p, x, character_table(g));
  if (!setup.ctx.fixed_sub.same_elements(setup.c)) throw InputError("C_{K/L}(x) differs from C/L");
  if (theta >= setup.ctx.target_table->size()) throw InputError("character index out of range");
  return compute_block(setup, theta);
}

VerificationReport check_theorem_A(const PermutationGroup& g, std::uint64_t p, const Permutation& x,
                                   const CheckOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (!is_prime(p)) throw InputError("p must be prime");
  if (p == 2 && !options.allow_p2) throw InputError("p = 2 requires the exploratory override");
  VerificationReport r;
  r.group_id = options.group_id;
  r.group_order = g.size();
  r.prime = p;
  r.element = x;
  r.mode = options.mode;
  r.exploratory = p == 2;
  r.certificate = is_picky(g, p, x);
  if (!r.certificate.picky()) throw InputError("x is not picky in G");
  if (!is_p_solvable(g, p)) throw InputError("G is not p-solvable");
  auto record = [&](const std::string& what) {
    (r.exploratory ? r.exploratory_failures : r.violations).push_back(what);
  };

  const PermutationGroup& np = r.certificate.normalizer;
  const TablePtr gt = character_table(g);
  const TablePtr nt = character_table(np);
  const auto gx = irr_x(*gt, x);
  const auto nx = irr_x(*nt, x);
  r.irr_x_group = gx.size();
  r.irr_x_normalizer = nx.size();
  r.group_keys = match_keys(*gt, gx, x, p);
  r.normalizer_keys = match_keys(*nt, nx, x, p);
  r.sylow_normal = np.same_elements(g);
  r.sizes_match = gx.size() == nx.size();
  r.degree_parts_match = degree_parts(*gt, gx, p) == degree_parts(*nt, nx, p);
  if (!r.sizes_match) record("|Irr^x(G)| != |Irr^x(N_G(P))|");
  if (!r.degree_parts_match) record("degree p-part multisets of Irr^x(G) and Irr^x(N_G(P)) differ");

  const bool want_global = options.mode == Mode::kGlobal || options.mode == Mode::kAll;
  const bool want_perchar = options.mode == Mode::kPerChar || options.mode == Mode::kAll;
  const bool want_blocks = options.mode == Mode::kBlockwise || options.mode == Mode::kAll;

  if (want_global) {
    r.global_checked = true;
    if (r.sylow_normal) {
      r.global_signs = {1};
    } else {
      for (int sign : {1, -1}) {
        if (r.group_keys == match_keys(*nt, nx, x, p, sign)) r.global_signs.push_back(sign);
      }
    }
  }

  if (want_perchar) {
    r.per_char_checked = true;
    if (r.sylow_normal) {
      r.per_char_exists = true;
      r.per_char_signs.assign(gx.size(), 1);
    } else {
      const std::size_t xg = gt->classes().class_of(x);
      const std::size_t xn = nt->classes().class_of(x);
      std::vector<std::vector<std::size_t>> adj(gx.size());
      for (std::size_t a = 0; a < gx.size(); ++a) {
        for (std::size_t b = 0; b < nx.size(); ++b) {
          if (p_part(gt->degree(gx[a]), p) != p_part(nt->degree(nx[b]), p)) continue;
          if (equal_up_to_sign(gt->value(gx[a], xg), nt->value(nx[b], xn))) adj[a].push_back(b);
        }
      }
      const auto match = max_matching(gx.size(), nx.size(), adj);
      const auto matched = static_cast<std::size_t>(std::count_if(match.begin(), match.end(), [](int m) { return m >= 0; }));
      r.per_char_exists = r.sizes_match && matched == gx.size();
      if (r.per_char_exists) {
        for (std::size_t b = 0; b < nx.size(); ++b) {
          const auto a = static_cast<std::size_t>(match[b]);
          r.per_char_signs.push_back(*equal_up_to_sign(gt->value(gx[a], xg), nt->value(nx[b], xn)));
        }
        std::sort(r.per_char_signs.begin(), r.per_char_signs.end());
      }
      if (!r.per_char_exists) record("no bijection with per-character signs");
    }
  }
  if (r.global_checked && r.per_char_checked) {
    if (!r.global_signs.empty() && !r.per_char_exists) record("global sign succeeds but per-character sign fails");
    r.sign_discrepancy = r.global_signs.empty() && r.per_char_exists;
  }

  if (want_blocks && !r.sylow_normal) {
    auto& bw = r.blockwise;
    bw.computed = true;
    const PermutationGroup k = residual(residual(g, p, ResidualKind::kPPrime), p, ResidualKind::kP);
    bw.k_order = k.size();
    if (k.is_trivial()) {
      record("O^{p'p}(G) is trivial although the Sylow subgroup is not normal");
    } else {
      auto ls = chief_factors_below(g, k);
      bw.chief_factor_candidates = ls.size();
      if (!options.all_chief_factors) ls.resize(1);
      for (std::size_t li = 0; li < ls.size(); ++li) {
        const auto setup = make_setup(g, k, ls[li], np, p, x, gt);
        bw.l_orders.push_back(ls[li].size());
        bw.h_orders.push_back(setup.h.size());
        bw.c_orders.push_back(setup.c.size());
        if (!setup.ctx.fixed_sub.same_elements(setup.c)) record("C_{K/L}(x) differs from C/L");
        std::map<std::size_t, int> g_hits, h_hits;
        bool complete = true;
        for (auto theta : h_representatives(setup)) {
          try {
            auto b = compute_block(setup, theta);
            b.chief_factor = li;
            for (auto chi : b.g_slice) ++g_hits[chi];
            for (auto psi : b.h_slice) ++h_hits[psi];
            if (!b.sizes_match) record(block_label(b) + ": |Irr(G|theta)| != |Irr(H|phi)|");
            if (!b.degree_parts_match) record(block_label(b) + ": degree p-parts differ");
            if (!b.matches_predicted) record(block_label(b) + ": realized sign differs from the predicted sign");
            bw.blocks.push_back(std::move(b));
          } catch (const TheoremViolation& e) {
            complete = false;
            record(std::string("L #") + std::to_string(li) + ": " + e.what());
          }
        }
        bool ok = complete;
        for (auto chi : setup.gx) ok = ok && g_hits[chi] == 1;
        for (auto psi : setup.hx) ok = ok && h_hits[psi] == 1;
        if (!ok) record("L #" + std::to_string(li) + ": Irr^x is not the disjoint union of the block slices");
        bw.decomposition_ok = bw.decomposition_ok && ok;
      }
      for (auto chi : gx) {
        try {
          invariant_constituent_structure(g, k, p, x, chi);
        } catch (const TheoremViolation& e) {
          record(e.what());
        }
      }
    }
  }

  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

nlohmann::json keys_to_json(const std::vector<MatchKey>& keys) {
  auto out = nlohmann::json::array();
  for (const auto& k : keys) {
    out.push_back({{"degree_p_part", k.degree_p_part}, {"value", to_json(k.value)}, {"display", k.value.to_string()}});
  }
  return out;
}

nlohmann::json block_to_json(const BlockResult& b) {
  return {{"chief_factor", b.chief_factor},
          {"theta", b.theta},
          {"phi", b.phi},
          {"e", b.e},
          {"predicted_sign", b.predicted_sign},
          {"theta_invariant_in_g", b.theta_invariant_in_g},
          {"g_block", b.g_block},
          {"h_block", b.h_block},
          {"g_slice", b.g_slice},
          {"h_slice", b.h_slice},
          {"sizes_match", b.sizes_match},
          {"degree_parts_match", b.degree_parts_match},
          {"realized_signs", b.realized_signs},
          {"matches_predicted", b.matches_predicted}};
}

}  // namespace

nlohmann::json report_to_json(const VerificationReport& r, bool include_timing) {
  nlohmann::json j;
  j["group"] = r.group_id;
  j["order"] = r.group_order;
  j["prime"] = r.prime;
  j["element"] = r.element.one_based();
  j["element_cycles"] = r.element.to_cycles();
  j["mode"] = mode_name(r.mode);
  j["exploratory"] = r.exploratory;
  j["certificate"] = certificate_to_json(r.certificate);
  j["sylow_normal"] = r.sylow_normal;
  j["irr_x_sizes"] = {{"group", r.irr_x_group}, {"normalizer", r.irr_x_normalizer}};
  j["keys"] = {{"group", keys_to_json(r.group_keys)}, {"normalizer", keys_to_json(r.normalizer_keys)}};
  j["sizes_match"] = r.sizes_match;
  j["degree_parts_match"] = r.degree_parts_match;
  if (r.global_checked) j["global_sign"] = {{"signs", r.global_signs}, {"exists", !r.global_signs.empty()}};
  if (r.per_char_checked) j["per_char_sign"] = {{"exists", r.per_char_exists}, {"signs", r.per_char_signs}};
  if (r.blockwise.computed) {
    const auto& bw = r.blockwise;
    auto blocks = nlohmann::json::array();
    for (const auto& b : bw.blocks) blocks.push_back(block_to_json(b));
    j["blockwise"] = {{"k_order", bw.k_order},
                      {"chief_factor_candidates", bw.chief_factor_candidates},
                      {"l_orders", bw.l_orders},
                      {"h_orders", bw.h_orders},
                      {"c_orders", bw.c_orders},
                      {"decomposition_ok", bw.decomposition_ok},
                      {"blocks", blocks}};
  }
  j["sign_discrepancy"] = r.sign_discrepancy;
  j["violations"] = r.violations;
  if (r.exploratory) j["exploratory_failures"] = r.exploratory_failures;
  if (include_timing) j["seconds"] = r.seconds;
  return j;
}

int report_exit_code(const VerificationReport& r) { return r.violations.empty() ? 0 : 2; }

}  // namespace picky
