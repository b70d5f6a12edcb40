#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <vector>

#include "picky/chartab.hpp"
#include "picky/perm.hpp"

namespace picky {

/// A p-group P acting by conjugation inside `ambient` on K, with N normal in K,
/// P-invariant and of p'-index. C/N is the fixed-point subgroup of P on K/N.
struct CoprimeActionContext {
  PermutationGroup ambient;
  PermutationGroup target;      ///< K
  PermutationGroup kernel_sub;  ///< N
  PermutationGroup actor;       ///< P
  PermutationGroup fixed_sub;   ///< C = { k in K : [k, y] in N for every generator y of P }
  std::uint64_t prime = 0;

  TablePtr target_table;
  TablePtr kernel_table;
  TablePtr fixed_table;

  /// P-invariant irreducibles of K, N and C (indices into the tables).
  std::vector<std::size_t> target_invariant;
  std::vector<std::size_t> kernel_invariant;
  std::vector<std::size_t> fixed_invariant;
  /// For each irreducible of C: does it lie over a P-invariant irreducible of N?
  std::vector<bool> fixed_over_invariant;

  /// Checks every hypothesis and computes C and the tables. Throws InputError
  /// when K, N, P are not subgroups of the ambient group, N is not normal in K,
  /// P is not a p-group normalizing K and N, or p divides |K:N|.
  static CoprimeActionContext make(const PermutationGroup& ambient, const PermutationGroup& k,
                                   const PermutationGroup& n, const PermutationGroup& p_group, std::uint64_t p);
};

/// Irreducibles of `k` fixed by every generator of `actor`. Throws InputError
/// unless actor lies in ambient and normalizes the group of `k`.
std::vector<std::size_t> invariant_irreducibles(const CharacterTable& k, const PermutationGroup& actor,
                                                const PermutationGroup& ambient);

/// theta|_C = e phi + p Delta + Xi and phi^K = d theta + p Psi + rho, with the
/// multiplicity vectors over Irr(C) and Irr(K). Zero parts are explicit zero
/// class functions.
struct GlaubermanWitness {
  std::size_t theta = 0;
  std::size_t phi = 0;
  long long e = 0;
  long long dual_d = 0;
  ClassFunction delta, xi, dual_psi, dual_rho;
  std::vector<long long> delta_mult, xi_mult, psi_mult, rho_mult;
};

/// Relative Glauberman correspondent of the P-invariant irreducible `theta` of
/// K (index into ctx.target_table). phi is the unique constituent of theta|_C
/// lying over a P-invariant character of N with multiplicity prime to p; its
/// absence, a tie, or any failed witness identity raises TheoremViolation.
GlaubermanWitness relative_glauberman(const CoprimeActionContext& ctx, std::size_t theta);

/// Witnesses for every P-invariant irreducible of K, in index order. Raises
/// TheoremViolation unless theta -> phi is a bijection onto the irreducibles of
/// C lying over P-invariant characters of N.
std::vector<GlaubermanWitness> correspondence_map(const CoprimeActionContext& ctx);

/// x-part of order a power of p: x^m with m = 1 mod p^a and m = 0 mod the p'-part.
Permutation p_part_of(const Permutation& x, std::uint64_t p);

/// H_theta == H_phi for phi the relative <x>-correspondent of theta, in the
/// configuration L <= K normal in G, K/L a p'-group, PK normal for P Sylow in
/// H, H = L N_G(P), C = K n H, xL a p-element of H/L with C_{K/L}(x) = C/L.
/// theta indexes the table of K and must be x-invariant. Throws InputError
/// when any hypothesis fails.
bool stabilizer_transfer_check(const PermutationGroup& g, const PermutationGroup& k, const PermutationGroup& l,
                               const PermutationGroup& h, const PermutationGroup& c, const Permutation& x,
                               std::uint64_t p, std::size_t theta);

/// For every P-invariant chi in Irr(K), the P-invariant constituents of chi|_N
/// are nonempty and form one C-orbit.
bool coprime_constituent_check(const CoprimeActionContext& ctx);
/// For every P-invariant theta in Irr(N), theta^K has a P-invariant constituent.
bool coprime_induction_check(const CoprimeActionContext& ctx);

/// {"theta", "phi", "e", "dual_d", "delta", "xi", "psi", "rho"}; the last four
/// are multiplicity vectors.
nlohmann::json witness_to_json(const GlaubermanWitness& w);

}  // namespace picky
