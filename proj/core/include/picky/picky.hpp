#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <vector>

#include "picky/cyclo.hpp"
#include "picky/perm.hpp"

namespace picky {

/// Sylow data for a p-element x. When x is picky, `sylow` is the unique Sylow
/// p-subgroup containing it; otherwise it is the first one found.
struct PickyCertificate {
  Permutation element;
  std::uint64_t prime = 0;
  PermutationGroup sylow;
  std::uint64_t sylow_count_containing = 0;
  PermutationGroup normalizer;  ///< N_G(sylow)

  bool picky() const { return sylow_count_containing == 1; }
};

/// Counts the Sylow p-subgroups P^t containing x, t over a right transversal
/// of N_G(P) for the fixed P = sylow(G, p). Throws InputError unless x is a
/// p-element of G.
PickyCertificate is_picky(const PermutationGroup& g, std::uint64_t p, const Permutation& x);

/// Whether xN is picky in G/N, decided in G: the Sylow subgroups of G/N are
/// QN/N and xN lies in QN/N iff x lies in QN. Throws InputError unless N is
/// normal in G and xN is a p-element.
bool is_picky_in_quotient(const PermutationGroup& g, const PermutationGroup& n, std::uint64_t p, const Permutation& x);

/// Certificates for the class representatives of G that are p-elements, in class order.
std::vector<PickyCertificate> p_element_classes(const PermutationGroup& g, std::uint64_t p);

struct FusionControlResult {
  bool no_outside_fusion = false;  ///< no g outside H has x^g in H
  bool fixed_points_inside = false;  ///< C_{K/L}(x) <= C/L with C = K n H
  bool equivalence_holds = false;  ///< the two flags above agree
  /// mu^G(x) == mu(x) for every mu in Irr(H); only computed when
  /// fixed_points_inside holds, true otherwise.
  bool induced_values_match = true;
};

/// Fusion control for K, L normal in G with K/L a p'-group, G = KH, L <= H,
/// H/L with a normal Sylow p-subgroup and xL a p-element of H/L. Throws
/// InputError when a hypothesis fails.
FusionControlResult fusion_control_check(const PermutationGroup& g, const PermutationGroup& k,
                                         const PermutationGroup& l, const PermutationGroup& h, const Permutation& x,
                                         std::uint64_t p);

struct SylowNormalizerResult {
  Cyclotomic value;  ///< (1_H)^G(x)
  bool containment = false;  ///< H contains N_G(R) for every Sylow R containing x
};

/// Computes both sides of the criterion "(1_H)^G(x) = 1 iff H contains every
/// Sylow normalizer N_G(R) with x in R" and raises TheoremViolation when they
/// disagree. Throws InputError unless H <= G and x is a p-element of H.
SylowNormalizerResult sylow_normalizer_criterion(const PermutationGroup& g, const PermutationGroup& h,
                                                 std::uint64_t p, const Permutation& x);

/// {"element", "prime", "picky", "sylow_count_containing", "sylow", "normalizer"};
/// groups as lists of 1-based generator image lists.
nlohmann::json certificate_to_json(const PickyCertificate& c);
nlohmann::json generators_to_json(const PermutationGroup& g);

}  // namespace picky
