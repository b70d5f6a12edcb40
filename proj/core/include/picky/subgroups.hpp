#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "picky/conjugacy.hpp"
#include "picky/perm.hpp"

namespace picky {

/// Subgroup of G whose elements satisfy `pred`, which must define a subgroup.
/// Elements are scanned in canonical order, so the generating set is
/// reproducible. `seed`, when given, must already satisfy `pred`.
PermutationGroup subgroup_where(const PermutationGroup& g, const std::function<bool(const Permutation&)>& pred,
                                const PermutationGroup* seed = nullptr);

PermutationGroup join(const PermutationGroup& a, const PermutationGroup& b);
PermutationGroup join(const PermutationGroup& a, const std::vector<Permutation>& extra);
PermutationGroup intersection(const PermutationGroup& a, const PermutationGroup& b);
/// Cyclic subgroup generated by x.
PermutationGroup cyclic_subgroup(const Permutation& x);
/// H^g = g^-1 H g.
PermutationGroup conjugate(const PermutationGroup& h, const Permutation& g);

PermutationGroup centralizer(const PermutationGroup& g, const Permutation& x);
/// Throws InputError unless H <= G.
PermutationGroup normalizer(const PermutationGroup& g, const PermutationGroup& h);
bool normalizes(const Permutation& g, const PermutationGroup& h);
/// N <= G and N is normalized by every generator of G.
bool is_normal(const PermutationGroup& g, const PermutationGroup& n);

bool is_p_element(const Permutation& x, std::uint64_t p);
bool is_p_group(const PermutationGroup& g, std::uint64_t p);

/// Sylow p-subgroup built by normalizer ascent from the trivial group, adding
/// the least p-element of N_G(Q) outside Q at each step. Deterministic.
PermutationGroup sylow(const PermutationGroup& g, std::uint64_t p);

/// Smallest normal subgroup of G containing `elements`.
PermutationGroup normal_closure(const PermutationGroup& g, const std::vector<Permutation>& elements);

enum class ResidualKind {
  kP,       ///< O^p(G): smallest normal subgroup with p-group quotient
  kPPrime,  ///< O^{p'}(G): smallest normal subgroup with p'-group quotient
};
PermutationGroup residual(const PermutationGroup& g, std::uint64_t p, ResidualKind kind);

/// Right transversal {t_i} of H in G with t_0 the identity; G = union of H t_i.
std::vector<Permutation> right_transversal(const PermutationGroup& g, const PermutationGroup& h);

/// Action of G on the right cosets H t of H.
class CosetAction {
 public:
  CosetAction(const PermutationGroup& g, const PermutationGroup& h);

  const PermutationGroup& group() const;
  const PermutationGroup& subgroup() const;
  /// Permutation group of degree |G:H| realizing the action.
  const PermutationGroup& image() const;
  const std::vector<Permutation>& transversal() const;
  /// Index i with g in H t_i. Throws InputError when g is not in G.
  std::size_t coset_of(const Permutation& g) const;
  Permutation image_of(const Permutation& g) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

CosetAction coset_action(const PermutationGroup& g, const PermutationGroup& h);
/// Faithful realization of G/N on the cosets of N. Throws InputError unless N is normal.
CosetAction quotient_group(const PermutationGroup& g, const PermutationGroup& n);

/// Normal subgroups of G as unions of conjugacy classes.
class NormalLattice {
 public:
  using ClassSet = std::vector<bool>;

  explicit NormalLattice(const ConjugacyData& classes);

  const ConjugacyData& classes() const;
  /// Every normal subgroup, ordered by increasing order then by class indices.
  const std::vector<ClassSet>& members() const;
  std::uint64_t order_of(const ClassSet& s) const;
  /// Normal subgroup generated by a union of classes.
  ClassSet closure(ClassSet s) const;
  PermutationGroup subgroup(const ClassSet& s) const;
  /// Throws InputError when n is not a normal subgroup of the group.
  ClassSet classes_of(const PermutationGroup& n) const;
  /// Maximal members strictly inside k, largest order first, then by class indices.
  std::vector<ClassSet> maximal_below(const ClassSet& k) const;
  std::vector<ClassSet> minimal_nontrivial() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

std::vector<PermutationGroup> minimal_normal_subgroups(const PermutationGroup& g);
/// L normal in G with K/L a chief factor of G; the first candidate in the
/// lattice's canonical order. Throws InputError when K is trivial or not normal.
PermutationGroup chief_factor_below(const PermutationGroup& g, const PermutationGroup& k);
/// All L with K/L a chief factor, in canonical order.
std::vector<PermutationGroup> chief_factors_below(const PermutationGroup& g, const PermutationGroup& k);
/// Orders |K:L| along one chief series of G, from the top down.
std::vector<std::uint64_t> chief_factor_orders(const PermutationGroup& g);
bool is_p_solvable(const PermutationGroup& g, std::uint64_t p);

}  // namespace picky
