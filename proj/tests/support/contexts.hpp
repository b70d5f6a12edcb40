#pragma once

// Coprime-action contexts and the SL(2,3) configuration used by several test
// binaries. Assembly only; every property is checked by the tests themselves.

#include <cstdint>
#include <string>
#include <vector>

#include "picky/perm.hpp"

namespace fixtures {

using picky::Permutation;
using picky::PermutationGroup;

struct ContextSpec {
  std::string name;
  PermutationGroup ambient, k, n, actor;
  std::uint64_t p = 0;
};

Permutation cyc(std::size_t n, const char* text);
PermutationGroup gen(std::size_t n, std::initializer_list<const char*> cycles);
PermutationGroup center(const PermutationGroup& g);

/// K = Q8, N = Z(Q8), P a Sylow 3-subgroup, all inside SL(2,3).
ContextSpec sl23_context();
/// K = C7 x C5, N = 1, P = C3 acting faithfully on C7 and trivially on C5.
ContextSpec c7c5_context();
/// K = V4, N = 1, P = C3, inside A4.
ContextSpec v4_context();

/// The named contexts above, then for each listed group, prime p and pair
/// N <= K of normal subgroups with K nontrivial and p not dividing |K:N|,
/// the context with P a Sylow p-subgroup of G.
std::vector<ContextSpec> corpus_contexts();

}  // namespace fixtures
